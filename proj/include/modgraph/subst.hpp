#pragma once

#include "modgraph/etale.hpp"

namespace modgraph {

/// Data for a graph substitution G{H_v}: a plug H_v for every vertex of
/// the base and boundary identifications m_v : i(nbhd(v)) -> boundary(H_v).
struct SubstitutionSpec {
  Graph base;
  IdMap<Graph> plugs;    // vertex -> H_v
  IdMap<IdMap<Id>> ident; // vertex -> m_v

  /// Colorings for the colored variant; empty means uncolored.
  IdMap<Id> base_coloring;
  IdMap<IdMap<Id>> plug_colorings;
};

struct SubstResult {
  Graph graph;                 // G{H_v}
  IdMap<Id> coloring;          // present for the colored variant
  IdMap<IdMap<Id>> arc_proj;   // per vertex: A(H_v) -> A(G{H_v})
  IdMap<IdMap<Id>> vertex_inj; // per vertex: V(H_v) -> V(G{H_v})
  IdMap<Id> boundary_map;      // boundary(G) -> boundary(G{H_v})
};

namespace detail {

inline void validate_spec(const SubstitutionSpec& spec, bool colored) {
  check(spec.base.has_vertices(), "BaseHasNoVertices",
        "substitution base must have at least one vertex");
  for (const auto& [x, y] : spec.base.arcs.orbits())
    check(spec.base.darts.count(x) || spec.base.darts.count(y),
          "UnsupportedBase", "base has an edge not meeting any vertex");
  for (const auto& v : spec.base.vertices) {
    check(spec.plugs.count(v) > 0, "NotBijection",
          "no plug supplied for vertex '" + v + "'");
    const Graph& h = spec.plugs.at(v);
    check(h.is_connected(), "NotConnected",
          "plug for '" + v + "' must be connected");
    check(spec.ident.count(v) > 0, "NotBijection",
          "no boundary identification for vertex '" + v + "'");
    const IdMap<Id>& m = spec.ident.at(v);
    const IdSet dom = spec.base.dagger_set(spec.base.nbhd(v));
    check(key_set(m) == dom, "NotBijection",
          "m_" + v + " must be defined exactly on i(nbhd(" + v + "))");
    IdSet image;
    for (const auto& [a, b] : m) {
      check(h.boundary.count(b) > 0, "NotBijection",
            "m_" + v + " sends '" + a + "' outside the plug boundary");
      check(image.insert(b).second, "NotBijection", "m_" + v + " not injective");
    }
    check(image == h.boundary, "NotBijection", "m_" + v + " not surjective");
    if (colored) {
      const IdMap<Id>& zv = spec.plug_colorings.at(v);
      for (const auto& [a, b] : m)
        check(spec.base_coloring.at(a) == zv.at(b), "ColorMismatch",
              "coloring clash along m_" + v + " at '" + a + "'");
    }
  }
}

}  // namespace detail

/// Graph substitution as a coequalizer over the internal edges of the
/// base: arcs of the plugs are glued pairwise, classes are named by their
/// lexicographically least tagged member.
inline SubstResult substitute(const SubstitutionSpec& spec) {
  const bool colored = !spec.base_coloring.empty() || !spec.plug_colorings.empty();
  detail::validate_spec(spec, colored);
  const Graph& g = spec.base;

  // tagged copies of the plug arcs and vertices
  IdMap<IdMap<Id>> tag;  // vertex -> (plug arc -> tagged name)
  IdSet taken;
  for (const auto& v : to_vector(g.vertices))
    for (const auto& a : spec.plugs.at(v).arcs.elements()) {
      Id t = fresh_name(v + "." + a, taken);
      taken.insert(t);
      tag[v][a] = t;
    }

  UnionFind uf;
  for (const auto& [v, m] : tag)
    for (const auto& [a, t] : m) uf.add(t);

  // glue along internal edges e = [x1, x2] of the base
  for (const auto& [x1, x2] : g.internal_edges()) {
    const Id v1 = g.target(x1), v2 = g.target(x2);
    const Graph& h1 = spec.plugs.at(v1);
    const Graph& h2 = spec.plugs.at(v2);
    const Id t1 = spec.ident.at(v1).at(g.arcs.dagger(x1));
    const Id t2 = spec.ident.at(v2).at(g.arcs.dagger(x2));
    uf.unite(tag[v1][t1], tag[v2][h2.arcs.dagger(t2)]);
    uf.unite(tag[v1][h1.arcs.dagger(t1)], tag[v2][t2]);
  }

  IdMap<Id> cls;  // tagged name -> class representative
  for (const auto& [v, m] : tag)
    for (const auto& [a, t] : m) cls[t] = uf.find(t);

  SubstResult out;
  // involution on classes, induced from the plug involutions
  IdMap<Id> dagger;
  for (const auto& [v, m] : tag)
    for (const auto& [a, t] : m) {
      const Id c = cls.at(t);
      const Id cd = cls.at(tag[v][spec.plugs.at(v).arcs.dagger(a)]);
      auto it = dagger.find(c);
      check(it == dagger.end() || it->second == cd, "GluingClash",
            "gluing relation does not respect involutions at '" + c + "'");
      dagger[c] = cd;
      if (colored) {
        const Id col = spec.plug_colorings.at(v).at(a);
        auto ct = out.coloring.find(c);
        check(ct == out.coloring.end() || ct->second == col, "ColorMismatch",
              "gluing relation does not respect colors at '" + c + "'");
        out.coloring[c] = col;
      }
    }
  std::vector<std::vector<Id>> classes;
  for (const auto& [c, cd] : dagger) {
    check(c != cd, "FixedArc", "gluing produced an involution fixed point");
    if (c < cd) classes.push_back({c, cd});
  }

  IdMap<Id> inc;
  std::vector<Id> vertices;
  for (const auto& v : g.vertices) {
    out.vertex_inj[v];  // present even for vertexless plugs
    out.arc_proj[v];
    for (const auto& w : spec.plugs.at(v).vertices) {
      Id vw = fresh_name(v + "." + w, taken);
      taken.insert(vw);
      out.vertex_inj[v][w] = vw;
      vertices.push_back(vw);
    }
  }
  for (const auto& [v, m] : tag)
    for (const auto& a : spec.plugs.at(v).darts) {
      const Id c = cls.at(tag[v][a]);
      const Id vw = out.vertex_inj.at(v).at(spec.plugs.at(v).target(a));
      auto it = inc.find(c);
      check(it == inc.end() || it->second == vw, "GluingClash",
            "two darts were glued into the class '" + c + "'");
      inc[c] = vw;
    }

  // the boundary of G{H_v} is the traced image of the base boundary
  IdSet bd;
  for (const auto& b : g.boundary) {
    const Id v = g.target(g.arcs.dagger(b));
    const Id traced = cls.at(tag[v][spec.ident.at(v).at(b)]);
    check(bd.insert(traced).second, "GluingClash",
          "boundary tracing is not injective at '" + b + "'");
    out.boundary_map[b] = traced;
  }

  out.graph = build_graph(classes, inc, vertices, &bd);
  for (const auto& [v, m] : tag)
    for (const auto& [a, t] : m) out.arc_proj[v][a] = cls.at(t);
  return out;
}

/// The identity substitution: every vertex replaced by its own star.
inline SubstitutionSpec star_spec(const Graph& g) {
  SubstitutionSpec spec;
  spec.base = g;
  for (const auto& v : g.vertices) {
    VertexStar st = star_of_vertex(g, v);
    spec.plugs[v] = st.star;
    spec.ident[v];  // empty for isolated vertices
    for (const auto& [d, leg] : st.leg_of_dart)
      spec.ident[v][g.arcs.dagger(d)] = leg;
  }
  return spec;
}

}  // namespace modgraph
