#pragma once

#include <functional>

#include "modgraph/gmap.hpp"

namespace modgraph {

/// A tabulated object of Set^{Bij_C}: one finite fiber per iso class of
/// colored objects (keyed by the sorted color multiset), together with the
/// transport action along color-preserving bijections.  A missing action
/// means the symmetric one (transport is the identity on element names).
struct Collection {
  InvolutiveSet colors;
  std::map<std::vector<Id>, std::vector<Id>> fibers;
  std::function<Id(const ColoredObject&, const ColoredObject&,
                   const IdMap<Id>&, const Id&)>
      act;

  std::vector<Id> fiber(const ColoredObject& obj) const {
    auto it = fibers.find(obj.color_class());
    if (it == fibers.end()) return {};
    return it->second;
  }

  bool has_element(const ColoredObject& obj, const Id& e) const {
    const auto f = fiber(obj);
    return std::find(f.begin(), f.end(), e) != f.end();
  }

  Id transport(const ColoredObject& src, const ColoredObject& dst,
               const IdMap<Id>& bij, const Id& elem) const {
    check(is_bij_morphism(bij, src, dst), "FiberMismatch",
          "transport requires a color-preserving bijection");
    if (!act) return elem;
    return act(src, dst, bij, elem);
  }
};

/// An element of the free graph monad T X at (S, xi): a colored connected
/// shape, a boundary ordering f : S -> boundary(K), and one element of
/// X(i nbhd(w), zeta|) per vertex.
struct DecoratedGraph {
  ColoredGraph shape;
  IdMap<Id> boundary;  // slot -> boundary arc, bijection
  IdMap<Id> dec;       // vertex -> element name

  ColoredObject ambient() const {
    ColoredObject out;
    for (const auto& [s, b] : boundary) out.coloring[s] = shape.zeta.at(b);
    return out;
  }

  std::string str() const {
    std::vector<std::string> parts;
    for (const auto& [x, y] : shape.graph.arcs.orbits())
      parts.push_back(x + "~" + y);
    std::string s = "arcs[" + join(parts, ",") + "]";
    parts.clear();
    for (const auto& [a, c] : shape.zeta) parts.push_back(a + ":" + c);
    s += " col[" + join(parts, ",") + "]";
    parts.clear();
    for (const auto& [d, v] : shape.graph.incidence) parts.push_back(d + "@" + v);
    s += " inc[" + join(parts, ",") + "]";
    parts.clear();
    for (const auto& [sl, b] : boundary) parts.push_back(sl + "->" + b);
    s += " f[" + join(parts, ",") + "]";
    parts.clear();
    for (const auto& [v, e] : dec) parts.push_back(v + "=" + e);
    s += " dec[" + join(parts, ",") + "]";
    return s;
  }
};

/// The colored object at a vertex of a shape: the i-image of its
/// neighbourhood with the restricted coloring.
inline ColoredObject vertex_object(const ColoredGraph& shape, const Id& w) {
  ColoredObject out;
  for (const auto& d : shape.graph.nbhd(w)) {
    const Id a = shape.graph.arcs.dagger(d);
    out.coloring[a] = shape.zeta.at(a);
  }
  return out;
}

inline void validate_decorated(const DecoratedGraph& d, const Collection& x) {
  d.shape.validate(x.colors);
  check(d.shape.graph.is_connected(), "NotConnected",
        "decorated shapes must be connected");
  check(key_set(d.dec) == d.shape.graph.vertices, "FiberMismatch",
        "decorations must be total on the vertices");
  IdSet image;
  for (const auto& [s, b] : d.boundary) {
    check(d.shape.graph.boundary.count(b) > 0, "FiberMismatch",
          "'" + b + "' is not a boundary arc");
    check(image.insert(b).second, "FiberMismatch",
          "boundary ordering is not injective");
  }
  check(image == d.shape.graph.boundary, "FiberMismatch",
        "boundary ordering is not onto");
  for (const auto& [w, e] : d.dec)
    check(x.has_element(vertex_object(d.shape, w), e), "FiberMismatch",
          "decoration '" + e + "' missing from the fiber at vertex '" + w + "'");
}

/// Equality in T X (S, xi): an isomorphism of colored shapes commuting
/// with the boundary orderings and transporting the decorations.
inline bool decorated_equal(const DecoratedGraph& a, const DecoratedGraph& b,
                            const Collection& x) {
  if (a.ambient() != b.ambient()) return false;
  IsoOptions opts;
  opts.src_colors = &a.shape.zeta;
  opts.dst_colors = &b.shape.zeta;
  for (const auto& [s, arc] : a.boundary) opts.forced_arcs[arc] = b.boundary.at(s);
  opts.accept = [&](const GraphIso& iso) {
    for (const auto& [w, w2] : iso.vertex_map) {
      const ColoredObject src = vertex_object(a.shape, w);
      const ColoredObject dst = vertex_object(b.shape, w2);
      IdMap<Id> bij;
      for (const auto& [slot, c] : src.coloring) bij[slot] = iso.arc_map.at(slot);
      if (x.transport(src, dst, bij, a.dec.at(w)) != b.dec.at(w2)) return false;
    }
    return true;
  };
  opts.limit = 1;
  return !detail::IsoSearch(a.shape.graph, b.shape.graph, opts).run().empty();
}

/// eta : X -> T X, the star-shaped decoration of a fiber element.
inline DecoratedGraph monad_unit(const Collection& x, const ColoredObject& obj,
                                 const Id& elem) {
  check(x.has_element(obj, elem), "FiberMismatch",
        "'" + elem + "' is not in the fiber at " + obj.str());
  DecoratedGraph out;
  const std::vector<Id> slots = to_vector(obj.carrier());
  out.shape.graph = star_of(slots, "v");
  out.shape.zeta =
      involutive_extension(out.shape.graph.arcs, obj.coloring, x.colors);
  for (const auto& s : slots) out.boundary[s] = s;
  out.dec["v"] = elem;
  return out;
}

/// mu : T T X -> T X by colored graph substitution.  The inner decorated
/// graphs sit at the vertex objects of the outer shape; their boundary
/// orderings are exactly the substitution identifications.  An outer shape
/// with no vertices is returned unchanged.
inline DecoratedGraph monad_mult(const ColoredGraph& outer,
                                 const IdMap<Id>& outer_boundary,
                                 const IdMap<DecoratedGraph>& inner,
                                 const Collection& x) {
  if (outer.graph.vertices.empty())
    return DecoratedGraph{outer, outer_boundary, {}};
  SubstitutionSpec spec;
  spec.base = outer.graph;
  spec.base_coloring = outer.zeta;
  for (const auto& v : outer.graph.vertices) {
    const DecoratedGraph& in = inner.at(v);
    check(in.ambient() == vertex_object(outer, v), "ColorMismatch",
          "inner decoration at '" + v + "' sits at the wrong object");
    spec.plugs[v] = in.shape.graph;
    spec.plug_colorings[v] = in.shape.zeta;
    spec.ident[v] = in.boundary;
  }
  SubstResult r = substitute(spec);
  DecoratedGraph out;
  out.shape.graph = r.graph;
  out.shape.zeta = r.coloring;
  for (const auto& [s, b] : outer_boundary)
    out.boundary[s] = r.boundary_map.at(b);
  for (const auto& v : outer.graph.vertices) {
    const DecoratedGraph& in = inner.at(v);
    for (const auto& [w, e] : in.dec) {
      const Id vw = r.vertex_inj.at(v).at(w);
      const ColoredObject src = vertex_object(in.shape, w);
      const ColoredObject dst = vertex_object(out.shape, vw);
      IdMap<Id> bij;
      for (const auto& [slot, c] : src.coloring)
        bij[slot] = r.arc_proj.at(v).at(slot);
      out.dec[vw] = x.transport(src, dst, bij, e);
    }
  }
  return out;
}

/// Reindex a decorated graph along a slot bijection: the result sits at
/// (S', xi o slotmap) where slotmap : S' -> S.
inline DecoratedGraph reindex_boundary(const DecoratedGraph& d,
                                       const IdMap<Id>& slotmap) {
  DecoratedGraph out = d;
  out.boundary.clear();
  for (const auto& [s2, s] : slotmap) out.boundary[s2] = d.boundary.at(s);
  check(out.boundary.size() == d.boundary.size(), "FiberMismatch",
        "slot reindexing must be a bijection");
  return out;
}

/// A vertex type available to shape enumeration: the colors of the
/// i-neighbourhood (where the decoration lives), as a sorted multiset.
struct VertexProfile {
  Id tag;
  std::vector<Id> slot_colors;
};

/// All connected colored shapes at (S, xi) with at most `vertex_bound`
/// vertices, each vertex typed by one of the profiles (recorded in dec),
/// up to isomorphism of decorated graphs with tags as decorations.
/// Vertexless shapes (the exceptional edge, and nodeless loops when S is
/// empty) are included.
inline std::vector<DecoratedGraph> enumerate_shapes(
    const InvolutiveSet& colors, const std::vector<VertexProfile>& profiles,
    const ColoredObject& obj, std::size_t vertex_bound) {
  std::vector<DecoratedGraph> out;
  Collection tags_only;  // tag equality, trivial transport
  tags_only.colors = colors;
  auto push_unique = [&](const DecoratedGraph& d) {
    for (const auto& seen : out)
      if (decorated_equal(seen, d, tags_only)) return;
    out.push_back(d);
  };

  const std::vector<Id> slots = to_vector(obj.carrier());
  // vertexless shapes
  if (slots.empty()) {
    for (const auto& [c, cd] : colors.orbits()) {
      DecoratedGraph d;
      d.shape.graph = nodeless_loop();
      d.shape.zeta = {{"l", c}, {"r", cd}};
      push_unique(d);
    }
  }
  if (slots.size() == 2) {
    const Id c1 = obj.coloring.at(slots[0]);
    const Id c2 = obj.coloring.at(slots[1]);
    if (colors.dagger(c1) == c2) {
      DecoratedGraph d;
      d.shape.graph = exceptional_edge();
      d.shape.zeta = {{"l", c1}, {"r", c2}};
      d.boundary = {{slots[0], "l"}, {slots[1], "r"}};
      push_unique(d);
    }
  }

  // multiset of xi colors, as remaining leg capacity
  std::map<Id, int> need0;
  for (const auto& s : slots) need0[obj.coloring.at(s)]++;

  // choose vertex types: multisets of profile indices
  std::vector<std::size_t> type_choice;
  std::function<void(std::size_t, std::size_t)> choose_types;

  struct HalfEdge {
    std::size_t vertex;
    std::size_t slot;
    Id slot_color;  // color of the i-nbhd slot (leg side)
  };

  auto run_matching = [&](const std::vector<std::size_t>& types) {
    std::vector<HalfEdge> hs;
    for (std::size_t i = 0; i < types.size(); ++i)
      for (std::size_t j = 0; j < profiles[types[i]].slot_colors.size(); ++j)
        hs.push_back({i, j, profiles[types[i]].slot_colors[j]});
    // pairing[h] = index of partner, or SIZE_MAX for a leg
    std::vector<std::size_t> pairing(hs.size(), hs.size() + 1);
    std::map<Id, int> need = need0;
    std::function<void(std::size_t)> match = [&](std::size_t h) {
      if (h == hs.size()) {
        for (const auto& [c, n] : need)
          if (n != 0) return;
        // build the shape
        DecoratedGraph d;
        std::vector<std::vector<Id>> classes;
        IdMap<Id> inc;
        std::vector<Id> vertices;
        for (std::size_t i = 0; i < types.size(); ++i)
          vertices.push_back("w" + std::to_string(i + 1));
        std::vector<Id> legs;
        IdMap<Id> zeta;
        auto dart_name = [&](std::size_t k) {
          return vertices[hs[k].vertex] + "d" + std::to_string(hs[k].slot + 1);
        };
        for (std::size_t k = 0; k < hs.size(); ++k) {
          const Id dn = dart_name(k);
          inc[dn] = vertices[hs[k].vertex];
          zeta[dn] = colors.dagger(hs[k].slot_color);
          if (pairing[k] == hs.size()) {  // leg
            const Id leg = vertices[hs[k].vertex] + "b" +
                           std::to_string(hs[k].slot + 1);
            classes.push_back({dn, leg});
            zeta[leg] = hs[k].slot_color;
            legs.push_back(leg);
          } else if (pairing[k] > k) {
            classes.push_back({dn, dart_name(pairing[k])});
          }
        }
        Graph g;
        try {
          g = build_graph(classes, inc, vertices);
        } catch (const Error&) {
          return;
        }
        if (!g.is_connected()) return;
        d.shape.graph = g;
        d.shape.zeta = zeta;
        for (std::size_t i = 0; i < types.size(); ++i)
          d.dec[vertices[i]] = profiles[types[i]].tag;
        // boundary orderings: all color-compatible bijections S -> legs
        std::function<void(std::size_t, IdSet&)> choose_f =
            [&](std::size_t si, IdSet& used) {
              if (si == slots.size()) {
                push_unique(d);
                return;
              }
              for (const auto& leg : legs) {
                if (used.count(leg)) continue;
                if (zeta.at(leg) != obj.coloring.at(slots[si])) continue;
                used.insert(leg);
                d.boundary[slots[si]] = leg;
                choose_f(si + 1, used);
                d.boundary.erase(slots[si]);
                used.erase(leg);
              }
            };
        IdSet used;
        choose_f(0, used);
        return;
      }
      if (pairing[h] <= hs.size()) {  // already decided
        match(h + 1);
        return;
      }
      // leg
      auto it = need.find(hs[h].slot_color);
      if (it != need.end() && it->second > 0) {
        it->second--;
        pairing[h] = hs.size();
        match(h + 1);
        pairing[h] = hs.size() + 1;
        it->second++;
      }
      // pair with a later half-edge of daggered slot color
      for (std::size_t h2 = h + 1; h2 < hs.size(); ++h2) {
        if (pairing[h2] <= hs.size()) continue;
        if (hs[h2].slot_color != colors.dagger(hs[h].slot_color)) continue;
        pairing[h] = h2;
        pairing[h2] = h;
        match(h + 1);
        pairing[h] = hs.size() + 1;
        pairing[h2] = hs.size() + 1;
      }
    };
    match(0);
  };

  choose_types = [&](std::size_t k, std::size_t min_profile) {
    if (!type_choice.empty()) run_matching(type_choice);
    if (k == vertex_bound) return;
    for (std::size_t p = min_profile; p < profiles.size(); ++p) {
      type_choice.push_back(p);
      choose_types(k + 1, p);
      type_choice.pop_back();
    }
  };
  if (vertex_bound > 0) choose_types(0, 0);
  return out;
}

}  // namespace modgraph
