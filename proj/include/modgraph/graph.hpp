#pragma once

#include "modgraph/involutive.hpp"

namespace modgraph {

/// An undirected graph with loose ends: arcs A with a free involution i,
/// a subset of darts D pointing at vertices via t, and a boundary
/// subset of the undarted arcs.
///
/// Axioms enforced by validate():
///   (A) i is fixed-point free on A,
///   (B) D is a subset of A,
///   (C) i(D) \ D is contained in the boundary,
///   (D) boundary \ i(D) is closed under i,
/// plus boundary and A \ D are disjoint from D.
struct Graph {
  InvolutiveSet arcs;
  IdSet darts;         // subset of arcs
  IdMap<Id> incidence; // t : darts -> vertices
  IdSet vertices;
  IdSet boundary;      // subset of arcs \ darts

  bool operator==(const Graph& o) const {
    return arcs == o.arcs && darts == o.darts && incidence == o.incidence &&
           vertices == o.vertices && boundary == o.boundary;
  }
  bool operator!=(const Graph& o) const { return !(*this == o); }

  IdSet nbhd(const Id& v) const {
    IdSet out;
    for (const auto& [d, w] : incidence)
      if (w == v) out.insert(d);
    return out;
  }

  IdSet dagger_set(const IdSet& s) const {
    IdSet out;
    for (const auto& x : s) out.insert(arcs.dagger(x));
    return out;
  }

  std::size_t valence(const Id& v) const { return nbhd(v).size(); }

  const Id& target(const Id& dart) const { return incidence.at(dart); }

  bool is_safe() const {
    return boundary == set_difference(arcs.elements(), darts);
  }

  /// Interior arcs A \ (boundary + D); nonempty only for nodeless loops
  /// among connected graphs.
  IdSet interior() const {
    return set_difference(set_difference(arcs.elements(), darts), boundary);
  }

  bool has_vertices() const { return !vertices.empty(); }

  /// Isomorphic to the exceptional edge: two arcs, no vertices, full boundary.
  bool is_exceptional_edge() const {
    return vertices.empty() && arcs.size() == 2 &&
           boundary == arcs.elements();
  }

  /// Two arcs, no vertices, empty boundary.
  bool is_nodeless_loop() const {
    return vertices.empty() && arcs.size() == 2 && boundary.empty();
  }

  /// Internal edges: involution classes {x, i(x)} with both arcs darts.
  /// The class is reported as [x1, x2] with x1 the lexicographically
  /// smaller arc, so downstream coequalizers are reproducible.
  std::vector<std::pair<Id, Id>> internal_edges() const {
    std::vector<std::pair<Id, Id>> out;
    for (const auto& [x, y] : arcs.orbits())
      if (darts.count(x) && darts.count(y)) out.emplace_back(x, y);
    return out;
  }

  bool is_connected() const {
    if (arcs.empty() && vertices.empty()) return false;  // empty graph
    UnionFind uf;
    for (const auto& a : arcs.elements()) uf.add(a);
    for (const auto& v : vertices) uf.add("v/" + v);
    for (const auto& [x, y] : arcs.orbits()) uf.unite(x, y);
    for (const auto& [d, v] : incidence) uf.unite(d, "v/" + v);
    return uf.class_count() == 1;
  }

  void validate() const {
    for (const auto& [x, y] : arcs.orbits())
      check(x != y, "FixedArc", "involution fixes arc '" + x + "'");
    for (const auto& d : darts)
      check(arcs.contains(d), "DartNotArc", "dart '" + d + "' is not an arc");
    check(key_set(incidence) == darts, "DartNotArc",
          "incidence must be defined exactly on the darts");
    for (const auto& [d, v] : incidence)
      check(vertices.count(v) > 0, "UnknownVertex",
            "dart '" + d + "' points at unknown vertex '" + v + "'");
    for (const auto& b : boundary) {
      check(arcs.contains(b), "UnknownElement",
            "boundary arc '" + b + "' is not an arc");
      check(!darts.count(b), "BoundaryMeetsDarts",
            "boundary arc '" + b + "' is a dart");
    }
    // (C) i(D) \ D is contained in the boundary
    for (const auto& d : darts) {
      const Id& p = arcs.dagger(d);
      if (!darts.count(p))
        check(boundary.count(p) > 0, "AxiomC",
              "arc '" + p + "' = i(dart) is neither dart nor boundary");
    }
    // (D) boundary \ i(D) is i-closed
    for (const auto& b : boundary) {
      const Id& p = arcs.dagger(b);
      if (!darts.count(p))
        check(boundary.count(p) > 0, "AxiomD",
              "boundary arc '" + b + "' has undarted partner outside boundary");
    }
  }
};

/// Validated constructor.  `arc_classes` lists the involution pairs,
/// `incidence` assigns darts to vertices, `vertices` may include isolated
/// vertices.  When `boundary` is absent the graph is made safe
/// (boundary = A \ D).
inline Graph build_graph(const std::vector<std::vector<Id>>& arc_classes,
                         const IdMap<Id>& incidence,
                         const std::vector<Id>& vertices,
                         const IdSet* boundary = nullptr) {
  Graph g;
  g.arcs = InvolutiveSet::make(arc_classes);
  for (const auto& [d, v] : incidence) {
    check(g.arcs.contains(d), "DartNotArc", "dart '" + d + "' is not an arc");
    g.darts.insert(d);
  }
  g.incidence = incidence;
  for (const auto& v : vertices) g.vertices.insert(v);
  if (boundary)
    g.boundary = *boundary;
  else
    g.boundary = set_difference(g.arcs.elements(), g.darts);
  g.validate();
  return g;
}

/// The exceptional edge: arcs {l, r} swapped, full boundary.
inline Graph exceptional_edge() {
  return build_graph({{"l", "r"}}, {}, {});
}

/// A nodeless loop: same arcs, empty boundary.
inline Graph nodeless_loop() {
  IdSet empty;
  return build_graph({{"l", "r"}}, {}, {}, &empty);
}

/// The star on a set S of boundary names: arcs 2S = {s, s*}, darts the
/// starred partners, one vertex.
inline Graph star_of(const std::vector<Id>& s, const Id& vertex = "v") {
  IdSet taken(s.begin(), s.end());
  std::vector<std::vector<Id>> classes;
  IdMap<Id> inc;
  for (const auto& x : s) {
    Id partner = fresh_name(x + "*", taken);
    taken.insert(partner);
    classes.push_back({x, partner});
    inc[partner] = vertex;
  }
  IdSet bd(s.begin(), s.end());
  return build_graph(classes, inc, {vertex}, &bd);
}

/// The n-star with boundary 1..n.
inline Graph star_n(std::size_t n, const Id& vertex = "v") {
  std::vector<Id> s;
  for (std::size_t j = 1; j <= n; ++j) s.push_back(std::to_string(j));
  return star_of(s, vertex);
}

/// The star of a vertex of G, plus its canonical embedding data: darts
/// keep their names from G, boundary legs are fresh primed copies.
struct VertexStar {
  Graph star;
  Id vertex;
  IdMap<Id> arc_map;     // A(star) -> A(G), the canonical embedding on arcs
  IdMap<Id> leg_of_dart; // dart d -> its leg in the star
};

inline VertexStar star_of_vertex(const Graph& g, const Id& v) {
  check(g.vertices.count(v) > 0, "UnknownVertex",
        "graph has no vertex '" + v + "'");
  VertexStar out;
  out.vertex = v;
  const IdSet nb = g.nbhd(v);
  IdSet taken = nb;
  std::vector<std::vector<Id>> classes;
  IdMap<Id> inc;
  for (const auto& d : nb) {
    Id leg = fresh_name(d + "'", taken);
    taken.insert(leg);
    classes.push_back({d, leg});
    inc[d] = v;
    out.leg_of_dart[d] = leg;
    out.arc_map[d] = d;
    out.arc_map[leg] = g.arcs.dagger(d);
  }
  IdSet bd;
  for (const auto& [d, leg] : out.leg_of_dart) bd.insert(leg);
  out.star = build_graph(classes, inc, {v}, &bd);
  return out;
}

/// The star of a whole graph: the star on its boundary.
inline Graph star_of_graph(const Graph& g) {
  return star_of(to_vector(g.boundary));
}

/// A linear graph with n >= 1 bivalent vertices v1..vn, two boundary legs.
inline Graph linear_graph(std::size_t n) {
  check(n >= 1, "BadPairingClass", "linear graph needs at least one vertex");
  std::vector<std::vector<Id>> classes;
  IdMap<Id> inc;
  std::vector<Id> vs;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  classes.push_back({"b1", "d1"});
  inc["d1"] = vs.front();
  for (std::size_t i = 1; i < n; ++i) {
    Id x = "e" + std::to_string(i);
    classes.push_back({x, x + "*"});
    inc[x] = vs[i - 1];
    inc[x + "*"] = vs[i];
  }
  classes.push_back({"b2", "d2"});
  inc["d2"] = vs.back();
  return build_graph(classes, inc, vs);
}

/// A cycle with n >= 1 vertices (n = 1 is the loop at one vertex).
inline Graph cycle_graph(std::size_t n) {
  check(n >= 1, "BadPairingClass", "cycle needs at least one vertex");
  std::vector<std::vector<Id>> classes;
  IdMap<Id> inc;
  std::vector<Id> vs;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    Id x = "e" + std::to_string(i + 1);
    classes.push_back({x, x + "*"});
    inc[x] = vs[i];
    inc[x + "*"] = vs[(i + 1) % n];
  }
  return build_graph(classes, inc, vs);
}

/// The two-vertex graph with a pair of parallel edges (the target G' of
/// the etale-not-embedding example).
inline Graph double_edge_graph() {
  return build_graph({{"p", "p*"}, {"q", "q*"}},
                     {{"p", "v"}, {"p*", "w"}, {"q", "v"}, {"q*", "w"}},
                     {"v", "w"});
}

/// The four-vertex double cover G of the double edge graph: an unlabeled
/// 4-cycle v0 w1 v1 w0.
inline Graph double_cover_graph() {
  return build_graph(
      {{"a0", "a0*"}, {"a1", "a1*"}, {"b0", "b0*"}, {"b1", "b1*"}},
      {{"a0", "v0"}, {"a0*", "w0"}, {"a1", "v1"}, {"a1*", "w1"},
       {"b0", "v1"}, {"b0*", "w0"}, {"b1", "v0"}, {"b1*", "w1"}},
      {"v0", "v1", "w0", "w1"});
}

/// A colored graph: zeta must be involutive over the color set.
struct ColoredGraph {
  Graph graph;
  IdMap<Id> zeta;  // arcs -> colors

  void validate(const InvolutiveSet& colors) const {
    graph.validate();
    check(key_set(zeta) == graph.arcs.elements(), "ColorMismatch",
          "coloring must be total on arcs");
    for (const auto& [a, c] : zeta) {
      check(colors.contains(c), "ColorMismatch", "unknown color '" + c + "'");
      check(zeta.at(graph.arcs.dagger(a)) == colors.dagger(c), "ColorMismatch",
            "coloring of '" + a + "' is not involutive");
    }
  }

  bool operator==(const ColoredGraph& o) const {
    return graph == o.graph && zeta == o.zeta;
  }
};

}  // namespace modgraph
