#pragma once

#include "modgraph/iso.hpp"

namespace modgraph {

/// An etale map of graphs: an involutive arc map and a vertex map such
/// that the incidence square is a pullback (each neighbourhood maps
/// bijectively onto the neighbourhood of the image vertex) and interior
/// arcs land in interior arcs.
struct EtaleMap {
  Graph source;
  Graph target;
  IdMap<Id> arc_map;     // alpha : A -> A'
  IdMap<Id> vertex_map;  // omega : V -> V'
};

/// Validate candidate data as an etale map.
inline EtaleMap check_etale(const Graph& source, const Graph& target,
                            const IdMap<Id>& arc_map,
                            const IdMap<Id>& vertex_map) {
  check(key_set(arc_map) == source.arcs.elements(), "NotInvolutive",
        "arc map must be total on the source arcs");
  check(key_set(vertex_map) == source.vertices, "PullbackFails",
        "vertex map must be total on the source vertices");
  for (const auto& [a, b] : arc_map) {
    check(target.arcs.contains(b), "NotInvolutive",
          "arc image '" + b + "' is not a target arc");
    check(arc_map.at(source.arcs.dagger(a)) == target.arcs.dagger(b),
          "NotInvolutive", "arc map does not commute with involutions at '" +
                               a + "'");
  }
  for (const auto& [v, w] : vertex_map)
    check(target.vertices.count(w) > 0, "PullbackFails",
          "vertex image '" + w + "' unknown");
  // naturality: darts to darts over the vertex map
  for (const auto& d : source.darts) {
    const Id& b = arc_map.at(d);
    check(target.darts.count(b) > 0, "PullbackFails",
          "dart '" + d + "' maps to non-dart '" + b + "'");
    check(target.target(b) == vertex_map.at(source.target(d)), "PullbackFails",
          "incidence square does not commute at dart '" + d + "'");
  }
  // pullback: nbhd(v) -> nbhd(omega v) is a bijection for each v
  for (const auto& v : source.vertices) {
    const IdSet nb = source.nbhd(v);
    const IdSet nb2 = target.nbhd(vertex_map.at(v));
    IdSet image;
    for (const auto& d : nb) image.insert(arc_map.at(d));
    check(image.size() == nb.size() && image == nb2, "PullbackFails",
          "neighbourhood of '" + v + "' does not map bijectively onto that of '" +
              vertex_map.at(v) + "'");
  }
  // interior arcs map into interior arcs
  for (const auto& a : source.interior())
    check(target.interior().count(arc_map.at(a)) > 0, "InteriorLeak",
          "interior arc '" + a + "' leaks out of the target interior");
  return EtaleMap{source, target, arc_map, vertex_map};
}

inline bool is_embedding(const EtaleMap& f) {
  if (!f.source.is_connected() || !f.target.is_connected()) return false;
  IdSet image;
  for (const auto& [v, w] : f.vertex_map)
    if (!image.insert(w).second) return false;
  return true;
}

/// The isomorphism class of an embedding into a fixed codomain, recorded
/// by its image data: the vertex sum W, the arc image B, and the image of
/// the source boundary.  Image data determines the class (two embeddings
/// have equal records iff they differ by a source isomorphism), which the
/// test suite verifies exhaustively against the f = h.z oracle.
struct EmbeddingClass {
  IdSet W;   // image vertices
  IdSet B;   // image arcs
  IdSet bd;  // image of the source boundary

  bool operator==(const EmbeddingClass& o) const {
    return W == o.W && B == o.B && bd == o.bd;
  }
  bool operator!=(const EmbeddingClass& o) const { return !(*this == o); }
  bool operator<(const EmbeddingClass& o) const {
    return std::tie(W, B, bd) < std::tie(o.W, o.B, o.bd);
  }

  std::string str() const {
    return "W=" + brace_list(W) + " B=" + brace_list(B) + " bd=" + brace_list(bd);
  }
};

inline EmbeddingClass embedding_class(const EtaleMap& f) {
  check(is_embedding(f), "NotEmbedding",
        "map is not an embedding (source connected, vertex map injective)");
  EmbeddingClass out;
  for (const auto& [v, w] : f.vertex_map) out.W.insert(w);
  for (const auto& [a, b] : f.arc_map) out.B.insert(b);
  for (const auto& b : f.source.boundary) out.bd.insert(f.arc_map.at(b));
  return out;
}

inline IdSet vertex_sum(const EmbeddingClass& c) { return c.W; }
inline IdSet boundary_of(const EmbeddingClass& c) { return c.bd; }

/// A class whose representative source is an exceptional edge.
inline bool is_edge_class(const EmbeddingClass& c) {
  return c.W.empty() && c.B.size() == 2 && c.bd == c.B;
}

/// A class whose representative source is a nodeless loop.
inline bool is_nodeless_class(const EmbeddingClass& c) {
  return c.W.empty() && c.B.size() == 2 && c.bd.empty();
}

/// Rebuild the canonical representative embedding of a class.
///
/// The source is assembled from the image data: one dart per dart of G in
/// B based at W, one boundary leg per element of bd.  An arc of G can be
/// hit twice (once by a dart, once by a leg); the involution on the source
/// then pairs dart with opposite leg, which is the only connected choice.
inline EtaleMap reconstruct_embedding(const Graph& g, const EmbeddingClass& c) {
  for (const auto& w : c.W)
    check(g.vertices.count(w) > 0, "BadEmbeddingClass",
          "unknown image vertex '" + w + "'");
  for (const auto& b : c.B)
    check(g.arcs.contains(b), "BadEmbeddingClass",
          "unknown image arc '" + b + "'");
  check(is_subset(c.bd, c.B), "BadEmbeddingClass",
        "boundary image must lie inside the arc image");

  auto dart_hit = [&](const Id& x) {
    return g.darts.count(x) > 0 && c.W.count(g.target(x)) > 0;
  };
  // neighbourhoods of image vertices must be contained in B
  for (const auto& w : c.W)
    check(is_subset(g.nbhd(w), c.B), "BadEmbeddingClass",
          "image arcs miss part of the neighbourhood of '" + w + "'");

  // source arcs: dart copies keep their G names, legs get primed names
  IdSet dart_names;
  for (const auto& x : c.B)
    if (dart_hit(x)) dart_names.insert(x);
  IdMap<Id> leg_name;  // image arc in bd -> fresh source leg name
  IdSet taken = dart_names;
  for (const auto& x : c.bd) {
    Id nm = dart_hit(x) ? fresh_name(x + "'", taken) : x;
    taken.insert(nm);
    leg_name[x] = nm;
  }

  IdMap<Id> alpha;
  for (const auto& d : dart_names) alpha[d] = d;
  for (const auto& [x, nm] : leg_name) alpha[nm] = x;

  // involution on the source, per image orbit multiplicities
  std::vector<std::vector<Id>> classes;
  IdSet interior_src;
  for (const auto& [x, y] : g.arcs.orbits()) {
    const bool hx = c.B.count(x) > 0, hy = c.B.count(y) > 0;
    if (!hx && !hy) continue;
    check(hx && hy, "BadEmbeddingClass",
          "image arcs contain '" + (hx ? x : y) + "' but not its partner");
    const int mx = (dart_hit(x) ? 1 : 0) + (c.bd.count(x) ? 1 : 0);
    const int my = (dart_hit(y) ? 1 : 0) + (c.bd.count(y) ? 1 : 0);
    check(mx == my, "BadEmbeddingClass",
          "inconsistent multiplicities over edge {" + x + "," + y + "}");
    if (mx == 0) {
      // interior pair: only legal over interior arcs of the codomain
      check(g.interior().count(x) && g.interior().count(y),
            "BadEmbeddingClass",
            "arc '" + x + "' is unaccounted for in the image data");
      classes.push_back({x, y});
      interior_src.insert(x);
      interior_src.insert(y);
      alpha[x] = x;
      alpha[y] = y;
    } else if (mx == 2) {
      // cut edge: dart over x pairs with leg over y and vice versa
      classes.push_back({x, leg_name.at(y)});
      classes.push_back({y, leg_name.at(x)});
    } else {
      Id cx = dart_hit(x) ? x : leg_name.at(x);
      Id cy = dart_hit(y) ? y : leg_name.at(y);
      classes.push_back({cx, cy});
    }
  }

  IdMap<Id> inc;
  for (const auto& d : dart_names) inc[d] = g.target(d);
  IdSet bd_src;
  for (const auto& [x, nm] : leg_name) bd_src.insert(nm);
  Graph source =
      build_graph(classes, inc, to_vector(c.W), &bd_src);
  check(source.is_connected(), "BadEmbeddingClass",
        "image data does not describe a connected source");
  IdMap<Id> omega;
  for (const auto& w : c.W) omega[w] = w;
  EtaleMap f = check_etale(source, g, alpha, omega);
  check(is_embedding(f), "BadEmbeddingClass", "reconstruction is not an embedding");
  return f;
}

/// The set Emb(G) for a connected safe graph: all embedding classes, in a
/// deterministic order.  Classes are generated from their image data: a
/// choice of image vertices W plus a choice of internal edges of W to cut
/// open, together with the edge classes (W empty).
inline std::vector<EmbeddingClass> enumerate_embeddings(const Graph& g) {
  check(g.is_connected(), "NotConnected", "Emb(G) needs a connected graph");
  check(g.is_safe(), "NotSafe", "Emb(G) needs a safe graph");
  std::set<EmbeddingClass> out;
  // edge classes, one per involution orbit
  for (const auto& [x, y] : g.arcs.orbits()) {
    EmbeddingClass c;
    c.B = {x, y};
    c.bd = {x, y};
    out.insert(c);
  }
  // vertexful classes
  const std::vector<Id> vs = to_vector(g.vertices);
  const std::size_t n = vs.size();
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    IdSet W;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) W.insert(vs[i]);
    auto dart_hit = [&](const Id& x) {
      return g.darts.count(x) > 0 && W.count(g.target(x)) > 0;
    };
    // internal edges of the induced region: both ends dart-hit
    std::vector<std::pair<Id, Id>> cuttable;
    IdSet base_bd;  // boundary forced by half-hit edges
    IdSet B;
    for (const auto& w : W)
      for (const auto& d : g.nbhd(w)) B.insert(d);
    for (const auto& x : IdSet(B)) {
      const Id y = g.arcs.dagger(x);
      if (dart_hit(x) && dart_hit(y)) {
        if (x < y) cuttable.emplace_back(x, y);
      } else if (dart_hit(x)) {
        base_bd.insert(y);
        B.insert(y);
      }
    }
    const std::size_t m = cuttable.size();
    for (std::size_t cut = 0; cut < (1u << m); ++cut) {
      EmbeddingClass c;
      c.W = W;
      c.B = B;
      c.bd = base_bd;
      for (std::size_t i = 0; i < m; ++i)
        if (cut & (1u << i)) {
          c.bd.insert(cuttable[i].first);
          c.bd.insert(cuttable[i].second);
        }
      try {
        reconstruct_embedding(g, c);  // connectivity filter
      } catch (const Error&) {
        continue;
      }
      out.insert(c);
    }
  }
  return std::vector<EmbeddingClass>(out.begin(), out.end());
}

/// The class of the canonical embedding of the star of a vertex.
inline EmbeddingClass vertex_star_class(const Graph& g, const Id& v) {
  EmbeddingClass c;
  c.W = {v};
  const IdSet nb = g.nbhd(v);
  c.B = set_union(nb, g.dagger_set(nb));
  c.bd = g.dagger_set(nb);
  return c;
}

/// The class of the identity embedding.
inline EmbeddingClass identity_class(const Graph& g) {
  EmbeddingClass c;
  c.W = g.vertices;
  c.B = g.arcs.elements();
  c.bd = g.boundary;
  return c;
}

}  // namespace modgraph
