#pragma once

#include "modgraph/decorated.hpp"

namespace modgraph {

/// The free modular operad generated by a connected graph G: colors are
/// the arcs of G, elements are decorated shapes whose vertex decorations
/// are vertices of G (with the coloring restricting to a bijection onto
/// the i-neighbourhood).
struct FreeModularOperad {
  Graph generator;

  InvolutiveSet colors() const { return generator.arcs; }

  /// The generating collection: one point at each i-neighbourhood.
  Collection decorations() const {
    Collection out;
    out.colors = generator.arcs;
    for (const auto& v : generator.vertices) {
      ColoredObject obj;
      for (const auto& d : generator.nbhd(v)) {
        const Id a = generator.arcs.dagger(d);
        obj.coloring[a] = a;
      }
      out.fibers[obj.color_class()].push_back(v);
    }
    // distinct vertices have distinct i-neighbourhoods, but two may share
    // a color class; keep fibers sorted for determinism
    for (auto& [k, f] : out.fibers) std::sort(f.begin(), f.end());
    return out;
  }

  std::vector<VertexProfile> profiles() const {
    std::vector<VertexProfile> out;
    for (const auto& v : generator.vertices) {
      VertexProfile p;
      p.tag = v;
      for (const auto& d : generator.nbhd(v))
        p.slot_colors.push_back(generator.arcs.dagger(d));
      std::sort(p.slot_colors.begin(), p.slot_colors.end());
      out.push_back(p);
    }
    return out;
  }
};

inline FreeModularOperad free_operad(const Graph& g) {
  check(g.is_connected(), "NotConnected",
        "free modular operads are generated by connected graphs");
  return FreeModularOperad{g};
}

/// Equality of free elements: decorated isomorphism with matching
/// generator vertices.
inline bool free_equal(const FreeModularOperad& f, const DecoratedGraph& a,
                       const DecoratedGraph& b) {
  Collection c;
  c.colors = f.colors();
  return decorated_equal(a, b, c);
}

/// All elements of the fiber of M(G) at (S, xi) whose shapes have at most
/// `vertex_bound` vertices, without duplicates, deterministic order.
inline std::vector<DecoratedGraph> free_elements(const FreeModularOperad& f,
                                                 const ColoredObject& obj,
                                                 std::size_t vertex_bound) {
  for (const auto& [s, c] : obj.coloring)
    check(f.generator.arcs.contains(c), "ColorMismatch",
          "'" + c + "' is not an arc of the generator");
  return enumerate_shapes(f.colors(), f.profiles(), obj, vertex_bound);
}

/// The element of M(G)(boundary_of(c), incl) represented by an embedding
/// class: the reconstructed source, colored by its arc map, decorated by
/// the image vertices.
inline DecoratedGraph embedding_to_element(const Graph& g,
                                           const EmbeddingClass& c) {
  EtaleMap rep = reconstruct_embedding(g, c);
  DecoratedGraph out;
  out.shape.graph = rep.source;
  out.shape.zeta = rep.arc_map;
  for (const auto& leg : rep.source.boundary)
    out.boundary[rep.arc_map.at(leg)] = leg;  // slots are the image arcs
  for (const auto& [w, v] : rep.vertex_map) out.dec[w] = v;
  return out;
}

}  // namespace modgraph
