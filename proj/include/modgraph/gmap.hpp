#pragma once

#include "modgraph/subst.hpp"

namespace modgraph {

/// Strict = the graphical category U (safe connected objects, no total
/// collapse); Extended = the category with nodeless loops and the relaxed
/// collapse condition (iii').
enum class Mode { Strict, Extended };

inline void check_object(const Graph& g, Mode mode) {
  check(g.is_connected(), "NotConnected", "objects must be connected");
  if (mode == Mode::Strict)
    check(g.is_safe(), "NotAnObject",
          "strict mode admits only safe graphs as objects");
}

/// A morphism of the graphical category: an involutive arc map phi0 and
/// an assignment phi1 of embedding classes in the target to vertices.
struct GraphicalMap {
  Graph source;
  Graph target;
  IdMap<Id> phi0;
  IdMap<EmbeddingClass> phi1;
  Mode mode = Mode::Strict;

  bool same_arrow(const GraphicalMap& o) const {
    return phi0 == o.phi0 && phi1 == o.phi1;
  }

  std::string str() const {
    std::vector<std::string> parts;
    for (const auto& [a, b] : phi0) parts.push_back(a + "->" + b);
    std::string s = "phi0[" + join(parts, ",") + "]";
    for (const auto& [v, c] : phi1) s += " " + v + ":" + c.str();
    return s;
  }
};

inline GraphicalMap make_graphical_map(const Graph& source, const Graph& target,
                                       const IdMap<Id>& phi0,
                                       const IdMap<EmbeddingClass>& phi1,
                                       Mode mode) {
  check_object(source, mode);
  check_object(target, mode);
  check(key_set(phi0) == source.arcs.elements(), "NotInvolutive",
        "phi0 must be total on the source arcs");
  for (const auto& [a, b] : phi0) {
    check(target.arcs.contains(b), "NotInvolutive",
          "phi0 image '" + b + "' is not a target arc");
    check(phi0.at(source.arcs.dagger(a)) == target.arcs.dagger(b),
          "NotInvolutive", "phi0 is not involutive at '" + a + "'");
  }
  check(key_set(phi1) == source.vertices, "BoundaryMismatch",
        "phi1 must be total on the source vertices");
  for (const auto& [v, c] : phi1)
    reconstruct_embedding(target, c);  // validates the class over the target
  // (i) no vertex of the target is covered twice
  IdSet used;
  for (const auto& [v, c] : phi1)
    for (const auto& w : c.W)
      check(used.insert(w).second, "VertexDoubleCover",
            "target vertex '" + w + "' is covered twice");
  // (ii) phi0 . i maps nbhd(v) bijectively onto the boundary of phi1(v)
  for (const auto& [v, c] : phi1) {
    IdSet image;
    for (const auto& d : source.nbhd(v)) {
      const Id b = phi0.at(source.arcs.dagger(d));
      check(image.insert(b).second, "BoundaryMismatch",
            "phi0 . i is not injective on nbhd(" + v + ")");
    }
    check(image == c.bd, "BoundaryMismatch",
          "phi0(i nbhd(" + v + ")) differs from the boundary of phi1(" + v + ")");
  }
  // (iii) / (iii') collapse conditions
  if (source.boundary.empty()) {
    bool all_edges = true;
    for (const auto& [v, c] : phi1)
      if (!is_edge_class(c)) all_edges = false;
    if (mode == Mode::Strict)
      check(!all_edges, "CollapseViolation",
            "a graph with empty boundary may not collapse entirely to an edge");
    else
      check(!all_edges || target.is_nodeless_loop(), "CollapseViolation",
            "a total collapse must land in a nodeless loop");
  }
  return GraphicalMap{source, target, phi0, phi1, mode};
}

inline GraphicalMap identity_map(const Graph& g, Mode mode = Mode::Strict) {
  IdMap<Id> phi0;
  for (const auto& a : g.arcs.elements()) phi0[a] = a;
  IdMap<EmbeddingClass> phi1;
  for (const auto& v : g.vertices) phi1[v] = vertex_star_class(g, v);
  return make_graphical_map(g, g, phi0, phi1, mode);
}

/// Composite of graphical maps, computed on image records: the class of
/// K_v{H_w} has vertex and arc images the unions of those of the psi1(w),
/// and boundary image psi0(bd(phi1(v))).
inline GraphicalMap compose(const GraphicalMap& psi, const GraphicalMap& phi) {
  check(phi.target == psi.source, "NotComposable",
        "middle objects do not agree");
  check(phi.mode == psi.mode, "NotComposable", "modes differ");
  IdMap<Id> phi0;
  for (const auto& [a, b] : phi.phi0) phi0[a] = psi.phi0.at(b);
  IdMap<EmbeddingClass> phi1;
  for (const auto& [v, c] : phi.phi1) {
    EmbeddingClass out;
    for (const auto& b : c.bd) out.bd.insert(psi.phi0.at(b));
    if (c.W.empty()) {
      for (const auto& b : c.B) out.B.insert(psi.phi0.at(b));
    } else {
      for (const auto& w : c.W) {
        const EmbeddingClass& cw = psi.phi1.at(w);
        out.W.insert(cw.W.begin(), cw.W.end());
        out.B.insert(cw.B.begin(), cw.B.end());
      }
    }
    phi1[v] = out;
  }
  return make_graphical_map(phi.source, psi.target, phi0, phi1, phi.mode);
}

/// The graphical map carried by an embedding of graphs: phi0 is the arc
/// map and each vertex goes to the star class at its image.
inline GraphicalMap embedding_to_map(const EtaleMap& f, Mode mode) {
  IdMap<EmbeddingClass> phi1;
  for (const auto& [v, w] : f.vertex_map)
    phi1[v] = vertex_star_class(f.target, w);
  return make_graphical_map(f.source, f.target, f.arc_map, phi1, mode);
}

inline bool is_active(const GraphicalMap& phi) {
  IdSet image;
  for (const auto& b : phi.source.boundary) {
    if (!image.insert(phi.phi0.at(b)).second) return false;
  }
  return image == phi.target.boundary;
}

/// The active map star_S -> G attached to a bijection xi : S -> boundary(G);
/// the star vertex goes to the class of the identity of G.
inline GraphicalMap star_active(const Graph& g, const std::vector<Id>& slots,
                                const IdMap<Id>& xi, Mode mode = Mode::Strict,
                                const Id& vertex = "v") {
  Graph st = star_of(slots, vertex);
  check(key_set(xi) == IdSet(slots.begin(), slots.end()), "NotBijection",
        "xi must be defined exactly on the slots");
  IdSet image;
  for (const auto& [s, b] : xi) {
    check(g.boundary.count(b) > 0, "NotBijection",
          "xi image '" + b + "' is not a boundary arc");
    check(image.insert(b).second, "NotBijection", "xi is not injective");
  }
  check(image == g.boundary, "NotBijection", "xi is not onto the boundary");
  IdMap<Id> phi0;
  for (const auto& s : slots) {
    phi0[s] = xi.at(s);
    phi0[st.arcs.dagger(s)] = g.arcs.dagger(xi.at(s));
  }
  IdMap<EmbeddingClass> phi1{{vertex, identity_class(g)}};
  return make_graphical_map(st, g, phi0, phi1, mode);
}

inline GraphicalMap canonical_active(const Graph& g, Mode mode = Mode::Strict) {
  IdMap<Id> xi;
  for (const auto& b : g.boundary) xi[b] = b;
  return star_active(g, to_vector(g.boundary), xi, mode);
}

/// Result of the active/embedding factorization: phi = embedding . active
/// through the middle object G{K_v}.
struct Factorization {
  Graph middle;
  GraphicalMap active;
  GraphicalMap embedding;
};

/// The assembled etale map K_v{H_w} -> G'' realizing (psi . phi)_1(v) by
/// substitution of representatives; also the engine for factorize().
namespace detail {

struct AssembledPiece {
  SubstResult sub;
  IdMap<Id> arc_map;     // arcs of the substituted graph -> target arcs
  IdMap<Id> vertex_map;  // vertices -> target vertices
  IdMap<EtaleMap> reps;  // representative embedding per base vertex
  IdMap<IdMap<Id>> legs; // per base vertex: target boundary image -> leg
};

/// Substitute representatives of cls(w) into `base` (a graph mapping to
/// the middle object via base_arc_image/base_vertex_image over `target`),
/// where m_v is derived from arc images. Returns the glued graph with its
/// induced maps into `target`.
inline AssembledPiece assemble(const Graph& base,
                               const IdMap<Id>& base_arc_image,
                               const IdMap<Id>& base_vertex_image,
                               const Graph& target,
                               const std::function<EmbeddingClass(const Id&)>& cls) {
  SubstitutionSpec spec;
  spec.base = base;
  AssembledPiece out;
  for (const auto& v : base.vertices) {
    EtaleMap rep = reconstruct_embedding(target, cls(base_vertex_image.at(v)));
    IdMap<Id> bd_inv;  // target boundary image -> source leg
    for (const auto& leg : rep.source.boundary)
      bd_inv[rep.arc_map.at(leg)] = leg;
    IdMap<Id> m;
    for (const auto& d : base.nbhd(v)) {
      const Id a = base.arcs.dagger(d);
      auto it = bd_inv.find(base_arc_image.at(a));
      check(it != bd_inv.end(), "BoundaryMismatch",
            "no leg over the image of '" + a + "'");
      m[a] = it->second;
    }
    spec.ident[v] = m;
    spec.plugs[v] = rep.source;
    out.legs[v] = std::move(bd_inv);
    out.reps.emplace(v, std::move(rep));
  }
  out.sub = substitute(spec);
  for (const auto& v : base.vertices) {
    const EtaleMap& rep = out.reps.at(v);
    for (const auto& [a, c] : out.sub.arc_proj.at(v)) {
      const Id img = rep.arc_map.at(a);
      auto it = out.arc_map.find(c);
      check(it == out.arc_map.end() || it->second == img, "GluingClash",
            "assembled arc images disagree on '" + c + "'");
      out.arc_map[c] = img;
    }
    for (const auto& [w, c] : out.sub.vertex_inj.at(v))
      out.vertex_map[c] = rep.vertex_map.at(w);
  }
  return out;
}

}  // namespace detail

/// Composite computed through actual substitution of representatives; an
/// independent route used to cross-check compose().
inline GraphicalMap compose_via_substitution(const GraphicalMap& psi,
                                             const GraphicalMap& phi) {
  check(phi.target == psi.source, "NotComposable",
        "middle objects do not agree");
  IdMap<Id> phi0;
  for (const auto& [a, b] : phi.phi0) phi0[a] = psi.phi0.at(b);
  IdMap<EmbeddingClass> phi1;
  for (const auto& [v, c] : phi.phi1) {
    EtaleMap rep = reconstruct_embedding(phi.target, c);
    if (rep.source.vertices.empty()) {
      IdMap<Id> am;
      for (const auto& [a, b] : rep.arc_map) am[a] = psi.phi0.at(b);
      phi1[v] = embedding_class(check_etale(rep.source, psi.target, am, {}));
      continue;
    }
    // image data of K_v inside G' drives the assembly into G''
    IdMap<Id> base_arc_image = rep.arc_map;
    for (auto& [a, b] : base_arc_image) b = psi.phi0.at(b);
    detail::AssembledPiece piece = detail::assemble(
        rep.source, base_arc_image, rep.vertex_map, psi.target,
        [&](const Id& w) { return psi.phi1.at(w); });
    phi1[v] = embedding_class(check_etale(piece.sub.graph, psi.target,
                                          piece.arc_map, piece.vertex_map));
  }
  return make_graphical_map(phi.source, psi.target, phi0, phi1, phi.mode);
}

/// Orthogonal factorization phi = embedding . active: the middle object is
/// G{K_v} for representatives K_v of phi1(v).
inline Factorization factorize(const GraphicalMap& phi) {
  const Graph& g = phi.source;
  const Graph& h = phi.target;
  if (g.vertices.empty()) {
    // the image of an edge or nodeless loop is the middle object
    EmbeddingClass c;
    for (const auto& [a, b] : phi.phi0) c.B.insert(b);
    for (const auto& b : g.boundary) c.bd.insert(phi.phi0.at(b));
    EtaleMap rep = reconstruct_embedding(h, c);
    IdMap<Id> inv;
    for (const auto& [a, b] : rep.arc_map) inv[b] = a;
    IdMap<Id> a0;
    for (const auto& [a, b] : phi.phi0) a0[a] = inv.at(b);
    GraphicalMap active =
        make_graphical_map(g, rep.source, a0, {}, phi.mode);
    return Factorization{rep.source, active, embedding_to_map(rep, phi.mode)};
  }
  IdMap<Id> base_vertex_image;  // factorization assembles over g itself
  for (const auto& v : g.vertices) base_vertex_image[v] = v;
  detail::AssembledPiece piece =
      detail::assemble(g, phi.phi0, base_vertex_image, h,
                       [&](const Id& v) { return phi.phi1.at(v); });
  const Graph& mid = piece.sub.graph;
  // active part g -> mid: a dart d at v goes to the image of the partner
  // of the leg of K_v lying over phi0(i d)
  IdMap<Id> a0;
  for (const auto& b : g.boundary) a0[b] = piece.sub.boundary_map.at(b);
  for (const auto& d : g.darts) {
    const Id v = g.target(d);
    const Id leg = piece.legs.at(v).at(phi.phi0.at(g.arcs.dagger(d)));
    a0[d] = piece.sub.arc_proj.at(v).at(piece.reps.at(v).source.arcs.dagger(leg));
  }
  IdMap<EmbeddingClass> a1;
  for (const auto& v : g.vertices) {
    EmbeddingClass c;
    for (const auto& [w, c2] : piece.sub.vertex_inj.at(v)) c.W.insert(c2);
    for (const auto& [a, c2] : piece.sub.arc_proj.at(v)) c.B.insert(c2);
    for (const auto& l : piece.reps.at(v).source.boundary)
      c.bd.insert(piece.sub.arc_proj.at(v).at(l));
    a1[v] = c;
  }
  GraphicalMap active = make_graphical_map(g, mid, a0, a1, phi.mode);
  GraphicalMap embedding = embedding_to_map(
      check_etale(mid, h, piece.arc_map, piece.vertex_map), phi.mode);
  return Factorization{mid, active, embedding};
}

/// Generating data of the Segal core: the star inclusions and, per
/// internal edge, the pair of edge maps into the stars of its endpoints.
struct SegalCoreData {
  std::vector<Id> vertex_order;            // sorted vertices
  IdMap<VertexStar> stars;                 // vertex -> its star
  IdMap<GraphicalMap> star_inclusions;     // iota_v : star_v -> G
  struct EdgePair {
    std::pair<Id, Id> edge;  // [x1, x2]
    GraphicalMap outer;      // edge -> star at t(x1): l -> leg(x1), r -> x1
    GraphicalMap inner;      // edge -> star at t(x2): r -> leg(x2), l -> x2
  };
  std::vector<EdgePair> edges;
};

inline SegalCoreData segal_core_data(const Graph& g, Mode mode = Mode::Strict) {
  check(g.has_vertices(), "NoVertices",
        "the Segal core map of a vertexless graph is the identity");
  SegalCoreData out;
  for (const auto& v : g.vertices) {
    out.vertex_order.push_back(v);
    VertexStar st = star_of_vertex(g, v);
    IdMap<Id> vm{{v, v}};
    out.star_inclusions.emplace(
        v, embedding_to_map(check_etale(st.star, g, st.arc_map, vm), mode));
    out.stars.emplace(v, std::move(st));
  }
  Graph e = exceptional_edge();
  for (const auto& [x1, x2] : g.internal_edges()) {
    const VertexStar& s1 = out.stars.at(g.target(x1));
    const VertexStar& s2 = out.stars.at(g.target(x2));
    IdMap<Id> f1{{"l", s1.leg_of_dart.at(x1)}, {"r", x1}};
    IdMap<Id> f2{{"r", s2.leg_of_dart.at(x2)}, {"l", x2}};
    SegalCoreData::EdgePair pair{
        {x1, x2},
        make_graphical_map(e, s1.star, f1, {}, mode),
        make_graphical_map(e, s2.star, f2, {}, mode)};
    out.edges.push_back(std::move(pair));
  }
  return out;
}

/// Exhaustive enumeration of the hom-set between two graphs, sorted by a
/// stable serialization.  phi0 is chosen orbit by orbit; per-vertex
/// candidates are the embedding classes whose boundary matches
/// phi0(i nbhd(v)), filtered by the vertex-disjointness axiom.
inline std::vector<GraphicalMap> homset(const Graph& g, const Graph& h,
                                        Mode mode = Mode::Strict) {
  check_object(g, mode);
  check_object(h, mode);
  std::vector<GraphicalMap> out;
  std::map<IdSet, std::vector<EmbeddingClass>> emb_by_bd;
  if (!h.is_nodeless_loop()) {
    for (const auto& c : enumerate_embeddings(h)) emb_by_bd[c.bd].push_back(c);
  } else {
    EmbeddingClass edge;  // Emb of a nodeless loop: the edge and the loop
    edge.B = h.arcs.elements();
    edge.bd = h.arcs.elements();
    EmbeddingClass loop;
    loop.B = h.arcs.elements();
    emb_by_bd[edge.bd].push_back(edge);
    emb_by_bd[loop.bd].push_back(loop);
  }

  const auto orbits = g.arcs.orbits();
  const std::vector<Id> target_arcs = to_vector(h.arcs.elements());
  IdMap<Id> phi0;

  // vertices whose neighbourhood orbits are all assigned after orbit k
  std::map<std::size_t, std::vector<Id>> ready_after;
  {
    IdMap<std::size_t> last;
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      for (const Id& a : {orbits[k].first, orbits[k].second})
        if (g.darts.count(a)) last[g.target(a)] = k;
    }
    for (const auto& [v, k] : last) ready_after[k].push_back(v);
  }

  IdMap<std::vector<EmbeddingClass>> candidates;
  std::function<void(std::size_t)> choose_phi1;
  std::function<void(std::size_t)> choose_phi0;

  auto vertex_candidates = [&](const Id& v) -> std::vector<EmbeddingClass> {
    IdSet image;
    for (const auto& d : g.nbhd(v)) {
      const Id b = phi0.at(g.arcs.dagger(d));
      if (!image.insert(b).second) return {};
    }
    auto it = emb_by_bd.find(image);
    if (it == emb_by_bd.end()) return {};
    return it->second;
  };

  choose_phi0 = [&](std::size_t k) {
    if (k == orbits.size()) {
      candidates.clear();
      for (const auto& v : g.vertices) {
        auto cs = vertex_candidates(v);
        if (cs.empty()) return;
        candidates[v] = cs;
      }
      choose_phi1(0);
      return;
    }
    const auto& [x, y] = orbits[k];
    for (const auto& b : target_arcs) {
      phi0[x] = b;
      phi0[y] = h.arcs.dagger(b);
      bool ok = true;
      if (auto it = ready_after.find(k); it != ready_after.end())
        for (const auto& v : it->second)
          if (vertex_candidates(v).empty()) {
            ok = false;
            break;
          }
      if (ok) choose_phi0(k + 1);
      phi0.erase(x);
      phi0.erase(y);
    }
  };

  std::vector<Id> vorder;
  IdMap<EmbeddingClass> phi1;
  IdSet used_w;
  choose_phi1 = [&](std::size_t i) {
    if (i == vorder.size()) {
      try {
        out.push_back(make_graphical_map(g, h, phi0, phi1, mode));
      } catch (const Error&) {
      }
      return;
    }
    const Id& v = vorder[i];
    for (const auto& c : candidates.at(v)) {
      bool disjoint = true;
      for (const auto& w : c.W)
        if (used_w.count(w)) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      phi1[v] = c;
      for (const auto& w : c.W) used_w.insert(w);
      choose_phi1(i + 1);
      for (const auto& w : c.W) used_w.erase(w);
      phi1.erase(v);
    }
  };
  vorder = to_vector(g.vertices);
  choose_phi0(0);

  std::sort(out.begin(), out.end(),
            [](const GraphicalMap& a, const GraphicalMap& b) {
              return a.str() < b.str();
            });
  return out;
}

}  // namespace modgraph
