#pragma once

#include "modgraph/operad.hpp"

namespace modgraph {

/// A map of modular operads out of a free one, given by Lemma-style data:
/// an involutive color map f0 and an element f1(v) of the target at
/// (i nbhd(v), f0|) for each generator vertex.  The target is either
/// another free operad (elements are decorated graphs) or a tabulated one
/// (elements are fiber names).
struct OperadMap {
  Graph source_gen;
  IdMap<Id> f0;
  bool free_target = true;
  Graph target_gen;
  std::shared_ptr<const TabulatedOperad> target;
  IdMap<DecoratedGraph> f1_free;
  IdMap<Id> f1_tab;

  std::string str() const {
    std::vector<std::string> parts;
    for (const auto& [a, b] : f0) parts.push_back(a + "->" + b);
    std::string s = "f0[" + join(parts, ",") + "]";
    if (free_target)
      for (const auto& [v, d] : f1_free) s += " " + v + "={" + d.str() + "}";
    else
      for (const auto& [v, e] : f1_tab) s += " " + v + "=" + e;
    return s;
  }
};

inline ColoredObject map_vertex_object(const Graph& h, const IdMap<Id>& f0,
                                       const Id& v) {
  ColoredObject out;
  for (const auto& d : h.nbhd(v)) {
    const Id a = h.arcs.dagger(d);
    out.coloring[a] = f0.at(a);
  }
  return out;
}

inline void check_f0(const Graph& h, const InvolutiveSet& colors,
                     const IdMap<Id>& f0) {
  check(key_set(f0) == h.arcs.elements(), "NotInvolutive",
        "f0 must be total on the source arcs");
  for (const auto& [a, c] : f0) {
    check(colors.contains(c), "ColorMismatch", "unknown color '" + c + "'");
    check(f0.at(h.arcs.dagger(a)) == colors.dagger(c), "NotInvolutive",
          "f0 is not involutive at '" + a + "'");
  }
}

inline OperadMap make_operad_map(const Graph& h, const Graph& g,
                                 const IdMap<Id>& f0,
                                 const IdMap<DecoratedGraph>& f1) {
  check_f0(h, g.arcs, f0);
  check(key_set(f1) == h.vertices, "FiberMismatch",
        "f1 must be total on the generator vertices");
  FreeModularOperad fg = free_operad(g);
  Collection coll = fg.decorations();
  for (const auto& [v, d] : f1) {
    validate_decorated(d, coll);
    check(d.ambient() == map_vertex_object(h, f0, v), "FiberMismatch",
          "f1(" + v + ") sits at the wrong colored object");
  }
  OperadMap out;
  out.source_gen = h;
  out.f0 = f0;
  out.free_target = true;
  out.target_gen = g;
  out.f1_free = f1;
  return out;
}

inline OperadMap make_operad_map(const Graph& h,
                                 std::shared_ptr<const TabulatedOperad> p,
                                 const IdMap<Id>& f0, const IdMap<Id>& f1) {
  check_f0(h, p->colors, f0);
  check(key_set(f1) == h.vertices, "FiberMismatch",
        "f1 must be total on the generator vertices");
  for (const auto& [v, e] : f1) {
    const auto fib = p->fiber(map_vertex_object(h, f0, v));
    check(std::find(fib.begin(), fib.end(), e) != fib.end(), "FiberMismatch",
          "f1(" + v + ") = '" + e + "' is not in the target fiber");
  }
  OperadMap out;
  out.source_gen = h;
  out.f0 = f0;
  out.free_target = false;
  out.target = std::move(p);
  out.f1_tab = f1;
  return out;
}

inline bool operad_map_equal(const OperadMap& a, const OperadMap& b) {
  if (a.f0 != b.f0 || a.free_target != b.free_target) return false;
  if (!a.free_target) return a.f1_tab == b.f1_tab;
  if (key_set(a.f1_free) != key_set(b.f1_free)) return false;
  FreeModularOperad fg = free_operad(a.target_gen);
  Collection coll;
  coll.colors = fg.colors();
  for (const auto& [v, d] : a.f1_free)
    if (!decorated_equal(d, b.f1_free.at(v), coll)) return false;
  return true;
}

/// Apply a map to an element of its free source (a decorated graph at
/// (S, xi)); the result is an element of the target at (S, f0 . xi) -- a
/// decorated graph for free targets, a fiber name for tabulated ones.
inline DecoratedGraph apply_map_free(const OperadMap& m,
                                     const DecoratedGraph& d) {
  check(m.free_target, "FiberMismatch", "target is tabulated");
  ColoredGraph recolored;
  recolored.graph = d.shape.graph;
  for (const auto& [a, c] : d.shape.zeta) recolored.zeta[a] = m.f0.at(c);
  IdMap<DecoratedGraph> inner;
  for (const auto& [w, v] : d.dec) {
    IdMap<Id> slotmap;  // i nbhd_K(w) -> i nbhd_H(v) via the coloring
    for (const auto& dd : d.shape.graph.nbhd(w)) {
      const Id a = d.shape.graph.arcs.dagger(dd);
      slotmap[a] = d.shape.zeta.at(a);
    }
    inner.emplace(w, reindex_boundary(m.f1_free.at(v), slotmap));
  }
  Collection coll;
  coll.colors = m.target_gen.arcs;
  return monad_mult(recolored, d.boundary, inner, coll);
}

inline Id apply_map_tab(const OperadMap& m, const DecoratedGraph& d) {
  check(!m.free_target, "FiberMismatch", "target is free");
  const TabulatedOperad& p = *m.target;
  ColoredGraph recolored;
  recolored.graph = d.shape.graph;
  for (const auto& [a, c] : d.shape.zeta) recolored.zeta[a] = m.f0.at(c);
  DecoratedGraph out;
  out.shape = recolored;
  out.boundary = d.boundary;
  for (const auto& [w, v] : d.dec) {
    const ColoredObject src = map_vertex_object(m.source_gen, m.f0, v);
    const ColoredObject dst = vertex_object(recolored, w);
    IdMap<Id> bij;  // src slots -> shape slots, inverse of the coloring
    for (const auto& dd : d.shape.graph.nbhd(w)) {
      const Id a = d.shape.graph.arcs.dagger(dd);
      bij[d.shape.zeta.at(a)] = a;
    }
    out.dec[w] = p.act(src, dst, bij, m.f1_tab.at(v));
  }
  return p.gamma(out);
}

/// Kleisli-style composition g . f where f must have a free target equal
/// to g's source.
inline OperadMap compose_operad_maps(const OperadMap& g, const OperadMap& f) {
  check(f.free_target, "NotComposable", "inner map must have a free target");
  check(f.target_gen == g.source_gen, "NotComposable",
        "middle operads do not agree");
  IdMap<Id> f0;
  for (const auto& [a, c] : f.f0) f0[a] = g.f0.at(c);
  if (g.free_target) {
    IdMap<DecoratedGraph> f1;
    for (const auto& [v, d] : f.f1_free) f1.emplace(v, apply_map_free(g, d));
    return make_operad_map(f.source_gen, g.target_gen, f0, f1);
  }
  IdMap<Id> f1;
  for (const auto& [v, d] : f.f1_free) f1[v] = apply_map_tab(g, d);
  return make_operad_map(f.source_gen, g.target, f0, f1);
}

inline OperadMap identity_operad_map(const Graph& g) {
  IdMap<Id> f0;
  for (const auto& a : g.arcs.elements()) f0[a] = a;
  IdMap<DecoratedGraph> f1;
  for (const auto& v : g.vertices)
    f1.emplace(v, monad_unit(free_operad(g).decorations(),
                             map_vertex_object(g, f0, v), v));
  return make_operad_map(g, g, f0, f1);
}

/// The faithful functor J on morphisms: phi0 becomes the color map, and
/// each embedding class phi1(v), seen as an element of the free operad on
/// the target, is reindexed to (i nbhd(v), phi0|) along the condition-(ii)
/// bijection.
inline OperadMap to_operad_map(const GraphicalMap& phi) {
  IdMap<DecoratedGraph> f1;
  for (const auto& [v, c] : phi.phi1) {
    DecoratedGraph e = embedding_to_element(phi.target, c);
    IdMap<Id> slotmap;  // i nbhd(v) -> boundary_of(c)
    for (const auto& d : phi.source.nbhd(v)) {
      const Id a = phi.source.arcs.dagger(d);
      slotmap[a] = phi.phi0.at(a);
    }
    f1.emplace(v, reindex_boundary(e, slotmap));
  }
  return make_operad_map(phi.source, phi.target, phi.phi0, f1);
}

/// All operad maps M(h) -> M(g) whose f1-values have at most vertex_bound
/// vertices: the hom-set of the Joyal--Kock graph category, realized in
/// the category of modular operads.
inline std::vector<OperadMap> jk_homset(const Graph& h, const Graph& g,
                                        std::size_t vertex_bound) {
  std::vector<OperadMap> out;
  FreeModularOperad fg = free_operad(g);
  const auto orbits = h.arcs.orbits();
  const std::vector<Id> target_arcs = to_vector(g.arcs.elements());
  IdMap<Id> f0;
  std::vector<Id> vs = to_vector(h.vertices);
  IdMap<DecoratedGraph> f1;

  std::function<void(std::size_t)> pick_f1 = [&](std::size_t) {};
  std::function<void(std::size_t)> pick_f0 = [&](std::size_t k) {
    if (k == orbits.size()) {
      std::vector<std::vector<DecoratedGraph>> cand;
      for (const auto& v : vs) {
        cand.push_back(
            free_elements(fg, map_vertex_object(h, f0, v), vertex_bound));
        if (cand.back().empty()) return;
      }
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vs.size()) {
          out.push_back(make_operad_map(h, g, f0, f1));
          return;
        }
        for (const auto& d : cand[i]) {
          f1.emplace(vs[i], d);
          rec(i + 1);
          f1.erase(vs[i]);
        }
      };
      rec(0);
      return;
    }
    const auto& [x, y] = orbits[k];
    for (const auto& b : target_arcs) {
      f0[x] = b;
      f0[y] = g.arcs.dagger(b);
      pick_f0(k + 1);
      f0.erase(x);
      f0.erase(y);
    }
  };
  pick_f0(0);
  std::sort(out.begin(), out.end(), [](const OperadMap& a, const OperadMap& b) {
    return a.str() < b.str();
  });
  return out;
}

/// All operad maps M(h) -> P into a tabulated operad.
inline std::vector<OperadMap> maps_to_tabulated(
    const Graph& h, std::shared_ptr<const TabulatedOperad> p) {
  std::vector<OperadMap> out;
  const auto orbits = h.arcs.orbits();
  const std::vector<Id> cs = to_vector(p->colors.elements());
  IdMap<Id> f0;
  std::vector<Id> vs = to_vector(h.vertices);
  IdMap<Id> f1;
  std::function<void(std::size_t)> pick_f0 = [&](std::size_t k) {
    if (k == orbits.size()) {
      std::vector<std::vector<Id>> cand;
      for (const auto& v : vs) {
        cand.push_back(p->fiber(map_vertex_object(h, f0, v)));
        if (cand.back().empty()) return;
      }
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vs.size()) {
          out.push_back(make_operad_map(h, p, f0, f1));
          return;
        }
        for (const auto& e : cand[i]) {
          f1[vs[i]] = e;
          rec(i + 1);
          f1.erase(vs[i]);
        }
      };
      rec(0);
      return;
    }
    const auto& [x, y] = orbits[k];
    for (const auto& c : cs) {
      f0[x] = c;
      f0[y] = p->colors.dagger(c);
      pick_f0(k + 1);
      f0.erase(x);
      f0.erase(y);
    }
  };
  pick_f0(0);
  std::sort(out.begin(), out.end(), [](const OperadMap& a, const OperadMap& b) {
    return a.str() < b.str();
  });
  return out;
}

/// The color reindexing f*P of a tabulated operad along an involutive map.
inline TabulatedOperad reindex_operad(const InvolutiveSet& domain_colors,
                                      const IdMap<Id>& f0,
                                      std::shared_ptr<const TabulatedOperad> p) {
  for (const auto& [c, d] : f0) {
    check(domain_colors.contains(c) && p->colors.contains(d), "ColorMismatch",
          "reindexing map out of range");
    check(f0.at(domain_colors.dagger(c)) == p->colors.dagger(d),
          "NotInvolutive", "reindexing map is not involutive");
  }
  check(key_set(f0) == domain_colors.elements(), "ColorMismatch",
        "reindexing map must be total");
  auto recolor_key = [f0](const std::vector<Id>& key) {
    std::vector<Id> out;
    for (const auto& c : key) out.push_back(f0.at(c));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto recolor_obj = [f0](const ColoredObject& o) {
    ColoredObject out;
    for (const auto& [s, c] : o.coloring) out.coloring[s] = f0.at(c);
    return out;
  };
  TabulatedOperad out;
  out.colors = domain_colors;
  // every fiber of the reindexed operad is a fiber of p at the recolored
  // class; distinct domain classes may share one
  std::map<std::vector<Id>, std::vector<Id>> fibers;
  std::function<void(std::vector<Id>&, std::size_t, std::size_t)> dummy;
  for (const auto& key :
       color_classes_up_to(domain_colors, 6)) {
    auto it = p->fiber_names.find(recolor_key(key));
    if (it != p->fiber_names.end() && !it->second.empty())
      fibers[key] = it->second;
  }
  out.fiber_names = std::move(fibers);
  out.act_fn = [p, recolor_obj](const ColoredObject& src,
                                const ColoredObject& dst, const IdMap<Id>& bij,
                                const Id& e) {
    return p->act(recolor_obj(src), recolor_obj(dst), bij, e);
  };
  out.gamma_fn = [p, f0](const DecoratedGraph& d) {
    DecoratedGraph rec = d;
    for (auto& [a, c] : rec.shape.zeta) c = f0.at(c);
    return p->gamma(rec);
  };
  return out;
}

}  // namespace modgraph
