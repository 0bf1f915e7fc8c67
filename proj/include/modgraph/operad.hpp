#pragma once

#include <memory>
#include <optional>

#include "modgraph/free_operad.hpp"

namespace modgraph {

/// Canonical slot names for class representatives ("s01", "s02", ...).
inline Id rep_slot(std::size_t i) {
  check(i >= 1 && i <= 99, "FiberMismatch", "arity out of range");
  std::string s = std::to_string(i);
  return s.size() == 1 ? "s0" + s : "s" + s;
}

/// The representative object of an iso class of colored objects.
inline ColoredObject rep_object(const std::vector<Id>& classkey) {
  ColoredObject out;
  for (std::size_t i = 0; i < classkey.size(); ++i)
    out.coloring[rep_slot(i + 1)] = classkey[i];
  return out;
}

/// Slot map obj -> rep (new slots are obj's), suitable for
/// reindex_boundary to read a representative element at obj.
inline IdMap<Id> obj_to_rep_slots(const ColoredObject& obj) {
  IdMap<Id> m;
  const std::vector<Id> cs = obj.canonical_slots();
  for (std::size_t i = 0; i < cs.size(); ++i) m[cs[i]] = rep_slot(i + 1);
  return m;
}

/// All color-preserving bijections between two colored objects.
inline std::vector<IdMap<Id>> color_bijections(const ColoredObject& src,
                                               const ColoredObject& dst) {
  std::vector<IdMap<Id>> out;
  if (src.color_class() != dst.color_class()) return out;
  std::vector<Id> ss = to_vector(src.carrier());
  IdMap<Id> cur;
  IdSet used;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ss.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& [t, c] : dst.coloring) {
      if (used.count(t) || c != src.coloring.at(ss[i])) continue;
      used.insert(t);
      cur[ss[i]] = t;
      rec(i + 1);
      cur.erase(ss[i]);
      used.erase(t);
    }
  };
  rec(0);
  return out;
}

/// All sorted multisets of size <= bound over the given colors.
inline std::vector<std::vector<Id>> color_classes_up_to(
    const InvolutiveSet& colors, std::size_t bound) {
  std::vector<std::vector<Id>> out{{}};
  const std::vector<Id> cs = to_vector(colors.elements());
  std::vector<Id> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k,
                                                          std::size_t min) {
    if (!cur.empty()) out.push_back(cur);
    if (k == bound) return;
    for (std::size_t i = min; i < cs.size(); ++i) {
      cur.push_back(cs[i]);
      rec(k + 1, i);
      cur.pop_back();
    }
  };
  if (bound > 0) rec(0, 0);
  return out;
}

/// A modular operad over Set, tabulated on iso classes of colored
/// objects.  Element names are read relative to an object of the class;
/// `act` mediates between objects, `gamma` evaluates decorated graphs
/// (whose decorations are element names at the vertex objects) to an
/// element name at the ambient object.  Both evaluators must be pure.
struct TabulatedOperad {
  InvolutiveSet colors;
  std::map<std::vector<Id>, std::vector<Id>> fiber_names;
  std::function<Id(const ColoredObject&, const ColoredObject&,
                   const IdMap<Id>&, const Id&)>
      act_fn;
  std::function<Id(const DecoratedGraph&)> gamma_fn;

  Collection collection() const {
    Collection c;
    c.colors = colors;
    c.fibers = fiber_names;
    c.act = act_fn;
    return c;
  }

  std::vector<Id> fiber(const ColoredObject& obj) const {
    auto it = fiber_names.find(obj.color_class());
    if (it == fiber_names.end()) return {};
    return it->second;
  }

  Id act(const ColoredObject& src, const ColoredObject& dst,
         const IdMap<Id>& bij, const Id& e) const {
    check(is_bij_morphism(bij, src, dst), "FiberMismatch",
          "transport requires a color-preserving bijection");
    if (!act_fn) return e;
    return act_fn(src, dst, bij, e);
  }

  Id gamma(const DecoratedGraph& d) const {
    check(static_cast<bool>(gamma_fn), "MissingGamma",
          "operad has no structure map");
    return gamma_fn(d);
  }
};

// ---------------------------------------------------------------------
// Tabulation of free modular operads

struct FreeTabulation {
  FreeModularOperad f;
  std::size_t vertex_bound = 0;
  std::map<std::vector<Id>, std::vector<DecoratedGraph>> reps;

  Collection raw() const {
    Collection c;
    c.colors = f.generator.arcs;
    return c;
  }

  std::optional<std::size_t> find(const std::vector<Id>& key,
                                  const DecoratedGraph& d) const {
    auto it = reps.find(key);
    if (it == reps.end()) return std::nullopt;
    const Collection c = raw();
    const IdMap<Id> m = obj_to_rep_slots(d.ambient());
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      if (decorated_equal(reindex_boundary(it->second[i], m), d, c)) return i;
    }
    return std::nullopt;
  }
};

/// Tabulate M(G) on all fibers of arity <= arity_bound, keeping shapes
/// with at most vertex_bound vertices.  Throws MissingElement later if an
/// evaluation escapes the tabulated range.
inline TabulatedOperad tabulate_free(const Graph& g, std::size_t arity_bound,
                                     std::size_t vertex_bound) {
  auto tab = std::make_shared<FreeTabulation>();
  tab->f = free_operad(g);
  tab->vertex_bound = vertex_bound;
  TabulatedOperad out;
  out.colors = g.arcs;
  for (const auto& key : color_classes_up_to(g.arcs, arity_bound)) {
    auto elems = free_elements(tab->f, rep_object(key), vertex_bound);
    if (elems.empty()) continue;
    std::vector<Id> names;
    for (std::size_t i = 0; i < elems.size(); ++i)
      names.push_back("x" + std::to_string(i));
    tab->reps[key] = std::move(elems);
    out.fiber_names[key] = std::move(names);
  }
  out.act_fn = [tab](const ColoredObject& src, const ColoredObject& dst,
                     const IdMap<Id>& bij, const Id& e) -> Id {
    const std::vector<Id> key = src.color_class();
    auto it = tab->reps.find(key);
    check(it != tab->reps.end(), "FiberMismatch", "unknown fiber class");
    const std::size_t idx = std::stoul(e.substr(1));
    // element at dst = rep read at src, pushed along bij
    DecoratedGraph at_src =
        reindex_boundary(it->second.at(idx), obj_to_rep_slots(src));
    IdMap<Id> bij_inv;
    for (const auto& [a, b] : bij) bij_inv[b] = a;
    DecoratedGraph at_dst = reindex_boundary(at_src, bij_inv);
    auto found = [&]() -> std::optional<std::size_t> {
      const Collection c = tab->raw();
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        DecoratedGraph cand =
            reindex_boundary(it->second[i], obj_to_rep_slots(dst));
        if (decorated_equal(cand, at_dst, c)) return i;
      }
      return std::nullopt;
    }();
    check(found.has_value(), "FiberMismatch", "transport left the fiber");
    return "x" + std::to_string(*found);
  };
  out.gamma_fn = [tab](const DecoratedGraph& d) -> Id {
    IdMap<DecoratedGraph> inner;
    for (const auto& [w, e] : d.dec) {
      const ColoredObject obj = vertex_object(d.shape, w);
      auto it = tab->reps.find(obj.color_class());
      check(it != tab->reps.end(), "MissingElement",
            "fiber class not tabulated");
      const std::size_t idx = std::stoul(e.substr(1));
      inner.emplace(w,
                    reindex_boundary(it->second.at(idx), obj_to_rep_slots(obj)));
    }
    DecoratedGraph m = monad_mult(d.shape, d.boundary, inner, tab->raw());
    auto found = tab->find(m.ambient().color_class(), m);
    check(found.has_value(), "MissingElement",
          "evaluation exceeds the tabulation bounds");
    return "x" + std::to_string(*found);
  };
  return out;
}

/// The terminal-style operad with a single element in every fiber.
inline TabulatedOperad one_point_operad(const InvolutiveSet& colors,
                                        std::size_t arity_bound) {
  TabulatedOperad out;
  out.colors = colors;
  for (const auto& key : color_classes_up_to(colors, arity_bound))
    out.fiber_names[key] = {"*"};
  out.gamma_fn = [](const DecoratedGraph&) { return Id("*"); };
  return out;
}

/// Fibers Z/2 everywhere; gamma adds the decorations.  Associativity is
/// additivity, units are 0.
inline TabulatedOperad parity_operad(const InvolutiveSet& colors,
                                     std::size_t arity_bound) {
  TabulatedOperad out;
  out.colors = colors;
  for (const auto& key : color_classes_up_to(colors, arity_bound))
    out.fiber_names[key] = {"0", "1"};
  out.gamma_fn = [](const DecoratedGraph& d) {
    int sum = 0;
    for (const auto& [w, e] : d.dec) sum ^= (e == "1");
    return Id(sum ? "1" : "0");
  };
  return out;
}

/// A finite gamma table: patterns with their values, matched up to
/// decorated isomorphism over any color-preserving slot bijection.
struct GammaTable {
  std::vector<std::pair<DecoratedGraph, Id>> entries;

  std::optional<Id> lookup(const DecoratedGraph& d,
                           const Collection& fibers) const {
    for (const auto& [pat, val] : entries) {
      const ColoredObject po = pat.ambient();
      const ColoredObject q = d.ambient();
      for (const auto& beta : color_bijections(po, q)) {
        // read the pattern at d's object and compare
        IdMap<Id> beta_inv;
        for (const auto& [a, b] : beta) beta_inv[b] = a;
        DecoratedGraph pat_at_q = reindex_boundary(pat, beta_inv);
        if (decorated_equal(pat_at_q, d, fibers))
          return fibers.transport(po, q, beta, val);
      }
    }
    return std::nullopt;
  }
};

/// An operad whose structure map is given by a finite table (file-defined
/// operads).  The action is the symmetric one.
inline TabulatedOperad table_operad(
    const InvolutiveSet& colors,
    const std::map<std::vector<Id>, std::vector<Id>>& fibers,
    const GammaTable& table) {
  TabulatedOperad out;
  out.colors = colors;
  out.fiber_names = fibers;
  auto shared = std::make_shared<GammaTable>(table);
  Collection coll = out.collection();
  out.gamma_fn = [shared, coll](const DecoratedGraph& d) -> Id {
    // star decorations evaluate by the unit law, no table entry needed
    if (d.shape.graph.vertices.size() == 1 &&
        d.shape.graph.internal_edges().empty() &&
        d.shape.graph.boundary.size() * 2 == d.shape.graph.arcs.size()) {
      const Id v = *d.shape.graph.vertices.begin();
      const ColoredObject vo = vertex_object(d.shape, v);
      IdMap<Id> f_inv;  // leg -> ambient slot
      for (const auto& [s, b] : d.boundary) f_inv[b] = s;
      return coll.transport(vo, d.ambient(), f_inv, d.dec.at(v));
    }
    auto v = shared->lookup(d, coll);
    check(v.has_value(), "MissingGamma",
          "no gamma entry matches " + d.str());
    return *v;
  };
  return out;
}

// ---------------------------------------------------------------------
// Algebra laws

struct LawReport {
  std::size_t unit_cases = 0;
  std::size_t assoc_cases = 0;
  std::optional<std::string> failure;
  bool ok() const { return !failure.has_value(); }
};

struct LawBounds {
  std::size_t arity = 3;          // fibers to unit-test
  std::size_t profile_arity = 3;  // vertex arities used in heart instances
  std::size_t outer_vertices = 2;
  std::size_t inner_vertices = 2;
  std::size_t max_cases = 200;    // cap on heart-square instances
};

/// Unit law exactly on every tabulated fiber; heart square on nested
/// decorations within the bounds.
inline LawReport check_algebra_laws(const TabulatedOperad& p,
                                    const LawBounds& bounds = {}) {
  LawReport report;
  const Collection coll = p.collection();
  for (const auto& [key, names] : p.fiber_names) {
    if (key.size() > bounds.arity) continue;
    const ColoredObject obj = rep_object(key);
    for (const auto& e : names) {
      report.unit_cases++;
      const Id got = p.gamma(monad_unit(coll, obj, e));
      if (got != e) {
        report.failure = "unit law fails at " + obj.str() + ": gamma(eta(" +
                         e + ")) = " + got;
        return report;
      }
    }
  }

  // vertex profiles: one per nonempty fiber class
  std::vector<VertexProfile> profiles;
  for (const auto& [key, names] : p.fiber_names)
    if (!names.empty() && key.size() <= bounds.profile_arity)
      profiles.push_back({join(key, "|"), key});

  for (const auto& [key, names] : p.fiber_names) {
    if (key.size() > bounds.profile_arity) continue;
    const ColoredObject obj = rep_object(key);
    for (const auto& outer_skel :
         enumerate_shapes(p.colors, profiles, obj, bounds.outer_vertices)) {
      // all ways to replace each outer vertex by an inner decorated graph
      std::vector<Id> vs = to_vector(outer_skel.shape.graph.vertices);
      std::vector<std::vector<DecoratedGraph>> choices;
      for (const auto& v : vs) {
        const ColoredObject vo = vertex_object(outer_skel.shape, v);
        std::vector<DecoratedGraph> opts;
        for (const auto& skel :
             enumerate_shapes(p.colors, profiles, vo, bounds.inner_vertices)) {
          // decorate the skeleton with fiber elements (first choices only
          // would bias; enumerate the full product below)
          std::vector<Id> ws = to_vector(skel.shape.graph.vertices);
          std::vector<std::vector<Id>> fibs;
          bool fine = true;
          for (const auto& w : ws) {
            auto f = p.fiber(vertex_object(skel.shape, w));
            if (f.empty()) fine = false;
            fibs.push_back(f);
          }
          if (!fine) continue;
          std::vector<std::size_t> pick(ws.size(), 0);
          while (true) {
            DecoratedGraph d = skel;
            for (std::size_t i = 0; i < ws.size(); ++i)
              d.dec[ws[i]] = fibs[i][pick[i]];
            opts.push_back(d);
            std::size_t i = 0;
            for (; i < ws.size(); ++i) {
              if (++pick[i] < fibs[i].size()) break;
              pick[i] = 0;
            }
            if (i == ws.size()) break;
          }
        }
        choices.push_back(opts);
      }
      if (choices.size() != vs.size()) continue;
      bool any_empty = false;
      for (const auto& c : choices)
        if (c.empty()) any_empty = true;
      if (any_empty) continue;
      std::vector<std::size_t> pick(vs.size(), 0);
      while (true) {
        if (report.assoc_cases >= bounds.max_cases) return report;
        IdMap<DecoratedGraph> inner;
        for (std::size_t i = 0; i < vs.size(); ++i)
          inner.emplace(vs[i], choices[i][pick[i]]);
        report.assoc_cases++;
        // left-bottom: mu then gamma
        DecoratedGraph mu =
            monad_mult(outer_skel.shape, outer_skel.boundary, inner, coll);
        const Id lhs = p.gamma(mu);
        // top-right: T gamma then gamma
        DecoratedGraph collapsed = outer_skel;
        for (std::size_t i = 0; i < vs.size(); ++i)
          collapsed.dec[vs[i]] = p.gamma(inner.at(vs[i]));
        const Id rhs = p.gamma(collapsed);
        if (lhs != rhs) {
          report.failure = "heart square fails at " + obj.str() +
                           ": gamma(mu) = " + lhs + ", gamma(T gamma) = " + rhs +
                           " on " + mu.str();
          return report;
        }
        std::size_t i = 0;
        for (; i < vs.size(); ++i) {
          if (++pick[i] < choices[i].size()) break;
          pick[i] = 0;
        }
        if (i == vs.size()) break;
      }
    }
  }
  return report;
}

}  // namespace modgraph
