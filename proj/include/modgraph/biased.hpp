#pragma once

#include "modgraph/operad.hpp"

namespace modgraph {

/// Biased presentation data: values of the structure map on the
/// elementary shapes only -- single-edge compositions between two
/// vertices, loop contractions at one vertex, and edge units.
struct BiasedTables {
  Collection fibers;
  GammaTable compositions;
  GammaTable contractions;
  GammaTable units;
};

namespace detail {

/// Contract one internal edge of a decorated shape, evaluating the local
/// two-vertex (or loop) pattern through the biased tables.
inline DecoratedGraph biased_contract(const BiasedTables& t,
                                      const DecoratedGraph& d,
                                      const std::pair<Id, Id>& edge) {
  const Graph& k = d.shape.graph;
  const auto& [x1, x2] = edge;
  const Id w1 = k.target(x1), w2 = k.target(x2);
  const bool loop = (w1 == w2);

  // local pattern: the touched vertices with the edge internal and every
  // other incident arc cut into a leg
  IdSet touched = loop ? IdSet{w1} : IdSet{w1, w2};
  std::vector<std::vector<Id>> classes{{x1, x2}};
  IdMap<Id> inc{{x1, w1}, {x2, w2}};
  IdMap<Id> zeta{{x1, d.shape.zeta.at(x1)}, {x2, d.shape.zeta.at(x2)}};
  IdMap<Id> q_boundary;           // slot (= leg name) -> leg
  IdMap<Id> leg_partner;          // leg name -> partner arc in the big shape
  IdSet taken = {x1, x2};
  for (const auto& w : touched)
    for (const auto& dd : k.nbhd(w)) {
      if (dd == x1 || dd == x2) continue;
      const Id leg = fresh_name(dd + "'", taken);
      taken.insert(leg);
      taken.insert(dd);
      classes.push_back({dd, leg});
      inc[dd] = k.target(dd);
      zeta[dd] = d.shape.zeta.at(dd);
      zeta[leg] = d.shape.zeta.at(k.arcs.dagger(dd));
      q_boundary[leg] = leg;
      leg_partner[leg] = k.arcs.dagger(dd);
    }
  IdSet qbd = key_set(q_boundary);
  DecoratedGraph q;
  q.shape.graph = build_graph(classes, inc, to_vector(touched), &qbd);
  q.shape.zeta = zeta;
  q.boundary = q_boundary;
  for (const auto& w : touched) q.dec[w] = d.dec.at(w);

  const GammaTable& table = loop ? t.contractions : t.compositions;
  auto val = table.lookup(q, t.fibers);
  check(val.has_value(), "MissingGamma",
        std::string(loop ? "no contraction" : "no composition") +
            " entry matches " + q.str());

  // rebuild the shape with the edge removed and the vertices merged
  DecoratedGraph out;
  std::vector<std::vector<Id>> classes2;
  for (const auto& [x, y] : k.arcs.orbits()) {
    if (x == x1 || x == x2) continue;
    classes2.push_back({x, y});
  }
  IdMap<Id> inc2;
  std::vector<Id> vertices2;
  for (const auto& v : k.vertices)
    if (v != w2 || loop) vertices2.push_back(v == w2 ? w1 : v);
  for (const auto& [dd, v] : k.incidence) {
    if (dd == x1 || dd == x2) continue;
    inc2[dd] = (v == w2) ? w1 : v;
  }
  IdSet bd2 = k.boundary;
  out.shape.graph = build_graph(classes2, inc2, vertices2, &bd2);
  for (const auto& [a, c] : d.shape.zeta)
    if (a != x1 && a != x2) out.shape.zeta[a] = c;
  out.boundary = d.boundary;
  for (const auto& [w, e] : d.dec)
    if (w != w1 && w != w2) out.dec[w] = e;
  // the merged decoration, transported from the pattern legs to the
  // actual neighbourhood slots
  const ColoredObject src = q.ambient();
  const ColoredObject dst = vertex_object(out.shape, w1);
  IdMap<Id> bij;
  for (const auto& [slot, leg] : q.boundary) bij[slot] = leg_partner.at(leg);
  out.dec[w1] = t.fibers.transport(src, dst, bij, *val);
  return out;
}

inline void biased_eval_all(const BiasedTables& t, const DecoratedGraph& d,
                            IdSet& results) {
  const Graph& k = d.shape.graph;
  if (k.vertices.empty()) {
    check(!k.is_nodeless_loop(), "MissingGamma",
          "nodeless loops are outside the biased data");
    auto val = t.units.lookup(d, t.fibers);
    check(val.has_value(), "MissingGamma", "no unit entry matches " + d.str());
    results.insert(*val);
    return;
  }
  const auto edges = k.internal_edges();
  if (edges.empty()) {
    // a star: read the decoration through the boundary ordering
    const Id v = *k.vertices.begin();
    const ColoredObject vo = vertex_object(d.shape, v);
    IdMap<Id> f_inv;
    for (const auto& [s, b] : d.boundary) f_inv[b] = s;
    results.insert(t.fibers.transport(vo, d.ambient(), f_inv, d.dec.at(v)));
    return;
  }
  for (const auto& e : edges)
    biased_eval_all(t, biased_contract(t, d, e), results);
}

}  // namespace detail

/// Evaluate a decorated shape by iterated single-edge contraction over
/// every contraction order; the orders must agree.
inline Id biased_gamma(const BiasedTables& t, const DecoratedGraph& d) {
  IdSet results;
  detail::biased_eval_all(t, d, results);
  check(results.size() == 1, "OrderDependence",
        "contraction orders yield " + std::to_string(results.size()) +
            " distinct values on " + d.str());
  return *results.begin();
}

/// Derive biased tables from a tabulated operad by evaluating its gamma
/// on all elementary shapes within the profile bound.
inline BiasedTables biased_tables_from(const TabulatedOperad& p,
                                       std::size_t profile_arity) {
  BiasedTables t;
  t.fibers = p.collection();
  std::vector<VertexProfile> profiles;
  for (const auto& [key, names] : p.fiber_names)
    if (!names.empty() && key.size() <= profile_arity)
      profiles.push_back({join(key, "|"), key});
  std::set<std::vector<Id>> ambients;
  for (const auto& [key, names] : p.fiber_names) ambients.insert(key);
  for (const auto& key : ambients) {
    for (const auto& skel :
         enumerate_shapes(p.colors, profiles, rep_object(key), 2)) {
      const Graph& g = skel.shape.graph;
      const bool comp = g.vertices.size() == 2 && g.internal_edges().size() == 1;
      const bool contr = g.vertices.size() == 1 && g.internal_edges().size() == 1;
      const bool unit = g.vertices.empty() && g.is_exceptional_edge();
      if (!comp && !contr && !unit) continue;
      std::vector<Id> ws = to_vector(g.vertices);
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
        const Id val = p.gamma(d);
        if (comp) t.compositions.entries.emplace_back(d, val);
        if (contr) t.contractions.entries.emplace_back(d, val);
        if (unit) t.units.entries.emplace_back(d, val);
        std::size_t i = 0;
        for (; i < ws.size(); ++i) {
          if (++pick[i] < fibs[i].size()) break;
          pick[i] = 0;
        }
        if (i == ws.size()) break;
      }
    }
  }
  return t;
}

}  // namespace modgraph
