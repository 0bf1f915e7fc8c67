#pragma once

// Test-only oracles, independent of the library's search strategies:
// brute-force isomorphism enumeration and exhaustive generation of small
// connected safe graphs up to isomorphism.

#include <functional>
#include <numeric>

#include "modgraph/etale.hpp"

namespace modgraph::oracles {

/// Brute force: all vertex bijections x per-vertex dart matchings x leg
/// matchings, filtered by the full isomorphism conditions.
inline std::vector<GraphIso> brute_force_isos(const Graph& g, const Graph& h) {
  std::vector<GraphIso> out;
  if (g.vertices.size() != h.vertices.size()) return out;
  if (g.arcs.size() != h.arcs.size()) return out;
  const std::vector<Id> gv = to_vector(g.vertices);
  const std::vector<Id> hv = to_vector(h.vertices);
  std::vector<std::size_t> perm(hv.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;

  const std::vector<Id> g_nondart =
      to_vector(set_difference(g.arcs.elements(), g.darts));
  const std::vector<Id> h_nondart =
      to_vector(set_difference(h.arcs.elements(), h.darts));
  if (g_nondart.size() != h_nondart.size()) return out;

  auto check_full = [&](const IdMap<Id>& am, const IdMap<Id>& vm) {
    for (const auto& a : g.arcs.elements()) {
      if (!am.count(a)) return false;
      if (am.at(g.arcs.dagger(a)) != h.arcs.dagger(am.at(a))) return false;
      if (g.darts.count(a) != h.darts.count(am.at(a))) return false;
      if (g.boundary.count(a) != h.boundary.count(am.at(a))) return false;
      if (g.darts.count(a) && h.target(am.at(a)) != vm.at(g.target(a)))
        return false;
    }
    IdSet image;
    for (const auto& [a, b] : am)
      if (!image.insert(b).second) return false;
    return true;
  };

  std::sort(perm.begin(), perm.end());
  do {
    IdMap<Id> vm;
    for (std::size_t i = 0; i < gv.size(); ++i) vm[gv[i]] = hv[perm[i]];
    // match darts per vertex, then non-darts, by full recursion
    std::vector<Id> g_darts = to_vector(g.darts);
    IdMap<Id> am;
    IdSet used;
    std::function<void(std::size_t)> match_nondarts = [&](std::size_t k) {
      if (k == g_nondart.size()) {
        if (check_full(am, vm)) out.push_back(GraphIso{am, vm});
        return;
      }
      for (const auto& b : h_nondart) {
        if (used.count(b)) continue;
        am[g_nondart[k]] = b;
        used.insert(b);
        match_nondarts(k + 1);
        used.erase(b);
        am.erase(g_nondart[k]);
      }
    };
    std::function<void(std::size_t)> match_darts = [&](std::size_t k) {
      if (k == g_darts.size()) {
        match_nondarts(0);
        return;
      }
      const Id& d = g_darts[k];
      for (const auto& b : h.nbhd(vm.at(g.target(d)))) {
        if (used.count(b)) continue;
        am[d] = b;
        used.insert(b);
        match_darts(k + 1);
        used.erase(b);
        am.erase(d);
      }
    };
    match_darts(0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// All connected safe graphs with at most max_v vertices and at most
/// max_arcs arcs, up to isomorphism (darts paired into internal edges or
/// turned into boundary legs), in a deterministic order.
inline std::vector<Graph> small_connected_safe_graphs(std::size_t max_v,
                                                      std::size_t max_arcs) {
  std::vector<Graph> out;
  std::map<std::string, std::vector<std::size_t>> buckets;
  auto invariant = [](const Graph& g) {
    std::multiset<std::size_t> deg;
    for (const auto& v : g.vertices) deg.insert(g.valence(v));
    std::size_t loops = 0;
    for (const auto& [x, y] : g.internal_edges())
      if (g.target(x) == g.target(y)) ++loops;
    std::ostringstream os;
    os << g.vertices.size() << "/" << g.arcs.size() << "/" << g.darts.size()
       << "/" << g.boundary.size() << "/" << loops << "/" << join(deg, ",");
    return os.str();
  };
  auto keep = [&](const Graph& g) {
    if (g.arcs.size() > max_arcs) return;
    if (!g.is_connected()) return;
    auto& bucket = buckets[invariant(g)];
    for (std::size_t i : bucket)
      if (iso_exists(out[i], g)) return;
    bucket.push_back(out.size());
    out.push_back(g);
  };
  if (max_arcs >= 2) keep(exceptional_edge());

  for (std::size_t k = 1; k <= max_v; ++k) {
    // non-increasing degree vectors
    std::vector<std::size_t> deg(k);
    std::function<void(std::size_t, std::size_t)> choose_deg;
    choose_deg = [&](std::size_t i, std::size_t maxd) {
      if (i == k) {
        const std::size_t m =
            std::accumulate(deg.begin(), deg.end(), std::size_t{0});
        if (m > max_arcs) return;
        // darts: (vertex, slot); pair or leg
        struct HalfEdge {
          std::size_t v, j;
        };
        std::vector<HalfEdge> hs;
        for (std::size_t v = 0; v < k; ++v)
          for (std::size_t j = 0; j < deg[v]; ++j) hs.push_back({v, j});
        std::vector<std::ptrdiff_t> pairing(hs.size(), -2);
        std::function<void(std::size_t)> match = [&](std::size_t h2) {
          if (h2 == hs.size()) {
            std::size_t legs = 0;
            for (auto p : pairing)
              if (p == -1) ++legs;
            if (m + legs > max_arcs) return;
            std::vector<std::vector<Id>> classes;
            IdMap<Id> inc;
            std::vector<Id> vs;
            for (std::size_t v = 0; v < k; ++v)
              vs.push_back("n" + std::to_string(v + 1));
            for (std::size_t a = 0; a < hs.size(); ++a) {
              const Id da = "d" + std::to_string(a);
              inc[da] = vs[hs[a].v];
              if (pairing[a] == -1) {
                classes.push_back({da, "g" + std::to_string(a)});
              } else if (pairing[a] > static_cast<std::ptrdiff_t>(a)) {
                classes.push_back({da, "d" + std::to_string(pairing[a])});
              }
            }
            keep(build_graph(classes, inc, vs));
            return;
          }
          if (pairing[h2] != -2) {
            match(h2 + 1);
            return;
          }
          pairing[h2] = -1;  // leg
          match(h2 + 1);
          pairing[h2] = -2;
          for (std::size_t h3 = h2 + 1; h3 < hs.size(); ++h3) {
            if (pairing[h3] != -2) continue;
            pairing[h2] = static_cast<std::ptrdiff_t>(h3);
            pairing[h3] = static_cast<std::ptrdiff_t>(h2);
            match(h2 + 1);
            pairing[h2] = -2;
            pairing[h3] = -2;
          }
        };
        match(0);
        return;
      }
      for (std::size_t d = 0; d <= maxd; ++d) {
        deg[i] = d;
        choose_deg(i + 1, d);
      }
    };
    choose_deg(0, max_arcs);
  }
  return out;
}

/// All embedding maps into g with a given class record, generated
/// independently as relabelings of one representative by source
/// automorphisms (every embedding with that record arises this way
/// exactly when the record determines the class).
inline std::vector<EtaleMap> embedding_variants(const Graph& g,
                                                const EmbeddingClass& c) {
  std::vector<EtaleMap> out;
  EtaleMap rep = reconstruct_embedding(g, c);
  for (const auto& z : automorphisms(rep.source)) {
    // h = rep . z
    IdMap<Id> am, vm;
    for (const auto& [a, b] : z.arc_map) am[a] = rep.arc_map.at(b);
    for (const auto& [v, w] : z.vertex_map) vm[v] = rep.vertex_map.at(w);
    out.push_back(check_etale(rep.source, g, am, vm));
  }
  return out;
}

/// Is there an isomorphism z with f = h . z?
inline bool related_by_source_iso(const EtaleMap& f, const EtaleMap& h) {
  IsoOptions opts;
  opts.accept = [&](const GraphIso& z) {
    for (const auto& [a, b] : f.arc_map)
      if (h.arc_map.at(z.arc_map.at(a)) != b) return false;
    for (const auto& [v, w] : f.vertex_map)
      if (h.vertex_map.at(z.vertex_map.at(v)) != w) return false;
    return true;
  };
  opts.limit = 1;
  return !detail::IsoSearch(f.source, h.source, opts).run().empty();
}

}  // namespace modgraph::oracles
