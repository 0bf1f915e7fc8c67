#pragma once

#include <random>

#include "modgraph/gmap.hpp"

namespace modgraph {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// A random connected safe graph: a spanning tree on up to `max_vertices`
/// vertices plus extra internal edges (possibly loops) and boundary legs.
inline Graph random_connected_graph(Rng& rng, std::size_t max_vertices,
                                    std::size_t max_extra_edges = 2,
                                    std::size_t max_legs = 3) {
  const std::size_t n = 1 + pick(rng, max_vertices);
  std::vector<Id> vs;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("u" + std::to_string(i));
  std::vector<std::vector<Id>> classes;
  IdMap<Id> inc;
  std::size_t arc = 0;
  auto add_edge = [&](const Id& a, const Id& b) {
    const Id x = "t" + std::to_string(++arc);
    classes.push_back({x, x + "*"});
    inc[x] = a;
    inc[x + "*"] = b;
  };
  for (std::size_t i = 1; i < n; ++i) add_edge(vs[pick(rng, i)], vs[i]);
  const std::size_t extra = pick(rng, max_extra_edges + 1);
  for (std::size_t i = 0; i < extra; ++i)
    add_edge(vs[pick(rng, n)], vs[pick(rng, n)]);
  const std::size_t legs = pick(rng, max_legs + 1);
  for (std::size_t i = 0; i < legs; ++i) {
    const Id x = "l" + std::to_string(i + 1);
    classes.push_back({x, x + "*"});
    inc[x + "*"] = vs[pick(rng, n)];
  }
  return build_graph(classes, inc, vs);
}

/// A random connected graph with exactly `legs` boundary legs (used as a
/// substitution plug).
inline Graph random_plug(Rng& rng, std::size_t legs,
                         std::size_t max_vertices = 2) {
  if (legs == 2 && pick(rng, 4) == 0) return exceptional_edge();
  const std::size_t n = 1 + pick(rng, max_vertices);
  std::vector<Id> vs;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("q" + std::to_string(i));
  std::vector<std::vector<Id>> classes;
  IdMap<Id> inc;
  std::size_t arc = 0;
  auto add_edge = [&](const Id& a, const Id& b) {
    const Id x = "s" + std::to_string(++arc);
    classes.push_back({x, x + "*"});
    inc[x] = a;
    inc[x + "*"] = b;
  };
  for (std::size_t i = 1; i < n; ++i) add_edge(vs[pick(rng, i)], vs[i]);
  if (pick(rng, 3) == 0) add_edge(vs[pick(rng, n)], vs[pick(rng, n)]);
  for (std::size_t i = 0; i < legs; ++i) {
    const Id x = "m" + std::to_string(i + 1);
    classes.push_back({x, x + "*"});
    inc[x + "*"] = vs[pick(rng, n)];
  }
  return build_graph(classes, inc, vs);
}

/// A random substitution spec over a random base.
inline SubstitutionSpec random_substitution_spec(Rng& rng,
                                                 std::size_t max_vertices = 3) {
  SubstitutionSpec spec;
  spec.base = random_connected_graph(rng, max_vertices);
  for (const auto& v : spec.base.vertices) {
    const IdSet dom = spec.base.dagger_set(spec.base.nbhd(v));
    Graph h = random_plug(rng, dom.size());
    std::vector<Id> bd = to_vector(h.boundary);
    std::vector<Id> src = to_vector(dom);
    // random bijection
    for (std::size_t i = src.size(); i > 1; --i)
      std::swap(bd[i - 1], bd[pick(rng, i)]);
    IdMap<Id> m;
    for (std::size_t i = 0; i < src.size(); ++i) m[src[i]] = bd[i];
    spec.ident[v] = m;
    spec.plugs[v] = std::move(h);
  }
  return spec;
}

struct SubstLawReport {
  std::size_t unit_cases = 0;
  std::size_t assoc_cases = 0;
  std::optional<std::string> failure;  // serialized counterexample
  bool ok() const { return !failure.has_value(); }
};

/// Unit and associativity of graph substitution, fuzzed: for random
/// nested specs, G{H_v}{K_w} and G{H_v{K_w}} are isomorphic, and star
/// substitution reproduces the base.
inline SubstLawReport check_substitution_laws(std::uint64_t seed,
                                              std::size_t samples,
                                              std::size_t max_vertices = 3) {
  Rng rng(seed);
  SubstLawReport rep;
  for (std::size_t it = 0; it < samples; ++it) {
    SubstitutionSpec outer = random_substitution_spec(rng, max_vertices);
    // unit law on the base
    {
      SubstResult u = substitute(star_spec(outer.base));
      rep.unit_cases++;
      if (!iso_exists(u.graph, outer.base)) {
        rep.failure = "unit law failed on base with " +
                      std::to_string(outer.base.vertices.size()) + " vertices";
        return rep;
      }
    }
    SubstResult left1 = substitute(outer);
    // inner specs: one plug per vertex of each H_v
    IdMap<SubstitutionSpec> inner;
    bool degenerate = false;
    for (const auto& [v, h] : outer.plugs) {
      if (!h.has_vertices()) {
        degenerate = true;  // edge plugs have nothing to substitute into
        continue;
      }
      SubstitutionSpec is;
      is.base = h;
      for (const auto& w : h.vertices) {
        const IdSet dom = h.dagger_set(h.nbhd(w));
        Graph k = random_plug(rng, dom.size());
        std::vector<Id> bd = to_vector(k.boundary);
        std::vector<Id> src = to_vector(dom);
        for (std::size_t i = src.size(); i > 1; --i)
          std::swap(bd[i - 1], bd[pick(rng, i)]);
        IdMap<Id> m;
        for (std::size_t i = 0; i < src.size(); ++i) m[src[i]] = bd[i];
        is.ident[w] = m;
        is.plugs[w] = std::move(k);
      }
      inner.emplace(v, std::move(is));
    }
    if (degenerate) continue;  // associativity needs substitutable plugs

    // left: (G{H_v}){K_vw}, identifications lifted along the projections
    SubstitutionSpec lspec;
    lspec.base = left1.graph;
    for (const auto& [v, is] : inner)
      for (const auto& [w, k] : is.plugs) {
        const Id vw = left1.vertex_inj.at(v).at(w);
        lspec.plugs[vw] = k;
        IdMap<Id> m;
        for (const auto& [a, leg] : is.ident.at(w))
          m[left1.arc_proj.at(v).at(a)] = leg;
        lspec.ident[vw] = m;
      }
    SubstResult left = substitute(lspec);

    // right: G{H_v{K_w}}
    SubstitutionSpec rspec;
    rspec.base = outer.base;
    for (const auto& [v, is] : inner) {
      SubstResult hv = substitute(is);
      rspec.plugs[v] = hv.graph;
      IdMap<Id> m;
      for (const auto& [a, leg] : outer.ident.at(v))
        m[a] = hv.boundary_map.at(leg);
      rspec.ident[v] = m;
    }
    SubstResult right = substitute(rspec);

    rep.assoc_cases++;
    if (!iso_exists(left.graph, right.graph)) {
      std::ostringstream os;
      os << "associativity failed; left arcs " << left.graph.arcs.size()
         << ", right arcs " << right.graph.arcs.size();
      rep.failure = os.str();
      return rep;
    }
  }
  return rep;
}

/// Catalog of small graphs used for fuzzing graphical-map laws.
inline std::vector<Graph> fuzz_catalog() {
  return {exceptional_edge(), star_n(0),       star_n(1),
          star_n(2),          star_n(3),       linear_graph(2),
          linear_graph(3),    double_edge_graph(), cycle_graph(1),
          cycle_graph(2),     cycle_graph(3)};
}

struct CategoryLawReport {
  std::size_t triples = 0;
  std::optional<std::string> failure;
  bool ok() const { return !failure.has_value(); }
};

/// Associativity of graphical-map composition on random composable
/// triples from the catalog, compared against the substitution route.
inline CategoryLawReport fuzz_category_laws(std::uint64_t seed,
                                            std::size_t samples) {
  Rng rng(seed);
  CategoryLawReport rep;
  const std::vector<Graph> cat = fuzz_catalog();
  std::map<std::pair<std::size_t, std::size_t>, std::vector<GraphicalMap>> homs;
  auto hom = [&](std::size_t i, std::size_t j) -> const std::vector<GraphicalMap>& {
    auto key = std::make_pair(i, j);
    auto it = homs.find(key);
    if (it == homs.end())
      it = homs.emplace(key, homset(cat[i], cat[j], Mode::Strict)).first;
    return it->second;
  };
  std::size_t guard = 0;
  while (rep.triples < samples && guard < samples * 100) {
    ++guard;
    const std::size_t a = pick(rng, cat.size());
    const std::size_t b = pick(rng, cat.size());
    const std::size_t c = pick(rng, cat.size());
    const std::size_t d = pick(rng, cat.size());
    const auto& h1 = hom(a, b);
    const auto& h2 = hom(b, c);
    const auto& h3 = hom(c, d);
    if (h1.empty() || h2.empty() || h3.empty()) continue;
    const GraphicalMap& f = h1[pick(rng, h1.size())];
    const GraphicalMap& g = h2[pick(rng, h2.size())];
    const GraphicalMap& h = h3[pick(rng, h3.size())];
    const GraphicalMap lhs = compose(h, compose(g, f));
    const GraphicalMap rhs = compose(compose(h, g), f);
    rep.triples++;
    if (!lhs.same_arrow(rhs)) {
      rep.failure = "associativity failed on a fuzzed triple";
      return rep;
    }
    const GraphicalMap via = compose_via_substitution(h, compose(g, f));
    if (!lhs.same_arrow(via)) {
      rep.failure = "closed-form and substitution composites disagree";
      return rep;
    }
  }
  return rep;
}

}  // namespace modgraph
