#pragma once

#include "modgraph/opmap.hpp"

namespace modgraph {

enum class SiteMode { U, JK };

/// A morphism of a truncated site.  In U mode both the graphical map and
/// its operad image are kept; in JK mode only the operad map exists.
struct SiteMorphism {
  std::string src, dst;
  std::optional<GraphicalMap> gm;
  OperadMap om;
};

/// A finite full subcategory surrogate for the graphical category (mode U)
/// or the Joyal--Kock category realized in modular operads (mode JK,
/// hom-sets truncated by a vertex bound on f1-values).  Built sites are
/// validated: closed under identity and composition, and adequate for the
/// Segal machinery of their objects.
struct Site {
  SiteMode mode = SiteMode::U;
  std::size_t vertex_bound = 3;
  std::vector<std::string> names;
  std::map<std::string, Graph> objects;
  std::map<std::pair<std::string, std::string>, std::vector<SiteMorphism>> homs;
  std::map<std::string, std::size_t> identity_index;
  std::map<std::tuple<std::string, std::string, std::string, std::size_t,
                      std::size_t>,
           std::size_t>
      comp;  // (A,B,C,i: A->B, j: B->C) -> index of the composite in hom(A,C)

  std::string edge_object;                      // the exceptional edge
  std::optional<std::string> loop_object;       // a one-vertex loop, if present
  std::map<std::size_t, std::string> star_by_arity;
  std::map<std::size_t, std::vector<std::size_t>> star_edge_maps;
  // per star arity: indices in hom(edge, star_n) of the maps l -> j-th
  // boundary arc (sorted order)
  std::size_t edge_flip = 0;  // index of the swap in hom(edge, edge)

  struct CoreEdge {
    std::pair<Id, Id> arcs;   // [x1, x2]
    Id v1, v2;                // endpoint vertices
    std::size_t m1, m2;       // indices in hom(edge, star(v_i)) of the maps
  };
  struct CoreData {
    std::vector<Id> vertex_order;
    IdMap<std::string> star_object;         // vertex -> star object name
    IdMap<std::size_t> star_inclusion;      // vertex -> index of iota-hat_v
    std::vector<CoreEdge> edges;
  };
  std::map<std::string, CoreData> core;

  const Graph& object(const std::string& n) const {
    auto it = objects.find(n);
    check(it != objects.end(), "MissingCoreObject", "no site object '" + n + "'");
    return it->second;
  }

  const std::vector<SiteMorphism>& hom(const std::string& a,
                                       const std::string& b) const {
    static const std::vector<SiteMorphism> empty;
    auto it = homs.find({a, b});
    return it == homs.end() ? empty : it->second;
  }

  std::size_t compose_index(const std::string& a, const std::string& b,
                            const std::string& c, std::size_t i,
                            std::size_t j) const {
    return comp.at({a, b, c, i, j});
  }

  std::optional<std::size_t> find_om(const std::string& a, const std::string& b,
                                     const OperadMap& m) const {
    const auto& hs = hom(a, b);
    for (std::size_t i = 0; i < hs.size(); ++i)
      if (operad_map_equal(hs[i].om, m)) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> find_gm(const std::string& a, const std::string& b,
                                     const GraphicalMap& m) const {
    const auto& hs = hom(a, b);
    for (std::size_t i = 0; i < hs.size(); ++i)
      if (hs[i].gm && hs[i].gm->same_arrow(m)) return i;
    return std::nullopt;
  }

  /// Index in hom(a, b) of the site morphism matching a graphical map: by
  /// arrow equality in U mode, by its operad image in JK mode.
  std::optional<std::size_t> locate(const std::string& a, const std::string& b,
                                    const GraphicalMap& m) const {
    if (mode == SiteMode::U) return find_gm(a, b, m);
    return find_om(a, b, to_operad_map(m));
  }
};

/// The canonical star inclusion of a vertex, expressed on the site's
/// standard star object: the j-th dart (sorted neighbourhood order) is the
/// image of the star's dart "j*".
inline GraphicalMap standard_star_inclusion(const Graph& star, const Graph& g,
                                            const Id& v) {
  const std::vector<Id> nb = to_vector(g.nbhd(v));
  check(star.boundary.size() == nb.size(), "MissingCoreObject",
        "star object arity mismatch at vertex '" + v + "'");
  IdMap<Id> phi0;
  const std::vector<Id> legs = to_vector(star.boundary);
  for (std::size_t j = 0; j < nb.size(); ++j) {
    phi0[star.arcs.dagger(legs[j])] = nb[j];
    phi0[legs[j]] = g.arcs.dagger(nb[j]);
  }
  IdMap<EmbeddingClass> phi1;
  phi1[*star.vertices.begin()] = vertex_star_class(g, v);
  return make_graphical_map(star, g, phi0, phi1, Mode::Strict);
}

inline Site build_site(SiteMode mode,
                       const std::vector<std::pair<std::string, Graph>>& objs,
                       std::size_t vertex_bound = 3) {
  Site site;
  site.mode = mode;
  site.vertex_bound = vertex_bound;
  for (const auto& [n, g] : objs) {
    check(!site.objects.count(n), "DuplicateElement",
          "site object '" + n + "' listed twice");
    check(g.is_connected() && g.is_safe(), "NotAnObject",
          "site objects must be connected safe graphs");
    site.names.push_back(n);
    site.objects[n] = g;
    if (g.is_exceptional_edge()) site.edge_object = n;
    if (g.vertices.size() == 1 && g.internal_edges().size() == 1 &&
        g.arcs.size() == 2 && !site.loop_object)
      site.loop_object = n;
    if (g.vertices.size() == 1 && g.internal_edges().empty() &&
        g.boundary.size() * 2 == g.arcs.size()) {
      if (!site.star_by_arity.count(g.boundary.size()))
        site.star_by_arity[g.boundary.size()] = n;
    }
  }
  check(!site.edge_object.empty(), "MissingCoreObject",
        "sites must contain the exceptional edge");

  // hom-sets
  for (const auto& a : site.names)
    for (const auto& b : site.names) {
      std::vector<SiteMorphism> hs;
      if (mode == SiteMode::U) {
        for (auto& gm : homset(site.objects[a], site.objects[b], Mode::Strict))
          hs.push_back(SiteMorphism{a, b, gm, to_operad_map(gm)});
      } else {
        for (auto& om :
             jk_homset(site.objects[a], site.objects[b], vertex_bound))
          hs.push_back(SiteMorphism{a, b, std::nullopt, std::move(om)});
      }
      site.homs[{a, b}] = std::move(hs);
    }

  // identities
  for (const auto& n : site.names) {
    std::optional<std::size_t> idx;
    if (mode == SiteMode::U)
      idx = site.find_gm(n, n, identity_map(site.objects[n]));
    else
      idx = site.find_om(n, n, identity_operad_map(site.objects[n]));
    check(idx.has_value(), "MissingCoreObject",
          "identity of '" + n + "' missing from the site");
    site.identity_index[n] = *idx;
  }

  // composition closure
  for (const auto& a : site.names)
    for (const auto& b : site.names)
      for (const auto& c : site.names) {
        const auto& hab = site.hom(a, b);
        const auto& hbc = site.hom(b, c);
        for (std::size_t i = 0; i < hab.size(); ++i)
          for (std::size_t j = 0; j < hbc.size(); ++j) {
            std::optional<std::size_t> k;
            if (mode == SiteMode::U)
              k = site.find_gm(a, c, compose(*hbc[j].gm, *hab[i].gm));
            else
              k = site.find_om(a, c,
                               compose_operad_maps(hbc[j].om, hab[i].om));
            check(k.has_value(), "SiteNotClosed",
                  "composite escapes the site between '" + a + "' and '" + c +
                      "' (raise the vertex bound?)");
            site.comp[{a, b, c, i, j}] = *k;
          }
      }

  // edge structure: the flip, and the slot maps into each star
  {
    const Graph& e = site.objects[site.edge_object];
    IdMap<Id> swap0;
    const auto orb = e.arcs.orbits().front();
    swap0[orb.first] = orb.second;
    swap0[orb.second] = orb.first;
    GraphicalMap flip =
        make_graphical_map(e, e, swap0, {}, Mode::Strict);
    auto idx = site.locate(site.edge_object, site.edge_object, flip);
    check(idx.has_value(), "MissingCoreObject", "edge flip missing");
    site.edge_flip = *idx;
    for (const auto& [arity, sname] : site.star_by_arity) {
      const Graph& st = site.objects[sname];
      std::vector<std::size_t> slots;
      for (const auto& leg : st.boundary) {
        IdMap<Id> f0{{orb.first, leg}, {orb.second, st.arcs.dagger(leg)}};
        GraphicalMap h = make_graphical_map(e, st, f0, {}, Mode::Strict);
        auto hi = site.locate(site.edge_object, sname, h);
        check(hi.has_value(), "MissingCoreObject",
              "edge map into star arity " + std::to_string(arity) + " missing");
        slots.push_back(*hi);
      }
      site.star_edge_maps[arity] = slots;
    }
  }

  // Segal-core addressing
  for (const auto& n : site.names) {
    const Graph& g = site.objects[n];
    if (g.vertices.empty()) continue;
    Site::CoreData cd;
    IdMap<GraphicalMap> inclusions;
    for (const auto& v : g.vertices) {
      cd.vertex_order.push_back(v);
      const std::size_t arity = g.valence(v);
      auto it = site.star_by_arity.find(arity);
      check(it != site.star_by_arity.end(), "MissingCoreObject",
            "no star object of arity " + std::to_string(arity) +
                " for vertex '" + v + "' of '" + n + "'");
      cd.star_object[v] = it->second;
      GraphicalMap inc =
          standard_star_inclusion(site.objects[it->second], g, v);
      auto idx = site.locate(it->second, n, inc);
      check(idx.has_value(), "MissingCoreObject",
            "star inclusion of '" + v + "' missing from the site");
      cd.star_inclusion[v] = *idx;
      inclusions.emplace(v, std::move(inc));
    }
    const Graph& e = site.objects[site.edge_object];
    const auto orb = e.arcs.orbits().front();
    for (const auto& [x1, x2] : g.internal_edges()) {
      Site::CoreEdge ce;
      ce.arcs = {x1, x2};
      ce.v1 = g.target(x1);
      ce.v2 = g.target(x2);
      // the edge maps in standard star coordinates: l -> leg over i(x_k)
      auto slot_map = [&](const Id& v, const Id& dart, bool dagger_first) {
        const Graph& st = site.objects[cd.star_object.at(v)];
        const GraphicalMap& inc = inclusions.at(v);
        // find the star dart over `dart`
        Id star_dart;
        for (const auto& d : st.darts)
          if (inc.phi0.at(d) == dart) star_dart = d;
        check(!star_dart.empty(), "MissingCoreObject", "dart not located");
        IdMap<Id> f0;
        if (dagger_first) {
          f0[orb.first] = st.arcs.dagger(star_dart);
          f0[orb.second] = star_dart;
        } else {
          f0[orb.first] = star_dart;
          f0[orb.second] = st.arcs.dagger(star_dart);
        }
        GraphicalMap h =
            make_graphical_map(e, st, f0, {}, Mode::Strict);
        auto hi = site.locate(site.edge_object, cd.star_object.at(v), h);
        check(hi.has_value(), "MissingCoreObject", "core edge map missing");
        return *hi;
      };
      // outer: l -> (x1)^dagger in the star at t(x1); inner: l -> x2
      ce.m1 = slot_map(ce.v1, x1, true);
      ce.m2 = slot_map(ce.v2, x2, false);
      cd.edges.push_back(std::move(ce));
    }
    site.core[n] = std::move(cd);
  }
  return site;
}

/// Two univalent vertices joined by a single edge.
inline Graph segment_graph() {
  return build_graph({{"e", "e*"}}, {{"e", "u"}, {"e*", "w"}}, {"u", "w"});
}

/// A univalent vertex attached to a bivalent one with a free leg.
inline Graph mixed_path_graph() {
  return build_graph({{"e", "e*"}, {"b", "d"}},
                     {{"e", "u"}, {"e*", "w"}, {"d", "w"}}, {"u", "w"});
}

/// The standard acceptance site: the exceptional edge, stars up to the
/// given arity, and composite graphs covering every shape with at most
/// two vertices of valence at most two (so that reconstructed operads can
/// be law-checked at that size).
inline std::vector<std::pair<std::string, Graph>> standard_site_objects(
    std::size_t max_star_arity = 4, bool include_loop = true) {
  std::vector<std::pair<std::string, Graph>> out;
  out.emplace_back("edge", exceptional_edge());
  for (std::size_t n = 0; n <= max_star_arity; ++n)
    out.emplace_back("star" + std::to_string(n), star_n(n));
  out.emplace_back("lin2", linear_graph(2));
  out.emplace_back("par2", double_edge_graph());
  out.emplace_back("lin3", linear_graph(3));
  out.emplace_back("seg2", segment_graph());
  out.emplace_back("mix2", mixed_path_graph());
  if (include_loop) out.emplace_back("loop", cycle_graph(1));
  return out;
}

}  // namespace modgraph
