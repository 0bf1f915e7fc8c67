#pragma once

#include "modgraph/site.hpp"

namespace modgraph {

/// A presheaf on a truncated site: a finite value set per object and, for
/// every site morphism phi : A -> B, an action table X_B -> X_A.
struct Presheaf {
  std::shared_ptr<const Site> site;
  std::map<std::string, std::vector<Id>> values;
  std::map<std::pair<std::string, std::string>, std::vector<IdMap<Id>>> action;

  const std::vector<Id>& at(const std::string& obj) const {
    return values.at(obj);
  }

  Id apply(const std::string& a, const std::string& b, std::size_t idx,
           const Id& e) const {
    return action.at({a, b}).at(idx).at(e);
  }

  /// Identity actions, totality and contravariant functoriality over the
  /// site's composition table.
  void validate() const {
    for (const auto& a : site->names) {
      check(values.count(a) > 0, "MissingCoreObject",
            "no values at '" + a + "'");
      for (const auto& b : site->names) {
        const auto& hs = site->hom(a, b);
        const auto it = action.find({a, b});
        check((it == action.end() ? 0 : it->second.size()) == hs.size(),
              "MissingCoreObject",
              "action tables missing between '" + a + "' and '" + b + "'");
        for (std::size_t i = 0; i < hs.size(); ++i) {
          const IdMap<Id>& t = it->second[i];
          check(key_set(t) == IdSet(values.at(b).begin(), values.at(b).end()),
                "MissingCoreObject", "action table domain mismatch");
          for (const auto& [e, img] : t) {
            const auto& va = values.at(a);
            check(std::find(va.begin(), va.end(), img) != va.end(),
                  "MissingCoreObject", "action table image escapes values");
          }
        }
      }
      const std::size_t idx = site->identity_index.at(a);
      for (const auto& e : values.at(a))
        check(apply(a, a, idx, e) == e, "MissingCoreObject",
              "identity acts nontrivially at '" + a + "'");
    }
    for (const auto& [key, k] : site->comp) {
      const auto& [a, b, c, i, j] = key;
      for (const auto& e : values.at(c))
        check(apply(a, c, k, e) == apply(a, b, i, apply(b, c, j, e)),
              "MissingCoreObject", "actions are not functorial");
    }
  }
};

/// A nerve element of a graph in a tabulated operad, in Lemma form:
/// f0 on arcs plus a fiber element per vertex.
inline std::vector<OperadMap> nerve_direct(
    const Graph& g, std::shared_ptr<const TabulatedOperad> p) {
  return maps_to_tabulated(g, p);
}

/// The same set computed through the equalizer over the Segal core: star
/// elements matched along internal edges, then assembled.
inline std::vector<OperadMap> nerve_equalizer(
    const Graph& g, std::shared_ptr<const TabulatedOperad> p) {
  check(g.has_vertices(), "NoVertices",
        "the equalizer formula needs at least one vertex");
  const std::vector<Id> vs = to_vector(g.vertices);
  IdMap<VertexStar> stars;
  IdMap<std::vector<OperadMap>> star_elems;
  for (const auto& v : vs) {
    VertexStar st = star_of_vertex(g, v);
    star_elems[v] = maps_to_tabulated(st.star, p);
    stars.emplace(v, std::move(st));
  }
  const auto edges = g.internal_edges();
  std::vector<OperadMap> out;
  IdMap<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vs.size()) {
      // assemble the tuple into data on g
      IdMap<Id> f0;
      IdMap<Id> f1;
      for (const auto& v : vs) {
        const OperadMap& m = star_elems[v][chosen[v]];
        const VertexStar& st = stars.at(v);
        for (const auto& d : g.nbhd(v)) {
          f0[d] = m.f0.at(d);
          f0[g.arcs.dagger(d)] = p->colors.dagger(m.f0.at(d));
        }
        // transport the star fiber element to (i nbhd(v), f0|)
        const Id sv = *st.star.vertices.begin();
        const ColoredObject src = map_vertex_object(st.star, m.f0, sv);
        IdMap<Id> bij;
        for (const auto& [d, leg] : st.leg_of_dart)
          bij[leg] = g.arcs.dagger(d);
        ColoredObject dst;
        for (const auto& [l, c] : src.coloring) dst.coloring[bij.at(l)] = c;
        f1[v] = p->act(src, dst, bij, m.f1_tab.at(sv));
      }
      out.push_back(make_operad_map(g, p, f0, f1));
      return;
    }
    const Id& v = vs[i];
    for (std::size_t k = 0; k < star_elems[v].size(); ++k) {
      chosen[v] = k;
      bool ok = true;
      for (const auto& [x1, x2] : edges) {
        const Id v1 = g.target(x1), v2 = g.target(x2);
        if (!chosen.count(v1) || !chosen.count(v2)) continue;
        const OperadMap& m1 = star_elems[v1][chosen.at(v1)];
        const OperadMap& m2 = star_elems[v2][chosen.at(v2)];
        // outer map evaluates at the leg over x1, inner at the dart x2
        if (m1.f0.at(stars.at(v1).leg_of_dart.at(x1)) != m2.f0.at(x2)) {
          ok = false;
          break;
        }
      }
      if (ok) rec(i + 1);
      chosen.erase(v);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const OperadMap& a, const OperadMap& b) {
    return a.str() < b.str();
  });
  return out;
}

inline std::vector<std::string> serialize_maps(const std::vector<OperadMap>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(m.str());
  std::sort(out.begin(), out.end());
  return out;
}

/// The nerve presheaf of a tabulated operad over a site, together with
/// the operad maps behind the value names.
struct NervePresheaf {
  Presheaf x;
  std::map<std::string, std::vector<OperadMap>> elements;

  const OperadMap& element(const std::string& obj, const Id& name) const {
    return elements.at(obj).at(std::stoul(name.substr(1)));
  }
};

inline NervePresheaf nerve_presheaf(std::shared_ptr<const TabulatedOperad> p,
                                    std::shared_ptr<const Site> site) {
  NervePresheaf out;
  out.x.site = site;
  std::map<std::string, std::map<std::string, Id>> index;
  for (const auto& n : site->names) {
    out.elements[n] = nerve_direct(site->objects.at(n), p);
    std::vector<Id> names;
    for (std::size_t i = 0; i < out.elements[n].size(); ++i) {
      names.push_back("n" + std::to_string(i));
      index[n][out.elements[n][i].str()] = names.back();
    }
    out.x.values[n] = std::move(names);
  }
  // maps into a tabulated operad are determined by their literal data, so
  // the serialization is a sound lookup key
  auto find_name = [&](const std::string& obj, const OperadMap& m) -> Id {
    auto it = index.at(obj).find(m.str());
    check(it != index.at(obj).end(), "MissingElement",
          "nerve action escaped the nerve set at '" + obj + "'");
    return it->second;
  };
  for (const auto& a : site->names)
    for (const auto& b : site->names) {
      const auto& hs = site->hom(a, b);
      std::vector<IdMap<Id>> tables;
      for (const auto& m : hs) {
        IdMap<Id> t;
        for (std::size_t i = 0; i < out.elements[b].size(); ++i) {
          OperadMap composite = compose_operad_maps(out.elements[b][i], m.om);
          t["n" + std::to_string(i)] = find_name(a, composite);
        }
        tables.push_back(std::move(t));
      }
      out.x.action[{a, b}] = std::move(tables);
    }
  return out;
}

struct SegalResult {
  bool ok = true;
  std::string witness;
};

/// Enumerate the Segal-core set of an object: tuples of star values
/// matched along the internal edges.
inline std::vector<IdMap<Id>> segal_core_set(const Presheaf& x,
                                             const std::string& obj) {
  const Site& site = *x.site;
  const auto& cd = site.core.at(obj);
  std::vector<IdMap<Id>> out;
  IdMap<Id> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cd.vertex_order.size()) {
      out.push_back(cur);
      return;
    }
    const Id& v = cd.vertex_order[i];
    for (const auto& val : x.at(cd.star_object.at(v))) {
      cur[v] = val;
      bool ok = true;
      for (const auto& e : cd.edges) {
        if (!cur.count(e.v1) || !cur.count(e.v2)) continue;
        const Id lhs = x.apply(site.edge_object, cd.star_object.at(e.v1), e.m1,
                               cur.at(e.v1));
        const Id rhs = x.apply(site.edge_object, cd.star_object.at(e.v2), e.m2,
                               cur.at(e.v2));
        if (lhs != rhs) {
          ok = false;
          break;
        }
      }
      if (ok) rec(i + 1);
      cur.erase(v);
    }
  };
  rec(0);
  return out;
}

/// The Segal map at an object: restriction along the star inclusions,
/// tested for bijectivity onto the core set.
inline SegalResult segal_check(const Presheaf& x, const std::string& obj) {
  const Site& site = *x.site;
  const Graph& g = site.object(obj);
  if (g.vertices.empty()) return {true, ""};  // elementary by definition
  const auto& cd = site.core.at(obj);
  auto tuple_of = [&](const Id& y) {
    IdMap<Id> t;
    for (const auto& v : cd.vertex_order)
      t[v] = x.apply(cd.star_object.at(v), obj, cd.star_inclusion.at(v), y);
    return t;
  };
  std::vector<IdMap<Id>> core = segal_core_set(x, obj);
  std::map<IdMap<Id>, Id> seen;
  for (const auto& y : x.at(obj)) {
    IdMap<Id> t = tuple_of(y);
    auto [it, inserted] = seen.emplace(t, y);
    if (!inserted)
      return {false, "Segal map not injective at '" + obj + "': " + it->second +
                         " and " + y + " restrict equally"};
  }
  for (const auto& t : core)
    if (!seen.count(t)) {
      std::string s;
      for (const auto& [v, val] : t) s += " " + v + ":" + val;
      return {false, "Segal map not surjective at '" + obj +
                         "': unmatched core tuple" + s};
    }
  if (seen.size() != core.size())
    return {false, "Segal map image escapes the core at '" + obj + "'"};
  return {true, ""};
}

inline SegalResult segal_check_all(const Presheaf& x) {
  for (const auto& n : x.site->names) {
    SegalResult r = segal_check(x, n);
    if (!r.ok) return r;
  }
  return {true, ""};
}

namespace detail {

/// The star permutation map realizing a position permutation pi (sorted
/// boundary arcs), as a site morphism index.
inline std::size_t star_perm_index(const Site& site, std::size_t arity,
                                   const std::vector<std::size_t>& pi) {
  const std::string sname = site.star_by_arity.at(arity);
  const Graph& st = site.objects.at(sname);
  const std::vector<Id> legs = to_vector(st.boundary);
  IdMap<Id> phi0;
  for (std::size_t j = 0; j < legs.size(); ++j) {
    phi0[legs[j]] = legs[pi[j]];
    phi0[st.arcs.dagger(legs[j])] = st.arcs.dagger(legs[pi[j]]);
  }
  IdMap<EmbeddingClass> phi1;
  if (!st.vertices.empty())
    phi1[*st.vertices.begin()] = identity_class(st);
  GraphicalMap m = make_graphical_map(st, st, phi0, phi1, Mode::Strict);
  auto idx = site.locate(sname, sname, m);
  check(idx.has_value(), "MissingCoreObject", "star permutation map missing");
  return *idx;
}

}  // namespace detail

/// The modular operad associated to a Segal presheaf: fibers are pullbacks
/// of star values over their edge colors, gamma evaluates through the site
/// action of the active map.  Nodeless-loop decorations go through the
/// loop object when the site has one.
inline TabulatedOperad operad_from_segal(const Presheaf& x) {
  auto site = x.site;
  SegalResult seg = segal_check_all(x);
  check(seg.ok, "SegalFailure", seg.witness);

  TabulatedOperad out;
  // colors with the flip involution
  {
    std::vector<std::vector<Id>> classes;
    IdSet done;
    for (const auto& c : x.at(site->edge_object)) {
      if (done.count(c)) continue;
      const Id cd = x.apply(site->edge_object, site->edge_object,
                            site->edge_flip, c);
      check(x.apply(site->edge_object, site->edge_object, site->edge_flip,
                    cd) == c,
            "SegalFailure", "edge flip is not involutive");
      done.insert(c);
      done.insert(cd);
      if (c == cd)
        classes.push_back({c});
      else
        classes.push_back({c, cd});
    }
    out.colors = InvolutiveSet::make(classes);
  }

  // fibers: star values keyed by their sorted edge-color tuples
  auto position_colors = [site, x](std::size_t arity, const Id& v) {
    std::vector<Id> out2;
    for (const auto& idx : site->star_edge_maps.at(arity))
      out2.push_back(
          x.apply(site->edge_object, site->star_by_arity.at(arity), idx, v));
    return out2;
  };
  for (const auto& [arity, sname] : site->star_by_arity) {
    for (const auto& v : x.at(sname)) {
      std::vector<Id> tuple = position_colors(arity, v);
      std::vector<Id> key = tuple;
      std::sort(key.begin(), key.end());
      if (key == tuple) out.fiber_names[key].push_back(v);
    }
  }

  Presheaf xc = x;  // captured by value in the closures below
  auto perm_cache = std::make_shared<
      std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t>>();
  auto perm_idx = [site, perm_cache](std::size_t n,
                                     const std::vector<std::size_t>& pi) {
    auto key = std::make_pair(n, pi);
    if (auto it = perm_cache->find(key); it != perm_cache->end())
      return it->second;
    const std::size_t idx = detail::star_perm_index(*site, n, pi);
    perm_cache->emplace(key, idx);
    return idx;
  };
  out.act_fn = [site, xc, perm_idx](const ColoredObject& src,
                                    const ColoredObject& dst,
                                    const IdMap<Id>& bij, const Id& e) -> Id {
    const std::size_t n = src.size();
    if (n == 0) return e;
    const std::vector<Id> ss = src.canonical_slots();
    const std::vector<Id> ds = dst.canonical_slots();
    // pi: position j of src -> position of bij(slot j) in dst
    std::vector<std::size_t> pi(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Id t = bij.at(ss[j]);
      pi[j] = std::find(ds.begin(), ds.end(), t) - ds.begin();
    }
    // invert: the star map's f0 sends arc_k to arc_{pi^{-1}(k)}
    std::vector<std::size_t> pinv(n);
    for (std::size_t j = 0; j < n; ++j) pinv[pi[j]] = j;
    const std::size_t idx = perm_idx(n, pinv);
    const std::string sname = site->star_by_arity.at(n);
    return xc.apply(sname, sname, idx, e);
  };

  // gamma (memoized on the literal representation; evaluation is pure)
  auto active_cache =
      std::make_shared<std::map<std::string, std::pair<std::string, std::size_t>>>();
  // Segal tuples per object: restriction along the star inclusions is
  // injective for a Segal presheaf, so solving is a lookup
  auto segal_index =
      std::make_shared<std::map<std::string, std::map<std::vector<Id>, Id>>>();
  auto shape_cache = std::make_shared<
      std::map<std::string, std::optional<std::pair<std::string, GraphIso>>>>();
  auto eval = [site, xc, perm_idx, active_cache, segal_index,
               shape_cache](const DecoratedGraph& d) -> Id {
    const ColoredObject amb = d.ambient();
    const std::vector<Id> slots = amb.canonical_slots();

    // locate the shape among the site objects
    auto locate_shape = [&](const Graph& g)
        -> std::optional<std::pair<std::string, GraphIso>> {
      std::string key;
      for (const auto& [x2, y2] : g.arcs.orbits()) key += x2 + "~" + y2 + ";";
      for (const auto& [a, v] : g.incidence) key += a + "@" + v + ";";
      key += "|" + brace_list(g.boundary);
      if (auto it = shape_cache->find(key); it != shape_cache->end())
        return it->second;
      std::optional<std::pair<std::string, GraphIso>> res;
      for (const auto& n : site->names) {
        auto z = first_iso(g, site->objects.at(n));
        if (z) {
          res = std::make_pair(n, *z);
          break;
        }
      }
      shape_cache->emplace(key, res);
      return res;
    };

    // the active map star_|S| -> R induced by the boundary data
    auto active_index = [&](const std::string& rname, const GraphIso& z) {
      std::vector<Id> imgs;
      for (const auto& s : slots) imgs.push_back(z.arc_map.at(d.boundary.at(s)));
      const std::string cache_key = rname + "#" + join(imgs, ",");
      if (auto it = active_cache->find(cache_key); it != active_cache->end())
        return it->second;
      const Graph& r = site->objects.at(rname);
      const std::string sname = site->star_by_arity.at(slots.size());
      const Graph& st = site->objects.at(sname);
      const std::vector<Id> legs = to_vector(st.boundary);
      IdMap<Id> phi0;
      for (std::size_t j = 0; j < slots.size(); ++j) {
        phi0[legs[j]] = imgs[j];
        phi0[st.arcs.dagger(legs[j])] = r.arcs.dagger(imgs[j]);
      }
      IdMap<EmbeddingClass> phi1;
      if (!st.vertices.empty()) phi1[*st.vertices.begin()] = identity_class(r);
      GraphicalMap act = make_graphical_map(st, r, phi0, phi1, Mode::Strict);
      auto idx = site->locate(sname, rname, act);
      check(idx.has_value(), "MissingActiveMap",
            "active map into '" + rname + "' missing from the site");
      auto res = std::make_pair(sname, *idx);
      active_cache->emplace(cache_key, res);
      return res;
    };

    if (d.shape.graph.is_nodeless_loop()) {
      check(site->loop_object.has_value(), "MissingActiveMap",
            "nodeless-loop evaluation needs a loop object in the site");
      const std::string ln = *site->loop_object;
      const Graph& lg = site->objects.at(ln);
      const Id c = d.shape.zeta.at(d.shape.graph.arcs.orbits().front().first);
      // the unit at color c: the active map star_2 -> edge applied to c
      const std::string s2 = site->star_by_arity.at(2);
      const Graph& st2 = site->objects.at(s2);
      const Graph& eg = site->objects.at(site->edge_object);
      const auto orb = eg.arcs.orbits().front();
      IdMap<Id> phi0;
      const std::vector<Id> legs2 = to_vector(st2.boundary);
      phi0[legs2[0]] = orb.first;
      phi0[st2.arcs.dagger(legs2[0])] = orb.second;
      phi0[legs2[1]] = orb.second;
      phi0[st2.arcs.dagger(legs2[1])] = orb.first;
      IdMap<EmbeddingClass> phi1;
      phi1[*st2.vertices.begin()] = identity_class(eg);
      GraphicalMap unit_act =
          make_graphical_map(st2, eg, phi0, phi1, Mode::Strict);
      auto uidx = site->locate(s2, site->edge_object, unit_act);
      check(uidx.has_value(), "MissingActiveMap", "unit active map missing");
      const Id unit_c = xc.apply(s2, site->edge_object, *uidx, c);
      // solve for the loop value restricting to the unit at its vertex
      const auto& cd = site->core.at(ln);
      const Id v = cd.vertex_order.front();
      std::optional<Id> y;
      for (const auto& cand : xc.at(ln)) {
        if (xc.apply(cd.star_object.at(v), ln, cd.star_inclusion.at(v), cand) ==
            unit_c) {
          check(!y.has_value(), "SegalFailure",
                "loop value is not unique over the unit");
          y = cand;
        }
      }
      check(y.has_value(), "SegalFailure", "no loop value over the unit");
      // contract: the active map star_0 -> loop
      const std::string s0 = site->star_by_arity.at(0);
      IdMap<EmbeddingClass> lphi1;
      lphi1[*site->objects.at(s0).vertices.begin()] = identity_class(lg);
      GraphicalMap contract =
          make_graphical_map(site->objects.at(s0), lg, {}, lphi1, Mode::Strict);
      auto cidx = site->locate(s0, ln, contract);
      check(cidx.has_value(), "MissingActiveMap", "loop contraction missing");
      return xc.apply(s0, ln, *cidx, *y);
    }

    auto found = locate_shape(d.shape.graph);
    check(found.has_value(), "MissingActiveMap",
          "no site object is isomorphic to the decorated shape " + d.str());
    const auto& [rname, z] = *found;
    const Graph& r = site->objects.at(rname);

    if (d.shape.graph.vertices.empty()) {
      // exceptional edge: the value is the coloring itself
      const Graph& eg = site->objects.at(site->edge_object);
      const auto orb = eg.arcs.orbits().front();
      IdMap<Id> zinv;
      for (const auto& [a, b] : z.arc_map) zinv[b] = a;
      const Id c = d.shape.zeta.at(zinv.at(orb.first));
      auto [sname, aidx] = active_index(rname, z);
      return xc.apply(sname, rname, aidx, c);
    }

    // transport the decorations to star values and solve the Segal system.
    // A fiber name read at an object pairs its canonical slots with the
    // star positions; the constraint along iota-hat_u pairs positions with
    // the sorted neighbourhood instead, so the value is repositioned by
    // the star permutation tau.
    const auto& cd = site->core.at(rname);
    IdMap<Id> zinv_arc;
    for (const auto& [a, b] : z.arc_map) zinv_arc[b] = a;
    IdMap<Id> wanted;  // vertex of R -> required star value
    for (const auto& [w, e] : d.dec) {
      const Id u = z.vertex_map.at(w);
      const ColoredObject vo = vertex_object(d.shape, w);
      const std::vector<Id> cs = vo.canonical_slots();
      const std::vector<Id> nb = to_vector(r.nbhd(u));
      std::vector<std::size_t> tau(nb.size());
      for (std::size_t j = 0; j < nb.size(); ++j) {
        const Id slot = zinv_arc.at(r.arcs.dagger(nb[j]));
        tau[j] = std::find(cs.begin(), cs.end(), slot) - cs.begin();
      }
      const std::string sname = cd.star_object.at(u);
      wanted[u] = xc.apply(sname, sname, perm_idx(nb.size(), tau), e);
    }
    if (!segal_index->count(rname)) {
      auto& table = (*segal_index)[rname];
      for (const auto& cand : xc.at(rname)) {
        std::vector<Id> tuple;
        for (const auto& u : cd.vertex_order)
          tuple.push_back(xc.apply(cd.star_object.at(u), rname,
                                   cd.star_inclusion.at(u), cand));
        check(table.emplace(std::move(tuple), cand).second, "SegalFailure",
              "Segal restriction is not injective at '" + rname + "'");
      }
    }
    std::vector<Id> want_tuple;
    for (const auto& u : cd.vertex_order) want_tuple.push_back(wanted.at(u));
    const auto& table = segal_index->at(rname);
    auto yit = table.find(want_tuple);
    check(yit != table.end(), "SegalFailure",
          "Segal system has no solution at '" + rname + "'");
    auto [sname, aidx] = active_index(rname, z);
    return xc.apply(sname, rname, aidx, yit->second);
  };
  auto memo = std::make_shared<std::map<std::string, Id>>();
  out.gamma_fn = [memo, eval](const DecoratedGraph& d) -> Id {
    const std::string key = d.str();
    if (auto it = memo->find(key); it != memo->end()) return it->second;
    const Id r = eval(d);
    memo->emplace(key, r);
    return r;
  };
  return out;
}

}  // namespace modgraph
