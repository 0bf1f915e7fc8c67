#pragma once

#include "modgraph/presheaf.hpp"

namespace modgraph {

struct CheckReport {
  bool ok = true;
  std::string detail;
  std::size_t cases = 0;
};

/// The canonical comparison map X_G -> N(L_X)_G of the nerve theorem:
/// f0 reads off the edge restrictions, f1 repositions the star
/// restrictions into fiber coordinates.
inline OperadMap segal_element_to_map(const Presheaf& x,
                                      std::shared_ptr<const TabulatedOperad> l,
                                      const std::string& obj, const Id& y) {
  const Site& site = *x.site;
  const Graph& g = site.object(obj);
  IdMap<Id> f0;
  for (const auto& a : g.arcs.elements()) {
    const Graph& eg = site.objects.at(site.edge_object);
    const auto orb = eg.arcs.orbits().front();
    IdMap<Id> phi0{{orb.first, a}, {orb.second, g.arcs.dagger(a)}};
    GraphicalMap m = make_graphical_map(eg, g, phi0, {}, Mode::Strict);
    auto idx = site.locate(site.edge_object, obj, m);
    check(idx.has_value(), "MissingCoreObject", "edge restriction missing");
    f0[a] = x.apply(site.edge_object, obj, *idx, y);
  }
  IdMap<Id> f1;
  if (g.has_vertices()) {
    const auto& cd = site.core.at(obj);
    for (const auto& v : cd.vertex_order) {
      const Id raw =
          x.apply(cd.star_object.at(v), obj, cd.star_inclusion.at(v), y);
      // reposition from sorted-neighbourhood order to canonical fiber order
      const ColoredObject vo = map_vertex_object(g, f0, v);
      const std::vector<Id> cs = vo.canonical_slots();
      const std::vector<Id> nb = to_vector(g.nbhd(v));
      std::vector<std::size_t> kappa(nb.size());
      for (std::size_t j = 0; j < nb.size(); ++j) {
        const Id slot = cs[j];
        std::size_t k = 0;
        for (; k < nb.size(); ++k)
          if (g.arcs.dagger(nb[k]) == slot) break;
        kappa[j] = k;
      }
      f1[v] = x.apply(cd.star_object.at(v), cd.star_object.at(v),
                      detail::star_perm_index(site, nb.size(), kappa), raw);
    }
  }
  return make_operad_map(g, l, f0, f1);
}

/// Roundtrip (a) of the nerve theorem at desk scale: the canonical maps
/// X_G -> N(L_X)_G are bijections, naturally in G.
inline CheckReport roundtrip_nerve_of_associated(const Presheaf& x) {
  CheckReport rep;
  auto l = std::make_shared<TabulatedOperad>(operad_from_segal(x));
  NervePresheaf n = nerve_presheaf(l, x.site);
  const Site& site = *x.site;
  std::map<std::string, IdMap<Id>> comparison;  // X elem -> nerve name
  for (const auto& obj : site.names) {
    IdSet hit;
    for (const auto& y : x.at(obj)) {
      OperadMap m = segal_element_to_map(x, l, obj, y);
      std::optional<Id> name;
      for (std::size_t i = 0; i < n.elements[obj].size(); ++i)
        if (operad_map_equal(n.elements[obj][i], m)) {
          name = "n" + std::to_string(i);
          break;
        }
      if (!name) {
        rep.ok = false;
        rep.detail = "comparison map misses the nerve at '" + obj + "'";
        return rep;
      }
      if (!hit.insert(*name).second) {
        rep.ok = false;
        rep.detail = "comparison map not injective at '" + obj + "'";
        return rep;
      }
      comparison[obj][y] = *name;
      rep.cases++;
    }
    if (hit.size() != n.x.at(obj).size()) {
      rep.ok = false;
      rep.detail = "comparison map not surjective at '" + obj + "' (" +
                   std::to_string(hit.size()) + " of " +
                   std::to_string(n.x.at(obj).size()) + ")";
      return rep;
    }
  }
  // naturality
  for (const auto& a : site.names)
    for (const auto& b : site.names) {
      const auto& hs = site.hom(a, b);
      for (std::size_t i = 0; i < hs.size(); ++i)
        for (const auto& y : x.at(b)) {
          const Id lhs = comparison[a].at(x.apply(a, b, i, y));
          const Id rhs = n.x.apply(a, b, i, comparison[b].at(y));
          if (lhs != rhs) {
            rep.ok = false;
            rep.detail = "comparison not natural along a map " + a + " -> " + b;
            return rep;
          }
        }
    }
  return rep;
}

/// Roundtrip (b): the operad associated to the nerve of P is P itself:
/// fiberwise bijections compatible with colors and gamma.
inline CheckReport roundtrip_associated_of_nerve(
    std::shared_ptr<const TabulatedOperad> p, std::shared_ptr<const Site> site,
    const LawBounds& bounds = {}) {
  CheckReport rep;
  NervePresheaf n = nerve_presheaf(p, site);
  TabulatedOperad l = operad_from_segal(n.x);
  // color dictionary
  const Graph& eg = site->objects.at(site->edge_object);
  const Id front = eg.arcs.orbits().front().first;
  IdMap<Id> dict;
  for (std::size_t i = 0; i < n.elements.at(site->edge_object).size(); ++i)
    dict["n" + std::to_string(i)] =
        n.elements.at(site->edge_object)[i].f0.at(front);
  for (const auto& [c, cd] : dict)
    if (dict.at(l.colors.dagger(c)) != p->colors.dagger(cd)) {
      rep.ok = false;
      rep.detail = "color dictionary is not involutive";
      return rep;
    }
  // fiber dictionaries: a star value of the nerve is an operad map whose
  // vertex decoration, repositioned, is the matching element of P
  std::map<std::vector<Id>, IdMap<Id>> fiber_dict;
  for (const auto& [key, names] : l.fiber_names) {
    std::vector<Id> mapped;
    for (const auto& c : key) mapped.push_back(dict.at(c));
    std::sort(mapped.begin(), mapped.end());
    const auto pf = p->fiber_names.count(mapped)
                        ? p->fiber_names.at(mapped)
                        : std::vector<Id>{};
    if (names.size() != pf.size()) {
      rep.ok = false;
      rep.detail = "fiber size mismatch at class [" + join(key, ",") + "]: " +
                   std::to_string(names.size()) + " vs " +
                   std::to_string(pf.size());
      return rep;
    }
    const std::string sname = site->star_by_arity.at(key.size());
    const Graph& st = site->objects.at(sname);
    IdSet used;
    for (const auto& nm : names) {
      const OperadMap& om = n.element(sname, nm);
      Id pe;
      if (st.vertices.empty()) {
        pe = "";  // unreachable: stars always have one vertex
      } else {
        const Id sv = *st.vertices.begin();
        const ColoredObject src = map_vertex_object(st, om.f0, sv);
        // pair the leg positions with rep slots by the rank of their
        // dictionary image (stable in the position index)
        const std::vector<Id> legs = to_vector(st.boundary);
        std::vector<std::size_t> order(legs.size());
        for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return om.f0.at(legs[a]) < om.f0.at(legs[b]);
                         });
        IdMap<Id> bij;
        ColoredObject dst = rep_object(mapped);
        for (std::size_t k = 0; k < order.size(); ++k)
          bij[legs[order[k]]] = rep_slot(k + 1);
        pe = p->act(src, dst, bij, om.f1_tab.at(sv));
      }
      const auto& pfv = pf;
      if (std::find(pfv.begin(), pfv.end(), pe) == pfv.end() ||
          !used.insert(pe).second) {
        rep.ok = false;
        rep.detail = "fiber dictionary fails at class [" + join(key, ",") + "]";
        return rep;
      }
      fiber_dict[key][nm] = pe;
      rep.cases++;
    }
  }
  // gamma compatibility on bounded decorations
  std::vector<VertexProfile> profiles;
  for (const auto& [key, names] : l.fiber_names)
    if (!names.empty() && key.size() <= bounds.profile_arity)
      profiles.push_back({join(key, "|"), key});
  std::size_t budget = bounds.max_cases;
  for (const auto& [key, names] : l.fiber_names) {
    if (key.size() > bounds.profile_arity) continue;
    for (const auto& skel : enumerate_shapes(l.colors, profiles,
                                             rep_object(key),
                                             bounds.outer_vertices)) {
      std::vector<Id> ws = to_vector(skel.shape.graph.vertices);
      std::vector<std::vector<Id>> fibs;
      bool fine = true;
      for (const auto& w : ws) {
        auto f = l.fiber(vertex_object(skel.shape, w));
        if (f.empty()) fine = false;
        fibs.push_back(f);
      }
      if (!fine) continue;
      std::vector<std::size_t> pick(ws.size(), 0);
      while (budget > 0) {
        DecoratedGraph d = skel;
        DecoratedGraph dp = skel;  // translated to P
        for (auto& [a, c] : dp.shape.zeta) c = dict.at(c);
        for (std::size_t i = 0; i < ws.size(); ++i) {
          d.dec[ws[i]] = fibs[i][pick[i]];
          const auto vkey = vertex_object(skel.shape, ws[i]).color_class();
          dp.dec[ws[i]] = fiber_dict.at(vkey).at(fibs[i][pick[i]]);
        }
        const Id lhs = fiber_dict.at(key).at(l.gamma(d));
        const Id rhs = p->gamma(dp);
        rep.cases++;
        budget--;
        if (lhs != rhs) {
          rep.ok = false;
          rep.detail = "gamma mismatch through the dictionary on " + d.str();
          return rep;
        }
        std::size_t i = 0;
        for (; i < ws.size(); ++i) {
          if (++pick[i] < fibs[i].size()) break;
          pick[i] = 0;
        }
        if (i == ws.size()) break;
      }
    }
  }
  return rep;
}

/// All natural transformations between presheaves on one site, as maps of
/// value sets per object: CSP over objects with naturality pruning.
inline std::vector<std::map<std::string, IdMap<Id>>> presheaf_morphisms(
    const Presheaf& x, const Presheaf& y) {
  check(x.site == y.site, "MissingCoreObject",
        "presheaf morphisms need a common site");
  const Site& site = *x.site;
  std::vector<std::string> order = site.names;
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return x.at(a).size() < x.at(b).size();
                   });
  std::vector<std::map<std::string, IdMap<Id>>> out;
  std::map<std::string, IdMap<Id>> cur;

  auto full_check = [&]() {
    for (const auto& a : site.names)
      for (const auto& b : site.names) {
        const auto& hs = site.hom(a, b);
        for (std::size_t i = 0; i < hs.size(); ++i)
          for (const auto& e : x.at(b))
            if (cur.at(a).at(x.apply(a, b, i, e)) !=
                y.apply(a, b, i, cur.at(b).at(e)))
              return false;
      }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t oi) {
    if (oi == order.size()) {
      if (full_check()) out.push_back(cur);
      return;
    }
    const std::string& obj = order[oi];
    // per-element candidates constrained by already-assigned objects
    std::vector<Id> elems = x.at(obj);
    std::vector<std::vector<Id>> cands;
    for (const auto& e : elems) {
      std::vector<Id> cs;
      for (const auto& c : y.at(obj)) {
        bool ok = true;
        for (std::size_t pj = 0; pj < oi && ok; ++pj) {
          const std::string& prev = order[pj];
          const auto& hs = site.hom(prev, obj);
          for (std::size_t i = 0; i < hs.size() && ok; ++i)
            if (y.apply(prev, obj, i, c) !=
                cur.at(prev).at(x.apply(prev, obj, i, e)))
              ok = false;
        }
        if (ok) cs.push_back(c);
      }
      if (cs.empty()) return;
      cands.push_back(std::move(cs));
    }
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      if (k == elems.size()) {
        rec(oi + 1);
        return;
      }
      for (const auto& c : cands[k]) {
        cur[obj][elems[k]] = c;
        assign(k + 1);
      }
      cur[obj].erase(elems[k]);
    };
    if (elems.empty()) {
      cur[obj];
      rec(oi + 1);
      cur.erase(obj);
      return;
    }
    assign(0);
    cur.erase(obj);
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// A morphism of tabulated operads: a color map and equivariant fiber
/// maps at each class representative.
struct CsmMap {
  IdMap<Id> f0;
  std::map<std::vector<Id>, IdMap<Id>> fiber_maps;

  bool operator<(const CsmMap& o) const {
    return std::tie(f0, fiber_maps) < std::tie(o.f0, o.fiber_maps);
  }
};

/// Enumerate csm(P, Q) restricted to the given arity: color maps, then
/// equivariant fiber maps, filtered by gamma compatibility on bounded
/// decorations.
inline std::vector<CsmMap> enumerate_csm_maps(const TabulatedOperad& p,
                                              const TabulatedOperad& q,
                                              std::size_t arity_bound,
                                              const LawBounds& bounds = {}) {
  std::vector<CsmMap> out;
  std::vector<std::vector<Id>> keys;
  for (const auto& [key, names] : p.fiber_names)
    if (key.size() <= arity_bound) keys.push_back(key);

  // candidate color maps
  std::vector<IdMap<Id>> color_maps;
  {
    const auto orbits = p.colors.orbits();
    const std::vector<Id> qc = to_vector(q.colors.elements());
    IdMap<Id> f0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == orbits.size()) {
        color_maps.push_back(f0);
        return;
      }
      const auto& [x2, y2] = orbits[k];
      for (const auto& c : qc) {
        f0[x2] = c;
        f0[y2] = q.colors.dagger(c);
        rec(k + 1);
        f0.erase(x2);
        f0.erase(y2);
      }
    };
    rec(0);
  }

  for (const auto& f0 : color_maps) {
    auto recolor_key = [&](const std::vector<Id>& key) {
      std::vector<Id> m;
      for (const auto& c : key) m.push_back(f0.at(c));
      std::sort(m.begin(), m.end());
      return m;
    };
    // per-class candidate functions, filtered by equivariance
    std::vector<std::vector<IdMap<Id>>> cand;
    bool feasible = true;
    for (const auto& key : keys) {
      const auto& pf = p.fiber_names.at(key);
      const auto qkey = recolor_key(key);
      const std::vector<Id> qf = q.fiber_names.count(qkey)
                                     ? q.fiber_names.at(qkey)
                                     : std::vector<Id>{};
      if (pf.empty()) {
        cand.push_back({IdMap<Id>{}});
        continue;
      }
      if (qf.empty()) {
        feasible = false;
        break;
      }
      // color-preserving position permutations of the rep object
      std::vector<std::vector<std::size_t>> perms;
      {
        std::vector<std::size_t> perm(key.size());
        std::vector<bool> used(key.size(), false);
        std::function<void(std::size_t)> prec = [&](std::size_t i) {
          if (i == key.size()) {
            perms.push_back(perm);
            return;
          }
          for (std::size_t j = 0; j < key.size(); ++j) {
            if (used[j] || key[i] != key[j]) continue;
            used[j] = true;
            perm[i] = j;
            prec(i + 1);
            used[j] = false;
          }
        };
        prec(0);
      }
      const ColoredObject rp = rep_object(key);
      const ColoredObject rq = rep_object(recolor_key(key));
      std::vector<IdMap<Id>> fs;
      std::vector<std::size_t> pick(pf.size(), 0);
      while (true) {
        IdMap<Id> fm;
        for (std::size_t i = 0; i < pf.size(); ++i) fm[pf[i]] = qf[pick[i]];
        bool ok = true;
        for (const auto& perm : perms) {
          if (perms.size() == 1) break;  // identity only
          IdMap<Id> bij;
          for (std::size_t j = 0; j < key.size(); ++j)
            bij[rep_slot(j + 1)] = rep_slot(perm[j] + 1);
          for (const auto& e : pf) {
            if (fm.at(p.act(rp, rp, bij, e)) != q.act(rq, rq, bij, fm.at(e))) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (ok) fs.push_back(std::move(fm));
        std::size_t i = 0;
        for (; i < pf.size(); ++i) {
          if (++pick[i] < qf.size()) break;
          pick[i] = 0;
        }
        if (i == pf.size()) break;
      }
      if (fs.empty()) {
        feasible = false;
        break;
      }
      cand.push_back(std::move(fs));
    }
    if (!feasible) continue;

    // assemble and filter by gamma compatibility
    std::vector<VertexProfile> profiles;
    for (const auto& key : keys)
      if (!p.fiber_names.at(key).empty() &&
          key.size() <= bounds.profile_arity)
        profiles.push_back({join(key, "|"), key});

    std::function<bool(const CsmMap&)> gamma_ok = [&](const CsmMap& cm) {
      std::size_t budget = bounds.max_cases;
      for (const auto& key : keys) {
        if (key.size() > bounds.profile_arity) continue;
        for (const auto& skel : enumerate_shapes(
                 p.colors, profiles, rep_object(key), bounds.outer_vertices)) {
          std::vector<Id> ws = to_vector(skel.shape.graph.vertices);
          std::vector<std::vector<Id>> fibs;
          bool fine = true;
          for (const auto& w : ws) {
            auto f = p.fiber(vertex_object(skel.shape, w));
            if (f.empty()) fine = false;
            fibs.push_back(f);
          }
          if (!fine) continue;
          std::vector<std::size_t> pick2(ws.size(), 0);
          while (budget > 0) {
            DecoratedGraph d = skel;
            DecoratedGraph dq = skel;
            for (auto& [a, c] : dq.shape.zeta) c = cm.f0.at(c);
            for (std::size_t i = 0; i < ws.size(); ++i) {
              d.dec[ws[i]] = fibs[i][pick2[i]];
              const auto vkey =
                  vertex_object(skel.shape, ws[i]).color_class();
              dq.dec[ws[i]] = cm.fiber_maps.at(vkey).at(fibs[i][pick2[i]]);
            }
            budget--;
            if (cm.fiber_maps.at(key).at(p.gamma(d)) != q.gamma(dq))
              return false;
            std::size_t i = 0;
            for (; i < ws.size(); ++i) {
              if (++pick2[i] < fibs[i].size()) break;
              pick2[i] = 0;
            }
            if (i == ws.size()) break;
          }
        }
      }
      return true;
    };

    std::vector<std::size_t> pick(keys.size(), 0);
    while (true) {
      CsmMap cm;
      cm.f0 = f0;
      for (std::size_t i = 0; i < keys.size(); ++i)
        cm.fiber_maps[keys[i]] = cand[i][pick[i]];
      if (gamma_ok(cm)) out.push_back(cm);
      std::size_t i = 0;
      for (; i < keys.size(); ++i) {
        if (++pick[i] < cand[i].size()) break;
        pick[i] = 0;
      }
      if (i == keys.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The presheaf morphism N(f) induced by a csm map on nerve presheaves.
inline std::map<std::string, IdMap<Id>> induced_presheaf_morphism(
    const CsmMap& cm, const NervePresheaf& np, const NervePresheaf& nq,
    std::shared_ptr<const TabulatedOperad> q) {
  std::map<std::string, IdMap<Id>> out;
  for (const auto& [obj, elems] : np.elements) {
    out[obj];
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const OperadMap& om = elems[i];
      IdMap<Id> f0;
      for (const auto& [a, c] : om.f0) f0[a] = cm.f0.at(c);
      IdMap<Id> f1;
      for (const auto& [v, e] : om.f1_tab) {
        const auto key = map_vertex_object(om.source_gen, om.f0, v).color_class();
        f1[v] = cm.fiber_maps.at(key).at(e);
      }
      OperadMap target = make_operad_map(om.source_gen, q, f0, f1);
      // locate in nq
      std::optional<Id> name;
      const auto& qs = nq.elements.at(obj);
      for (std::size_t k = 0; k < qs.size(); ++k)
        if (operad_map_equal(qs[k], target)) {
          name = "n" + std::to_string(k);
          break;
        }
      check(name.has_value(), "MissingElement",
            "induced morphism escapes the target nerve");
      out[obj]["n" + std::to_string(i)] = *name;
    }
  }
  return out;
}

struct FullyFaithfulReport {
  std::size_t presheaf_morphisms = 0;
  std::size_t csm_maps = 0;
  bool ok = false;
  std::string detail;
};

/// Both sides of fully-faithfulness at desk scale: the presheaf morphisms
/// between two nerves are exactly the images of the operad maps.
inline FullyFaithfulReport fullyfaithful_check(
    std::shared_ptr<const TabulatedOperad> p,
    std::shared_ptr<const TabulatedOperad> q,
    std::shared_ptr<const Site> site, std::size_t arity_bound,
    const LawBounds& bounds = {}) {
  FullyFaithfulReport rep;
  NervePresheaf np = nerve_presheaf(p, site);
  NervePresheaf nq = nerve_presheaf(q, site);
  auto pms = presheaf_morphisms(np.x, nq.x);
  auto cms = enumerate_csm_maps(*p, *q, arity_bound, bounds);
  rep.presheaf_morphisms = pms.size();
  rep.csm_maps = cms.size();
  std::vector<std::map<std::string, IdMap<Id>>> induced;
  for (const auto& cm : cms)
    induced.push_back(induced_presheaf_morphism(cm, np, nq, q));
  std::sort(induced.begin(), induced.end());
  if (std::adjacent_find(induced.begin(), induced.end()) != induced.end()) {
    rep.detail = "two operad maps induce the same presheaf morphism";
    return rep;
  }
  for (const auto& m : induced)
    if (!std::binary_search(pms.begin(), pms.end(), m)) {
      rep.detail = "an induced morphism is not natural";
      return rep;
    }
  if (pms.size() != cms.size()) {
    rep.detail = "counts differ: " + std::to_string(pms.size()) +
                 " presheaf morphisms vs " + std::to_string(cms.size()) +
                 " operad maps";
    return rep;
  }
  rep.ok = true;
  return rep;
}

/// Delete one element from a value set, redirecting any action image that
/// pointed at it; the result is generally no longer functorial, which is
/// the point of the mutation.
inline Presheaf delete_value(Presheaf x, const std::string& obj, const Id& e) {
  auto& vals = x.values.at(obj);
  vals.erase(std::remove(vals.begin(), vals.end(), e), vals.end());
  check(!vals.empty(), "MissingElement", "cannot empty a value set");
  const Id fallback = vals.front();
  for (auto& [key, tables] : x.action) {
    const auto& [a, b] = key;
    for (auto& t : tables) {
      if (b == obj) t.erase(e);
      if (a == obj)
        for (auto& [src, img] : t)
          if (img == e) img = fallback;
    }
  }
  return x;
}

// ---------------------------------------------------------------------
// The Joyal--Kock comparisons

/// Restrict a JK-site presheaf along iota: same objects, U-morphism
/// actions pulled from their operad images.
inline Presheaf restrict_to_u(const Presheaf& xjk,
                              std::shared_ptr<const Site> usite) {
  const Site& js = *xjk.site;
  check(usite->names == js.names, "MissingCoreObject",
        "restriction needs the same objects");
  Presheaf out;
  out.site = usite;
  out.values = xjk.values;
  for (const auto& a : usite->names)
    for (const auto& b : usite->names) {
      const auto& hs = usite->hom(a, b);
      std::vector<IdMap<Id>> tables;
      for (const auto& m : hs) {
        auto idx = js.find_om(a, b, m.om);
        check(idx.has_value(), "MissingCoreObject",
              "U-map missing from the JK homset (raise the vertex bound?)");
        tables.push_back(xjk.action.at({a, b}).at(*idx));
      }
      out.action[{a, b}] = std::move(tables);
    }
  return out;
}

/// The pointwise right Kan extension value at an elementary object: the
/// limit of X over the bounded comma category K down iota-op, compared
/// with X_K itself.
inline CheckReport jk_counit_check(const Presheaf& xjk,
                                   std::shared_ptr<const Site> usite,
                                   const std::string& kname) {
  CheckReport rep;
  const Site& js = *xjk.site;
  const Presheaf xu = restrict_to_u(xjk, usite);
  // comma objects: all JK morphisms g : H -> K
  struct Obj {
    std::string h;
    std::size_t g;
  };
  std::vector<Obj> objs;
  for (const auto& h : js.names)
    for (std::size_t g = 0; g < js.hom(h, kname).size(); ++g)
      objs.push_back({h, g});
  // comma morphisms: u : H' -> H in U with g . u = g'
  struct Constraint {
    std::size_t from;       // index into objs (H, g)
    std::size_t to;         // index into objs (H', g.u)
    std::string h, h2;
    std::size_t u;          // index in usite hom(H', H)
  };
  std::vector<Constraint> cons;
  for (std::size_t oi = 0; oi < objs.size(); ++oi) {
    const auto& [h, g] = objs[oi];
    for (const auto& h2 : js.names) {
      const auto& us = usite->hom(h2, h);
      for (std::size_t u = 0; u < us.size(); ++u) {
        auto uj = js.find_om(h2, h, us[u].om);
        check(uj.has_value(), "MissingCoreObject", "U-map not in JK homset");
        const std::size_t gu = js.compose_index(h2, h, kname, *uj, g);
        std::size_t target = 0;
        for (; target < objs.size(); ++target)
          if (objs[target].h == h2 && objs[target].g == gu) break;
        cons.push_back({oi, target, h, h2, u});
      }
    }
  }
  // enumerate the limit by backtracking
  std::vector<Id> assign(objs.size());
  std::vector<bool> done(objs.size(), false);
  std::vector<std::vector<Id>> limit;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == objs.size()) {
      limit.push_back(assign);
      return;
    }
    for (const auto& v : xjk.at(objs[i].h)) {
      assign[i] = v;
      done[i] = true;
      bool ok = true;
      for (const auto& c : cons) {
        if (!done[c.from] || !done[c.to]) continue;
        if (assign[c.to] !=
            xu.apply(c.h2, c.h, c.u, assign[c.from])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(i + 1);
      done[i] = false;
    }
  };
  rec(0);
  // canonical map X_K -> limit
  std::set<std::vector<Id>> canonical;
  for (const auto& yk : xjk.at(kname)) {
    std::vector<Id> fam(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i)
      fam[i] = xjk.apply(objs[i].h, kname, objs[i].g, yk);
    canonical.insert(fam);
  }
  rep.cases = limit.size();
  std::set<std::vector<Id>> lim_set(limit.begin(), limit.end());
  if (canonical.size() != xjk.at(kname).size()) {
    rep.ok = false;
    rep.detail = "canonical map into the limit is not injective at '" + kname +
                 "'";
    return rep;
  }
  if (lim_set != canonical) {
    rep.ok = false;
    rep.detail = "limit over the comma category differs from X at '" + kname +
                 "' (" + std::to_string(lim_set.size()) + " vs " +
                 std::to_string(canonical.size()) + ")";
  }
  return rep;
}

/// Mechanism of the JK nerve theorem: a morphism of Segal presheaves that
/// is bijective at the elementary objects is bijective everywhere.
inline CheckReport elementary_bijective_check(
    const Presheaf& x, const Presheaf& y,
    const std::map<std::string, IdMap<Id>>& morphism) {
  CheckReport rep;
  const Site& site = *x.site;
  static const IdMap<Id> empty_map;
  auto bijective_at = [&](const std::string& obj) {
    auto it = morphism.find(obj);
    const IdMap<Id>& t = it == morphism.end() ? empty_map : it->second;
    IdSet image;
    for (const auto& [e, img] : t)
      if (!image.insert(img).second) return false;
    return image.size() == y.at(obj).size() && t.size() == x.at(obj).size();
  };
  for (const auto& n : site.names) {
    const Graph& g = site.objects.at(n);
    const bool elementary = g.is_exceptional_edge() ||
                            (g.vertices.size() == 1 && g.internal_edges().empty() &&
                             g.boundary.size() * 2 == g.arcs.size());
    if (elementary) {
      if (!bijective_at(n)) {
        rep.ok = false;
        rep.detail = "morphism is not bijective at the elementary object '" +
                     n + "'";
        return rep;
      }
    }
  }
  for (const auto& n : site.names) {
    rep.cases++;
    if (!bijective_at(n)) {
      rep.ok = false;
      rep.detail = "elementary-bijective morphism fails to be bijective at '" +
                   n + "'";
      return rep;
    }
  }
  return rep;
}

}  // namespace modgraph
