#include <catch2/catch_amalgamated.hpp>

#include "modgraph/theorems.hpp"

using namespace modgraph;

namespace {

std::shared_ptr<Site> small_u_site() {
  static std::shared_ptr<Site> site = std::make_shared<Site>(build_site(
      SiteMode::U,
      {{"edge", exceptional_edge()},
       {"star0", star_n(0)},
       {"star1", star_n(1)},
       {"star2", star_n(2)},
       {"lin2", linear_graph(2)},
       {"seg2", segment_graph()},
       {"mix2", mixed_path_graph()},
       {"par2", double_edge_graph()},
       {"loop", cycle_graph(1)}}));
  return site;
}

std::vector<std::pair<std::string, Graph>> tree_objects() {
  return {{"edge", exceptional_edge()},
          {"star1", star_n(1)},
          {"star2", star_n(2)},
          {"lin2", linear_graph(2)},
          {"seg2", segment_graph()},
          {"mix2", mixed_path_graph()}};
}

}  // namespace

TEST_CASE("site construction and adequacy") {
  auto site = small_u_site();
  CHECK(site->edge_object == "edge");
  CHECK(site->loop_object.has_value());
  CHECK(site->star_by_arity.at(2) == "star2");
  // identity indices resolve
  for (const auto& n : site->names) {
    const auto& id = site->hom(n, n)[site->identity_index.at(n)];
    REQUIRE(id.gm.has_value());
    CHECK(id.gm->same_arrow(identity_map(site->objects.at(n))));
  }
  // composition table closes (already validated at build, spot check)
  const auto& h = site->hom("edge", "star2");
  CHECK(h.size() == 4);
}

TEST_CASE("the nerve of a tabulated operad at the edge is its colors") {
  auto p = std::make_shared<TabulatedOperad>(
      parity_operad(InvolutiveSet::make({{"r"}, {"s"}}), 2));
  CHECK(nerve_direct(exceptional_edge(), p).size() == 2);
  auto m2 = std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 3, 3));
  CHECK(nerve_direct(exceptional_edge(), m2).size() == 4);
}

TEST_CASE("the nerve at a star fibers over the colorings") {
  // |NP_star_S| = sum over colorings of the fibers at them
  auto p = std::make_shared<TabulatedOperad>(
      parity_operad(InvolutiveSet::make({{"r"}, {"s"}}), 3));
  auto elems = nerve_direct(star_n(2), p);
  // 4 involutive colorings of the 2 orbits, each with fiber size 2
  CHECK(elems.size() == 8);
}

TEST_CASE("the equalizer formula agrees with the direct nerve") {
  std::vector<std::shared_ptr<TabulatedOperad>> ops = {
      std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 4, 3)),
      std::make_shared<TabulatedOperad>(
          one_point_operad(InvolutiveSet::make({{"c", "c*"}}), 4)),
      std::make_shared<TabulatedOperad>(
          parity_operad(InvolutiveSet::make({{"r"}, {"s"}}), 4))};
  std::vector<Graph> gs = {star_n(2), star_n(3), linear_graph(2),
                           double_edge_graph(), cycle_graph(1), linear_graph(3)};
  for (const auto& p : ops)
    for (const auto& g : gs)
      CHECK(serialize_maps(nerve_direct(g, p)) ==
            serialize_maps(nerve_equalizer(g, p)));
}

TEST_CASE("nerve presheaves are functorial and Segal") {
  auto site = small_u_site();
  auto p = std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 4, 3));
  NervePresheaf np = nerve_presheaf(p, site);
  CHECK_NOTHROW(np.x.validate());
  SegalResult r = segal_check_all(np.x);
  INFO(r.witness);
  CHECK(r.ok);
}

TEST_CASE("deleting a value breaks the Segal condition with a witness") {
  auto site = small_u_site();
  auto p = std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 4, 3));
  NervePresheaf np = nerve_presheaf(p, site);
  Presheaf bad = delete_value(np.x, "lin2", np.x.at("lin2").front());
  SegalResult r = segal_check(bad, "lin2");
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("the operad associated to a Segal presheaf") {
  auto site = small_u_site();
  auto p = std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 4, 3));
  NervePresheaf np = nerve_presheaf(p, site);
  TabulatedOperad l = operad_from_segal(np.x);
  // L(empty) is X_star0
  auto it = l.fiber_names.find(std::vector<Id>{});
  REQUIRE(it != l.fiber_names.end());
  CHECK(it->second.size() == np.x.at("star0").size());
  // unit law
  const Collection coll = l.collection();
  for (const auto& [key, names] : l.fiber_names)
    for (const auto& e : names)
      CHECK(l.gamma(monad_unit(coll, rep_object(key), e)) == e);
  // a non-Segal presheaf is rejected upfront
  Presheaf bad = delete_value(np.x, "lin2", np.x.at("lin2").front());
  CHECK_THROWS_WITH(operad_from_segal(bad),
                    Catch::Matchers::StartsWith("SegalFailure"));
}

TEST_CASE("nerve theorem roundtrips at desk scale") {
  auto site = small_u_site();
  for (auto p : {std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 4, 3)),
                 std::make_shared<TabulatedOperad>(one_point_operad(
                     InvolutiveSet::make({{"c", "c*"}}), 2)),
                 std::make_shared<TabulatedOperad>(parity_operad(
                     InvolutiveSet::make({{"r"}, {"s"}}), 2))}) {
    NervePresheaf np = nerve_presheaf(p, site);
    CheckReport a = roundtrip_nerve_of_associated(np.x);
    INFO(a.detail);
    CHECK(a.ok);
    CheckReport b = roundtrip_associated_of_nerve(p, site, LawBounds{2, 2, 2, 1, 80});
    INFO(b.detail);
    CHECK(b.ok);
  }
}

TEST_CASE("fully faithfulness counts agree") {
  auto site = small_u_site();
  auto pt = std::make_shared<TabulatedOperad>(
      one_point_operad(InvolutiveSet::make({{"c", "c*"}}), 2));
  auto par = std::make_shared<TabulatedOperad>(
      parity_operad(InvolutiveSet::make({{"r"}, {"s"}}), 2));
  auto edge_op = std::make_shared<TabulatedOperad>(
      tabulate_free(exceptional_edge(), 2, 2));
  LawBounds lb{2, 2, 2, 1, 60};
  FullyFaithfulReport r1 = fullyfaithful_check(edge_op, edge_op, site, 2, lb);
  INFO(r1.detail);
  CHECK(r1.ok);
  CHECK(r1.csm_maps == 2);  // the two involutive self-maps of 2{*}
  FullyFaithfulReport r2 = fullyfaithful_check(pt, par, site, 2, lb);
  CHECK(r2.ok);
  FullyFaithfulReport r3 = fullyfaithful_check(par, par, site, 2, lb);
  CHECK(r3.ok);
}

TEST_CASE("csm maps out of the isolated-vertex operad are its target fiber") {
  auto par = std::make_shared<TabulatedOperad>(
      parity_operad(InvolutiveSet::make({{"r"}, {"s"}}), 2));
  // csm(M(star_0), Q) = Q(empty)
  auto maps = maps_to_tabulated(star_n(0), par);
  CHECK(maps.size() == par->fiber(ColoredObject{}).size());
}

TEST_CASE("JK sites: restriction, Segal equivalence, counit") {
  auto jsite = std::make_shared<Site>(build_site(SiteMode::JK, tree_objects(), 3));
  auto usite = std::make_shared<Site>(build_site(SiteMode::U, tree_objects()));
  auto p = std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 4, 3));
  NervePresheaf np = nerve_presheaf(p, jsite);
  CHECK_NOTHROW(np.x.validate());
  // restriction of the JK nerve is the U nerve
  Presheaf ru = restrict_to_u(np.x, usite);
  NervePresheaf nu = nerve_presheaf(p, usite);
  for (const auto& n : usite->names)
    CHECK(ru.at(n).size() == nu.x.at(n).size());
  // Segal on both sides, symmetrically after mutation
  CHECK(segal_check_all(np.x).ok);
  CHECK(segal_check_all(ru).ok);
  Presheaf bad = delete_value(np.x, "lin2", np.x.at("lin2").front());
  CHECK_FALSE(segal_check_all(bad).ok);
  CHECK_FALSE(segal_check_all(restrict_to_u(bad, usite)).ok);
  // counit at every elementary object
  for (const auto& k : {"edge", "star1", "star2"}) {
    CheckReport r = jk_counit_check(np.x, usite, k);
    INFO(r.detail);
    CHECK(r.ok);
  }
}

TEST_CASE("elementary-bijective morphisms of Segal presheaves are bijective") {
  auto jsite = std::make_shared<Site>(build_site(SiteMode::JK, tree_objects(), 3));
  auto p = std::make_shared<TabulatedOperad>(tabulate_free(star_n(2), 4, 3));
  NervePresheaf np = nerve_presheaf(p, jsite);
  auto endos = presheaf_morphisms(np.x, np.x);
  CHECK(!endos.empty());
  int verified = 0;
  for (const auto& m : endos) {
    bool elem_bij = true;
    for (const auto& k : {"edge", "star1", "star2"}) {
      IdSet image;
      for (const auto& [e, img] : m.at(k))
        if (!image.insert(img).second) elem_bij = false;
      if (image.size() != np.x.at(k).size()) elem_bij = false;
    }
    if (!elem_bij) continue;
    CheckReport r = elementary_bijective_check(np.x, np.x, m);
    INFO(r.detail);
    CHECK(r.ok);
    ++verified;
  }
  CHECK(verified >= 1);
}
