#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "flowcat/flowcat.hpp"

using namespace flowcat;

namespace {

FlowMorphism collapse_two_points() {
  FlowPtr two = share(achronal_flow(2));
  FlowPtr one = share(achronal_flow(1));
  return {two, one, {{"*0", "*0"}, {"*1", "*0"}}, {}};
}

FlowMorphism globe_inclusion(const std::set<Id>& A, const std::set<Id>& B) {
  Globe ga = globe(A);
  Globe gb = globe(B);
  FlowMorphism g{share(ga.flow), share(gb.flow),
                 {{ga.s0, gb.s0}, {ga.s1, gb.s1}}, {}};
  for (const auto& a : A) g.path_map[ga.gen.at(a)] = gb.gen.at(a);
  return g;
}

}  // namespace

TEST_CASE("identity on the left absorbs the pushout", "[pushout_product]") {
  FlowPtr u = share(achronal_flow(2));
  FlowMorphism f = identity_morphism(u);
  FlowMorphism g = globe_inclusion({"a"}, {"a", "b"});
  PushoutProduct pp = pushout_product(f, g);
  REQUIRE(check_morphism(pp.map));
  REQUIRE(is_bijective(pp.map));
  REQUIRE(isomorphic(*pp.corner.flow, tensor(*u, *g.target).flow));
  // through the V tensor W leg, the corner map acts as id tensor g
  FlowMorphism through = compose(pp.corner.cocone.legs.at("vw"), pp.map);
  FlowMorphism expected = tensor_morphism(identity_morphism(u), g);
  REQUIRE(through.state_map == expected.state_map);
  REQUIRE(through.path_map == expected.path_map);
}

TEST_CASE("pushout-product of the empty inclusions", "[pushout_product]") {
  FlowPtr e = share(empty_flow());
  FlowPtr pt = share(point_flow());
  FlowMorphism f{e, pt, {}, {}};
  PushoutProduct pp = pushout_product(f, f);
  REQUIRE(pp.corner.flow->states.empty());
  REQUIRE(pp.corner.flow->paths.empty());
  REQUIRE(isomorphic(*pp.map.target, point_flow()));
  REQUIRE(check_morphism(pp.map));
}

TEST_CASE("glob identity on the sphere stand-in", "[glob_identity]") {
  // S^0 = {-1,+1} inside D^1 = {-1,+1,0}: the corner is the globe on
  // 3 + 3 - 2 = 4 generators
  auto rep = check_glob_identity({"-1", "+1"}, {"-1", "+1", "0"});
  REQUIRE(rep.corner.states.size() == 2);
  REQUIRE(rep.corner.paths.size() == 4);
  REQUIRE(rep.expected.paths.size() == 4);
  REQUIRE(rep.iso.has_value());
  REQUIRE(check_morphism(*rep.iso));
}

TEST_CASE("glob identity with empty and full overlap", "[glob_identity]") {
  auto disjoint = check_glob_identity({}, {"b"});
  REQUIRE(disjoint.corner.paths.size() == 2);
  REQUIRE(disjoint.iso.has_value());

  auto full = check_glob_identity({"a", "b"}, {"a", "b"});
  REQUIRE(full.corner.paths.size() == 2);
  REQUIRE(full.iso.has_value());
  REQUIRE(isomorphic(full.corner, globe({"a", "b"}).flow));
}

TEST_CASE("glob identity for every A within B up to size 4", "[glob_identity]") {
  for (std::size_t nb = 0; nb <= 4; ++nb) {
    std::vector<Id> belems;
    for (std::size_t i = 0; i < nb; ++i) belems.push_back("e" + std::to_string(i));
    std::set<Id> B(belems.begin(), belems.end());
    for (std::size_t mask = 0; mask < (1u << nb); ++mask) {
      std::set<Id> A;
      for (std::size_t i = 0; i < nb; ++i)
        if (mask & (1u << i)) A.insert(belems[i]);
      auto rep = check_glob_identity(A, B);
      REQUIRE(rep.iso.has_value());
      REQUIRE(rep.corner.paths.size() == 2 * B.size() - A.size());
    }
  }
}

TEST_CASE("pushout-product is symmetric up to isomorphism", "[pushout_product]") {
  std::vector<std::pair<FlowMorphism, FlowMorphism>> pairs;
  pairs.push_back({collapse_two_points(), globe_inclusion({"a"}, {"a", "b"})});
  pairs.push_back({globe_inclusion({}, {"g"}), collapse_two_points()});
  pairs.push_back(
      {globe_inclusion({"a"}, {"a", "b"}), globe_inclusion({}, {"c"})});
  for (const auto& [f, g] : pairs) {
    PushoutProduct fg = pushout_product(f, g);
    PushoutProduct gf = pushout_product(g, f);
    REQUIRE(isomorphic(*fg.corner.flow, *gf.corner.flow));
  }
}

TEST_CASE("corner map is injective on states but folds paths",
          "[glob_identity]") {
  // the corner map collapses the two glued copies of B onto one, so it is
  // injective on states, surjective on paths, and non-injective on paths
  // exactly when A is a proper subset of B
  for (const auto& [na, nb] : std::vector<std::pair<int, int>>{
           {0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 2}}) {
    std::set<Id> A, B;
    for (int i = 0; i < nb; ++i) {
      B.insert("e" + std::to_string(i));
      if (i < na) A.insert("e" + std::to_string(i));
    }
    FlowMorphism f = collapse_two_points();
    FlowMorphism g = globe_inclusion(A, B);
    PushoutProduct pp = pushout_product(f, g);
    std::set<Id> simg, pimg;
    for (const auto& [s, t] : pp.map.state_map) simg.insert(t);
    for (const auto& [p, q] : pp.map.path_map) pimg.insert(q);
    REQUIRE(simg.size() == pp.corner.flow->states.size());
    REQUIRE(pimg.size() == pp.map.target->paths.size());
    if (na < nb)
      REQUIRE(pimg.size() < pp.corner.flow->paths.size());
    else
      REQUIRE(pimg.size() == pp.corner.flow->paths.size());
  }
}
