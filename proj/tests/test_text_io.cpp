#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "flowcat/flowcat.hpp"

using namespace flowcat;
using flowcat::testing::corpus;

TEST_CASE("parsing the directed segment document", "[parse]") {
  FiniteFlow f = parse_flow("state a\nstate b\npath v a b\n");
  REQUIRE(f.states == std::set<Id>{"a", "b"});
  REQUIRE(f.paths.size() == 1);
  REQUIRE(isomorphic(f, directed_segment()));
}

TEST_CASE("documents with comments and blank lines", "[parse]") {
  FiniteFlow f = parse_flow("# a loop\nstate a\n\npath v a a\ncomp v v = v\n");
  REQUIRE(f.compose("v", "v") == Id("v"));
}

TEST_CASE("missing composite is a semantic error", "[parse]") {
  REQUIRE_THROWS_AS(parse_flow("state a\npath v a a\n"), FlowError);
  try {
    parse_flow("state a\npath v a a\n");
  } catch (const FlowError& e) {
    REQUIRE(std::string(e.what()).find("missing composite (v,v)") !=
            std::string::npos);
  }
}

TEST_CASE("syntax errors carry line numbers", "[parse]") {
  try {
    parse_flow("state a\nwobble\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 2);
  }
  REQUIRE_THROWS_AS(parse_flow("state\n"), ParseError);
  REQUIRE_THROWS_AS(parse_flow("path v a\n"), ParseError);
  REQUIRE_THROWS_AS(parse_flow("comp v w u\n"), ParseError);
}

TEST_CASE("use before declaration is rejected", "[parse]") {
  REQUIRE_THROWS_AS(parse_flow("path v a b\nstate a\nstate b\n"), ParseError);
  REQUIRE_THROWS_AS(parse_flow("state a\nstate a\n"), ParseError);
}

TEST_CASE("the concatenation document parses to a concatenation shape",
          "[parse]") {
  FiniteFlow f = parse_flow(
      "state a\nstate b\nstate c\n"
      "path v a b\npath w b c\npath u a c\n"
      "comp v w = u\n");
  REQUIRE(validate(f).empty());
  REQUIRE(isomorphic(f, glob_concat({"v"}, {"w"}).flow));
}

TEST_CASE("serialization is canonical and exact", "[serialize]") {
  REQUIRE(serialize_flow(terminal_flow()) ==
          "state 0\npath u 0 0\ncomp u u = u\n");
  REQUIRE(serialize_flow(empty_flow()).empty());
  REQUIRE(parse_flow("").states.empty());
}

TEST_CASE("the tensor square document shape", "[serialize]") {
  TensorFlow t = tensor(directed_segment(), directed_segment());
  std::string doc = serialize_flow(t.flow);
  std::size_t states = 0, paths = 0, comps = 0;
  std::istringstream in(doc);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("state ", 0) == 0) ++states;
    if (line.rfind("path ", 0) == 0) ++paths;
    if (line.rfind("comp ", 0) == 0) ++comps;
  }
  REQUIRE(states == 4);
  REQUIRE(paths == 5);
  // the two L-shaped routes around the square compose into the diagonal
  REQUIRE(comps == 2);
}

TEST_CASE("parse then serialize round-trips over the corpus", "[roundtrip]") {
  for (const auto& f : corpus()) {
    FiniteFlow back = parse_flow(serialize_flow(f));
    REQUIRE(back == f);
    REQUIRE(serialize_flow(back) == serialize_flow(f));
  }
}

TEST_CASE("morphism documents round-trip", "[morphism_io]") {
  FlowPtr seg = share(directed_segment());
  FlowPtr cf = share(glob_concat({"x"}, {"y"}).flow);
  for (const auto& m : enumerate_morphisms(seg, cf)) {
    FlowMorphism back = parse_morphism(serialize_morphism(m), seg, cf);
    REQUIRE(back == m);
  }
}

TEST_CASE("morphism parse errors", "[morphism_io]") {
  FlowPtr seg = share(directed_segment());
  REQUIRE_THROWS_AS(parse_morphism("map-state 0 -> 7\n", seg, seg), ParseError);
  REQUIRE_THROWS_AS(parse_morphism("map-state 0 0\n", seg, seg), ParseError);
  // not a morphism: swaps the endpoints
  REQUIRE_THROWS_AS(
      parse_morphism("map-state 0 -> 1\nmap-state 1 -> 0\nmap-path I -> I\n",
                     seg, seg),
      FlowError);
  // not total
  REQUIRE_THROWS_AS(parse_morphism("map-state 0 -> 0\n", seg, seg), FlowError);
}
