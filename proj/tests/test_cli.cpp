#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flowcat/flowcat.hpp"

using namespace flowcat;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("flowcat-test-" + std::to_string(counter_++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& content) {
    auto p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

 private:
  std::filesystem::path dir_;
  static inline int counter_ = 0;
};

}  // namespace

TEST_CASE("counterexample command", "[cli]") {
  auto r = run({"counterexample"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out ==
          "colimit-of-products paths: 2\n"
          "product-of-colimit paths: 3\n"
          "isomorphic: no\n");
}

TEST_CASE("validate command exit codes", "[cli]") {
  TempDir t;
  auto good = t.file("seg.flow", serialize_flow(directed_segment()));
  auto r = run({"validate", good});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("valid") != std::string::npos);

  auto bad = t.file("bad.flow", "state a\npath v a a\n");
  r = run({"validate", bad});
  REQUIRE(r.code == 1);
  REQUIRE(r.out.find("violation: missing composite (v,v)") != std::string::npos);

  auto broken = t.file("broken.flow", "wibble\n");
  r = run({"validate", broken});
  REQUIRE(r.code == 2);

  r = run({"validate", t.file("none", "") + ".missing"});
  REQUIRE(r.code == 2);
}

TEST_CASE("tensor and product commands", "[cli]") {
  TempDir t;
  auto seg = t.file("seg.flow", serialize_flow(directed_segment()));
  auto r = run({"tensor", seg, seg});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("# states: 4") != std::string::npos);
  REQUIRE(r.out.find("# paths: 5") != std::string::npos);
  REQUIRE(r.out.find("# components: path*path=1 state*path=2 path*state=2") !=
          std::string::npos);

  r = run({"product", seg, seg});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("# states: 4") != std::string::npos);
  REQUIRE(r.out.find("# paths: 1") != std::string::npos);
}

TEST_CASE("command output is byte-identical across runs", "[cli]") {
  TempDir t;
  auto seg = t.file("seg.flow", serialize_flow(directed_segment()));
  auto c = t.file("c.flow", serialize_flow(glob_concat({"x"}, {"y"}).flow));
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"tensor", seg, c},
           {"hom", seg, c},
           {"hom", seg, c, "--route", "decomp"},
           {"morphisms", seg, c},
           {"counterexample"},
           {"pushout-product", "1", "2"},
           {"decompose", c}}) {
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.code == b.code);
    REQUIRE(a.out == b.out);
  }
}

TEST_CASE("hom routes agree on globe-shaped inputs", "[cli]") {
  TempDir t;
  auto gl = t.file("globe.flow", serialize_flow(globe({"a", "b"}).flow));
  auto z = t.file("z.flow", serialize_flow(glob_concat({"x"}, {"y"}).flow));
  auto direct = run({"hom", gl, z});
  auto viaglobe = run({"hom", gl, z, "--route", "globe"});
  auto decomp = run({"hom", gl, z, "--route", "decomp"});
  REQUIRE(direct.code == 0);
  REQUIRE(viaglobe.code == 0);
  REQUIRE(decomp.code == 0);
  auto count_lines = [](const std::string& s, const std::string& prefix) {
    std::istringstream in(s);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
      if (line.rfind(prefix, 0) == 0) ++n;
    return n;
  };
  for (const auto& prefix : {"state ", "path "}) {
    REQUIRE(count_lines(direct.out, prefix) == count_lines(viaglobe.out, prefix));
    REQUIRE(count_lines(direct.out, prefix) == count_lines(decomp.out, prefix));
  }
  // route globe rejects non-globes
  auto seg = t.file("term.flow", serialize_flow(terminal_flow()));
  REQUIRE(run({"hom", seg, z, "--route", "globe"}).code == 2);
}

TEST_CASE("pushout command and overflow exit code", "[cli]") {
  TempDir t;
  auto apex = t.file("apex.flow", serialize_flow(achronal_flow(1)));
  auto v = t.file("v.flow", serialize_flow(directed_segment("v")));
  auto w = t.file("w.flow", serialize_flow(directed_segment("w")));
  auto f = t.file("f.morph", "map-state *0 -> 1\n");
  auto g = t.file("g.morph", "map-state *0 -> 0\n");
  auto r = run({"pushout", apex, v, w, f, g});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("# states: 3") != std::string::npos);
  REQUIRE(r.out.find("# paths: 3") != std::string::npos);
  REQUIRE(r.out.find("path v*w") != std::string::npos);

  // gluing both endpoints of one segment: a directed loop, never finite
  auto two = t.file("two.flow", serialize_flow(achronal_flow(2)));
  auto keep = t.file("keep.morph", "map-state *0 -> 0\nmap-state *1 -> 1\n");
  auto collapse = t.file("collapse.morph", "map-state *0 -> 0\nmap-state *1 -> 0\n");
  auto pt = t.file("pt.flow", serialize_flow(point_flow()));
  auto collapse_pt =
      t.file("collapse_pt.morph", "map-state *0 -> *\nmap-state *1 -> *\n");
  r = run({"pushout", two, v, pt, keep, collapse_pt});
  REQUIRE(r.code == 3);
  REQUIRE(r.out.find("overflow") != std::string::npos);
  REQUIRE(r.out.find("cycle: ") != std::string::npos);
  REQUIRE(r.out.find("-v->") != std::string::npos);
}

TEST_CASE("adjoint-check command", "[cli]") {
  TempDir t;
  auto seg = t.file("seg.flow", serialize_flow(directed_segment()));
  auto c = t.file("c.flow", serialize_flow(glob_concat({"x"}, {"y"}).flow));
  auto r = run({"adjoint-check", seg, seg, c});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("lhs=rhs=", 0) == 0);
  REQUIRE(r.out.find("bijection ok, naturality ok") != std::string::npos);
}

TEST_CASE("decompose command", "[cli]") {
  TempDir t;
  auto c = t.file("c.flow", serialize_flow(glob_concat({"x"}, {"y"}).flow));
  auto r = run({"decompose", c});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("points: 3") != std::string::npos);
  REQUIRE(r.out.find("globes: 3") != std::string::npos);
  REQUIRE(r.out.find("concatenations: 1") != std::string::npos);
  REQUIRE(r.out.find("reconstruction: isomorphic") != std::string::npos);
}

TEST_CASE("pushout-product command", "[cli]") {
  auto r = run({"pushout-product", "2", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("corner paths: 4") != std::string::npos);
  REQUIRE(r.out.find("isomorphic: yes") != std::string::npos);
  REQUIRE(r.out.find("map-state") != std::string::npos);

  REQUIRE(run({"pushout-product", "3", "2"}).code == 2);
}

TEST_CASE("morphisms command", "[cli]") {
  TempDir t;
  auto seg = t.file("seg.flow", serialize_flow(directed_segment()));
  auto c = t.file("c.flow", serialize_flow(glob_concat({"x"}, {"y"}).flow));
  auto r = run({"morphisms", seg, c});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("morphisms: 3", 0) == 0);
  REQUIRE(r.out.find("map-path I -> x*y") != std::string::npos);
}

TEST_CASE("usage errors", "[cli]") {
  REQUIRE(run({}).code == 2);
  REQUIRE(run({"no-such-command"}).code == 2);
  REQUIRE(run({"tensor", "only-one-file"}).code == 2);
  REQUIRE(run({"help"}).code == 0);
}
