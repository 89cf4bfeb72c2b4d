#pragma once

// Command line driver. Exit codes: 0 success / property holds, 1 check
// failure, 2 usage or parse error, 3 saturation overflow.

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "flowcat/diagram.hpp"
#include "flowcat/hom.hpp"
#include "flowcat/pushout_product.hpp"
#include "flowcat/tensor.hpp"
#include "flowcat/text_io.hpp"

namespace flowcat {

namespace cli {

inline const char* kUsage =
    "usage: flowcat <command> [args]\n"
    "\n"
    "commands:\n"
    "  validate <F>                    check the flow axioms on a document\n"
    "  tensor <F> <G>                  tensor product of two flows\n"
    "  product <F> <G>                 cartesian product of two flows\n"
    "  pushout <A> <B> <C> <f> <g>     pushout of B <-f- A -g-> C\n"
    "  hom <Y> <Z> [--route direct|globe|decomp]\n"
    "                                  internal hom flow\n"
    "  adjoint-check <X> <Y> <Z>       verify Flow(X(x)Y,Z) = Flow(X,hom(Y,Z))\n"
    "  decompose <X>                   canonical decomposition and rebuild\n"
    "  counterexample                  product/colimit exchange failure\n"
    "  pushout-product <|A|> <|B|>     globe gluing identity for A within B\n"
    "  morphisms <F> <G>               list every morphism F -> G\n"
    "\n"
    "options: --budget <n> caps colimit paths (default 10000)\n"
    "flows and morphisms are read from files; reports go to stdout\n";

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FlowError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::optional<std::string> take_option(std::vector<std::string>& args,
                                              const std::string& name) {
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i] == name) {
      if (i + 1 >= args.size())
        throw FlowError("option " + name + " needs a value");
      std::string v = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      return v;
    }
  return std::nullopt;
}

inline void print_flow_report(std::ostream& out, const FiniteFlow& f) {
  out << "# states: " << f.states.size() << "\n";
  out << "# paths: " << f.paths.size() << "\n";
  out << serialize_flow(f);
}

// Recognizes flows of globe shape: two states, no composites, all paths
// running between the two states in the same direction. Returns the
// generator set keyed to the underlying path ids.
inline std::optional<std::pair<std::set<Id>, std::pair<Id, Id>>> as_globe(
    const FiniteFlow& f) {
  if (f.states.size() != 2 || !f.comp.empty()) return std::nullopt;
  auto it = f.states.begin();
  Id a = *it++, b = *it;
  std::set<Id> gens;
  std::optional<std::pair<Id, Id>> dir;
  for (const auto& [p, e] : f.paths) {
    if (e.src == e.tgt) return std::nullopt;
    std::pair<Id, Id> d{e.src, e.tgt};
    if (dir && *dir != d) return std::nullopt;
    dir = d;
    gens.insert(p);
  }
  if (!dir) dir = {a, b};
  return std::make_pair(gens, *dir);
}

}  // namespace cli

inline int run_command(std::vector<std::string> args, std::ostream& out,
                       std::ostream& err) {
  using namespace cli;
  try {
    std::size_t budget = 10000;
    if (auto b = take_option(args, "--budget")) budget = std::stoul(*b);
    auto route = take_option(args, "--route");

    if (args.empty() || args[0] == "help" || args[0] == "--help") {
      (args.empty() ? err : out) << kUsage;
      return args.empty() ? 2 : 0;
    }
    const std::string cmd = args[0];
    args.erase(args.begin());
    if (route && cmd != "hom") throw FlowError("--route only applies to hom");

    if (cmd == "validate") {
      if (args.size() != 1) throw FlowError("validate needs one flow file");
      FlowData d = parse_flow_document(read_file(args[0]));
      auto report = validate(d);
      out << "states: " << d.states.size() << "\n";
      out << "paths: " << d.paths.size() << "\n";
      if (report.empty()) {
        out << "valid\n";
        return 0;
      }
      out << "invalid\n";
      for (const auto& v : report) out << "violation: " << v.message << "\n";
      return 1;
    }

    if (cmd == "tensor" || cmd == "product") {
      if (args.size() != 2) throw FlowError(cmd + " needs two flow files");
      FiniteFlow F = parse_flow(read_file(args[0]));
      FiniteFlow G = parse_flow(read_file(args[1]));
      if (cmd == "tensor") {
        TensorFlow t = tensor(F, G);
        std::size_t pp = 0, sp = 0, ps = 0;
        for (const auto& [n, l] : t.path_label)
          (l.tag == PairTag::PathPath ? pp
           : l.tag == PairTag::StatePath ? sp
                                         : ps)++;
        out << "# components: path*path=" << pp << " state*path=" << sp
            << " path*state=" << ps << "\n";
        print_flow_report(out, t.flow);
      } else {
        print_flow_report(out, cartesian_product(F, G).flow);
      }
      return 0;
    }

    if (cmd == "pushout") {
      if (args.size() != 5)
        throw FlowError("pushout needs three flow files and two morphism files");
      FlowPtr A = share(parse_flow(read_file(args[0])));
      FlowPtr B = share(parse_flow(read_file(args[1])));
      FlowPtr C = share(parse_flow(read_file(args[2])));
      FlowMorphism f = parse_morphism(read_file(args[3]), A, B);
      FlowMorphism g = parse_morphism(read_file(args[4]), A, C);
      Diagram span;
      span.nodes = {{"apex", A}, {"left", B}, {"right", C}};
      span.edges.push_back({"apex", "left", std::move(f)});
      span.edges.push_back({"apex", "right", std::move(g)});
      auto col = colimit(span, {budget});
      print_flow_report(out, *col.flow);
      return 0;
    }

    if (cmd == "hom") {
      if (args.size() != 2) throw FlowError("hom needs two flow files");
      FiniteFlow Y = parse_flow(read_file(args[0]));
      FiniteFlow Z = parse_flow(read_file(args[1]));
      std::string r = route.value_or("direct");
      FiniteFlow result;
      if (r == "direct") {
        result = hom_direct(Y, Z).flow;
      } else if (r == "globe") {
        auto gl = as_globe(Y);
        if (!gl) throw FlowError("--route globe needs a globe-shaped flow");
        result = hom_globe(gl->first, Z).flow;
      } else if (r == "decomp") {
        result = hom_via_decomposition(Y, Z);
      } else {
        throw FlowError("unknown route " + r);
      }
      out << "# route: " << r << "\n";
      print_flow_report(out, result);
      return 0;
    }

    if (cmd == "adjoint-check") {
      if (args.size() != 3) throw FlowError("adjoint-check needs three flow files");
      FiniteFlow X = parse_flow(read_file(args[0]));
      FiniteFlow Y = parse_flow(read_file(args[1]));
      FiniteFlow Z = parse_flow(read_file(args[2]));
      auto rep = check_adjunction(X, Y, Z);
      if (rep.lhs_count == rep.rhs_count && rep.bijection_ok && rep.natural_ok) {
        out << "lhs=rhs=" << rep.lhs_count << ", bijection ok, naturality ok\n";
        return 0;
      }
      out << "lhs=" << rep.lhs_count << " rhs=" << rep.rhs_count
          << ", bijection " << (rep.bijection_ok ? "ok" : "FAILED")
          << ", naturality " << (rep.natural_ok ? "ok" : "FAILED") << "\n";
      return 1;
    }

    if (cmd == "decompose") {
      if (args.size() != 1) throw FlowError("decompose needs one flow file");
      FiniteFlow X = parse_flow(read_file(args[0]));
      Decomposition dec = canonical_decomposition(X);
      out << "points: " << dec.point_nodes.size() << "\n";
      out << "globes: " << dec.globe_nodes.size() << "\n";
      out << "concatenations: " << dec.concat_nodes.size() << "\n";
      out << "edges: " << dec.diagram.edges.size() << "\n";
      auto col = colimit(dec.diagram, {budget});
      bool ok = find_isomorphism(col.flow, share(X)).has_value();
      out << "reconstruction: " << (ok ? "isomorphic" : "FAILED") << "\n";
      return ok ? 0 : 1;
    }

    if (cmd == "counterexample") {
      if (!args.empty()) throw FlowError("counterexample takes no arguments");
      auto c = counterexample_cartesian();
      out << "colimit-of-products paths: " << c.colimit_of_products_paths << "\n";
      out << "product-of-colimit paths: " << c.product_of_colimit_paths << "\n";
      out << "isomorphic: " << (c.iso_found ? "yes" : "no") << "\n";
      bool expected = c.colimit_of_products_paths == 2 &&
                      c.product_of_colimit_paths == 3 && !c.iso_found;
      return expected ? 0 : 1;
    }

    if (cmd == "pushout-product") {
      if (args.size() != 2)
        throw FlowError("pushout-product needs the sizes of A and B");
      std::size_t na = std::stoul(args[0]);
      std::size_t nb = std::stoul(args[1]);
      if (na > nb) throw FlowError("need |A| <= |B|");
      std::set<Id> A, B;
      for (std::size_t i = 0; i < nb; ++i) {
        B.insert("e" + std::to_string(i));
        if (i < na) A.insert("e" + std::to_string(i));
      }
      auto rep = check_glob_identity(A, B, {budget});
      out << "corner states: " << rep.corner.states.size() << "\n";
      out << "corner paths: " << rep.corner.paths.size() << "\n";
      out << "expected: globe on " << rep.expected.paths.size() << " paths\n";
      out << "isomorphic: " << (rep.iso ? "yes" : "no") << "\n";
      if (rep.iso) out << serialize_morphism(*rep.iso);
      return rep.iso ? 0 : 1;
    }

    if (cmd == "morphisms") {
      if (args.size() != 2) throw FlowError("morphisms needs two flow files");
      FlowPtr F = share(parse_flow(read_file(args[0])));
      FlowPtr G = share(parse_flow(read_file(args[1])));
      auto ms = enumerate_morphisms(F, G);
      out << "morphisms: " << ms.size() << "\n";
      for (std::size_t i = 0; i < ms.size(); ++i) {
        out << "# morphism " << i << "\n";
        out << serialize_morphism(ms[i]);
      }
      return 0;
    }

    err << "unknown command: " << cmd << "\n" << kUsage;
    return 2;
  } catch (const SaturationOverflow& e) {
    out << e.what() << "\n";
    if (!e.cycle_paths.empty()) {
      out << "cycle: " << e.cycle_states.front();
      for (std::size_t i = 0; i < e.cycle_paths.size(); ++i)
        out << " -" << e.cycle_paths[i] << "-> " << e.cycle_states[i + 1];
      out << "\n";
    }
    return 3;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const FlowError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace flowcat
