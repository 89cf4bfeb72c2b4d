#pragma once

// Line-oriented text format for flows and morphisms.
//
// Flow documents:   state <id>
//                   path <id> <src> <tgt>
//                   comp <left> <right> = <result>
// Morphism documents:  map-state <a> -> <b>
//                      map-path <x> -> <y>
// Lines starting with # are comments. Serialization is canonical: states
// sorted, then paths sorted, then composites sorted by (left, right).

#include <sstream>
#include <string>
#include <vector>

#include "flowcat/flow.hpp"
#include "flowcat/morphism.hpp"

namespace flowcat {

struct ParseError : FlowError {
  std::size_t line;
  ParseError(std::size_t ln, const std::string& msg)
      : FlowError("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace detail

// Syntax-level parse: collects declarations without semantic checks, so
// that `validate` can report violations on arbitrary candidate documents.
inline FlowData parse_flow_document(const std::string& text) {
  FlowData d;
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto toks = detail::tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "state") {
      if (toks.size() != 2) throw ParseError(ln, "expected: state <id>");
      d.states.push_back(toks[1]);
    } else if (toks[0] == "path") {
      if (toks.size() != 4)
        throw ParseError(ln, "expected: path <id> <src> <tgt>");
      d.paths.push_back({toks[1], toks[2], toks[3]});
    } else if (toks[0] == "comp") {
      if (toks.size() != 5 || toks[3] != "=")
        throw ParseError(ln, "expected: comp <left> <right> = <result>");
      d.comps.push_back({toks[1], toks[2], toks[4]});
    } else {
      throw ParseError(ln, "unknown declaration \"" + toks[0] + "\"");
    }
  }
  return d;
}

// Full parse: syntax, declaration order (every identifier declared before
// use) and the flow axioms. Throws on any failure.
inline FiniteFlow parse_flow(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  std::set<Id> states, paths;
  while (std::getline(in, line)) {
    ++ln;
    auto toks = detail::tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "state" && toks.size() == 2) {
      if (states.count(toks[1]) || paths.count(toks[1]))
        throw ParseError(ln, "duplicate identifier " + toks[1]);
      states.insert(toks[1]);
    } else if (toks[0] == "path" && toks.size() == 4) {
      if (states.count(toks[1]) || paths.count(toks[1]))
        throw ParseError(ln, "duplicate identifier " + toks[1]);
      for (int i : {2, 3})
        if (!states.count(toks[i]))
          throw ParseError(ln, "state " + toks[i] + " used before declaration");
      paths.insert(toks[1]);
    } else if (toks[0] == "comp" && toks.size() == 5 && toks[3] == "=") {
      for (int i : {1, 2, 4})
        if (!paths.count(toks[i]))
          throw ParseError(ln, "path " + toks[i] + " used before declaration");
    }
  }
  return make_flow(parse_flow_document(text));
}

inline std::string serialize_flow(const FiniteFlow& f) {
  std::ostringstream out;
  for (const auto& s : f.states) out << "state " << s << "\n";
  for (const auto& [p, e] : f.paths)
    out << "path " << p << " " << e.src << " " << e.tgt << "\n";
  for (const auto& [xy, z] : f.comp)
    out << "comp " << xy.first << " " << xy.second << " = " << z << "\n";
  return out.str();
}

inline std::string serialize_morphism(const FlowMorphism& m) {
  std::ostringstream out;
  for (const auto& [a, b] : m.state_map)
    out << "map-state " << a << " -> " << b << "\n";
  for (const auto& [x, y] : m.path_map)
    out << "map-path " << x << " -> " << y << "\n";
  return out.str();
}

// Parses a morphism between two given flows and checks that it is one.
inline FlowMorphism parse_morphism(const std::string& text, FlowPtr source,
                                   FlowPtr target) {
  FlowMorphism m{source, target, {}, {}};
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto toks = detail::tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 4 || toks[2] != "->")
      throw ParseError(ln, "expected: map-state|map-path <from> -> <to>");
    if (toks[0] == "map-state") {
      if (!source->has_state(toks[1]))
        throw ParseError(ln, "unknown source state " + toks[1]);
      if (!target->has_state(toks[3]))
        throw ParseError(ln, "unknown target state " + toks[3]);
      if (!m.state_map.insert({toks[1], toks[3]}).second)
        throw ParseError(ln, "duplicate map-state for " + toks[1]);
    } else if (toks[0] == "map-path") {
      if (!source->has_path(toks[1]))
        throw ParseError(ln, "unknown source path " + toks[1]);
      if (!target->has_path(toks[3]))
        throw ParseError(ln, "unknown target path " + toks[3]);
      if (!m.path_map.insert({toks[1], toks[3]}).second)
        throw ParseError(ln, "duplicate map-path for " + toks[1]);
    } else {
      throw ParseError(ln, "unknown declaration \"" + toks[0] + "\"");
    }
  }
  if (!check_morphism(m)) throw FlowError("document does not describe a morphism");
  return m;
}

}  // namespace flowcat
