#pragma once

// Standard flows: the empty and point flows, achronal state sets, the
// terminal flow, the directed segment, globes and concatenations of globes.

#include <set>
#include <string>

#include "flowcat/flow.hpp"

namespace flowcat {

inline FiniteFlow empty_flow() { return {}; }

inline FiniteFlow point_flow() {
  FiniteFlow f;
  f.states.insert("*");
  return f;
}

// n states, no paths; every state is achronal.
inline FiniteFlow achronal_flow(std::size_t n) {
  FiniteFlow f;
  for (std::size_t i = 0; i < n; ++i)
    f.states.insert("*" + std::to_string(i));
  return f;
}

// One state, one idempotent path: the terminal object.
inline FiniteFlow terminal_flow() {
  FiniteFlow f;
  f.states.insert("0");
  f.paths["u"] = {"0", "0"};
  f.comp[{"u", "u"}] = "u";
  return f;
}

// Two states joined by a single path, no composable pairs.
inline FiniteFlow directed_segment(const Id& path_name = "I") {
  FiniteFlow f;
  f.states.insert("0");
  f.states.insert("1");
  Id p = unique_name(path_name, f.states);
  f.paths[p] = {"0", "1"};
  return f;
}

// The globe on a finite set A: two states with one path per element of A
// and an empty composition law. `s0`/`s1` name the two states after any
// clash with A has been resolved.
struct Globe {
  FiniteFlow flow;
  Id s0, s1;
  std::map<Id, Id> gen;  // element of A -> path id (identity map here)
};

inline Globe globe(const std::set<Id>& A) {
  Globe g;
  g.s0 = unique_name("0", A);
  std::set<Id> used = A;
  used.insert(g.s0);
  g.s1 = unique_name("1", used);
  g.flow.states = {g.s0, g.s1};
  for (const auto& a : A) {
    g.flow.paths[a] = {g.s0, g.s1};
    g.gen[a] = a;
  }
  return g;
}

// The concatenation Glob(A)*Glob(B): three states, paths A from the first
// state to the second, B from the second to the third, and one formal
// composite per pair in A x B.
struct GlobConcat {
  FiniteFlow flow;
  Id s0, s1, s2;
  std::map<Id, Id> left;                  // element of A -> path id
  std::map<Id, Id> right;                 // element of B -> path id
  std::map<std::pair<Id, Id>, Id> pairs;  // (a, b) -> composite path id
};

inline GlobConcat glob_concat(const std::set<Id>& A, const std::set<Id>& B) {
  GlobConcat g;
  std::set<Id> used;
  for (const auto& a : A) {
    g.left[a] = unique_name(a, used);
    used.insert(g.left[a]);
  }
  for (const auto& b : B) {
    g.right[b] = unique_name(b, used);
    used.insert(g.right[b]);
  }
  for (const auto& a : A)
    for (const auto& b : B) {
      Id p = unique_name(a + "*" + b, used);
      used.insert(p);
      g.pairs[{a, b}] = p;
    }
  g.s0 = unique_name("0", used);
  used.insert(g.s0);
  g.s1 = unique_name("1", used);
  used.insert(g.s1);
  g.s2 = unique_name("2", used);
  g.flow.states = {g.s0, g.s1, g.s2};
  for (const auto& a : A) g.flow.paths[g.left[a]] = {g.s0, g.s1};
  for (const auto& b : B) g.flow.paths[g.right[b]] = {g.s1, g.s2};
  for (const auto& [ab, p] : g.pairs) {
    g.flow.paths[p] = {g.s0, g.s2};
    g.flow.comp[{g.left.at(ab.first), g.right.at(ab.second)}] = p;
  }
  return g;
}

}  // namespace flowcat
