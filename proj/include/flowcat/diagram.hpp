#pragma once

// Finite diagrams of flows, levelwise limits, colimits by saturation of the
// free composition closure, the canonical points-and-globes decomposition,
// and the product/colimit exchange counterexample.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "flowcat/morphism.hpp"
#include "flowcat/standard.hpp"
#include "flowcat/tensor.hpp"

namespace flowcat {

struct Diagram {
  struct Edge {
    Id from, to;
    FlowMorphism morphism;
  };
  std::map<Id, FlowPtr> nodes;
  std::vector<Edge> edges;  // multiset; parallel edges allowed
};

// Structural problems of a diagram: dangling node references, edge
// morphisms that do not connect the flows at their endpoints, or that fail
// the morphism axioms.
inline std::vector<std::string> check_diagram(const Diagram& d) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    auto from = d.nodes.find(e.from);
    auto to = d.nodes.find(e.to);
    if (from == d.nodes.end() || to == d.nodes.end()) {
      problems.push_back("edge " + std::to_string(i) + " references unknown node");
      continue;
    }
    if (*e.morphism.source != *from->second || *e.morphism.target != *to->second) {
      problems.push_back("edge " + std::to_string(i) +
                         " does not connect the flows at its endpoints");
      continue;
    }
    if (!check_morphism(e.morphism))
      problems.push_back("edge " + std::to_string(i) + " is not a morphism");
  }
  return problems;
}

struct Cone {
  FlowPtr apex;
  std::map<Id, FlowMorphism> legs;  // apex -> node flow
};

struct Cocone {
  FlowPtr apex;
  std::map<Id, FlowMorphism> legs;  // node flow -> apex
};

struct LimitResult {
  FlowPtr flow;
  Cone cone;
};

namespace detail {

inline Id join_family(const std::vector<Id>& fam) {
  Id out = "(";
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (i) out += ",";
    out += fam[i];
  }
  return out + ")";
}

// Backtracking enumeration of edge-compatible families, one entry per node
// in sorted node order.
template <typename Entries, typename Image>
std::vector<std::vector<Id>> compatible_families(
    const std::vector<Id>& ns, const Diagram& d, Entries entries, Image image) {
  std::map<Id, std::size_t> pos;
  for (std::size_t i = 0; i < ns.size(); ++i) pos[ns[i]] = i;
  std::vector<std::vector<Id>> out;
  std::vector<Id> fam(ns.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == ns.size()) {
      out.push_back(fam);
      return;
    }
    for (const Id& cand : entries(ns[i])) {
      bool ok = true;
      for (const auto& e : d.edges) {
        std::size_t a = pos.at(e.from), b = pos.at(e.to);
        if (std::max(a, b) != i) continue;
        const Id& x = a == i ? cand : fam[a];
        const Id& y = b == i ? cand : fam[b];
        if (image(e, x) != y) {
          ok = false;
          break;
        }
      }
      if (ok) {
        fam[i] = cand;
        self(self, i + 1);
      }
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

// Levelwise limit: states are edge-compatible families of states, paths are
// edge-compatible families of paths, with componentwise structure. The
// empty diagram yields the terminal flow.
inline LimitResult limit(const Diagram& d) {
  std::vector<Id> ns;
  for (const auto& [n, f] : d.nodes) ns.push_back(n);

  auto state_fams = detail::compatible_families(
      ns, d,
      [&](const Id& n) {
        const auto& st = d.nodes.at(n)->states;
        return std::vector<Id>(st.begin(), st.end());
      },
      [](const Diagram::Edge& e, const Id& x) { return e.morphism.state_map.at(x); });
  auto path_fams = detail::compatible_families(
      ns, d,
      [&](const Id& n) {
        std::vector<Id> ps;
        for (const auto& [p, ends] : d.nodes.at(n)->paths) ps.push_back(p);
        return ps;
      },
      [](const Diagram::Edge& e, const Id& x) { return e.morphism.path_map.at(x); });

  FiniteFlow lim;
  std::set<Id> used;
  std::map<std::vector<Id>, Id> state_name, path_name;
  for (const auto& fam : state_fams) {
    Id n = unique_name(detail::join_family(fam), used);
    used.insert(n);
    state_name[fam] = n;
    lim.states.insert(n);
  }
  for (const auto& fam : path_fams) {
    Id n = unique_name(detail::join_family(fam), used);
    used.insert(n);
    path_name[fam] = n;
    std::vector<Id> s(fam.size()), t(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
      s[i] = d.nodes.at(ns[i])->src(fam[i]);
      t[i] = d.nodes.at(ns[i])->tgt(fam[i]);
    }
    lim.paths[n] = {state_name.at(s), state_name.at(t)};
  }
  for (const auto& [pf, pn] : path_name)
    for (const auto& [qf, qn] : path_name) {
      if (lim.tgt(pn) != lim.src(qn)) continue;
      std::vector<Id> c(pf.size());
      for (std::size_t i = 0; i < pf.size(); ++i) {
        auto z = d.nodes.at(ns[i])->compose(pf[i], qf[i]);
        if (!z) throw FlowError("limit closure failure");
        c[i] = *z;
      }
      lim.comp[{pn, qn}] = path_name.at(c);
    }

  LimitResult res;
  res.flow = share(std::move(lim));
  res.cone.apex = res.flow;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    FlowMorphism leg{res.flow, d.nodes.at(ns[i]), {}, {}};
    for (const auto& [fam, n] : state_name) leg.state_map[n] = fam[i];
    for (const auto& [fam, n] : path_name) leg.path_map[n] = fam[i];
    res.cone.legs[ns[i]] = std::move(leg);
  }
  return res;
}

// Unique morphism from the apex of `src` into the limit, assuming `src` is a
// cone over the same diagram.
inline FlowMorphism mediating_to_limit(const LimitResult& lim, const Cone& src) {
  std::vector<Id> ns;
  for (const auto& [n, leg] : lim.cone.legs) ns.push_back(n);
  std::map<std::vector<Id>, Id> state_name, path_name;
  for (const auto& s : lim.flow->states) {
    std::vector<Id> fam;
    for (const auto& n : ns) fam.push_back(lim.cone.legs.at(n).state_map.at(s));
    state_name[fam] = s;
  }
  for (const auto& [p, e] : lim.flow->paths) {
    std::vector<Id> fam;
    for (const auto& n : ns) fam.push_back(lim.cone.legs.at(n).path_map.at(p));
    path_name[fam] = p;
  }
  FlowMorphism m{src.apex, lim.flow, {}, {}};
  for (const auto& s : src.apex->states) {
    std::vector<Id> fam;
    for (const auto& n : ns) fam.push_back(src.legs.at(n).state_map.at(s));
    m.state_map[s] = state_name.at(fam);
  }
  for (const auto& [p, e] : src.apex->paths) {
    std::vector<Id> fam;
    for (const auto& n : ns) fam.push_back(src.legs.at(n).path_map.at(p));
    m.path_map[p] = path_name.at(fam);
  }
  return m;
}

struct ColimitOptions {
  std::size_t path_budget = 10000;
  // Nonzero seeds shuffle the order in which gluing relations are fed to the
  // saturation; the result must not depend on it.
  unsigned shuffle_seed = 0;
};

struct SaturationOverflow : FlowError {
  // Alternating witness when the generator graph has a directed cycle:
  // states s0 -g1-> s1 ... -gk-> s0.
  std::vector<Id> cycle_states;
  std::vector<Id> cycle_paths;
  SaturationOverflow(const std::string& msg, std::vector<Id> cs, std::vector<Id> cp)
      : FlowError(msg), cycle_states(std::move(cs)), cycle_paths(std::move(cp)) {}
};

struct ColimitResult {
  FlowPtr flow;
  Cocone cocone;
  // Factorization of every colimit path into generator classes, one tagged
  // (node, path) representative per letter. Used to build mediating maps.
  std::map<Id, std::vector<std::pair<Id, Id>>> path_factors;
};

namespace detail {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

using Word = std::vector<int>;

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct RewriteSystem {
  struct Rule {
    Word lhs, rhs;
    bool active = true;
  };
  std::vector<Rule> rules;

  bool reduce_once(Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      for (const auto& r : rules) {
        if (!r.active || r.lhs.size() > w.size() - i) continue;
        if (std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + i)) {
          Word out(w.begin(), w.begin() + i);
          out.insert(out.end(), r.rhs.begin(), r.rhs.end());
          out.insert(out.end(), w.begin() + i + r.lhs.size(), w.end());
          w = std::move(out);
          return true;
        }
      }
    return false;
  }

  Word normal_form(Word w) const {
    while (reduce_once(w)) {
    }
    return w;
  }

  bool irreducible_suffix(const Word& w) const {
    for (const auto& r : rules) {
      if (!r.active || r.lhs.size() > w.size()) continue;
      if (std::equal(r.lhs.begin(), r.lhs.end(), w.end() - r.lhs.size()))
        return false;
    }
    return true;
  }
};

inline bool contains_factor(const Word& w, const Word& f) {
  if (f.size() > w.size()) return false;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
    if (std::equal(f.begin(), f.end(), w.begin() + i)) return true;
  return false;
}

// Completes the relation set into a confluent rewriting system compatible
// with the shortlex order. Throws SaturationOverflow when the rule or
// equation budget is exhausted.
template <typename OverflowFn>
RewriteSystem complete(std::deque<std::pair<Word, Word>> eqs, OverflowFn overflow) {
  constexpr std::size_t kRuleBudget = 4000;
  constexpr std::size_t kEquationBudget = 200000;
  RewriteSystem rs;
  std::size_t processed = 0, active = 0;
  while (!eqs.empty()) {
    if (++processed > kEquationBudget) overflow("saturation equation budget exceeded");
    auto [u, v] = eqs.front();
    eqs.pop_front();
    u = rs.normal_form(std::move(u));
    v = rs.normal_form(std::move(v));
    if (u == v) continue;
    if (shortlex_less(u, v)) std::swap(u, v);
    for (auto& r : rs.rules)
      if (r.active && contains_factor(r.lhs, u)) {
        r.active = false;
        --active;
        eqs.push_back({r.lhs, r.rhs});
      }
    rs.rules.push_back({u, v, true});
    if (++active > kRuleBudget) overflow("saturation rule budget exceeded");
    const auto& nr = rs.rules.back();
    auto critical = [&](const RewriteSystem::Rule& r1, const RewriteSystem::Rule& r2) {
      // proper overlap: a suffix of l1 equals a prefix of l2
      std::size_t m = std::min(r1.lhs.size(), r2.lhs.size());
      for (std::size_t k = 1; k < m; ++k) {
        if (!std::equal(r2.lhs.begin(), r2.lhs.begin() + k, r1.lhs.end() - k))
          continue;
        Word a = r1.rhs;
        a.insert(a.end(), r2.lhs.begin() + k, r2.lhs.end());
        Word b(r1.lhs.begin(), r1.lhs.end() - k);
        b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
        eqs.push_back({a, b});
      }
      // containment: l2 occurs inside l1
      if (r2.lhs.size() < r1.lhs.size())
        for (std::size_t i = 0; i + r2.lhs.size() <= r1.lhs.size(); ++i)
          if (std::equal(r2.lhs.begin(), r2.lhs.end(), r1.lhs.begin() + i)) {
            Word b(r1.lhs.begin(), r1.lhs.begin() + i);
            b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
            b.insert(b.end(), r1.lhs.begin() + i + r2.lhs.size(), r1.lhs.end());
            eqs.push_back({r1.rhs, b});
          }
    };
    for (const auto& r : rs.rules) {
      if (!r.active) continue;
      critical(nr, r);
      if (&r != &nr) critical(r, nr);
    }
  }
  return rs;
}

// Quotient class of tagged items with deterministic naming data.
struct QuotientClass {
  std::vector<std::pair<Id, Id>> members;  // (node, id), sorted
  Id candidate;                            // smallest raw id over members
};

inline std::vector<QuotientClass> group_classes(
    const std::vector<std::pair<Id, Id>>& tagged, DisjointSets& ds,
    std::vector<int>& class_of) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < tagged.size(); ++i)
    groups[ds.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<QuotientClass> classes;
  for (const auto& [root, members] : groups) {
    QuotientClass c;
    for (int m : members) c.members.push_back(tagged[m]);
    std::sort(c.members.begin(), c.members.end());
    c.candidate = c.members.front().second;
    for (const auto& [n, id] : c.members) c.candidate = std::min(c.candidate, id);
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(),
            [](const QuotientClass& a, const QuotientClass& b) {
              if (a.candidate != b.candidate) return a.candidate < b.candidate;
              return a.members.front() < b.members.front();
            });
  class_of.assign(tagged.size(), -1);
  std::map<std::pair<Id, Id>, int> where;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& m : classes[c].members) where[m] = static_cast<int>(c);
  for (std::size_t i = 0; i < tagged.size(); ++i) class_of[i] = where.at(tagged[i]);
  return classes;
}

}  // namespace detail

// Colimit by saturation: states are the gluing quotient of the disjoint
// union of state sets; paths are congruence classes of composable words of
// path generators, where the congruence is generated by the edge
// identifications and every factor's composition table. Overflow signals a
// plausibly infinite colimit.
inline ColimitResult colimit(const Diagram& d, ColimitOptions opts = {}) {
  using detail::Word;

  // State classes.
  std::vector<std::pair<Id, Id>> tstates;
  std::map<std::pair<Id, Id>, int> sidx;
  for (const auto& [n, f] : d.nodes)
    for (const auto& s : f->states) {
      sidx[{n, s}] = static_cast<int>(tstates.size());
      tstates.push_back({n, s});
    }
  detail::DisjointSets sds(tstates.size());
  for (const auto& e : d.edges)
    for (const auto& [s, img] : e.morphism.state_map)
      sds.unite(sidx.at({e.from, s}), sidx.at({e.to, img}));
  std::vector<int> state_class;
  auto sclasses = detail::group_classes(tstates, sds, state_class);

  std::set<Id> used;
  std::vector<Id> sname(sclasses.size());
  for (std::size_t c = 0; c < sclasses.size(); ++c) {
    sname[c] = unique_name(sclasses[c].candidate, used);
    used.insert(sname[c]);
  }

  // Path generator classes (the letters of the word saturation).
  std::vector<std::pair<Id, Id>> tpaths;
  std::map<std::pair<Id, Id>, int> pidx;
  for (const auto& [n, f] : d.nodes)
    for (const auto& [p, e] : f->paths) {
      pidx[{n, p}] = static_cast<int>(tpaths.size());
      tpaths.push_back({n, p});
    }
  detail::DisjointSets pds(tpaths.size());
  for (const auto& e : d.edges)
    for (const auto& [p, img] : e.morphism.path_map)
      pds.unite(pidx.at({e.from, p}), pidx.at({e.to, img}));
  std::vector<int> letter_of;
  auto letters = detail::group_classes(tpaths, pds, letter_of);

  auto state_class_of = [&](const Id& node, const Id& s) {
    return state_class[sidx.at({node, s})];
  };
  std::vector<int> lsrc(letters.size()), ltgt(letters.size());
  for (std::size_t l = 0; l < letters.size(); ++l) {
    const auto& [n0, p0] = letters[l].members.front();
    lsrc[l] = state_class_of(n0, d.nodes.at(n0)->src(p0));
    ltgt[l] = state_class_of(n0, d.nodes.at(n0)->tgt(p0));
  }

  auto overflow = [&](const std::string& msg) {
    // Witness: a directed cycle over state classes along generator letters.
    std::vector<Id> cs, cp;
    std::map<int, std::vector<std::pair<int, int>>> arcs;  // state -> (letter, state)
    for (std::size_t l = 0; l < letters.size(); ++l)
      arcs[lsrc[l]].push_back({static_cast<int>(l), ltgt[l]});
    std::map<int, int> color;  // 0 unseen, 1 on stack, 2 done
    std::vector<std::pair<int, int>> stack;  // (state, letter used to enter)
    auto dfs = [&](auto&& self, int s) -> bool {
      color[s] = 1;
      for (const auto& [l, t] : arcs[s]) {
        if (color[t] == 1) {
          // close the cycle at t
          std::vector<int> states{t}, ls;
          std::size_t start = 0;
          while (start < stack.size() && stack[start].first != t) ++start;
          for (std::size_t i = start + 1; i < stack.size(); ++i) {
            ls.push_back(stack[i].second);
            states.push_back(stack[i].first);
          }
          ls.push_back(l);
          states.push_back(t);
          for (int st : states) cs.push_back(sname[st]);
          for (int le : ls) cp.push_back(letters[le].candidate);
          return true;
        }
        if (color[t] == 0) {
          stack.push_back({t, l});
          if (self(self, t)) return true;
          stack.pop_back();
        }
      }
      color[s] = 2;
      return false;
    };
    for (std::size_t c = 0; c < sclasses.size() && cs.empty(); ++c)
      if (color[static_cast<int>(c)] == 0) {
        stack = {{static_cast<int>(c), -1}};
        dfs(dfs, static_cast<int>(c));
      }
    throw SaturationOverflow("colimit overflow: " + msg, cs, cp);
  };

  // Relations: each factor's composition table, expressed on letters.
  std::deque<std::pair<Word, Word>> eqs;
  for (const auto& [n, f] : d.nodes)
    for (const auto& [xy, z] : f->comp)
      eqs.push_back({Word{letter_of[pidx.at({n, xy.first})],
                          letter_of[pidx.at({n, xy.second})]},
                     Word{letter_of[pidx.at({n, z})]}});
  if (opts.shuffle_seed != 0) {
    std::vector<std::pair<Word, Word>> v(eqs.begin(), eqs.end());
    std::mt19937 rng(opts.shuffle_seed);
    std::shuffle(v.begin(), v.end(), rng);
    eqs.assign(v.begin(), v.end());
  }
  auto rs = detail::complete(std::move(eqs), overflow);

  // All irreducible composable words, breadth-first; their count is the
  // path count of the colimit.
  std::map<Word, int> elem;
  std::vector<Word> words;
  std::deque<Word> queue;
  std::vector<std::vector<int>> out_letters(sclasses.size());
  for (std::size_t l = 0; l < letters.size(); ++l)
    out_letters[lsrc[l]].push_back(static_cast<int>(l));
  for (std::size_t l = 0; l < letters.size(); ++l) {
    Word w{static_cast<int>(l)};
    if (rs.irreducible_suffix(w)) {
      elem[w] = static_cast<int>(words.size());
      words.push_back(w);
      queue.push_back(w);
      if (words.size() > opts.path_budget) overflow("path budget exceeded");
    }
  }
  while (!queue.empty()) {
    Word w = queue.front();
    queue.pop_front();
    for (int l : out_letters[ltgt[w.back()]]) {
      Word w2 = w;
      w2.push_back(l);
      if (!rs.irreducible_suffix(w2)) continue;
      if (elem.count(w2)) continue;
      elem[w2] = static_cast<int>(words.size());
      words.push_back(w2);
      queue.push_back(w2);
      if (words.size() > opts.path_budget) overflow("path budget exceeded");
    }
  }

  // Canonical names. Tagged paths land on the normal form of their letter;
  // every other element is a composite named by joining letter names.
  std::map<Word, std::vector<std::pair<Id, Id>>> landing;
  for (std::size_t i = 0; i < tpaths.size(); ++i) {
    Word w = rs.normal_form(Word{letter_of[i]});
    landing[w].push_back(tpaths[i]);
  }
  std::vector<int> order(words.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return detail::shortlex_less(words[a], words[b]);
  });
  std::vector<Id> ename(words.size());
  std::map<int, Id> letter_elem_name;
  for (int idx : order) {
    const Word& w = words[idx];
    Id base;
    auto it = landing.find(w);
    if (it != landing.end()) {
      base = it->second.front().second;
      for (const auto& [n, p] : it->second) base = std::min(base, p);
    } else {
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) base += "*";
        base += letter_elem_name.at(w[i]);
      }
    }
    ename[idx] = unique_name(base, used);
    used.insert(ename[idx]);
    if (w.size() == 1) letter_elem_name[w[0]] = ename[idx];
  }

  FiniteFlow flow;
  for (const auto& n : sname) flow.states.insert(n);
  for (std::size_t i = 0; i < words.size(); ++i)
    flow.paths[ename[i]] = {sname[lsrc[words[i].front()]],
                            sname[ltgt[words[i].back()]]};
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (ltgt[words[i].back()] != lsrc[words[j].front()]) continue;
      Word w = words[i];
      w.insert(w.end(), words[j].begin(), words[j].end());
      flow.comp[{ename[i], ename[j]}] = ename[elem.at(rs.normal_form(w))];
    }

  ColimitResult res;
  res.flow = share(std::move(flow));
  res.cocone.apex = res.flow;
  for (const auto& [n, f] : d.nodes) {
    FlowMorphism leg{f, res.flow, {}, {}};
    for (const auto& s : f->states)
      leg.state_map[s] = sname[state_class_of(n, s)];
    for (const auto& [p, e] : f->paths)
      leg.path_map[p] = ename[elem.at(rs.normal_form(Word{letter_of[pidx.at({n, p})]}))];
    res.cocone.legs[n] = std::move(leg);
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::vector<std::pair<Id, Id>> factors;
    for (int l : words[i]) factors.push_back(letters[l].members.front());
    res.path_factors[ename[i]] = std::move(factors);
  }
  return res;
}

// Unique morphism from the colimit into the apex of `dst`, assuming `dst`
// is a cocone over the same diagram.
inline FlowMorphism mediating_from_colimit(const ColimitResult& col,
                                           const Cocone& dst) {
  FlowMorphism m{col.flow, dst.apex, {}, {}};
  for (const auto& [n, leg] : col.cocone.legs)
    for (const auto& [s, img] : leg.state_map)
      m.state_map[img] = dst.legs.at(n).state_map.at(s);
  for (const auto& [p, factors] : col.path_factors) {
    Id acc;
    bool first = true;
    for (const auto& [n, q] : factors) {
      Id step = dst.legs.at(n).path_map.at(q);
      if (first) {
        acc = step;
        first = false;
      } else {
        auto z = dst.apex->compose(acc, step);
        if (!z) throw FlowError("cocone does not compose along a factorization");
        acc = *z;
      }
    }
    m.path_map[p] = acc;
  }
  return m;
}

// The canonical diagram of points, globes and concatenations of globes
// whose colimit reconstructs X: one point per state, one globe per path,
// one concatenation per composable pair, with endpoint, segment and
// composite inclusions as edges.
struct Decomposition {
  Diagram diagram;
  std::map<Id, Id> point_nodes;                   // node -> state of X
  std::map<Id, Id> globe_nodes;                   // node -> path of X
  std::map<Id, std::pair<Id, Id>> concat_nodes;   // node -> composable pair
  std::map<Id, Globe> globes;                     // labeled node flows
  std::map<Id, GlobConcat> concats;
};

inline Decomposition canonical_decomposition(const FiniteFlow& X) {
  Decomposition dec;
  std::set<Id> used;
  FlowPtr pt = share(point_flow());
  std::map<Id, Id> point_node, globe_node;
  for (const auto& s : X.states) {
    Id n = unique_name("pt." + s, used);
    used.insert(n);
    point_node[s] = n;
    dec.point_nodes[n] = s;
    dec.diagram.nodes[n] = pt;
  }
  std::map<Id, FlowPtr> globe_ptr;
  for (const auto& [p, e] : X.paths) {
    Id n = unique_name("gl." + p, used);
    used.insert(n);
    globe_node[p] = n;
    dec.globe_nodes[n] = p;
    dec.globes[n] = globe({p});
    globe_ptr[n] = share(dec.globes[n].flow);
    dec.diagram.nodes[n] = globe_ptr[n];
  }

  auto point_edge = [&](const Id& s, const Id& to_node, FlowPtr to_flow,
                        const Id& image_state) {
    FlowMorphism m{pt, to_flow, {{"*", image_state}}, {}};
    dec.diagram.edges.push_back({point_node.at(s), to_node, std::move(m)});
  };
  auto globe_edge = [&](const Id& p, const Id& to_node, FlowPtr to_flow,
                        const Id& s0_img, const Id& s1_img, const Id& p_img) {
    const Globe& g = dec.globes.at(globe_node.at(p));
    FlowMorphism m{globe_ptr.at(globe_node.at(p)), to_flow,
                   {{g.s0, s0_img}, {g.s1, s1_img}},
                   {{g.gen.at(p), p_img}}};
    dec.diagram.edges.push_back({globe_node.at(p), to_node, std::move(m)});
  };

  for (const auto& [p, e] : X.paths) {
    const Id& n = globe_node.at(p);
    const Globe& g = dec.globes.at(n);
    point_edge(e.src, n, globe_ptr.at(n), g.s0);
    point_edge(e.tgt, n, globe_ptr.at(n), g.s1);
  }
  for (const auto& [xy, z] : X.comp) {
    const auto& [x, y] = xy;
    Id n = unique_name("cc." + x + "|" + y, used);
    used.insert(n);
    dec.concat_nodes[n] = xy;
    dec.concats[n] = glob_concat({x}, {y});
    const GlobConcat& c = dec.concats[n];
    FlowPtr cf = share(c.flow);
    dec.diagram.nodes[n] = cf;
    point_edge(X.src(x), n, cf, c.s0);
    point_edge(X.tgt(x), n, cf, c.s1);
    point_edge(X.tgt(y), n, cf, c.s2);
    globe_edge(x, n, cf, c.s0, c.s1, c.left.at(x));
    globe_edge(y, n, cf, c.s1, c.s2, c.right.at(y));
    globe_edge(z, n, cf, c.s0, c.s2, c.pairs.at(xy));
  }
  return dec;
}

struct CartesianCounterexample {
  std::size_t colimit_of_products_paths;  // paths of colim(I x D)
  std::size_t product_of_colimit_paths;   // paths of I x colim(D)
  bool iso_found;
};

// The concatenation pushout of two directed segments, crossed with the
// directed segment: the cartesian product does not commute with the
// pushout (2 paths against 3), so the category is not cartesian closed.
inline CartesianCounterexample counterexample_cartesian() {
  FlowPtr seg = share(directed_segment("I"));
  FlowPtr vseg = share(directed_segment("v"));
  FlowPtr wseg = share(directed_segment("w"));
  FlowPtr apex = share(achronal_flow(1));  // the flow 2_0: one achronal state

  Diagram span;
  span.nodes = {{"apex", apex}, {"v", vseg}, {"w", wseg}};
  span.edges.push_back({"apex", "v", {apex, vseg, {{"*0", "1"}}, {}}});
  span.edges.push_back({"apex", "w", {apex, wseg, {{"*0", "0"}}, {}}});
  auto concat = colimit(span);

  ProductFlow pv = cartesian_product(*seg, *vseg);
  ProductFlow pw = cartesian_product(*seg, *wseg);
  ProductFlow pa = cartesian_product(*seg, *apex);
  Diagram product_span;
  product_span.nodes = {{"apex", share(pa.flow)},
                        {"v", share(pv.flow)},
                        {"w", share(pw.flow)}};
  auto lift = [&](const Diagram::Edge& e, const ProductFlow& dom,
                  const ProductFlow& cod, const Id& to) {
    FlowMorphism m =
        product_morphism(identity_morphism(seg), e.morphism, dom, cod);
    m.source = product_span.nodes.at("apex");
    m.target = product_span.nodes.at(to);
    product_span.edges.push_back({"apex", to, std::move(m)});
  };
  lift(span.edges[0], pa, pv, "v");
  lift(span.edges[1], pa, pw, "w");
  auto lhs = colimit(product_span);

  ProductFlow rhs = cartesian_product(*seg, *concat.flow);
  auto iso = find_isomorphism(lhs.flow, share(rhs.flow));
  return {lhs.flow->paths.size(), rhs.flow.paths.size(), iso.has_value()};
}

}  // namespace flowcat
