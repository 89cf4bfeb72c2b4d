#pragma once

// Flow morphisms, exhaustive hom-set enumeration and isomorphism search.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "flowcat/flow.hpp"

namespace flowcat {

using FlowPtr = std::shared_ptr<const FiniteFlow>;

inline FlowPtr share(FiniteFlow f) {
  return std::make_shared<const FiniteFlow>(std::move(f));
}

inline constexpr std::size_t kDefaultSearchBudget = 20'000'000;

struct FlowMorphism {
  FlowPtr source, target;
  std::map<Id, Id> state_map;
  std::map<Id, Id> path_map;

  const Id& on_state(const Id& s) const {
    auto it = state_map.find(s);
    if (it == state_map.end()) throw FlowError("morphism undefined on state " + s);
    return it->second;
  }
  const Id& on_path(const Id& p) const {
    auto it = path_map.find(p);
    if (it == path_map.end()) throw FlowError("morphism undefined on path " + p);
    return it->second;
  }

  friend bool operator==(const FlowMorphism& a, const FlowMorphism& b) {
    return *a.source == *b.source && *a.target == *b.target &&
           a.state_map == b.state_map && a.path_map == b.path_map;
  }
};

// True iff the maps preserve endpoints and composition. Throws on maps that
// are not total on the source flow or that mention unknown identifiers.
inline bool check_morphism(const FlowMorphism& m) {
  const FiniteFlow& F = *m.source;
  const FiniteFlow& G = *m.target;
  for (const auto& [a, b] : m.state_map) {
    if (!F.has_state(a)) throw FlowError("state map mentions unknown state " + a);
    if (!G.has_state(b)) throw FlowError("state map sends " + a + " to unknown state " + b);
  }
  for (const auto& [x, y] : m.path_map) {
    if (!F.has_path(x)) throw FlowError("path map mentions unknown path " + x);
    if (!G.has_path(y)) throw FlowError("path map sends " + x + " to unknown path " + y);
  }
  for (const auto& s : F.states)
    if (!m.state_map.count(s)) throw FlowError("morphism undefined on state " + s);
  for (const auto& [p, e] : F.paths)
    if (!m.path_map.count(p)) throw FlowError("morphism undefined on path " + p);

  for (const auto& [p, e] : F.paths) {
    const Id& q = m.path_map.at(p);
    if (m.state_map.at(e.src) != G.src(q)) return false;
    if (m.state_map.at(e.tgt) != G.tgt(q)) return false;
  }
  for (const auto& [xy, z] : F.comp) {
    auto img = G.compose(m.path_map.at(xy.first), m.path_map.at(xy.second));
    if (!img || *img != m.path_map.at(z)) return false;
  }
  return true;
}

inline FlowMorphism identity_morphism(FlowPtr f) {
  FlowMorphism m{f, f, {}, {}};
  for (const auto& s : f->states) m.state_map[s] = s;
  for (const auto& [p, e] : f->paths) m.path_map[p] = p;
  return m;
}

// Diagrammatic composition: `f` followed by `g`.
inline FlowMorphism compose(const FlowMorphism& f, const FlowMorphism& g) {
  if (*f.target != *g.source)
    throw FlowError("composition of morphisms with mismatched middle flow");
  FlowMorphism m{f.source, g.target, {}, {}};
  for (const auto& [a, b] : f.state_map) m.state_map[a] = g.state_map.at(b);
  for (const auto& [x, y] : f.path_map) m.path_map[x] = g.path_map.at(y);
  return m;
}

inline bool is_bijective(const FlowMorphism& m) {
  std::set<Id> simg, pimg;
  for (const auto& [a, b] : m.state_map) simg.insert(b);
  for (const auto& [x, y] : m.path_map) pimg.insert(y);
  return simg.size() == m.source->states.size() &&
         simg.size() == m.target->states.size() &&
         pimg.size() == m.source->paths.size() &&
         pimg.size() == m.target->paths.size();
}

// Inverse of a bijective morphism whose inverse is itself a morphism.
inline std::optional<FlowMorphism> inverse(const FlowMorphism& m) {
  if (!is_bijective(m)) return std::nullopt;
  FlowMorphism inv{m.target, m.source, {}, {}};
  for (const auto& [a, b] : m.state_map) inv.state_map[b] = a;
  for (const auto& [x, y] : m.path_map) inv.path_map[y] = x;
  if (!check_morphism(inv)) return std::nullopt;
  return inv;
}

namespace detail {

struct MorphismSearch {
  const FiniteFlow& F;
  const FiniteFlow& G;
  std::size_t budget;
  std::vector<Id> fstates, fpaths, gstates;
  std::map<Id, Id> smap, pmap;
  // comp entries of F indexed by the largest path rank they mention
  std::map<Id, std::size_t> path_rank;
  std::vector<std::vector<std::array<Id, 3>>> checks_at;
  std::size_t steps = 0;
  std::vector<FlowMorphism> out;
  bool stop_after_first = false;

  MorphismSearch(const FiniteFlow& f, const FiniteFlow& g, std::size_t b)
      : F(f), G(g), budget(b) {
    fstates.assign(F.states.begin(), F.states.end());
    for (const auto& [p, e] : F.paths) fpaths.push_back(p);
    gstates.assign(G.states.begin(), G.states.end());
    for (std::size_t i = 0; i < fpaths.size(); ++i) path_rank[fpaths[i]] = i;
    checks_at.resize(fpaths.size());
    for (const auto& [xy, z] : F.comp) {
      std::size_t r = std::max({path_rank.at(xy.first), path_rank.at(xy.second),
                                path_rank.at(z)});
      checks_at[r].push_back({xy.first, xy.second, z});
    }
  }

  void spend() {
    if (++steps > budget)
      throw BudgetExceeded("morphism search budget exceeded");
  }

  void assign_path(std::size_t i, FlowPtr fp, FlowPtr gp) {
    if (i == fpaths.size()) {
      out.push_back({fp, gp, smap, pmap});
      return;
    }
    const Id& p = fpaths[i];
    const auto& e = F.ends(p);
    for (const Id& q : G.path_fiber(smap.at(e.src), smap.at(e.tgt))) {
      spend();
      pmap[p] = q;
      bool ok = true;
      for (const auto& c : checks_at[i]) {
        auto img = G.compose(pmap.at(c[0]), pmap.at(c[1]));
        if (!img || *img != pmap.at(c[2])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        assign_path(i + 1, fp, gp);
        if (stop_after_first && !out.empty()) return;
      }
      pmap.erase(p);
    }
  }

  void assign_state(std::size_t i, FlowPtr fp, FlowPtr gp) {
    if (i == fstates.size()) {
      assign_path(0, fp, gp);
      return;
    }
    for (const Id& t : gstates) {
      spend();
      smap[fstates[i]] = t;
      assign_state(i + 1, fp, gp);
      if (stop_after_first && !out.empty()) return;
      smap.erase(fstates[i]);
    }
  }
};

}  // namespace detail

// Every morphism F -> G, duplicate-free, in canonical order: states and
// paths are processed sorted and candidate images are tried sorted, so the
// output is lexicographic on the image tuples.
inline std::vector<FlowMorphism> enumerate_morphisms(
    FlowPtr F, FlowPtr G, std::size_t budget = kDefaultSearchBudget) {
  detail::MorphismSearch s(*F, *G, budget);
  s.assign_state(0, F, G);
  return s.out;
}

namespace detail {

// Per-state signature used to prune the isomorphism search.
inline std::map<Id, std::array<std::size_t, 3>> state_signatures(
    const FiniteFlow& f) {
  std::map<Id, std::array<std::size_t, 3>> sig;
  for (const auto& s : f.states) sig[s] = {0, 0, 0};
  for (const auto& [p, e] : f.paths) {
    if (e.src == e.tgt) {
      ++sig[e.src][2];
    } else {
      ++sig[e.src][0];
      ++sig[e.tgt][1];
    }
  }
  return sig;
}

inline std::multiset<std::size_t> fiber_size_multiset(const FiniteFlow& f) {
  std::map<std::pair<Id, Id>, std::size_t> sizes;
  for (const auto& [p, e] : f.paths) ++sizes[{e.src, e.tgt}];
  std::multiset<std::size_t> out;
  for (const auto& [k, n] : sizes) out.insert(n);
  return out;
}

struct IsoSearch {
  const FiniteFlow& F;
  const FiniteFlow& G;
  std::size_t budget;
  std::vector<Id> fstates, fpaths;
  std::map<Id, std::array<std::size_t, 3>> fsig, gsig;
  std::map<Id, Id> smap, pmap;
  std::set<Id> used_states, used_paths;
  std::size_t steps = 0;
  std::optional<FlowMorphism> found;
  std::map<Id, std::size_t> path_rank;
  std::vector<std::vector<std::array<Id, 3>>> checks_at;

  IsoSearch(const FiniteFlow& f, const FiniteFlow& g, std::size_t b)
      : F(f), G(g), budget(b) {
    fstates.assign(F.states.begin(), F.states.end());
    for (const auto& [p, e] : F.paths) fpaths.push_back(p);
    fsig = state_signatures(F);
    gsig = state_signatures(G);
    for (std::size_t i = 0; i < fpaths.size(); ++i) path_rank[fpaths[i]] = i;
    checks_at.resize(fpaths.size());
    for (const auto& [xy, z] : F.comp) {
      std::size_t r = std::max({path_rank.at(xy.first), path_rank.at(xy.second),
                                path_rank.at(z)});
      checks_at[r].push_back({xy.first, xy.second, z});
    }
  }

  void spend() {
    if (++steps > budget)
      throw BudgetExceeded("isomorphism search budget exceeded");
  }

  bool assign_path(std::size_t i, FlowPtr fp, FlowPtr gp) {
    if (i == fpaths.size()) {
      found = FlowMorphism{fp, gp, smap, pmap};
      return true;
    }
    const Id& p = fpaths[i];
    const auto& e = F.ends(p);
    for (const Id& q : G.path_fiber(smap.at(e.src), smap.at(e.tgt))) {
      if (used_paths.count(q)) continue;
      spend();
      pmap[p] = q;
      used_paths.insert(q);
      bool ok = true;
      for (const auto& c : checks_at[i]) {
        auto img = G.compose(pmap.at(c[0]), pmap.at(c[1]));
        if (!img || *img != pmap.at(c[2])) {
          ok = false;
          break;
        }
      }
      if (ok && assign_path(i + 1, fp, gp)) return true;
      used_paths.erase(q);
      pmap.erase(p);
    }
    return false;
  }

  bool assign_state(std::size_t i, FlowPtr fp, FlowPtr gp) {
    if (i == fstates.size()) return assign_path(0, fp, gp);
    const Id& s = fstates[i];
    for (const auto& t : G.states) {
      if (used_states.count(t) || gsig.at(t) != fsig.at(s)) continue;
      spend();
      smap[s] = t;
      used_states.insert(t);
      if (assign_state(i + 1, fp, gp)) return true;
      used_states.erase(t);
      smap.erase(s);
    }
    return false;
  }
};

}  // namespace detail

// Searches for an isomorphism F -> G: a bijective morphism whose inverse is
// again a morphism. Prunes on state/path counts, composite counts, fiber
// size multisets and per-state degree signatures before backtracking.
inline std::optional<FlowMorphism> find_isomorphism(
    FlowPtr F, FlowPtr G, std::size_t budget = kDefaultSearchBudget) {
  if (F->states.size() != G->states.size()) return std::nullopt;
  if (F->paths.size() != G->paths.size()) return std::nullopt;
  if (F->comp.size() != G->comp.size()) return std::nullopt;
  if (detail::fiber_size_multiset(*F) != detail::fiber_size_multiset(*G))
    return std::nullopt;
  detail::IsoSearch s(*F, *G, budget);
  s.assign_state(0, F, G);
  // A bijective morphism between flows with equally many composites maps the
  // composition table onto the composition table, so the inverse preserves
  // composition as well.
  return s.found;
}

inline std::optional<FlowMorphism> find_isomorphism(
    const FiniteFlow& F, const FiniteFlow& G,
    std::size_t budget = kDefaultSearchBudget) {
  return find_isomorphism(share(F), share(G), budget);
}

inline bool isomorphic(const FiniteFlow& F, const FiniteFlow& G,
                       std::size_t budget = kDefaultSearchBudget) {
  return find_isomorphism(F, G, budget).has_value();
}

}  // namespace flowcat
