#pragma once

// Shared test corpus: an exhaustive enumeration of every valid flow on at
// most two states and two paths, the named standard flows, and independent
// brute-force oracles that bypass the library's search machinery.

#include <vector>

#include "flowcat/flowcat.hpp"

namespace flowcat::testing {

// Every valid flow with <= 2 states and <= 2 paths, on canonical labels.
inline std::vector<FiniteFlow> tiny_flows() {
  std::vector<FiniteFlow> out;
  for (std::size_t ns = 0; ns <= 2; ++ns) {
    std::vector<Id> ss;
    for (std::size_t i = 0; i < ns; ++i) ss.push_back("s" + std::to_string(i));
    for (std::size_t np = 0; np <= 2; ++np) {
      if (ns == 0 && np > 0) continue;
      std::vector<std::size_t> ends(2 * np, 0);  // src/tgt indices per path
      while (true) {
        FlowData d;
        d.states = ss;
        for (std::size_t i = 0; i < np; ++i)
          d.paths.push_back({"p" + std::to_string(i), ss[ends[2 * i]],
                             ss[ends[2 * i + 1]]});
        // composable pairs and their candidate composites
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        std::vector<std::vector<std::size_t>> cands;
        bool feasible = true;
        for (std::size_t i = 0; i < np && feasible; ++i)
          for (std::size_t j = 0; j < np; ++j) {
            if (d.paths[i].tgt != d.paths[j].src) continue;
            std::vector<std::size_t> ks;
            for (std::size_t k = 0; k < np; ++k)
              if (d.paths[k].src == d.paths[i].src &&
                  d.paths[k].tgt == d.paths[j].tgt)
                ks.push_back(k);
            if (ks.empty()) {
              feasible = false;
              break;
            }
            pairs.push_back({i, j});
            cands.push_back(ks);
          }
        if (feasible) {
          std::vector<std::size_t> pick(pairs.size(), 0);
          while (true) {
            FlowData cand = d;
            for (std::size_t c = 0; c < pairs.size(); ++c)
              cand.comps.push_back({d.paths[pairs[c].first].id,
                                    d.paths[pairs[c].second].id,
                                    d.paths[cands[c][pick[c]]].id});
            if (validate(cand).empty()) out.push_back(make_flow(cand));
            std::size_t c = 0;
            for (; c < pick.size(); ++c) {
              if (++pick[c] < cands[c].size()) break;
              pick[c] = 0;
            }
            if (c == pick.size()) break;
          }
        }
        std::size_t i = 0;
        for (; i < ends.size(); ++i) {
          if (++ends[i] < ns) break;
          ends[i] = 0;
        }
        if (i == ends.size()) break;
      }
    }
  }
  return out;
}

inline std::vector<FiniteFlow> named_flows() {
  return {empty_flow(),
          point_flow(),
          achronal_flow(1),
          achronal_flow(2),
          achronal_flow(3),
          terminal_flow(),
          directed_segment(),
          globe({"g"}).flow,
          globe({"a", "b"}).flow,
          glob_concat({"x"}, {"y"}).flow};
}

inline const std::vector<FiniteFlow>& corpus() {
  static std::vector<FiniteFlow> all = [] {
    auto v = tiny_flows();
    for (auto& f : named_flows()) v.push_back(f);
    return v;
  }();
  return all;
}

// Independent oracle: counts morphisms F -> G by trying every one of the
// |G^0|^|F^0| * |PG|^|PF| assignments and checking the axioms directly.
inline std::size_t naive_morphism_count(const FiniteFlow& F,
                                        const FiniteFlow& G) {
  std::vector<Id> fs(F.states.begin(), F.states.end()), gs(G.states.begin(),
                                                           G.states.end());
  std::vector<Id> fp, gp;
  for (const auto& [p, e] : F.paths) fp.push_back(p);
  for (const auto& [p, e] : G.paths) gp.push_back(p);
  if ((!fs.empty() && gs.empty()) || (!fp.empty() && gp.empty()))
    return fs.empty() && fp.empty() ? 1 : 0;

  std::size_t count = 0;
  std::vector<std::size_t> spick(fs.size(), 0);
  while (true) {
    std::map<Id, Id> smap;
    for (std::size_t i = 0; i < fs.size(); ++i) smap[fs[i]] = gs[spick[i]];
    std::vector<std::size_t> ppick(fp.size(), 0);
    while (true) {
      std::map<Id, Id> pmap;
      for (std::size_t i = 0; i < fp.size(); ++i) pmap[fp[i]] = gp[ppick[i]];
      bool ok = true;
      for (const auto& [p, e] : F.paths) {
        if (G.src(pmap[p]) != smap[e.src] || G.tgt(pmap[p]) != smap[e.tgt]) {
          ok = false;
          break;
        }
      }
      if (ok)
        for (const auto& [xy, z] : F.comp) {
          if (G.compose(pmap[xy.first], pmap[xy.second]) !=
              std::optional<Id>(pmap[z])) {
            ok = false;
            break;
          }
        }
      if (ok) ++count;
      std::size_t i = 0;
      for (; i < ppick.size(); ++i) {
        if (++ppick[i] < gp.size()) break;
        ppick[i] = 0;
      }
      if (i == ppick.size()) break;
    }
    std::size_t i = 0;
    for (; i < spick.size(); ++i) {
      if (++spick[i] < gs.size()) break;
      spick[i] = 0;
    }
    if (i == spick.size()) break;
  }
  return count;
}

}  // namespace flowcat::testing
