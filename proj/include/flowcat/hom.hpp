#pragma once

// The internal hom of flows. hom_direct builds hom(Y,Z) from coherent
// state-indexed path families; hom_globe is the explicit pullback
// construction on globes; hom_via_decomposition recovers hom(Y,Z) as a
// limit over the canonical decomposition of Y. curry/uncurry realize the
// bijection Flow(X tensor Y, Z) = Flow(X, hom(Y,Z)).

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flowcat/diagram.hpp"
#include "flowcat/morphism.hpp"
#include "flowcat/tensor.hpp"

namespace flowcat {

namespace detail {

inline std::string map_key(const std::map<Id, Id>& m) {
  std::string k;
  for (const auto& [a, b] : m) k += a + ">" + b + ";";
  return k;
}

}  // namespace detail

// hom(Y,Z): one state per morphism Y -> Z, one path per coherent hom path
// (u, v, h) where h picks a path of Z over every state of Y and
// u(y) * h(tgt y) = h(src y) * v(y) for every path y of Y.
struct HomFlow {
  FiniteFlow flow;
  FiniteFlow Y, Z;
  std::vector<FlowMorphism> state_morphisms;
  std::vector<Id> state_ids;
  std::map<Id, std::size_t> state_index;

  struct PathData {
    std::size_t u, v;
    std::map<Id, Id> h;
  };
  std::map<Id, PathData> path_data;

  std::map<std::string, std::size_t> morphism_key;
  std::map<std::string, Id> path_key;

  static std::string key_of(const FlowMorphism& m) {
    return detail::map_key(m.state_map) + "|" + detail::map_key(m.path_map);
  }
  static std::string key_of(std::size_t u, std::size_t v,
                            const std::map<Id, Id>& h) {
    return std::to_string(u) + "|" + std::to_string(v) + "|" +
           detail::map_key(h);
  }

  std::size_t index_of(const FlowMorphism& m) const {
    auto it = morphism_key.find(key_of(m));
    if (it == morphism_key.end())
      throw FlowError("morphism is not a state of the hom flow");
    return it->second;
  }
  const Id& path_of(std::size_t u, std::size_t v,
                    const std::map<Id, Id>& h) const {
    auto it = path_key.find(key_of(u, v, h));
    if (it == path_key.end())
      throw FlowError("family is not a path of the hom flow");
    return it->second;
  }
};

inline HomFlow hom_direct(const FiniteFlow& Y, const FiniteFlow& Z,
                          std::size_t budget = kDefaultSearchBudget) {
  HomFlow H;
  H.Y = Y;
  H.Z = Z;
  H.state_morphisms = enumerate_morphisms(share(Y), share(Z), budget);
  for (std::size_t i = 0; i < H.state_morphisms.size(); ++i) {
    Id n = "m" + std::to_string(i);
    H.state_ids.push_back(n);
    H.state_index[n] = i;
    H.morphism_key[HomFlow::key_of(H.state_morphisms[i])] = i;
    H.flow.states.insert(n);
  }

  std::vector<Id> ystates(Y.states.begin(), Y.states.end());
  std::size_t steps = 0;
  std::size_t npaths = 0;
  for (std::size_t u = 0; u < H.state_morphisms.size(); ++u)
    for (std::size_t v = 0; v < H.state_morphisms.size(); ++v) {
      const auto& mu = H.state_morphisms[u];
      const auto& mv = H.state_morphisms[v];
      std::vector<std::vector<Id>> fibers(ystates.size());
      bool feasible = true;
      for (std::size_t i = 0; i < ystates.size(); ++i) {
        fibers[i] = Z.path_fiber(mu.state_map.at(ystates[i]),
                                 mv.state_map.at(ystates[i]));
        if (fibers[i].empty()) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      std::vector<std::size_t> pick(ystates.size(), 0);
      while (true) {
        if (++steps > budget)
          throw BudgetExceeded("hom path enumeration budget exceeded");
        std::map<Id, Id> h;
        for (std::size_t i = 0; i < ystates.size(); ++i)
          h[ystates[i]] = fibers[i][pick[i]];
        bool coherent = true;
        for (const auto& [y, e] : Y.paths)
          if (Z.compose(mu.path_map.at(y), h.at(e.tgt)) !=
              Z.compose(h.at(e.src), mv.path_map.at(y))) {
            coherent = false;
            break;
          }
        if (coherent) {
          Id n = "h" + std::to_string(npaths++);
          H.flow.paths[n] = {H.state_ids[u], H.state_ids[v]};
          H.path_data[n] = {u, v, h};
          H.path_key[HomFlow::key_of(u, v, h)] = n;
        }
        // odometer over the fiber choices
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < fibers[i].size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
    }

  // (h * h')(a) = h(a) * h'(a), defined when the middle morphisms agree.
  for (const auto& [p, dp] : H.path_data)
    for (const auto& [q, dq] : H.path_data) {
      if (dp.v != dq.u) continue;
      std::map<Id, Id> h;
      for (const auto& [a, x] : dp.h) h[a] = *Z.compose(x, dq.h.at(a));
      H.flow.comp[{p, q}] = H.path_of(dp.u, dq.v, h);
    }
  return H;
}

// hom(Glob(A), Z) built directly: states are pairs of Z-states together
// with a map A -> P_{alpha,beta}Z; paths are the pullback quadruples
// (m, p, q, n) with m(a) * p = q * n(a) for every a in A.
struct HomGlobeFlow {
  FiniteFlow flow;
  std::vector<Id> A;  // sorted generator set
  FiniteFlow Z;

  struct StateData {
    Id alpha, beta;
    std::map<Id, Id> m;
  };
  std::map<Id, StateData> state_data;
  std::map<std::string, Id> state_key;

  struct PathData {
    Id p, q;  // p in P_{beta,delta}Z, q in P_{alpha,gamma}Z
  };
  std::map<Id, PathData> path_data;
  std::map<std::string, Id> path_key;

  static std::string key_of(const Id& alpha, const Id& beta,
                            const std::map<Id, Id>& m) {
    return alpha + "|" + beta + "|" + detail::map_key(m);
  }
  static std::string key_of(const Id& src_state, const Id& tgt_state,
                            const Id& p, const Id& q) {
    return src_state + "|" + tgt_state + "|" + p + "|" + q;
  }
};

inline HomGlobeFlow hom_globe(const std::set<Id>& A, const FiniteFlow& Z) {
  HomGlobeFlow H;
  H.A.assign(A.begin(), A.end());
  H.Z = Z;

  std::size_t nstates = 0;
  for (const auto& alpha : Z.states)
    for (const auto& beta : Z.states) {
      auto fiber = Z.path_fiber(alpha, beta);
      if (fiber.empty() && !H.A.empty()) continue;
      std::vector<std::size_t> pick(H.A.size(), 0);
      while (true) {
        std::map<Id, Id> m;
        for (std::size_t i = 0; i < H.A.size(); ++i) m[H.A[i]] = fiber[pick[i]];
        Id n = "m" + std::to_string(nstates++);
        H.flow.states.insert(n);
        H.state_data[n] = {alpha, beta, m};
        H.state_key[HomGlobeFlow::key_of(alpha, beta, m)] = n;
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < fiber.size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
    }

  std::size_t npaths = 0;
  for (const auto& [sid, sd] : H.state_data)
    for (const auto& [tid, td] : H.state_data)
      for (const Id& p : Z.path_fiber(sd.beta, td.beta))
        for (const Id& q : Z.path_fiber(sd.alpha, td.alpha)) {
          bool ok = true;
          for (const auto& a : H.A)
            if (Z.compose(sd.m.at(a), p) != Z.compose(q, td.m.at(a))) {
              ok = false;
              break;
            }
          if (!ok) continue;
          Id n = "h" + std::to_string(npaths++);
          H.flow.paths[n] = {sid, tid};
          H.path_data[n] = {p, q};
          H.path_key[HomGlobeFlow::key_of(sid, tid, p, q)] = n;
        }

  // (m,p,q,n) * (n,p',q',n') = (m, p*p', q*q', n')
  for (const auto& [pid, pd] : H.path_data)
    for (const auto& [qid, qd] : H.path_data) {
      if (H.flow.tgt(pid) != H.flow.src(qid)) continue;
      H.flow.comp[{pid, qid}] =
          H.path_key.at(HomGlobeFlow::key_of(H.flow.src(pid), H.flow.tgt(qid),
                                             *Z.compose(pd.p, qd.p),
                                             *Z.compose(pd.q, qd.q)));
    }
  return H;
}

// Evaluation hom(Glob(A),Z) -> Z at the globe's source (at_target=false) or
// target (at_target=true) state.
inline FlowMorphism hom_globe_eval(const HomGlobeFlow& H, bool at_target) {
  FlowMorphism m{share(H.flow), share(H.Z), {}, {}};
  for (const auto& [n, sd] : H.state_data)
    m.state_map[n] = at_target ? sd.beta : sd.alpha;
  for (const auto& [n, pd] : H.path_data)
    m.path_map[n] = at_target ? pd.p : pd.q;
  return m;
}

// hom(Y,Z) computed as the limit of hom(node, Z) over the canonical
// decomposition of Y with reversed edges: points map to Z, globes to
// hom_globe, concatenations to the pullback of the two globe homs over
// evaluation at the shared middle state.
inline FiniteFlow hom_via_decomposition(const FiniteFlow& Y,
                                        const FiniteFlow& Z) {
  Decomposition dec = canonical_decomposition(Y);
  FlowPtr zp = share(Z);

  std::map<Id, Id> globe_node_of_path;
  for (const auto& [n, p] : dec.globe_nodes) globe_node_of_path[p] = n;

  Diagram H;
  std::map<Id, HomGlobeFlow> ghom;
  std::map<Id, FlowPtr> ghom_ptr;
  for (const auto& [n, s] : dec.point_nodes) H.nodes[n] = zp;
  for (const auto& [n, p] : dec.globe_nodes) {
    ghom[n] = hom_globe({p}, Z);
    ghom_ptr[n] = share(ghom[n].flow);
    H.nodes[n] = ghom_ptr[n];
  }
  std::map<Id, LimitResult> chom;
  for (const auto& [n, xy] : dec.concat_nodes) {
    const Id& gx = globe_node_of_path.at(xy.first);
    const Id& gy = globe_node_of_path.at(xy.second);
    Diagram cospan;
    cospan.nodes = {{"l", ghom_ptr.at(gx)}, {"m", zp}, {"r", ghom_ptr.at(gy)}};
    FlowMorphism el = hom_globe_eval(ghom.at(gx), true);
    el.source = ghom_ptr.at(gx);
    el.target = zp;
    FlowMorphism er = hom_globe_eval(ghom.at(gy), false);
    er.source = ghom_ptr.at(gy);
    er.target = zp;
    cospan.edges.push_back({"l", "m", std::move(el)});
    cospan.edges.push_back({"r", "m", std::move(er)});
    chom[n] = limit(cospan);
    H.nodes[n] = chom[n].flow;
  }

  for (const auto& e : dec.diagram.edges) {
    FlowMorphism rev;
    if (dec.globe_nodes.count(e.to) && dec.point_nodes.count(e.from)) {
      const Globe& g = dec.globes.at(e.to);
      rev = hom_globe_eval(ghom.at(e.to),
                           e.morphism.state_map.at("*") == g.s1);
      rev.source = H.nodes.at(e.to);
      rev.target = zp;
    } else if (dec.concat_nodes.count(e.to) && dec.point_nodes.count(e.from)) {
      const GlobConcat& c = dec.concats.at(e.to);
      const auto& xy = dec.concat_nodes.at(e.to);
      const Id& img = e.morphism.state_map.at("*");
      const LimitResult& lr = chom.at(e.to);
      if (img == c.s0) {
        rev = compose(lr.cone.legs.at("l"),
                      hom_globe_eval(ghom.at(globe_node_of_path.at(xy.first)), false));
      } else if (img == c.s1) {
        rev = compose(lr.cone.legs.at("l"),
                      hom_globe_eval(ghom.at(globe_node_of_path.at(xy.first)), true));
      } else {
        rev = compose(lr.cone.legs.at("r"),
                      hom_globe_eval(ghom.at(globe_node_of_path.at(xy.second)), true));
      }
      rev.source = H.nodes.at(e.to);
      rev.target = zp;
    } else {
      // globe -> concatenation: segment or composite inclusion
      const GlobConcat& c = dec.concats.at(e.to);
      const auto& xy = dec.concat_nodes.at(e.to);
      const Globe& g = dec.globes.at(e.from);
      const LimitResult& lr = chom.at(e.to);
      const Id& i0 = e.morphism.state_map.at(g.s0);
      const Id& i1 = e.morphism.state_map.at(g.s1);
      if (i0 == c.s0 && i1 == c.s1) {
        rev = lr.cone.legs.at("l");
      } else if (i0 == c.s1 && i1 == c.s2) {
        rev = lr.cone.legs.at("r");
      } else {
        // restriction to the composite segment
        const HomGlobeFlow& HA = ghom.at(globe_node_of_path.at(xy.first));
        const HomGlobeFlow& HB = ghom.at(globe_node_of_path.at(xy.second));
        const HomGlobeFlow& HZg = ghom.at(e.from);
        const Id& z = dec.globe_nodes.at(e.from);
        const FlowMorphism& legl = lr.cone.legs.at("l");
        const FlowMorphism& legr = lr.cone.legs.at("r");
        rev = FlowMorphism{lr.flow, H.nodes.at(e.from), {}, {}};
        for (const auto& s : lr.flow->states) {
          const auto& da = HA.state_data.at(legl.state_map.at(s));
          const auto& db = HB.state_data.at(legr.state_map.at(s));
          std::map<Id, Id> mm{
              {z, *Z.compose(da.m.at(xy.first), db.m.at(xy.second))}};
          rev.state_map[s] = HZg.state_key.at(
              HomGlobeFlow::key_of(da.alpha, db.beta, mm));
        }
        for (const auto& [p, ends] : lr.flow->paths) {
          const auto& pa = HA.path_data.at(legl.path_map.at(p));
          const auto& pb = HB.path_data.at(legr.path_map.at(p));
          rev.path_map[p] = HZg.path_key.at(
              HomGlobeFlow::key_of(rev.state_map.at(ends.src),
                                   rev.state_map.at(ends.tgt), pb.p, pa.q));
        }
      }
      rev.source = H.nodes.at(e.to);
      rev.target = H.nodes.at(e.from);
    }
    H.edges.push_back({e.to, e.from, std::move(rev)});
  }
  return *limit(H).flow;
}

// Transpose of f: X tensor Y -> Z along the adjunction. `XY` must be the
// tensor of X and Y and `H` the hom of (Y, Z).
inline FlowMorphism curry(const TensorFlow& XY, const FlowMorphism& f,
                          const HomFlow& H) {
  if (*f.source != XY.flow)
    throw FlowError("curry: morphism domain is not the given tensor flow");
  if (XY.right_factor != H.Y || *f.target != H.Z)
    throw FlowError("curry: hom flow does not match the tensor factors");
  const FiniteFlow& X = XY.left_factor;
  const FiniteFlow& Y = XY.right_factor;
  FlowMorphism m{share(X), share(H.flow), {}, {}};
  std::map<Id, std::size_t> idx;
  for (const auto& a : X.states) {
    FlowMorphism ma{share(Y), f.target, {}, {}};
    for (const auto& b : Y.states)
      ma.state_map[b] = f.state_map.at(XY.state_id.at({a, b}));
    for (const auto& [y, e] : Y.paths)
      ma.path_map[y] = f.path_map.at(XY.path_id.at({PairTag::StatePath, a, y}));
    idx[a] = H.index_of(ma);
    m.state_map[a] = H.state_ids[idx[a]];
  }
  for (const auto& [x, e] : X.paths) {
    std::map<Id, Id> h;
    for (const auto& b : Y.states)
      h[b] = f.path_map.at(XY.path_id.at({PairTag::PathState, x, b}));
    m.path_map[x] = H.path_of(idx.at(e.src), idx.at(e.tgt), h);
  }
  return m;
}

// Transpose of g: X -> hom(Y,Z) back to X tensor Y -> Z.
inline FlowMorphism uncurry(const TensorFlow& XY, const FlowMorphism& g,
                            const HomFlow& H) {
  if (*g.target != H.flow)
    throw FlowError("uncurry: morphism codomain is not the given hom flow");
  if (*g.source != XY.left_factor || XY.right_factor != H.Y)
    throw FlowError("uncurry: tensor flow does not match the morphism");
  const FiniteFlow& Y = XY.right_factor;
  const FiniteFlow& Z = H.Z;
  FlowMorphism m{share(XY.flow), share(Z), {}, {}};
  for (const auto& [n, ab] : XY.state_label) {
    const auto& u = H.state_morphisms[H.state_index.at(g.state_map.at(ab.first))];
    m.state_map[n] = u.state_map.at(ab.second);
  }
  for (const auto& [n, lbl] : XY.path_label) {
    switch (lbl.tag) {
      case PairTag::StatePath: {
        const auto& u =
            H.state_morphisms[H.state_index.at(g.state_map.at(lbl.left))];
        m.path_map[n] = u.path_map.at(lbl.right);
        break;
      }
      case PairTag::PathState: {
        m.path_map[n] = H.path_data.at(g.path_map.at(lbl.left)).h.at(lbl.right);
        break;
      }
      case PairTag::PathPath: {
        const auto& pd = H.path_data.at(g.path_map.at(lbl.left));
        const auto& u = H.state_morphisms[pd.u];
        // u(y) * h(tgt y); equal to h(src y) * v(y) by coherence
        m.path_map[n] = *Z.compose(u.path_map.at(lbl.right),
                                   pd.h.at(Y.tgt(lbl.right)));
        break;
      }
    }
  }
  return m;
}

// Does curry commute with precomposition by phi: X' -> X?
inline bool curry_naturality_square(const FlowMorphism& phi,
                                    const TensorFlow& XY,
                                    const FlowMorphism& f, const HomFlow& H) {
  TensorFlow XpY = tensor(*phi.source, XY.right_factor);
  FlowMorphism phi_id = tensor_morphism(
      phi, identity_morphism(share(XY.right_factor)), XpY, XY);
  phi_id.target = f.source;
  FlowMorphism fp = compose(phi_id, f);
  FlowMorphism lhs = curry(XpY, fp, H);
  FlowMorphism rhs = compose(phi, curry(XY, f, H));
  return lhs.state_map == rhs.state_map && lhs.path_map == rhs.path_map;
}

struct AdjunctionReport {
  std::size_t lhs_count = 0;  // |Flow(X tensor Y, Z)|
  std::size_t rhs_count = 0;  // |Flow(X, hom(Y,Z))|
  bool bijection_ok = false;
  bool natural_ok = false;
  std::size_t naturality_squares = 0;
};

inline AdjunctionReport check_adjunction(const FiniteFlow& X,
                                         const FiniteFlow& Y,
                                         const FiniteFlow& Z,
                                         std::size_t budget = kDefaultSearchBudget) {
  AdjunctionReport rep;
  TensorFlow XY = tensor(X, Y);
  HomFlow H = hom_direct(Y, Z, budget);
  FlowPtr txy = share(XY.flow);
  auto lhs = enumerate_morphisms(txy, share(Z), budget);
  auto rhs = enumerate_morphisms(share(X), share(H.flow), budget);
  rep.lhs_count = lhs.size();
  rep.rhs_count = rhs.size();

  std::set<std::string> rhs_keys, curried_keys;
  for (const auto& g : rhs) rhs_keys.insert(HomFlow::key_of(g));
  bool ok = lhs.size() == rhs.size();
  for (const auto& f : lhs) {
    if (!ok) break;
    FlowMorphism c = curry(XY, f, H);
    ok = rhs_keys.count(HomFlow::key_of(c)) &&
         curried_keys.insert(HomFlow::key_of(c)).second;
    if (ok) {
      FlowMorphism back = uncurry(XY, c, H);
      ok = back.state_map == f.state_map && back.path_map == f.path_map;
    }
  }
  for (const auto& g : rhs) {
    if (!ok) break;
    FlowMorphism c = curry(XY, uncurry(XY, g, H), H);
    ok = c.state_map == g.state_map && c.path_map == g.path_map;
  }
  rep.bijection_ok = ok;

  bool natural = true;
  auto endos = enumerate_morphisms(share(X), share(X), budget);
  for (const auto& phi : endos) {
    for (const auto& f : lhs) {
      if (rep.naturality_squares >= 400) break;
      ++rep.naturality_squares;
      if (!curry_naturality_square(phi, XY, f, H)) natural = false;
    }
    if (rep.naturality_squares >= 400) break;
  }
  rep.natural_ok = natural;
  return rep;
}

// Precomposition hom(Y2,Z) -> hom(Y,Z) along mu: Y -> Y2.
inline FlowMorphism hom_precompose(const HomFlow& H2, const HomFlow& H,
                                   const FlowMorphism& mu) {
  FlowMorphism m{share(H2.flow), share(H.flow), {}, {}};
  std::vector<std::size_t> restricted(H2.state_morphisms.size());
  for (std::size_t i = 0; i < H2.state_morphisms.size(); ++i) {
    FlowMorphism u = compose(mu, H2.state_morphisms[i]);
    restricted[i] = H.index_of(u);
    m.state_map[H2.state_ids[i]] = H.state_ids[restricted[i]];
  }
  for (const auto& [p, pd] : H2.path_data) {
    std::map<Id, Id> h;
    for (const auto& a : H.Y.states) h[a] = pd.h.at(mu.state_map.at(a));
    m.path_map[p] = H.path_of(restricted[pd.u], restricted[pd.v], h);
  }
  return m;
}

// Postcomposition hom(Y,Z) -> hom(Y,Z2) along nu: Z -> Z2.
inline FlowMorphism hom_postcompose(const HomFlow& H, const HomFlow& H2,
                                    const FlowMorphism& nu) {
  FlowMorphism m{share(H.flow), share(H2.flow), {}, {}};
  std::vector<std::size_t> pushed(H.state_morphisms.size());
  for (std::size_t i = 0; i < H.state_morphisms.size(); ++i) {
    FlowMorphism u = compose(H.state_morphisms[i], nu);
    pushed[i] = H2.index_of(u);
    m.state_map[H.state_ids[i]] = H2.state_ids[pushed[i]];
  }
  for (const auto& [p, pd] : H.path_data) {
    std::map<Id, Id> h;
    for (const auto& [a, x] : pd.h) h[a] = nu.path_map.at(x);
    m.path_map[p] = H2.path_of(pushed[pd.u], pushed[pd.v], h);
  }
  return m;
}

}  // namespace flowcat
