#pragma once

// The pushout-product of two flow morphisms and the globe gluing identity
// it satisfies on endpoint collapses against globe inclusions.

#include <set>

#include "flowcat/diagram.hpp"
#include "flowcat/tensor.hpp"

namespace flowcat {

struct PushoutProduct {
  ColimitResult corner;  // (V tensor W) glued with (U tensor T) over (U tensor W)
  FlowMorphism map;      // corner -> V tensor T
};

// For f: U -> V and g: W -> T, the corner is the pushout of
// V tensor W <- U tensor W -> U tensor T and `map` is the mediating
// morphism into V tensor T induced by id tensor g and f tensor id.
inline PushoutProduct pushout_product(const FlowMorphism& f,
                                      const FlowMorphism& g,
                                      ColimitOptions opts = {}) {
  const FiniteFlow& U = *f.source;
  const FiniteFlow& V = *f.target;
  const FiniteFlow& W = *g.source;
  const FiniteFlow& T = *g.target;
  TensorFlow vw = tensor(V, W);
  TensorFlow uw = tensor(U, W);
  TensorFlow ut = tensor(U, T);
  TensorFlow vt = tensor(V, T);

  Diagram span;
  span.nodes = {{"uw", share(uw.flow)}, {"ut", share(ut.flow)},
                {"vw", share(vw.flow)}};
  FlowMorphism fw = tensor_morphism(f, identity_morphism(share(W)), uw, vw);
  fw.source = span.nodes.at("uw");
  fw.target = span.nodes.at("vw");
  FlowMorphism ug = tensor_morphism(identity_morphism(share(U)), g, uw, ut);
  ug.source = span.nodes.at("uw");
  ug.target = span.nodes.at("ut");
  span.edges.push_back({"uw", "vw", std::move(fw)});
  span.edges.push_back({"uw", "ut", std::move(ug)});

  PushoutProduct out{colimit(span, opts), {}};

  Cocone into_vt;
  into_vt.apex = share(vt.flow);
  FlowMorphism vg = tensor_morphism(identity_morphism(share(V)), g, vw, vt);
  vg.source = span.nodes.at("vw");
  vg.target = into_vt.apex;
  FlowMorphism ft = tensor_morphism(f, identity_morphism(share(T)), ut, vt);
  ft.source = span.nodes.at("ut");
  ft.target = into_vt.apex;
  FlowMorphism fg = tensor_morphism(f, g, uw, vt);
  fg.source = span.nodes.at("uw");
  fg.target = into_vt.apex;
  into_vt.legs = {{"vw", std::move(vg)}, {"ut", std::move(ft)},
                  {"uw", std::move(fg)}};
  out.map = mediating_from_colimit(out.corner, into_vt);
  return out;
}

struct GlobIdentityReport {
  FiniteFlow corner;
  FiniteFlow expected;  // the globe on B glued with B over A
  std::optional<FlowMorphism> iso;
};

// For A a subset of B, the pushout-product of the two-point collapse
// {0,1} -> {0} with the globe inclusion Glob(A) -> Glob(B) is the globe on
// B glued with a second copy of B along A.
inline GlobIdentityReport check_glob_identity(const std::set<Id>& A,
                                              const std::set<Id>& B,
                                              ColimitOptions opts = {}) {
  for (const auto& a : A)
    if (!B.count(a)) throw FlowError("check_glob_identity: A must be a subset of B");

  FlowPtr two = share(achronal_flow(2));
  FlowPtr one = share(achronal_flow(1));
  FlowMorphism f{two, one, {{"*0", "*0"}, {"*1", "*0"}}, {}};

  Globe ga = globe(A);
  Globe gb = globe(B);
  FlowMorphism g{share(ga.flow), share(gb.flow), {{ga.s0, gb.s0}, {ga.s1, gb.s1}}, {}};
  for (const auto& a : A) g.path_map[ga.gen.at(a)] = gb.gen.at(a);

  PushoutProduct pp = pushout_product(f, g, opts);

  std::set<Id> doubled = B;
  for (const auto& b : B)
    if (!A.count(b)) doubled.insert(unique_name(b + "'", doubled));
  Globe expected = globe(doubled);

  GlobIdentityReport rep{*pp.corner.flow, expected.flow, {}};
  rep.iso = find_isomorphism(rep.corner, rep.expected);
  return rep;
}

}  // namespace flowcat
