#pragma once

// The tensor product of flows, the cartesian product, and the symmetric
// monoidal structure maps. A tensor path is a path*path, state*path or
// path*state pair; both products keep a labeling from result identifiers
// back to component pairs so that structure maps can be assembled by
// re-association instead of search.

#include <map>
#include <utility>

#include "flowcat/morphism.hpp"
#include "flowcat/standard.hpp"

namespace flowcat {

enum class PairTag { PathPath, StatePath, PathState };

struct PairLabel {
  PairTag tag;
  Id left, right;
  friend auto operator<=>(const PairLabel&, const PairLabel&) = default;
};

struct TensorFlow {
  FiniteFlow flow;
  FiniteFlow left_factor, right_factor;
  std::map<Id, std::pair<Id, Id>> state_label;
  std::map<std::pair<Id, Id>, Id> state_id;
  std::map<Id, PairLabel> path_label;
  std::map<PairLabel, Id> path_id;
};

inline TensorFlow tensor(const FiniteFlow& X, const FiniteFlow& Y) {
  TensorFlow t;
  t.left_factor = X;
  t.right_factor = Y;
  std::set<Id> used;
  for (const auto& a : X.states)
    for (const auto& b : Y.states) {
      Id n = unique_name("(" + a + "," + b + ")", used);
      used.insert(n);
      t.state_label[n] = {a, b};
      t.state_id[{a, b}] = n;
      t.flow.states.insert(n);
    }

  auto add_path = [&](PairTag tag, const Id& l, const Id& r) {
    Id n = unique_name("(" + l + "," + r + ")", used);
    used.insert(n);
    PairLabel lbl{tag, l, r};
    t.path_label[n] = lbl;
    t.path_id[lbl] = n;
    t.flow.paths[n] = {t.state_id.at({X.ext_src(l), Y.ext_src(r)}),
                       t.state_id.at({X.ext_tgt(l), Y.ext_tgt(r)})};
  };
  for (const auto& [x, ex] : X.paths)
    for (const auto& [y, ey] : Y.paths) add_path(PairTag::PathPath, x, y);
  for (const auto& a : X.states)
    for (const auto& [y, ey] : Y.paths) add_path(PairTag::StatePath, a, y);
  for (const auto& [x, ex] : X.paths)
    for (const auto& b : Y.states) add_path(PairTag::PathState, x, b);

  // Componentwise composition, with states absorbed by the matching
  // endpoint. Closure is guaranteed for valid factors.
  for (const auto& [p, lp] : t.path_label)
    for (const auto& [q, lq] : t.path_label) {
      if (t.flow.tgt(p) != t.flow.src(q)) continue;
      auto l = X.ext_compose(lp.left, lq.left);
      auto r = Y.ext_compose(lp.right, lq.right);
      if (!l || !r)
        throw FlowError("tensor closure failure on (" + p + "," + q + ")");
      bool lpath = X.has_path(*l), rpath = Y.has_path(*r);
      PairTag tag = lpath ? (rpath ? PairTag::PathPath : PairTag::PathState)
                          : PairTag::StatePath;
      t.flow.comp[{p, q}] = t.path_id.at({tag, *l, *r});
    }
  return t;
}

struct ProductFlow {
  FiniteFlow flow;
  FiniteFlow left_factor, right_factor;
  std::map<Id, std::pair<Id, Id>> state_label;
  std::map<std::pair<Id, Id>, Id> state_id;
  std::map<Id, std::pair<Id, Id>> path_label;
  std::map<std::pair<Id, Id>, Id> path_id;
};

// Levelwise cartesian product: state pairs and path pairs.
inline ProductFlow cartesian_product(const FiniteFlow& X, const FiniteFlow& Y) {
  ProductFlow t;
  t.left_factor = X;
  t.right_factor = Y;
  std::set<Id> used;
  for (const auto& a : X.states)
    for (const auto& b : Y.states) {
      Id n = unique_name("(" + a + "," + b + ")", used);
      used.insert(n);
      t.state_label[n] = {a, b};
      t.state_id[{a, b}] = n;
      t.flow.states.insert(n);
    }
  for (const auto& [x, ex] : X.paths)
    for (const auto& [y, ey] : Y.paths) {
      Id n = unique_name("(" + x + "," + y + ")", used);
      used.insert(n);
      t.path_label[n] = {x, y};
      t.path_id[{x, y}] = n;
      t.flow.paths[n] = {t.state_id.at({ex.src, ey.src}),
                         t.state_id.at({ex.tgt, ey.tgt})};
    }
  for (const auto& [p, lp] : t.path_label)
    for (const auto& [q, lq] : t.path_label) {
      if (t.flow.tgt(p) != t.flow.src(q)) continue;
      auto l = X.compose(lp.first, lq.first);
      auto r = Y.compose(lp.second, lq.second);
      if (!l || !r)
        throw FlowError("product closure failure on (" + p + "," + q + ")");
      t.flow.comp[{p, q}] = t.path_id.at({*l, *r});
    }
  return t;
}

inline FlowMorphism product_proj_left(const ProductFlow& t) {
  FlowMorphism m{share(t.flow), share(t.left_factor), {}, {}};
  for (const auto& [n, ab] : t.state_label) m.state_map[n] = ab.first;
  for (const auto& [n, xy] : t.path_label) m.path_map[n] = xy.first;
  return m;
}

inline FlowMorphism product_proj_right(const ProductFlow& t) {
  FlowMorphism m{share(t.flow), share(t.right_factor), {}, {}};
  for (const auto& [n, ab] : t.state_label) m.state_map[n] = ab.second;
  for (const auto& [n, xy] : t.path_label) m.path_map[n] = xy.second;
  return m;
}

// f tensor g, between prebuilt tensor flows. `dom` must be the tensor of
// the sources and `cod` the tensor of the targets.
inline FlowMorphism tensor_morphism(const FlowMorphism& f,
                                    const FlowMorphism& g,
                                    const TensorFlow& dom,
                                    const TensorFlow& cod) {
  FlowMorphism m{share(dom.flow), share(cod.flow), {}, {}};
  for (const auto& [n, ab] : dom.state_label)
    m.state_map[n] =
        cod.state_id.at({f.state_map.at(ab.first), g.state_map.at(ab.second)});
  for (const auto& [n, lbl] : dom.path_label) {
    Id l = lbl.tag == PairTag::StatePath ? f.state_map.at(lbl.left)
                                         : f.path_map.at(lbl.left);
    Id r = lbl.tag == PairTag::PathState ? g.state_map.at(lbl.right)
                                         : g.path_map.at(lbl.right);
    m.path_map[n] = cod.path_id.at({lbl.tag, l, r});
  }
  return m;
}

inline FlowMorphism tensor_morphism(const FlowMorphism& f,
                                    const FlowMorphism& g) {
  return tensor_morphism(f, g, tensor(*f.source, *g.source),
                         tensor(*f.target, *g.target));
}

inline FlowMorphism product_morphism(const FlowMorphism& f,
                                     const FlowMorphism& g,
                                     const ProductFlow& dom,
                                     const ProductFlow& cod) {
  FlowMorphism m{share(dom.flow), share(cod.flow), {}, {}};
  for (const auto& [n, ab] : dom.state_label)
    m.state_map[n] =
        cod.state_id.at({f.state_map.at(ab.first), g.state_map.at(ab.second)});
  for (const auto& [n, xy] : dom.path_label)
    m.path_map[n] =
        cod.path_id.at({f.path_map.at(xy.first), g.path_map.at(xy.second)});
  return m;
}

inline FlowMorphism product_morphism(const FlowMorphism& f,
                                     const FlowMorphism& g) {
  return product_morphism(f, g, cartesian_product(*f.source, *g.source),
                          cartesian_product(*f.target, *g.target));
}

// Ach(X tensor Y) = Ach(X) x Ach(Y).
inline bool achronal_product_check(const FiniteFlow& X, const FiniteFlow& Y) {
  TensorFlow t = tensor(X, Y);
  std::set<Id> expected;
  for (const auto& a : classify_states(X).achronal)
    for (const auto& b : classify_states(Y).achronal)
      expected.insert(t.state_id.at({a, b}));
  return classify_states(t.flow).achronal == expected;
}

// point tensor X -> X.
inline FlowMorphism left_unitor(const FiniteFlow& X) {
  TensorFlow t = tensor(point_flow(), X);
  FlowMorphism m{share(t.flow), share(X), {}, {}};
  for (const auto& [n, ab] : t.state_label) m.state_map[n] = ab.second;
  for (const auto& [n, lbl] : t.path_label) m.path_map[n] = lbl.right;
  return m;
}

// X tensor point -> X.
inline FlowMorphism right_unitor(const FiniteFlow& X) {
  TensorFlow t = tensor(X, point_flow());
  FlowMorphism m{share(t.flow), share(X), {}, {}};
  for (const auto& [n, ab] : t.state_label) m.state_map[n] = ab.first;
  for (const auto& [n, lbl] : t.path_label) m.path_map[n] = lbl.left;
  return m;
}

// (X tensor Y) tensor Z -> X tensor (Y tensor Z), by re-associating the
// component labels.
inline FlowMorphism associator(const FiniteFlow& X, const FiniteFlow& Y,
                               const FiniteFlow& Z) {
  TensorFlow xy = tensor(X, Y);
  TensorFlow dom = tensor(xy.flow, Z);
  TensorFlow yz = tensor(Y, Z);
  TensorFlow cod = tensor(X, yz.flow);
  FlowMorphism m{share(dom.flow), share(cod.flow), {}, {}};
  for (const auto& [n, ab] : dom.state_label) {
    const auto& [a, b] = xy.state_label.at(ab.first);
    m.state_map[n] = cod.state_id.at({a, yz.state_id.at({b, ab.second})});
  }
  for (const auto& [n, lbl] : dom.path_label) {
    Id img;
    if (lbl.tag == PairTag::StatePath) {
      const auto& [a, b] = xy.state_label.at(lbl.left);
      img = cod.path_id.at({PairTag::StatePath, a,
                            yz.path_id.at({PairTag::StatePath, b, lbl.right})});
    } else {
      PairLabel inner = xy.path_label.at(lbl.left);
      if (lbl.tag == PairTag::PathState) {
        switch (inner.tag) {
          case PairTag::PathPath:
            img = cod.path_id.at(
                {PairTag::PathPath, inner.left,
                 yz.path_id.at({PairTag::PathState, inner.right, lbl.right})});
            break;
          case PairTag::StatePath:
            img = cod.path_id.at(
                {PairTag::StatePath, inner.left,
                 yz.path_id.at({PairTag::PathState, inner.right, lbl.right})});
            break;
          case PairTag::PathState:
            img = cod.path_id.at({PairTag::PathState, inner.left,
                                  yz.state_id.at({inner.right, lbl.right})});
            break;
        }
      } else {  // PathPath
        switch (inner.tag) {
          case PairTag::PathPath:
            img = cod.path_id.at(
                {PairTag::PathPath, inner.left,
                 yz.path_id.at({PairTag::PathPath, inner.right, lbl.right})});
            break;
          case PairTag::StatePath:
            img = cod.path_id.at(
                {PairTag::StatePath, inner.left,
                 yz.path_id.at({PairTag::PathPath, inner.right, lbl.right})});
            break;
          case PairTag::PathState:
            img = cod.path_id.at(
                {PairTag::PathPath, inner.left,
                 yz.path_id.at({PairTag::StatePath, inner.right, lbl.right})});
            break;
        }
      }
    }
    m.path_map[n] = img;
  }
  return m;
}

// X tensor Y -> Y tensor X.
inline FlowMorphism braiding(const FiniteFlow& X, const FiniteFlow& Y) {
  TensorFlow dom = tensor(X, Y);
  TensorFlow cod = tensor(Y, X);
  FlowMorphism m{share(dom.flow), share(cod.flow), {}, {}};
  for (const auto& [n, ab] : dom.state_label)
    m.state_map[n] = cod.state_id.at({ab.second, ab.first});
  for (const auto& [n, lbl] : dom.path_label) {
    PairTag tag = lbl.tag == PairTag::StatePath  ? PairTag::PathState
                  : lbl.tag == PairTag::PathState ? PairTag::StatePath
                                                  : PairTag::PathPath;
    m.path_map[n] = cod.path_id.at({tag, lbl.right, lbl.left});
  }
  return m;
}

struct StructuralIsos {
  FlowMorphism unit_left;   // point tensor X -> X
  FlowMorphism unit_right;  // X tensor point -> X
  FlowMorphism associator;  // (X tensor Y) tensor Z -> X tensor (Y tensor Z)
  FlowMorphism symmetry;    // X tensor Y -> Y tensor X
};

inline StructuralIsos structural_isos(const FiniteFlow& X, const FiniteFlow& Y,
                                      const FiniteFlow& Z) {
  return {left_unitor(X), right_unitor(X), associator(X, Y, Z),
          braiding(X, Y)};
}

}  // namespace flowcat
