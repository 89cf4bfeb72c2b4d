#pragma once

// Finite flows: a finite set of states, a finite set of non-constant
// execution paths with source/target maps, and an associative partial
// composition defined on exactly the endpoint-matching pairs of paths.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flowcat {

using Id = std::string;

struct FlowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : FlowError {
  using FlowError::FlowError;
};

// Appends primes to `base` until it avoids every name in `used`.
inline Id unique_name(Id base, const std::set<Id>& used) {
  if (base.empty()) base = "_";
  while (used.count(base)) base += '\'';
  return base;
}

struct PathEnds {
  Id src, tgt;
  friend auto operator<=>(const PathEnds&, const PathEnds&) = default;
};

// Raw flow declarations, prior to validation. Kept as plain lists so that
// duplicate or conflicting declarations can be reported instead of silently
// collapsing inside a map.
struct FlowData {
  struct PathDecl {
    Id id, src, tgt;
  };
  struct CompDecl {
    Id left, right, result;
  };
  std::vector<Id> states;
  std::vector<PathDecl> paths;
  std::vector<CompDecl> comps;
};

enum class ViolationKind {
  BadIdentifier,
  DuplicateState,
  DuplicatePath,
  StatePathClash,
  UnknownState,
  UnknownPath,
  DuplicateComposite,
  NonComposablePair,
  MissingComposite,
  WrongEndpoints,
  NotAssociative,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

// A validated finite flow. Instances are immutable by convention: every
// operation in the library takes flows by const reference and returns fresh
// values.
struct FiniteFlow {
  std::set<Id> states;
  std::map<Id, PathEnds> paths;
  std::map<std::pair<Id, Id>, Id> comp;

  bool has_state(const Id& s) const { return states.count(s) != 0; }
  bool has_path(const Id& p) const { return paths.count(p) != 0; }

  const Id& src(const Id& path) const { return ends(path).src; }
  const Id& tgt(const Id& path) const { return ends(path).tgt; }

  const PathEnds& ends(const Id& path) const {
    auto it = paths.find(path);
    if (it == paths.end()) throw FlowError("unknown path: " + path);
    return it->second;
  }

  // Constant extension of the source/target maps: a state is its own
  // beginning and ending.
  const Id& ext_src(const Id& x) const { return has_state(x) ? x : src(x); }
  const Id& ext_tgt(const Id& x) const { return has_state(x) ? x : tgt(x); }

  bool composable(const Id& x, const Id& y) const { return tgt(x) == src(y); }

  std::optional<Id> compose(const Id& x, const Id& y) const {
    auto it = comp.find({x, y});
    if (it == comp.end()) return std::nullopt;
    return it->second;
  }

  // Composition extended to states acting as endpoint-matching identities.
  // Used by the tensor construction, never stored in the table.
  std::optional<Id> ext_compose(const Id& x, const Id& y) const {
    const bool xs = has_state(x), ys = has_state(y);
    if (xs && ys) return x == y ? std::optional<Id>(x) : std::nullopt;
    if (xs) return x == src(y) ? std::optional<Id>(y) : std::nullopt;
    if (ys) return tgt(x) == y ? std::optional<Id>(x) : std::nullopt;
    return compose(x, y);
  }

  // All paths from `from` to `to`, sorted.
  std::vector<Id> path_fiber(const Id& from, const Id& to) const {
    if (!has_state(from)) throw FlowError("unknown state: " + from);
    if (!has_state(to)) throw FlowError("unknown state: " + to);
    std::vector<Id> out;
    for (const auto& [p, e] : paths)
      if (e.src == from && e.tgt == to) out.push_back(p);
    return out;
  }

  friend bool operator==(const FiniteFlow&, const FiniteFlow&) = default;
};

inline FlowData to_data(const FiniteFlow& f) {
  FlowData d;
  d.states.assign(f.states.begin(), f.states.end());
  for (const auto& [p, e] : f.paths) d.paths.push_back({p, e.src, e.tgt});
  for (const auto& [xy, z] : f.comp)
    d.comps.push_back({xy.first, xy.second, z});
  return d;
}

namespace detail {

inline bool well_formed_id(const Id& id) {
  if (id.empty() || id[0] == '#') return false;
  for (unsigned char c : id)
    if (c <= ' ' || c == 0x7f) return false;
  return true;
}

}  // namespace detail

// Exhaustively checks the flow axioms on arbitrary candidate data. Returns
// one entry per violated axiom instance; an empty report means the data
// describes a valid flow. Malformed references are reported, not thrown.
inline std::vector<Violation> validate(const FlowData& d) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind k, const std::string& m) {
    out.push_back({k, m});
  };

  std::set<Id> states, path_ids;
  for (const auto& s : d.states) {
    if (!detail::well_formed_id(s))
      add(ViolationKind::BadIdentifier, "bad state identifier \"" + s + "\"");
    if (!states.insert(s).second)
      add(ViolationKind::DuplicateState, "duplicate state " + s);
  }
  std::map<Id, PathEnds> paths;
  for (const auto& p : d.paths) {
    if (!detail::well_formed_id(p.id))
      add(ViolationKind::BadIdentifier,
          "bad path identifier \"" + p.id + "\"");
    if (states.count(p.id))
      add(ViolationKind::StatePathClash,
          "identifier " + p.id + " declared as both state and path");
    if (path_ids.count(p.id)) {
      add(ViolationKind::DuplicatePath, "duplicate path " + p.id);
      continue;
    }
    path_ids.insert(p.id);
    bool ok = true;
    if (!states.count(p.src)) {
      add(ViolationKind::UnknownState,
          "path " + p.id + " has unknown source " + p.src);
      ok = false;
    }
    if (!states.count(p.tgt)) {
      add(ViolationKind::UnknownState,
          "path " + p.id + " has unknown target " + p.tgt);
      ok = false;
    }
    if (ok) paths[p.id] = {p.src, p.tgt};
  }

  std::map<std::pair<Id, Id>, Id> comp;
  for (const auto& c : d.comps) {
    bool ok = true;
    for (const Id* id : {&c.left, &c.right, &c.result})
      if (!paths.count(*id)) {
        add(ViolationKind::UnknownPath,
            "composite (" + c.left + "," + c.right + ") = " + c.result +
                " references unknown path " + *id);
        ok = false;
      }
    if (!ok) continue;
    auto [it, fresh] = comp.insert({{c.left, c.right}, c.result});
    if (!fresh) {
      add(ViolationKind::DuplicateComposite,
          "composite (" + c.left + "," + c.right + ") declared again as " +
              c.result + (it->second == c.result ? "" : ", conflicting with " +
                                                            it->second));
      continue;
    }
    if (paths[c.left].tgt != paths[c.right].src)
      add(ViolationKind::NonComposablePair,
          "composite defined on non-composable pair (" + c.left + "," +
              c.right + ")");
    else {
      if (paths[c.result].src != paths[c.left].src ||
          paths[c.result].tgt != paths[c.right].tgt)
        add(ViolationKind::WrongEndpoints,
            "composite (" + c.left + "," + c.right + ") = " + c.result +
                " has wrong endpoints");
    }
  }

  // Closure: every endpoint-matching pair needs a composite.
  for (const auto& [x, ex] : paths)
    for (const auto& [y, ey] : paths)
      if (ex.tgt == ey.src && !comp.count({x, y}))
        add(ViolationKind::MissingComposite,
            "missing composite (" + x + "," + y + ")");

  // Associativity over every composable triple with both sides available.
  for (const auto& [x, ex] : paths)
    for (const auto& [y, ey] : paths) {
      if (ex.tgt != ey.src) continue;
      auto xy = comp.find({x, y});
      if (xy == comp.end()) continue;
      for (const auto& [z, ez] : paths) {
        if (ey.tgt != ez.src) continue;
        auto yz = comp.find({y, z});
        if (yz == comp.end()) continue;
        auto l = comp.find({xy->second, z});
        auto r = comp.find({x, yz->second});
        if (l == comp.end() || r == comp.end()) continue;
        if (l->second != r->second)
          add(ViolationKind::NotAssociative,
              "(" + x + "*" + y + ")*" + z + " = " + l->second +
                  " but " + x + "*(" + y + "*" + z + ") = " + r->second);
      }
    }
  return out;
}

inline std::vector<Violation> validate(const FiniteFlow& f) {
  return validate(to_data(f));
}

// Builds a FiniteFlow from raw data, throwing with the full violation list
// when the data is not a valid flow.
inline FiniteFlow make_flow(const FlowData& d) {
  auto report = validate(d);
  if (!report.empty()) {
    std::ostringstream msg;
    msg << "invalid flow:";
    for (const auto& v : report) msg << "\n  " << v.message;
    throw FlowError(msg.str());
  }
  FiniteFlow f;
  f.states.insert(d.states.begin(), d.states.end());
  for (const auto& p : d.paths) f.paths[p.id] = {p.src, p.tgt};
  for (const auto& c : d.comps) f.comp[{c.left, c.right}] = c.result;
  return f;
}

struct StateClassification {
  std::set<Id> achronal;
  std::set<Id> source_image;  // states hit by the source map
  std::set<Id> target_image;  // states hit by the target map
  std::set<Id> initial_states;
  std::set<Id> final_states;
};

inline StateClassification classify_states(const FiniteFlow& f) {
  StateClassification c;
  for (const auto& [p, e] : f.paths) {
    c.source_image.insert(e.src);
    c.target_image.insert(e.tgt);
  }
  for (const auto& s : f.states) {
    if (!c.source_image.count(s) && !c.target_image.count(s))
      c.achronal.insert(s);
    if (!c.target_image.count(s)) c.initial_states.insert(s);
    if (!c.source_image.count(s)) c.final_states.insert(s);
  }
  return c;
}

}  // namespace flowcat
