#include "termlab/minimal.hpp"

#include <stdexcept>

namespace termlab {

bool check_subtree_vector(const RelationTriple& t, const Element& x,
                          const SubtreeVector& u) {
  const ElementSeq& subs = t.sub.successors(x);
  if (u.size() != subs.size()) return false;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!is_derivation_tree(t.succ, subs[i], u[i])) return false;
  }
  return true;
}

std::optional<SubtreeVector> oracle_subtree_vector(const RelationTriple& t,
                                                   const Element& x, Fuel fuel,
                                                   TreeMemo* memo) {
  SubtreeVector u;
  for (const Element& z : t.sub.successors(x)) {
    auto tree = dfs_derivation_tree(t.succ, z, fuel, memo);
    if (!tree) return std::nullopt;
    u.push_back(std::move(*tree));
  }
  return u;
}

std::vector<DecompositionViolation> check_decomposition(
    const RelationTriple& t, const ElementSeq& universe) {
  std::vector<DecompositionViolation> out;
  for (const Element& x : universe) {
    for (const Element& y : universe) {
      if (!t.succ.holds(x, y)) continue;
      if (t.lift.holds(x, y)) continue;
      bool covered = false;
      for (const Element& z : t.sub.successors(x)) {
        if (z == y || t.succ.holds(z, y)) {
          covered = true;
          break;
        }
      }
      if (!covered) out.push_back({1, x, y, Element(0)});
    }
  }
  for (const Element& x : universe) {
    for (const Element& y : universe) {
      if (!t.lift.holds(x, y)) continue;
      for (const Element& z : t.sub.successors(y)) {
        if (!t.succ.holds(x, z)) out.push_back({2, x, y, z});
      }
    }
  }
  return out;
}

MinimalModulus search_minimal_modulus(const RelationTriple& t, Fuel fuel) {
  if (t.lift.holds(0, 0)) {
    throw std::invalid_argument(
        "lifting has a self-loop at 0; no search modulus exists");
  }
  if (t.sub.has_successor_fn() && !t.sub.successors(0).empty()) {
    throw std::invalid_argument("element 0 must have no sub-successors");
  }
  MinimalModulus modulus;
  modulus.fuel = fuel;
  FiniteRelation lift = t.lift;
  modulus.eval = [lift, fuel](const ElementSeq& xs,
                              const std::vector<SubtreeVector>&) {
    const Element zero = 0;
    for (Fuel i = 0; i < fuel; ++i) {
      const Element& current = i < xs.size() ? xs[i] : zero;
      const Element& next = i + 1 < xs.size() ? xs[i + 1] : zero;
      if (!lift.holds(current, next)) return i + 1;
    }
    throw FuelExhausted("minimal modulus search found no descent break");
  };
  return modulus;
}

MeasureRelation measure_from_lift(const FiniteRelation& lift) {
  MeasureRelation m;
  m.rel = [lift](const Element& x, const SubtreeVector&, const Element& y,
                 const SubtreeVector&) { return lift.holds(x, y); };
  return m;
}

bool measure_wf_check(
    const MeasureRelation& m,
    const std::vector<std::pair<Element, SubtreeVector>>& universe) {
  std::size_t n = universe.size();
  std::vector<std::vector<std::size_t>> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.rel(universe[i].first, universe[i].second, universe[j].first,
                universe[j].second)) {
        edges[i].push_back(j);
      }
    }
  }
  enum class Color { White, Grey, Black };
  std::vector<Color> color(n, Color::White);
  auto dfs = [&](auto&& self, std::size_t i) -> bool {  // true iff cycle
    color[i] = Color::Grey;
    for (std::size_t j : edges[i]) {
      if (color[j] == Color::Grey) return true;
      if (color[j] == Color::White && self(self, j)) return true;
    }
    color[i] = Color::Black;
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (color[i] == Color::White && dfs(dfs, i)) return false;
  }
  return true;
}

namespace {

struct PairEntry {
  Element x;
  SubtreeVector u;
};

}  // namespace

ElementSeq minimal_bar_derivation(const RelationTriple& t,
                                  const MinimalModulus& omega,
                                  const ElementSeq& a,
                                  const std::vector<SubtreeVector>& b,
                                  Fuel fuel, BarStats* stats) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        "element and subtree-vector prefixes must have equal length");
  }

  BarRecursion<PairEntry, ElementSeq> inst;
  inst.omega = [&omega](const std::vector<PairEntry>& ab) {
    ElementSeq xs;
    std::vector<SubtreeVector> us;
    xs.reserve(ab.size());
    us.reserve(ab.size());
    for (const PairEntry& e : ab) {
      xs.push_back(e.x);
      us.push_back(e.u);
    }
    return omega.eval(xs, us);
  };
  inst.base = [](const std::vector<PairEntry>&) { return ElementSeq{}; };
  inst.step = [&t, fuel](const std::vector<PairEntry>& ab,
                         const std::function<ElementSeq(const PairEntry&)>& p)
      -> ElementSeq {
    if (ab.empty()) return {};
    const Element& last = ab.back().x;
    const SubtreeVector& last_vector = ab.back().u;
    const ElementSeq& subs = t.sub.successors(last);

    std::map<Element, ElementSeq> frame_memo;
    auto resolve = [&](auto&& self, const Element& y) -> ElementSeq {
      if (auto it = frame_memo.find(y); it != frame_memo.end()) {
        return it->second;
      }
      for (std::size_t i = 0; i < subs.size(); ++i) {
        if (reachable(t.succ, subs[i], y, fuel)) {
          ElementSeq res;
          if (i < last_vector.size()) {
            res = find_subtree(t.succ, last_vector[i], y).value_or(ElementSeq{});
          }
          frame_memo.emplace(y, res);
          return res;
        }
      }
      SubtreeVector extension;
      for (const Element& z : t.sub.successors(y)) {
        extension.push_back(self(self, z));
      }
      ElementSeq res = p(PairEntry{y, std::move(extension)});
      frame_memo.emplace(y, res);
      return res;
    };

    ElementSeq out{last};
    for (const Element& y : t.succ.successors(last)) {
      ElementSeq block = resolve(resolve, y);
      out.insert(out.end(), block.begin(), block.end());
    }
    return out;
  };

  std::vector<PairEntry> ab;
  ab.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) ab.push_back({a[i], b[i]});
  return bar_recurse(inst, ab, fuel, stats);
}

ElementSeq derive_via_modulus(const RelationTriple& t,
                              const MinimalModulus& omega, const Element& x,
                              Fuel fuel) {
  TreeMemo memo;
  auto rec = [&](auto&& self, const Element& y, Fuel depth) -> ElementSeq {
    if (depth > fuel) throw FuelExhausted("sub-recursion too deep");
    if (auto it = memo.find(y); it != memo.end()) return it->second;
    SubtreeVector u;
    for (const Element& z : t.sub.successors(y)) {
      u.push_back(self(self, z, depth + 1));
    }
    ElementSeq res = minimal_bar_derivation(t, omega, {y}, {u}, fuel);
    memo.emplace(y, res);
    return res;
  };
  return rec(rec, x, 0);
}

ElementSeq recursor_derivation(const RelationTriple& t,
                               const MeasureRelation& m, const Element& x,
                               const SubtreeVector& u, Fuel fuel) {
  if (fuel == 0) {
    throw FuelExhausted("recursor derivation: measure did not descend");
  }
  const ElementSeq& subs = t.sub.successors(x);

  std::map<Element, ElementSeq> frame_memo;
  auto resolve = [&](auto&& self, const Element& y) -> ElementSeq {
    if (auto it = frame_memo.find(y); it != frame_memo.end()) {
      return it->second;
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (reachable(t.succ, subs[i], y, fuel)) {
        ElementSeq res;
        if (i < u.size()) {
          res = find_subtree(t.succ, u[i], y).value_or(ElementSeq{});
        }
        frame_memo.emplace(y, res);
        return res;
      }
    }
    SubtreeVector v;
    for (const Element& z : t.sub.successors(y)) v.push_back(self(self, z));
    ElementSeq res;
    if (m.rel(x, u, y, v)) {
      res = recursor_derivation(t, m, y, v, fuel - 1);
    }
    frame_memo.emplace(y, res);
    return res;
  };

  ElementSeq out{x};
  for (const Element& y : t.succ.successors(x)) {
    ElementSeq block = resolve(resolve, y);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

ElementSeq derive_via_measure(const RelationTriple& t, const MeasureRelation& m,
                              const Element& x, Fuel fuel, TreeMemo* memo) {
  TreeMemo local;
  TreeMemo& trees = memo ? *memo : local;
  auto rec = [&](auto&& self, const Element& y, Fuel depth) -> ElementSeq {
    if (depth > fuel) throw FuelExhausted("sub-recursion too deep");
    if (auto it = trees.find(y); it != trees.end()) return it->second;
    SubtreeVector u;
    for (const Element& z : t.sub.successors(y)) {
      u.push_back(self(self, z, depth + 1));
    }
    ElementSeq res = recursor_derivation(t, m, y, u, fuel);
    trees.emplace(y, res);
    return res;
  };
  return rec(rec, x, 0);
}

std::vector<AgreementMismatch> derivation_agreement(
    const RelationTriple& t, const MeasureRelation& m,
    const MinimalModulus& omega, const ElementSeq& samples, Fuel fuel) {
  std::vector<AgreementMismatch> out;
  TreeMemo tree_memo;
  std::map<Element, SubtreeVector> vectors;
  for (const Element& x : samples) {
    if (auto u = oracle_subtree_vector(t, x, fuel, &tree_memo)) {
      vectors.emplace(x, std::move(*u));
    }
  }

  for (const auto& [x, u] : vectors) {
    ElementSeq recursor = recursor_derivation(t, m, x, u, fuel);

    std::vector<std::pair<ElementSeq, std::vector<SubtreeVector>>> prefixes;
    prefixes.push_back({{}, {}});
    for (const auto& [w, uw] : vectors) {
      if (!t.lift.holds(w, x)) continue;
      prefixes.push_back({{w}, {uw}});
      for (const auto& [w0, u0] : vectors) {
        if (t.lift.holds(w0, w)) {
          prefixes.push_back({{w0, w}, {u0, uw}});
        }
      }
    }

    for (auto& [a, b] : prefixes) {
      ElementSeq full_a = a;
      full_a.push_back(x);
      std::vector<SubtreeVector> full_b = b;
      full_b.push_back(u);
      ElementSeq bar = minimal_bar_derivation(t, omega, full_a, full_b, fuel);
      if (bar != recursor) {
        out.push_back({a, x, bar, recursor});
      }
    }
  }
  return out;
}

std::vector<HypothesisViolation> check_measure_hypothesis(
    const RelationTriple& t, const MeasureRelation& m,
    const ElementSeq& universe, Fuel fuel) {
  std::vector<HypothesisViolation> out;
  TreeMemo tree_memo;
  std::map<Element, SubtreeVector> vectors;
  for (const Element& x : universe) {
    if (auto u = oracle_subtree_vector(t, x, fuel, &tree_memo)) {
      vectors.emplace(x, std::move(*u));
    }
  }
  for (const auto& [x, u] : vectors) {
    for (const auto& [y, v] : vectors) {
      if (t.lift.holds(x, y) && !m.rel(x, u, y, v)) {
        out.push_back({x, y});
      }
    }
  }
  return out;
}

}  // namespace termlab
