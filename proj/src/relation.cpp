#include "termlab/relation.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace termlab {

std::string seq_to_string(const ElementSeq& seq) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out << ", ";
    out << seq[i];
  }
  out << ']';
  return out.str();
}

struct FiniteRelation::State {
  SuccessorTable table;
  bool tabular = false;
  SuccessorFn successor_fn;
  PredicateFn predicate_fn;
  ElementSeq mentioned;

  mutable std::mutex mutex;
  mutable SuccessorTable cache;
};

FiniteRelation::FiniteRelation() : state_(std::make_shared<State>()) {
  state_->tabular = true;
}

FiniteRelation FiniteRelation::from_table(SuccessorTable table) {
  FiniteRelation r;
  r.state_ = std::make_shared<State>();
  State& st = *r.state_;
  st.tabular = true;
  std::set<Element> seen;
  for (const auto& [x, succ] : table) {
    seen.insert(x);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (i > 0 && !(succ[i - 1] < succ[i])) {
        throw std::invalid_argument(
            "successor list must be strictly increasing");
      }
      seen.insert(succ[i]);
    }
  }
  st.mentioned.assign(seen.begin(), seen.end());
  st.table = std::move(table);
  return r;
}

FiniteRelation FiniteRelation::from_functions(SuccessorFn successors,
                                              PredicateFn predicate) {
  FiniteRelation r;
  r.state_ = std::make_shared<State>();
  r.state_->tabular = false;
  r.state_->successor_fn = std::move(successors);
  r.state_->predicate_fn = std::move(predicate);
  return r;
}

FiniteRelation FiniteRelation::from_predicate(PredicateFn predicate) {
  return from_functions(nullptr, std::move(predicate));
}

bool FiniteRelation::has_successor_fn() const {
  return state_->tabular || state_->successor_fn != nullptr;
}

const ElementSeq& FiniteRelation::successors(const Element& x) const {
  State& st = *state_;
  if (st.tabular) {
    auto it = st.table.find(x);
    if (it != st.table.end()) return it->second;
    static const ElementSeq empty;
    return empty;
  }
  if (!st.successor_fn) {
    throw std::logic_error("relation has no successor function");
  }
  {
    std::lock_guard<std::mutex> lock(st.mutex);
    auto it = st.cache.find(x);
    if (it != st.cache.end()) return it->second;
  }
  ElementSeq computed = st.successor_fn(x);
  std::lock_guard<std::mutex> lock(st.mutex);
  auto [it, inserted] = st.cache.emplace(x, std::move(computed));
  return it->second;  // map nodes are stable, the reference survives growth
}

bool FiniteRelation::holds(const Element& x, const Element& y) const {
  State& st = *state_;
  if (!st.tabular && st.predicate_fn) return st.predicate_fn(x, y);
  const ElementSeq& succ = successors(x);
  return std::binary_search(succ.begin(), succ.end(), y);
}

const ElementSeq& FiniteRelation::mentioned() const {
  return state_->mentioned;
}

bool is_chain(const FiniteRelation& r, const ElementSeq& a) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (!r.holds(a[i], a[i + 1])) return false;
  }
  return true;
}

namespace {

// Consumes the flattening of the tree rooted at x from d[pos..); returns the
// new position or std::nullopt if the block is malformed.
std::optional<std::size_t> parse_tree(const FiniteRelation& r, const Element& x,
                                      const ElementSeq& d, std::size_t pos) {
  if (pos >= d.size() || d[pos] != x) return std::nullopt;
  ++pos;
  for (const Element& y : r.successors(x)) {
    auto next = parse_tree(r, y, d, pos);
    if (!next) return std::nullopt;
    pos = *next;
  }
  return pos;
}

}  // namespace

bool is_derivation_tree(const FiniteRelation& r, const Element& x,
                        const ElementSeq& d) {
  auto end = parse_tree(r, x, d, 0);
  return end && *end == d.size();
}

std::optional<ElementSeq> find_subtree(const FiniteRelation& r,
                                       const ElementSeq& d, const Element& y) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != y) continue;
    if (auto end = parse_tree(r, y, d, i)) {
      return ElementSeq(d.begin() + static_cast<std::ptrdiff_t>(i),
                        d.begin() + static_cast<std::ptrdiff_t>(*end));
    }
  }
  return std::nullopt;
}

namespace {

struct DcSearch {
  const FiniteRelation& r;
  Fuel fuel;
  DcMemo& memo;
  std::set<Element> on_path;

  std::optional<std::uint64_t> run(const Element& x, Fuel depth) {
    if (depth > fuel) return std::nullopt;
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    if (!on_path.insert(x).second) return std::nullopt;  // cycle
    std::uint64_t best = 0;
    for (const Element& y : r.successors(x)) {
      auto sub = run(y, depth + 1);
      if (!sub) {
        on_path.erase(x);
        return std::nullopt;
      }
      best = std::max(best, 1 + *sub);
    }
    on_path.erase(x);
    memo.emplace(x, best);
    return best;
  }
};

struct TreeSearch {
  const FiniteRelation& r;
  Fuel fuel;
  TreeMemo& memo;
  std::set<Element> on_path;

  std::optional<ElementSeq> run(const Element& x, Fuel depth) {
    if (depth > fuel) return std::nullopt;
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    if (!on_path.insert(x).second) return std::nullopt;
    ElementSeq flat{x};
    for (const Element& y : r.successors(x)) {
      auto sub = run(y, depth + 1);
      if (!sub) {
        on_path.erase(x);
        return std::nullopt;
      }
      flat.insert(flat.end(), sub->begin(), sub->end());
    }
    on_path.erase(x);
    memo.emplace(x, flat);
    return flat;
  }
};

}  // namespace

std::optional<std::uint64_t> derivational_complexity(const FiniteRelation& r,
                                                     const Element& x,
                                                     Fuel fuel, DcMemo* memo) {
  DcMemo local;
  DcSearch search{r, fuel, memo ? *memo : local, {}};
  return search.run(x, 0);
}

std::optional<ElementSeq> dfs_derivation_tree(const FiniteRelation& r,
                                              const Element& x, Fuel fuel,
                                              TreeMemo* memo) {
  TreeMemo local;
  TreeSearch search{r, fuel, memo ? *memo : local, {}};
  return search.run(x, 0);
}

bool reachable(const FiniteRelation& r, const Element& from, const Element& to,
               Fuel fuel) {
  if (from == to) return true;
  std::set<Element> visited{from};
  ElementSeq frontier{from};
  Fuel expanded = 0;
  while (!frontier.empty()) {
    Element x = frontier.back();
    frontier.pop_back();
    if (++expanded > fuel) throw FuelExhausted("reachability search");
    for (const Element& y : r.successors(x)) {
      if (y == to) return true;
      if (visited.insert(y).second) frontier.push_back(y);
    }
  }
  return false;
}

}  // namespace termlab
