#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "termlab/element.hpp"

namespace termlab {

// A decidable finitely branching relation on elements. It carries up to two
// faces: an ordered duplicate-free successor list per element (the branching
// modulus) and a membership predicate. Table-backed relations derive both
// from the table; intensional relations supply them as functions, and either
// may be omitted. Successor lists are cached per element, so repeated tree
// traversals over the same relation share the enumeration work.
class FiniteRelation {
 public:
  using SuccessorFn = std::function<ElementSeq(const Element&)>;
  using PredicateFn = std::function<bool(const Element&, const Element&)>;
  using SuccessorTable = std::map<Element, ElementSeq>;

  FiniteRelation();  // the empty relation

  // Throws std::invalid_argument unless every successor list is strictly
  // increasing (ordered, no repetitions).
  static FiniteRelation from_table(SuccessorTable table);
  static FiniteRelation from_functions(SuccessorFn successors,
                                       PredicateFn predicate);
  static FiniteRelation from_predicate(PredicateFn predicate);

  // Ordered duplicate-free successor list of x. Throws std::logic_error for
  // predicate-only relations.
  const ElementSeq& successors(const Element& x) const;
  bool has_successor_fn() const;

  bool holds(const Element& x, const Element& y) const;

  // Elements mentioned by a table-backed relation, sorted ascending.
  // Empty for intensional relations.
  const ElementSeq& mentioned() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// C(a): a_i > a_{i+1} steps all hold; empty and singleton sequences count.
bool is_chain(const FiniteRelation& r, const ElementSeq& a);

// T(x, d): d is the depth-first flattening of the full successor tree of x,
// children ordered by code. Decided structurally; no fuel is needed because
// every recursive step consumes at least one element of d.
bool is_derivation_tree(const FiniteRelation& r, const Element& x,
                        const ElementSeq& d);

// First contiguous slice of d that starts at an occurrence of y and is a
// derivation tree for y, scanning start positions left to right.
std::optional<ElementSeq> find_subtree(const FiniteRelation& r,
                                       const ElementSeq& d, const Element& y);

using TreeMemo = std::map<Element, ElementSeq>;
using DcMemo = std::map<Element, std::uint64_t>;

// Length of the longest chain starting at x, by depth-first longest-path
// search. std::nullopt means a cycle was reached or the depth exceeded fuel.
// This is the verification oracle; it is independent of the bar-recursive
// machinery.
std::optional<std::uint64_t> derivational_complexity(const FiniteRelation& r,
                                                     const Element& x,
                                                     Fuel fuel,
                                                     DcMemo* memo = nullptr);

// The unique derivation tree of x built by plain depth-first traversal in
// successor-code order, or std::nullopt on cycle/fuel exhaustion.
std::optional<ElementSeq> dfs_derivation_tree(const FiniteRelation& r,
                                              const Element& x, Fuel fuel,
                                              TreeMemo* memo = nullptr);

// Reflexive-transitive reachability along successor edges. Throws
// FuelExhausted after expanding more than fuel nodes.
bool reachable(const FiniteRelation& r, const Element& from, const Element& to,
               Fuel fuel);

}  // namespace termlab
