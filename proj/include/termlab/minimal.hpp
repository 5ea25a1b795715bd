#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "termlab/bar.hpp"
#include "termlab/relation.hpp"

namespace termlab {

// One derivation tree per ordered sub-successor of some element.
using SubtreeVector = std::vector<ElementSeq>;

// The three relations of the abstract termination principle: the order under
// analysis, an inductively wellfounded auxiliary order (the subterm relation
// in the term instance), and the lifting that decomposes the first two.
struct RelationTriple {
  FiniteRelation succ;  // the order whose derivation trees are computed
  FiniteRelation sub;   // acyclic; 0 must have no sub-successors
  FiniteRelation lift;  // may be predicate-only
};

// |u| matches the sub-successor count of x and u_i is a derivation tree for
// the i-th sub-successor.
bool check_subtree_vector(const RelationTriple& t, const Element& x,
                          const SubtreeVector& u);

// The canonical subtree vector of x: DFS trees of its sub-successors.
// std::nullopt if any of them fails to terminate.
std::optional<SubtreeVector> oracle_subtree_vector(const RelationTriple& t,
                                                   const Element& x, Fuel fuel,
                                                   TreeMemo* memo = nullptr);

struct DecompositionViolation {
  int property;      // 1 or 2
  Element x, y, z;   // z is the witnessing sub-successor for property 2
};

// Exhaustively checks on the universe that the lifting decomposes succ with
// respect to sub: (1) x > y implies x >> y or some z <| x has z >= y;
// (2) x >> y and y |> z imply x > z. Violations are data, not errors.
std::vector<DecompositionViolation> check_decomposition(
    const RelationTriple& t, const ElementSeq& universe);

// Stopping function on padded paired sequences (elements, subtree vectors).
// Padding is (0, []).
struct MinimalModulus {
  std::function<std::uint64_t(const ElementSeq&,
                              const std::vector<SubtreeVector>&)>
      eval;
  Fuel fuel = kDefaultFuel;
};

// Scans the padded pair sequence for the first position where the lifting
// fails to descend. Requires the triple to be lift-irreflexive at 0 and to
// give 0 no sub-successors; throws std::invalid_argument otherwise.
MinimalModulus search_minimal_modulus(const RelationTriple& t,
                                      Fuel fuel = kDefaultFuel);

// A decidable wellfounded order on (element, subtree vector) pairs, driving
// the recursor-based derivation.
struct MeasureRelation {
  std::function<bool(const Element&, const SubtreeVector&, const Element&,
                     const SubtreeVector&)>
      rel;
};

// Fixture-style measure: compares the element components under the lifting
// and ignores the vectors.
MeasureRelation measure_from_lift(const FiniteRelation& lift);

// True iff the measure digraph restricted to the universe is acyclic.
bool measure_wf_check(
    const MeasureRelation& m,
    const std::vector<std::pair<Element, SubtreeVector>>& universe);

// The bar-recursive derivation functional over minimal-sequence data.
// Base cases return []; otherwise the last element is prepended to the
// concatenation over its successors y of R(y), where R looks y up in the
// recorded subtree vectors when y is reachable from a sub-successor and
// recurses into an extended bar recursion otherwise. Requires |a| == |b|.
ElementSeq minimal_bar_derivation(const RelationTriple& t,
                                  const MinimalModulus& omega,
                                  const ElementSeq& a,
                                  const std::vector<SubtreeVector>& b,
                                  Fuel fuel, BarStats* stats = nullptr);

// Derivation function obtained from the bar-recursive functional by
// sub-recursion: x is derived from the derivations of its sub-successors.
ElementSeq derive_via_modulus(const RelationTriple& t,
                              const MinimalModulus& omega, const Element& x,
                              Fuel fuel);

// The recursor-based derivation functional. Its helper resolves each
// successor y of x by (1) subtree lookup when y is reachable from a
// sub-successor of x, (2) recursion when the measure descends to (y, v),
// (3) the empty sequence otherwise. The subtree-vector precondition is not
// enforced; garbage in, garbage out.
ElementSeq recursor_derivation(const RelationTriple& t,
                               const MeasureRelation& m, const Element& x,
                               const SubtreeVector& u, Fuel fuel);

// Derivation function built from the recursor by sub-recursion; needs no
// modulus. Shares work across roots through the optional memo.
ElementSeq derive_via_measure(const RelationTriple& t,
                              const MeasureRelation& m, const Element& x,
                              Fuel fuel, TreeMemo* memo = nullptr);

struct AgreementMismatch {
  ElementSeq prefix;
  Element x;
  ElementSeq bar_result;
  ElementSeq recursor_result;
};

// Checks that the bar-recursive and recursor-based functionals agree:
// for sampled (x, u) with valid subtree vectors and sampled lift-chain
// prefixes (a, b), the bar derivation of a*x equals the recursor derivation
// of x. Mismatches are data.
std::vector<AgreementMismatch> derivation_agreement(
    const RelationTriple& t, const MeasureRelation& m,
    const MinimalModulus& omega, const ElementSeq& samples, Fuel fuel);

struct HypothesisViolation {
  Element x, y;
};

// Checks the interdefinability hypothesis on the universe: valid subtree
// vectors on both sides plus x >> y must imply that the measure descends
// from (x, u) to (y, v).
std::vector<HypothesisViolation> check_measure_hypothesis(
    const RelationTriple& t, const MeasureRelation& m,
    const ElementSeq& universe, Fuel fuel);

}  // namespace termlab
