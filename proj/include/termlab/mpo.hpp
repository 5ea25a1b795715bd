#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "termlab/codec.hpp"
#include "termlab/minimal.hpp"
#include "termlab/term.hpp"

namespace termlab {

// Strict partial order on function symbols, stored transitively closed.
class Precedence {
 public:
  Precedence() = default;

  // Transitive closure of the given pairs. Throws std::invalid_argument if
  // the closure is not irreflexive (a precedence cycle).
  static Precedence from_pairs(
      const Signature& sig,
      const std::vector<std::pair<SymbolId, SymbolId>>& pairs);

  // Earlier-declared symbols above later ones.
  static Precedence by_declaration(const Signature& sig);

  bool gt(SymbolId f, SymbolId g) const;

 private:
  std::vector<std::vector<bool>> gt_;
};

struct MpoCache;
std::shared_ptr<MpoCache> make_mpo_cache();

// The approximated multiset path order: the path order clauses restricted by
// the size guard |s| <= |t| + k, which makes the order finitely branching.
struct MpoConfig {
  TermCodec codec;
  Precedence precedence;
  std::uint64_t k = 0;
  std::shared_ptr<MpoCache> cache = make_mpo_cache();
};

// t > s: size guard, then (a) some argument of t is >= s, or (b) the lifting
// applies. Variables are never above anything.
bool mpo_gt(const MpoConfig& cfg, const Term& t, const Term& s);

// The lifting t >> s: (i) s has a smaller head symbol and every argument of
// s is below t; (ii) s has the same head, every argument of s is below t,
// and exactly one argument position strictly decreased while the others are
// unchanged.
bool mpo_lift_gt(const MpoConfig& cfg, const Term& t, const Term& s);

// All s with t > s, in code order without duplicates. Generated clause by
// clause (subterm closure, single-position descents, smaller-symbol
// applications over already-dominated arguments to a fixed point) rather
// than by filtering the full size-bounded term universe, which is far too
// large to scan beyond toy sizes. Agreement of the two routes is checked in
// the tests on universes small enough to filter.
std::vector<Term> mpo_branching(const MpoConfig& cfg, const Term& t);

// The measure on (term, subtree vector) pairs that drives the recursor:
// head precedence descent, or equal heads with the subtree recorded for one
// argument position shrinking to a strictly smaller contiguous slice while
// every other position's subtree stays a slice. Components are looked up by
// the argument's code in the ordered duplicate-free subterm list.
bool measure_gt(const MpoConfig& cfg, const Term& t, const SubtreeVector& u,
                const Term& s, const SubtreeVector& v);

// True iff the measure digraph restricted to the universe is acyclic.
bool measure_wf_check(
    const MpoConfig& cfg,
    const std::vector<std::pair<Term, SubtreeVector>>& universe);

// The order, the immediate-subterm relation and the lifting as relations on
// codes.
FiniteRelation mpo_succ_relation(const MpoConfig& cfg);
FiniteRelation mpo_lift_relation(const MpoConfig& cfg);
RelationTriple mpo_triple(const MpoConfig& cfg);
MeasureRelation mpo_measure(const MpoConfig& cfg);

}  // namespace termlab
