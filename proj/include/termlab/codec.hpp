#pragma once

#include <memory>
#include <vector>

#include "termlab/relation.hpp"
#include "termlab/term.hpp"

namespace termlab {

// Bijective size-respecting code for terms over a fixed signature. Terms are
// enumerated by increasing size; within one size stratum the variable x_s
// comes first, then applications in signature order with argument code
// tuples compared lexicographically. Codes therefore satisfy
// |t| <= code(t) < count_up_to(|t|), and the immediate-subterm relation is
// strictly code-decreasing in the other direction.
//
// Ranks are computed combinatorially from per-stratum counts, so encoding
// and decoding work far beyond any materializable stratum. Copies share one
// lazily grown, internally synchronized table state.
class TermCodec {
 public:
  explicit TermCodec(Signature sig);

  const Signature& signature() const;

  Element encode(const Term& t) const;

  // Total on the range actually enumerated; throws std::out_of_range if the
  // stratum search exceeds its cap (only reachable for degenerate
  // signatures fed astronomically large codes).
  Term decode(const Element& code) const;

  // Number of terms of size <= size_bound. This is also the monotone code
  // bound h: every term t has code(t) < count_up_to(|t|).
  Element count_up_to(std::uint64_t size_bound) const;

  // All terms of size <= size_bound in code order. Guarded against
  // accidental huge enumerations (throws std::length_error).
  std::vector<Term> enumerate_up_to(std::uint64_t size_bound) const;

  // The immediate-subterm relation on codes, duplicate-free and increasing.
  FiniteRelation subterm_relation() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace termlab
