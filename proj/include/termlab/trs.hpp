#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "termlab/mpo.hpp"

namespace termlab {

struct Rule {
  Term lhs, rhs;
  bool operator==(const Rule& other) const {
    return lhs == other.lhs && rhs == other.rhs;
  }
};

// A finite term rewrite system. File format (line-oriented):
//   VAR x y            variable declarations, indexed in declaration order
//   PREC plus > s > 0  precedence chains, union'd over lines
//   RULES              header, then one `l -> r` per line
//   #                  starts a comment
// The signature is inferred from the rules in first-appearance order; that
// order also seeds the default precedence when no PREC lines are given.
class Trs {
 public:
  Trs() = default;
  Trs(Signature sig, std::vector<std::string> variables,
      std::vector<Rule> rules,
      std::vector<std::pair<SymbolId, SymbolId>> precedence_pairs);

  const Signature& signature() const { return sig_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::pair<SymbolId, SymbolId>>& precedence_pairs() const {
    return precedence_pairs_;
  }

  // Parses a term using the declared variable names.
  Term parse_term_in_context(std::string_view text) const;
  std::string print_term_in_context(const Term& t) const;

  // Round-trips through parse_trs.
  std::string print() const;

  // Starting heuristic for the approximation bound: the largest right-hand
  // side size. Always validated via validate_approximation, never trusted.
  std::uint64_t default_k() const;

  MpoConfig make_config(std::optional<std::uint64_t> k_override = {}) const;

  bool operator==(const Trs& other) const;

 private:
  Signature sig_;
  std::vector<std::string> variables_;
  std::vector<Rule> rules_;
  std::vector<std::pair<SymbolId, SymbolId>> precedence_pairs_;
};

// Throws ParseError on syntax errors, arity mismatches, left-hand-side
// variables, right-hand-side variables missing from the left, and
// precedence cycles.
Trs parse_trs(const std::string& text);
Trs load_trs(const std::filesystem::path& path);

struct RuleVerdict {
  std::size_t rule;
  bool oriented;
};

// For each rule, whether lhs > rhs under the configured order. All true
// means the system is reducing under the order.
std::vector<RuleVerdict> orient(const MpoConfig& cfg, const Trs& trs);

// All one-step rewrites of t: any rule, any position, outermost-leftmost
// position order with rules in declaration order at each position.
std::vector<Term> rewrite_steps(const Trs& trs, const Term& t);

struct StepViolation {
  Term from, to;
};

// Checks every rewrite step out of every ground term up to the size bound
// against the order; a nonempty report is evidence that k is too small.
std::vector<StepViolation> validate_approximation(const MpoConfig& cfg,
                                                  const Trs& trs,
                                                  std::uint64_t size_bound);

// Length of the longest rewrite sequence from t, by exhaustive search.
// std::nullopt when a cycle is reached or the depth exceeds fuel.
std::optional<std::uint64_t> derivation_length(const Trs& trs, const Term& t,
                                               Fuel fuel);

enum class BoundPath { Recursor, Modulus };

struct BoundReport {
  std::size_t bound = 0;                 // length of the derivation tree
  std::optional<std::uint64_t> actual;   // longest rewrite sequence
  ElementSeq tree;
};

// bound = derivation-tree length of code(t), actual = derivation_length(t).
// Whenever the rules orient and the approximation validates, the contract
// bound >= actual holds.
BoundReport bound_vs_actual(const MpoConfig& cfg, const Trs& trs,
                            const Term& t, Fuel fuel,
                            BoundPath path = BoundPath::Recursor,
                            TreeMemo* memo = nullptr);

}  // namespace termlab
