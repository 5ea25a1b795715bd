#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termlab/element.hpp"

namespace termlab {

using SymbolId = std::size_t;

struct FunctionSymbol {
  std::string name;
  std::size_t arity = 0;
};

// A finite signature. Declaration order is fixed: it seeds both the term
// enumeration order and the default precedence.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<FunctionSymbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  const FunctionSymbol& symbol(SymbolId id) const { return symbols_.at(id); }
  std::optional<SymbolId> find(std::string_view name) const;
  const std::vector<FunctionSymbol>& symbols() const { return symbols_; }

  bool operator==(const Signature& other) const;

 private:
  std::vector<FunctionSymbol> symbols_;
};

// A first-order term: an indexed variable or a symbol application with
// exactly arity-many arguments.
class Term {
 public:
  static Term var(std::uint64_t index);
  static Term app(SymbolId symbol, std::vector<Term> args);

  bool is_var() const { return is_var_; }
  std::uint64_t var_index() const;
  SymbolId symbol() const;
  const std::vector<Term>& args() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  // Structural order, usable as a map key. This is not the path order.
  bool operator<(const Term& other) const;

 private:
  Term() = default;
  bool is_var_ = true;
  std::uint64_t var_index_ = 0;
  SymbolId symbol_ = 0;
  std::vector<Term> args_;
};

// |x_i| = i; |f(t_1..t_n)| = max{n, |t_1|, ..., |t_n|} + 1.
std::uint64_t term_size(const Term& t);

bool is_ground(const Term& t);

std::string print_term(const Signature& sig, const Term& t);

// Prefix syntax, e.g. `plus(s(x0), x1)`. Identifiers naming signature
// symbols parse as applications; `x<digits>` parses as a variable.
// Whitespace-insensitive. Throws ParseError with position and expectation.
Term parse_term(const Signature& sig, std::string_view text);

// Same grammar, but identifiers listed in `variables` parse as variables
// with the given indices (they shadow the x<digits> form).
Term parse_term(const Signature& sig,
                const std::map<std::string, std::uint64_t, std::less<>>& variables,
                std::string_view text);

}  // namespace termlab
