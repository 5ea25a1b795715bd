#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace termlab {

// An element of the abstract carrier set, i.e. a code under some bijective
// arithmetization. Size-stratified term codes outgrow 64 bits as soon as a
// binary symbol is present, so codes are arbitrary-precision naturals.
// Code 0 is the canonical padding element and must be minimal with respect
// to every subterm-style relation in use.
using Element = boost::multiprecision::cpp_int;
using ElementSeq = std::vector<Element>;

// Budget for bounded searches and recursions, counted in steps.
using Fuel = std::uint64_t;
inline constexpr Fuel kDefaultFuel = 1'000'000;

// A bounded search or recursion ran out of budget. Either the input data is
// not wellfounded or the budget was too small; callers cannot tell the two
// apart from here.
class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

std::string seq_to_string(const ElementSeq& seq);

}  // namespace termlab
