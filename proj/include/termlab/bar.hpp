#pragma once

#include <functional>
#include <vector>

#include "termlab/relation.hpp"

namespace termlab {

// Recursion-depth statistics of a bar-recursive run. Collected so the depth
// behaviour of the extracted programs can be observed empirically; nothing
// is asserted about it.
struct BarStats {
  std::uint64_t calls = 0;
  std::size_t max_depth = 0;
};

// The defining data of Spector bar recursion: a stopping modulus and the
// base/step functions. Sequences are kept as finite prefixes; the modulus is
// responsible for interpreting its argument as the canonically padded
// infinite extension of that prefix.
template <typename T, typename R>
struct BarRecursion {
  std::function<std::uint64_t(const std::vector<T>&)> omega;
  std::function<R(const std::vector<T>&)> base;
  std::function<R(const std::vector<T>&, const std::function<R(const T&)>&)>
      step;
};

// B(a) = base(a) if omega(ext(a)) < |a|, else step(a, x -> B(a * x)).
// Every recursive call extends a by one element and costs one unit of fuel;
// FuelExhausted means the guard never fired within the budget, i.e. a faulty
// modulus or non-wellfounded data.
template <typename T, typename R>
R bar_recurse(const BarRecursion<T, R>& inst, const std::vector<T>& a,
              Fuel fuel, BarStats* stats = nullptr) {
  struct Runner {
    const BarRecursion<T, R>& inst;
    Fuel fuel;
    BarStats* stats;

    R go(const std::vector<T>& a, Fuel depth) {
      if (depth >= fuel) throw FuelExhausted("bar recursion");
      if (stats) {
        ++stats->calls;
        stats->max_depth = std::max<std::size_t>(stats->max_depth, depth);
      }
      if (inst.omega(a) < a.size()) return inst.base(a);
      std::function<R(const T&)> continuation = [this, &a,
                                                 depth](const T& x) -> R {
        std::vector<T> extended = a;
        extended.push_back(x);
        return go(extended, depth + 1);
      };
      return inst.step(a, continuation);
    }
  };
  Runner runner{inst, fuel, stats};
  return runner.go(a, 0);
}

// A total stopping function on padded infinite sequences of elements,
// evaluated on finite prefixes (the tail is constantly 0). When the
// underlying relation is wellfounded and irreflexive at 0, eval(a) bounds
// the position of the first descent break in ext(a).
struct Modulus {
  std::function<std::uint64_t(const ElementSeq&)> eval;
  Fuel fuel = kDefaultFuel;
};

// Least i+1 such that ext(a)_i is not above ext(a)_{i+1}, found by scanning.
// Requires 0 to not be above itself, otherwise the scan could run past the
// padding forever; throws std::invalid_argument in that case.
Modulus search_modulus(const FiniteRelation& r, Fuel fuel = kDefaultFuel);

// The simple bar-recursive derivation functional. With a branching modulus
// as relation and a modulus of wellfoundedness, x -> bar_derivation([x])
// computes the derivation tree of x.
ElementSeq bar_derivation(const FiniteRelation& r, const Modulus& omega,
                          const ElementSeq& a, Fuel fuel,
                          BarStats* stats = nullptr);

}  // namespace termlab
