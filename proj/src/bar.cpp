#include "termlab/bar.hpp"

#include <stdexcept>

namespace termlab {

Modulus search_modulus(const FiniteRelation& r, Fuel fuel) {
  if (r.holds(0, 0)) {
    throw std::invalid_argument(
        "relation has a self-loop at 0; no search modulus exists");
  }
  Modulus modulus;
  modulus.fuel = fuel;
  modulus.eval = [r, fuel](const ElementSeq& prefix) -> std::uint64_t {
    const Element zero = 0;
    for (Fuel i = 0; i < fuel; ++i) {
      const Element& current = i < prefix.size() ? prefix[i] : zero;
      const Element& next = i + 1 < prefix.size() ? prefix[i + 1] : zero;
      if (!r.holds(current, next)) return i + 1;
    }
    throw FuelExhausted("modulus search found no descent break");
  };
  return modulus;
}

ElementSeq bar_derivation(const FiniteRelation& r, const Modulus& omega,
                          const ElementSeq& a, Fuel fuel, BarStats* stats) {
  BarRecursion<Element, ElementSeq> inst;
  inst.omega = omega.eval;
  inst.base = [](const ElementSeq&) { return ElementSeq{}; };
  inst.step = [&r](const ElementSeq& a,
                   const std::function<ElementSeq(const Element&)>& p) {
    if (a.empty()) return ElementSeq{};
    const Element& last = a.back();
    ElementSeq out{last};
    for (const Element& y : r.successors(last)) {
      ElementSeq block = p(y);
      out.insert(out.end(), block.begin(), block.end());
    }
    return out;
  };
  return bar_recurse(inst, a, fuel, stats);
}

}  // namespace termlab
