#include "termlab/codec.hpp"

#include <mutex>
#include <set>
#include <stdexcept>

namespace termlab {

namespace {

constexpr std::uint64_t kStratumSearchCap = 1u << 20;
constexpr std::uint64_t kEnumerationCap = 1'000'000;

Element ipow(const Element& base, std::uint64_t exp) {
  Element result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) result *= base;
  return result;
}

}  // namespace

// All rank arithmetic lives here; public entry points take the (recursive)
// mutex and call in.
struct TermCodec::State {
  Signature sig;

  mutable std::recursive_mutex mutex;
  // cumulative[s] = number of terms of size <= s
  mutable std::vector<Element> cumulative_counts;
  mutable std::map<Element, Term> decode_memo;
  mutable std::map<Term, Element> encode_memo;

  // C(size); C of a negative stratum is 0.
  const Element& cumulative(std::int64_t size) const {
    static const Element zero = 0;
    if (size < 0) return zero;
    auto s = static_cast<std::uint64_t>(size);
    while (cumulative_counts.size() <= s) {
      std::uint64_t next = cumulative_counts.size();
      Element stratum = 1;  // the variable x_next
      for (SymbolId f = 0; f < sig.size(); ++f) {
        stratum += tuples_in_stratum(f, next);
      }
      Element total =
          next == 0 ? stratum : cumulative_counts[next - 1] + stratum;
      cumulative_counts.push_back(std::move(total));
    }
    return cumulative_counts[s];
  }

  // Number of valid argument tuples of symbol f within stratum s: every
  // argument has size < s and, unless the arity already forces the stratum,
  // some argument has size exactly s-1.
  Element tuples_in_stratum(SymbolId f, std::uint64_t s) const {
    if (s == 0) return 0;
    std::uint64_t n = sig.symbol(f).arity;
    if (n > s - 1) return 0;
    const Element inner = cumulative(static_cast<std::int64_t>(s) - 1);
    if (n == s - 1) return ipow(inner, n);
    const Element smaller = cumulative(static_cast<std::int64_t>(s) - 2);
    return ipow(inner, n) - ipow(smaller, n);
  }

  // Lexicographic rank of an argument-code tuple among the valid tuples of
  // its stratum. Constrained tuples must contain a code >= boundary, i.e. a
  // direct subterm of size exactly s-1.
  Element tuple_rank(const std::vector<Element>& codes, const Element& total,
                     const Element& boundary, bool constrained) const {
    Element rank = 0;
    bool pending = constrained;
    std::size_t n = codes.size();
    for (std::size_t p = 0; p < n; ++p) {
      std::uint64_t rem = n - p - 1;
      Element free_weight = ipow(total, rem);
      if (pending) {
        Element pending_weight = free_weight - ipow(boundary, rem);
        Element in_low = codes[p] < boundary ? codes[p] : boundary;
        rank += in_low * pending_weight;
        if (codes[p] > boundary) rank += (codes[p] - boundary) * free_weight;
        if (codes[p] >= boundary) pending = false;
      } else {
        rank += codes[p] * free_weight;
      }
    }
    return rank;
  }

  std::vector<Element> tuple_unrank(std::uint64_t arity, Element rank,
                                    const Element& total,
                                    const Element& boundary,
                                    bool constrained) const {
    std::vector<Element> codes;
    codes.reserve(arity);
    bool pending = constrained;
    for (std::size_t p = 0; p < arity; ++p) {
      std::uint64_t rem = arity - p - 1;
      Element free_weight = ipow(total, rem);
      if (pending) {
        Element pending_weight = free_weight - ipow(boundary, rem);
        Element low_block = boundary * pending_weight;
        if (pending_weight > 0 && rank < low_block) {
          codes.push_back(rank / pending_weight);
          rank %= pending_weight;
        } else {
          rank -= low_block;
          codes.push_back(boundary + rank / free_weight);
          rank %= free_weight;
          pending = false;
        }
      } else {
        codes.push_back(rank / free_weight);
        rank %= free_weight;
      }
    }
    return codes;
  }

  Element encode(const Term& t) const {
    if (auto it = encode_memo.find(t); it != encode_memo.end()) {
      return it->second;
    }
    Element code;
    std::uint64_t s = term_size(t);
    const Element before = cumulative(static_cast<std::int64_t>(s) - 1);
    if (t.is_var()) {
      code = before;
    } else {
      Element rank = 1;  // x_s precedes every application
      for (SymbolId g = 0; g < t.symbol(); ++g) {
        rank += tuples_in_stratum(g, s);
      }
      std::vector<Element> arg_codes;
      arg_codes.reserve(t.args().size());
      for (const Term& arg : t.args()) arg_codes.push_back(encode(arg));
      const Element boundary = cumulative(static_cast<std::int64_t>(s) - 2);
      bool constrained = t.args().size() < s - 1;
      rank += tuple_rank(arg_codes, before, boundary, constrained);
      code = before + rank;
    }
    encode_memo.emplace(t, code);
    return code;
  }

  Term decode(const Element& code) const {
    if (auto it = decode_memo.find(code); it != decode_memo.end()) {
      return it->second;
    }
    std::uint64_t s = 0;
    while (cumulative(static_cast<std::int64_t>(s)) <= code) {
      if (++s > kStratumSearchCap) {
        throw std::out_of_range("code out of enumerable range");
      }
    }
    Element rank = code - cumulative(static_cast<std::int64_t>(s) - 1);
    Term result = Term::var(s);
    if (rank > 0) {
      rank -= 1;
      bool found = false;
      for (SymbolId f = 0; f < sig.size(); ++f) {
        Element count = tuples_in_stratum(f, s);
        if (rank < count) {
          std::uint64_t arity = sig.symbol(f).arity;
          const Element total = cumulative(static_cast<std::int64_t>(s) - 1);
          const Element boundary =
              cumulative(static_cast<std::int64_t>(s) - 2);
          bool constrained = arity < s - 1;
          std::vector<Element> arg_codes =
              tuple_unrank(arity, rank, total, boundary, constrained);
          std::vector<Term> args;
          args.reserve(arity);
          for (const Element& c : arg_codes) args.push_back(decode(c));
          result = Term::app(f, std::move(args));
          found = true;
          break;
        }
        rank -= count;
      }
      if (!found) throw std::logic_error("stratum rank out of bounds");
    }
    decode_memo.emplace(code, result);
    return result;
  }
};

TermCodec::TermCodec(Signature sig) : state_(std::make_shared<State>()) {
  state_->sig = std::move(sig);
}

const Signature& TermCodec::signature() const { return state_->sig; }

Element TermCodec::encode(const Term& t) const {
  std::lock_guard<std::recursive_mutex> lock(state_->mutex);
  return state_->encode(t);
}

Term TermCodec::decode(const Element& code) const {
  std::lock_guard<std::recursive_mutex> lock(state_->mutex);
  return state_->decode(code);
}

Element TermCodec::count_up_to(std::uint64_t size_bound) const {
  std::lock_guard<std::recursive_mutex> lock(state_->mutex);
  return state_->cumulative(static_cast<std::int64_t>(size_bound));
}

std::vector<Term> TermCodec::enumerate_up_to(std::uint64_t size_bound) const {
  Element count = count_up_to(size_bound);
  if (count > kEnumerationCap) {
    throw std::length_error("enumeration of " + count.str() +
                            " terms exceeds the cap");
  }
  std::vector<Term> terms;
  auto n = count.convert_to<std::uint64_t>();
  terms.reserve(n);
  for (std::uint64_t code = 0; code < n; ++code) {
    terms.push_back(decode(Element(code)));
  }
  return terms;
}

FiniteRelation TermCodec::subterm_relation() const {
  TermCodec codec = *this;
  auto immediate = [codec](const Element& x) {
    Term t = codec.decode(x);
    std::set<Element> codes;
    for (const Term& arg : t.args()) codes.insert(codec.encode(arg));
    return ElementSeq(codes.begin(), codes.end());
  };
  auto pred = [immediate](const Element& x, const Element& y) {
    ElementSeq succ = immediate(x);
    return std::binary_search(succ.begin(), succ.end(), y);
  };
  return FiniteRelation::from_functions(immediate, pred);
}

}  // namespace termlab
