#include "termlab/mpo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace termlab {

Precedence Precedence::from_pairs(
    const Signature& sig,
    const std::vector<std::pair<SymbolId, SymbolId>>& pairs) {
  std::size_t n = sig.size();
  Precedence p;
  p.gt_.assign(n, std::vector<bool>(n, false));
  for (const auto& [f, g] : pairs) {
    if (f >= n || g >= n) {
      throw std::invalid_argument("precedence pair mentions unknown symbol");
    }
    p.gt_[f][g] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.gt_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.gt_[k][j]) p.gt_[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.gt_[i][i]) {
      throw std::invalid_argument("precedence cycle through symbol `" +
                                  sig.symbol(i).name + "`");
    }
  }
  return p;
}

Precedence Precedence::by_declaration(const Signature& sig) {
  std::size_t n = sig.size();
  Precedence p;
  p.gt_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) p.gt_[i][j] = true;
  }
  return p;
}

bool Precedence::gt(SymbolId f, SymbolId g) const {
  if (f >= gt_.size() || g >= gt_.size()) return false;
  return gt_[f][g];
}

struct MpoCache {
  std::mutex mutex;
  std::map<std::pair<Term, Term>, bool> gt;
  std::map<std::pair<Term, Term>, bool> lift;
  std::map<Term, std::vector<Term>> branching;
};

std::shared_ptr<MpoCache> make_mpo_cache() {
  return std::make_shared<MpoCache>();
}

namespace {

template <typename Map, typename Key>
std::optional<typename Map::mapped_type> cache_get(std::mutex& mutex,
                                                   const Map& map,
                                                   const Key& key) {
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = map.find(key); it != map.end()) return it->second;
  return std::nullopt;
}

}  // namespace

bool mpo_gt(const MpoConfig& cfg, const Term& t, const Term& s) {
  if (t.is_var()) return false;
  if (term_size(s) > cfg.k + term_size(t)) return false;
  auto key = std::make_pair(t, s);
  if (auto hit = cache_get(cfg.cache->mutex, cfg.cache->gt, key)) return *hit;

  bool result = false;
  for (const Term& arg : t.args()) {
    if (arg == s || mpo_gt(cfg, arg, s)) {
      result = true;
      break;
    }
  }
  if (!result) result = mpo_lift_gt(cfg, t, s);

  std::lock_guard<std::mutex> lock(cfg.cache->mutex);
  cfg.cache->gt.emplace(std::move(key), result);
  return result;
}

bool mpo_lift_gt(const MpoConfig& cfg, const Term& t, const Term& s) {
  if (t.is_var() || s.is_var()) return false;
  auto key = std::make_pair(t, s);
  if (auto hit = cache_get(cfg.cache->mutex, cfg.cache->lift, key)) {
    return *hit;
  }

  bool result = false;
  if (cfg.precedence.gt(t.symbol(), s.symbol())) {
    result = true;
    for (const Term& arg : s.args()) {
      if (!mpo_gt(cfg, t, arg)) {
        result = false;
        break;
      }
    }
  } else if (t.symbol() == s.symbol()) {
    const std::vector<Term>& ta = t.args();
    const std::vector<Term>& sa = s.args();
    bool all_below = true;
    for (const Term& arg : sa) {
      if (!mpo_gt(cfg, t, arg)) {
        all_below = false;
        break;
      }
    }
    if (all_below) {
      for (std::size_t i = 0; i < ta.size() && !result; ++i) {
        if (!mpo_gt(cfg, ta[i], sa[i])) continue;
        bool others_equal = true;
        for (std::size_t j = 0; j < ta.size(); ++j) {
          if (j != i && !(ta[j] == sa[j])) {
            others_equal = false;
            break;
          }
        }
        result = others_equal;
      }
    }
  }

  std::lock_guard<std::mutex> lock(cfg.cache->mutex);
  cfg.cache->lift.emplace(std::move(key), result);
  return result;
}

std::vector<Term> mpo_branching(const MpoConfig& cfg, const Term& t) {
  if (t.is_var()) return {};
  if (auto hit = cache_get(cfg.cache->mutex, cfg.cache->branching, t)) {
    return *hit;
  }

  const Signature& sig = cfg.codec.signature();
  const std::uint64_t bound = cfg.k + term_size(t);
  std::set<Term> dominated;

  // subterm clause: arguments and everything below them
  for (const Term& arg : t.args()) {
    dominated.insert(arg);
    for (const Term& s : mpo_branching(cfg, arg)) dominated.insert(s);
  }
  // same-head descents in a single argument position
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    for (const Term& below : mpo_branching(cfg, t.args()[i])) {
      std::vector<Term> args = t.args();
      args[i] = below;
      dominated.insert(Term::app(t.symbol(), std::move(args)));
    }
  }
  // smaller head symbols over dominated arguments, to a fixed point
  bool grew = true;
  while (grew) {
    grew = false;
    for (SymbolId g = 0; g < sig.size(); ++g) {
      if (!cfg.precedence.gt(t.symbol(), g)) continue;
      std::size_t arity = sig.symbol(g).arity;
      if (arity == 0) {
        grew |= dominated.insert(Term::app(g, {})).second;
        continue;
      }
      std::vector<Term> pool(dominated.begin(), dominated.end());
      if (pool.empty()) continue;
      std::vector<std::size_t> odometer(arity, 0);
      while (true) {
        std::vector<Term> args;
        args.reserve(arity);
        for (std::size_t idx : odometer) args.push_back(pool[idx]);
        Term candidate = Term::app(g, std::move(args));
        if (term_size(candidate) <= bound) {
          grew |= dominated.insert(std::move(candidate)).second;
        }
        std::size_t pos = 0;
        while (pos < arity && ++odometer[pos] == pool.size()) {
          odometer[pos++] = 0;
        }
        if (pos == arity) break;
      }
    }
  }

  std::vector<std::pair<Element, Term>> by_code;
  by_code.reserve(dominated.size());
  for (const Term& s : dominated) by_code.emplace_back(cfg.codec.encode(s), s);
  std::sort(by_code.begin(), by_code.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> result;
  result.reserve(by_code.size());
  for (auto& [code, s] : by_code) result.push_back(std::move(s));

  std::lock_guard<std::mutex> lock(cfg.cache->mutex);
  cfg.cache->branching.emplace(t, result);
  return result;
}

namespace {

bool is_slice(const ElementSeq& small, const ElementSeq& big) {
  if (small.empty()) return true;
  return std::search(big.begin(), big.end(), small.begin(), small.end()) !=
         big.end();
}

// The subtree recorded for argument `arg`: vectors are indexed by the
// ordered duplicate-free subterm code list of the parent.
const ElementSeq* component(const ElementSeq& subterm_codes,
                            const SubtreeVector& vec, const Element& code) {
  auto it =
      std::lower_bound(subterm_codes.begin(), subterm_codes.end(), code);
  if (it == subterm_codes.end() || *it != code) return nullptr;
  auto idx = static_cast<std::size_t>(it - subterm_codes.begin());
  if (idx >= vec.size()) return nullptr;
  return &vec[idx];
}

ElementSeq distinct_arg_codes(const MpoConfig& cfg, const Term& t) {
  std::set<Element> codes;
  for (const Term& arg : t.args()) codes.insert(cfg.codec.encode(arg));
  return ElementSeq(codes.begin(), codes.end());
}

}  // namespace

bool measure_gt(const MpoConfig& cfg, const Term& t, const SubtreeVector& u,
                const Term& s, const SubtreeVector& v) {
  if (t.is_var() || s.is_var()) return false;
  if (cfg.precedence.gt(t.symbol(), s.symbol())) return true;
  if (t.symbol() != s.symbol()) return false;

  const std::vector<Term>& ta = t.args();
  const std::vector<Term>& sa = s.args();
  ElementSeq t_codes = distinct_arg_codes(cfg, t);
  ElementSeq s_codes = distinct_arg_codes(cfg, s);

  for (std::size_t i = 0; i < ta.size(); ++i) {
    const ElementSeq* big = component(t_codes, u, cfg.codec.encode(ta[i]));
    const ElementSeq* small = component(s_codes, v, cfg.codec.encode(sa[i]));
    if (!big || !small) continue;
    if (!(small->size() < big->size() && is_slice(*small, *big))) continue;
    bool ok = true;
    for (std::size_t j = 0; j < ta.size(); ++j) {
      if (j == i) continue;
      const ElementSeq* uj = component(t_codes, u, cfg.codec.encode(ta[j]));
      const ElementSeq* vj = component(s_codes, v, cfg.codec.encode(sa[j]));
      if (!uj || !vj || !is_slice(*vj, *uj)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool measure_wf_check(
    const MpoConfig& cfg,
    const std::vector<std::pair<Term, SubtreeVector>>& universe) {
  std::vector<std::pair<Element, SubtreeVector>> coded;
  coded.reserve(universe.size());
  for (const auto& [t, u] : universe) {
    coded.emplace_back(cfg.codec.encode(t), u);
  }
  return measure_wf_check(mpo_measure(cfg), coded);
}

FiniteRelation mpo_succ_relation(const MpoConfig& cfg) {
  MpoConfig shared = cfg;
  auto successors = [shared](const Element& x) {
    Term t = shared.codec.decode(x);
    ElementSeq codes;
    for (const Term& s : mpo_branching(shared, t)) {
      codes.push_back(shared.codec.encode(s));
    }
    return codes;  // already sorted and duplicate-free
  };
  auto predicate = [shared](const Element& x, const Element& y) {
    return mpo_gt(shared, shared.codec.decode(x), shared.codec.decode(y));
  };
  return FiniteRelation::from_functions(successors, predicate);
}

FiniteRelation mpo_lift_relation(const MpoConfig& cfg) {
  MpoConfig shared = cfg;
  return FiniteRelation::from_predicate(
      [shared](const Element& x, const Element& y) {
        return mpo_lift_gt(shared, shared.codec.decode(x),
                           shared.codec.decode(y));
      });
}

RelationTriple mpo_triple(const MpoConfig& cfg) {
  return RelationTriple{mpo_succ_relation(cfg), cfg.codec.subterm_relation(),
                        mpo_lift_relation(cfg)};
}

MeasureRelation mpo_measure(const MpoConfig& cfg) {
  MpoConfig shared = cfg;
  MeasureRelation m;
  m.rel = [shared](const Element& x, const SubtreeVector& u, const Element& y,
                   const SubtreeVector& v) {
    return measure_gt(shared, shared.codec.decode(x), u,
                      shared.codec.decode(y), v);
  };
  return m;
}

}  // namespace termlab
