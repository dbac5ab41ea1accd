// Copyright 2026 The concatseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "concatseq/progression.hpp"

namespace concatseq {

/// Every closed-form result is an exactly divisible scaled integer; a nonzero
/// remainder means a coefficient bug, never bad input.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Exact scaled coefficients of one digit-length block. All kinds share the
/// shape value(n) = (num[0]*b0 + num[1]*b1 + num[2]*b2) / denom with
/// i = n - first_index and basis functions
///   Right:       b0 = 1, b1 = i,             b2 = 10^(length*i)
///   Left:        b0 = 1, b1 = 10^(length*i), b2 = i * 10^(length*i)
///   Palindromic: b0 = 1, b1 = 10^(length*i), b2 = 10^(2*length*i)
/// denom is (10^length - 1)^2, times (10^length + 1) for palindromic.
struct CoefficientSet {
  ConcatenationKind kind = ConcatenationKind::Right;
  unsigned length = 1;
  mpz_class first_index;
  mpz_class denom;
  std::array<mpz_class, 3> num;
  /// Left layout only: digit length of the first in-block value. The factor
  /// 10^p_digits inside num[1] and num[2] lifts each new term past the digits
  /// already present.
  std::optional<mpz_class> p_digits;
};

struct CacheKey {
  ConcatenationKind kind = ConcatenationKind::Right;
  std::uint64_t u0 = 1;
  std::uint64_t d = 1;
  unsigned length = 1;
  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

/// Insert-once store for coefficient sets. Readers take a shared lock; an
/// insert that loses a race simply adopts the winner's entry (both computed
/// the same immutable values). Entries are never evicted, so references
/// handed out stay valid for the cache's lifetime.
class CoefficientCache {
 public:
  std::shared_ptr<const CoefficientSet> find(const CacheKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : it->second;
  }

  const CoefficientSet& insert_or_get(const CacheKey& key, CoefficientSet&& value) {
    auto candidate = std::make_shared<const CoefficientSet>(std::move(value));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace(key, std::move(candidate));
    return *it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<CacheKey, std::shared_ptr<const CoefficientSet>> entries_;
};

inline const CoefficientSet& coefficients_for_length(ConcatenationKind kind,
                                                     const ArithmeticProgression& prog,
                                                     unsigned length, CoefficientCache& cache);
inline mpz_class evaluate(ConcatenationKind kind, const ArithmeticProgression& prog,
                          std::uint64_t n, CoefficientCache& cache);

namespace detail {

inline mpz_class divexact_checked(const mpz_class& numerator, const mpz_class& denom) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), numerator.get_mpz_t(), denom.get_mpz_t());
  if (r != 0) throw ConsistencyError("scaled numerator not divisible by the block denominator");
  return q;
}

inline mpz_class evaluate_in_block(const CoefficientSet& cs, std::uint64_t i) {
  const mpz_class y = pow10(checked_mul(cs.length, i));
  mpz_class numerator;
  switch (cs.kind) {
    case ConcatenationKind::Right:
      numerator = cs.num[0] + cs.num[1] * static_cast<unsigned long>(i) + cs.num[2] * y;
      break;
    case ConcatenationKind::Left:
      numerator = cs.num[0] + cs.num[1] * y + cs.num[2] * static_cast<unsigned long>(i) * y;
      break;
    case ConcatenationKind::Palindromic:
      numerator = cs.num[0] + cs.num[1] * y + cs.num[2] * y * y;
      break;
  }
  return divexact_checked(numerator, cs.denom);
}

// Builds a block's coefficients from its first three values. Those seed
// values come from the closed form of everything below the block, extended by
// one term each, so construction recurses through the shorter blocks exactly
// once per length.
inline CoefficientSet build_coefficient_set(ConcatenationKind kind,
                                            const ArithmeticProgression& prog, unsigned length,
                                            CoefficientCache& cache) {
  const BlockGeometry g = block_for_length(prog, length);
  if (g.count == 0)
    throw std::invalid_argument("coefficients_for_length: no term has this digit length");
  if (g.count < 3)
    throw std::invalid_argument(
        "coefficients_for_length: block needs at least 3 same-length terms");

  const mpz_class x = pow10(length);
  const mpz_class t = g.first_index;
  const bool starts_at_zero = (t == 0);
  const mpz_class u_t = term_at(prog, t);
  const mpz_class d(static_cast<unsigned long>(prog.d));

  CoefficientSet cs;
  cs.kind = kind;
  cs.length = length;
  cs.first_index = t;

  switch (kind) {
    case ConcatenationKind::Right: {
      mpz_class s0 = starts_at_zero
                         ? u_t
                         : conc(evaluate(kind, prog, to_u64(t) - 1, cache), u_t, length);
      mpz_class s1 = conc(s0, u_t + d, length);
      mpz_class s2 = conc(s1, u_t + 2 * d, length);
      cs.denom = (x - 1) * (x - 1);
      cs.num[0] = -((x - 1) * u_t + d * x);
      cs.num[1] = -(d * (x - 1));
      cs.num[2] = s2 - 2 * s1 + s0;
      break;
    }
    case ConcatenationKind::Left: {
      mpz_class below_len =
          starts_at_zero ? mpz_class(0) : concatenation_digit_count(prog, to_u64(t) - 1);
      mpz_class s0 = starts_at_zero
                         ? u_t
                         : mpz_class(u_t * pow10(to_u64(below_len)) +
                                     evaluate(kind, prog, to_u64(t) - 1, cache));
      mpz_class s1 = (u_t + d) * pow10(to_u64(below_len) + length) + s0;
      mpz_class s2 = (u_t + 2 * d) * pow10(to_u64(below_len) + 2ull * length) + s1;
      mpz_class p = below_len + length;
      mpz_class shift = pow10(to_u64(p));
      cs.denom = (x - 1) * (x - 1);
      cs.num[0] = s2 - 2 * x * s1 + x * x * s0;
      cs.num[1] = shift * ((x - 1) * u_t - d);
      cs.num[2] = d * shift * (x - 1);
      cs.p_digits = std::move(p);
      break;
    }
    case ConcatenationKind::Palindromic: {
      // value(n) = right(n) shifted past the digits of left(n-1), plus left(n-1)
      auto compose = [&prog, &cache](std::uint64_t idx) -> mpz_class {
        if (idx == 0) return term(prog, 0);
        mpz_class mirror_len = concatenation_digit_count(prog, idx - 1);
        return evaluate(ConcatenationKind::Right, prog, idx, cache) *
                   pow10(to_u64(mirror_len)) +
               evaluate(ConcatenationKind::Left, prog, idx - 1, cache);
      };
      const std::uint64_t tu = to_u64(t);
      mpz_class s0 = compose(tu);
      mpz_class s1 = compose(tu + 1);
      mpz_class s2 = compose(tu + 2);
      cs.denom = (x + 1) * (x - 1) * (x - 1);
      cs.num[0] = x * x * x * s0 - x * (x + 1) * s1 + s2;
      cs.num[1] = -(divexact_checked(x * x * s0 - (x * x + 1) * s1 + s2, x) * (x + 1));
      cs.num[2] = divexact_checked(x * s0 - (x + 1) * s1 + s2, x);
      break;
    }
  }
  return cs;
}

}  // namespace detail

/// The block's coefficient set, computed once per (kind, progression, length)
/// and memoized. Requires the block to hold at least three terms; smaller
/// blocks are handled by evaluate's concatenation fallback instead.
inline const CoefficientSet& coefficients_for_length(ConcatenationKind kind,
                                                     const ArithmeticProgression& prog,
                                                     unsigned length, CoefficientCache& cache) {
  require_valid(prog);
  if (length < 1) throw std::invalid_argument("coefficients_for_length: length must be >= 1");
  const CacheKey key{kind, prog.u0, prog.d, length};
  if (auto hit = cache.find(key)) return *hit;
  CoefficientSet built = detail::build_coefficient_set(kind, prog, length, cache);
  return cache.insert_or_get(key, std::move(built));
}

/// Exact n-th sequence value. Blocks with at least three terms use the
/// coefficient formula; a block with one or two terms is reached by closing
/// the previous block and concatenating the stragglers directly.
inline mpz_class evaluate(ConcatenationKind kind, const ArithmeticProgression& prog,
                          std::uint64_t n, CoefficientCache& cache) {
  require_valid(prog);
  const BlockGeometry g = block_for_index(prog, n);
  if (g.count >= 3) {
    const CoefficientSet& cs = coefficients_for_length(kind, prog, g.length, cache);
    return detail::evaluate_in_block(cs, n - detail::to_u64(cs.first_index));
  }

  if (kind == ConcatenationKind::Palindromic) {
    if (n == 0) return term(prog, 0);
    mpz_class mirror_len = concatenation_digit_count(prog, n - 1);
    return evaluate(ConcatenationKind::Right, prog, n, cache) * pow10(detail::to_u64(mirror_len)) +
           evaluate(ConcatenationKind::Left, prog, n - 1, cache);
  }

  mpz_class value;
  mpz_class value_len;  // digits of value, tracked for the left layout
  std::uint64_t start = 0;
  if (g.first_index == 0) {
    value = term(prog, 0);
    value_len = digit_count(value);
    start = 1;
  } else {
    const std::uint64_t t = detail::to_u64(g.first_index);
    value = evaluate(kind, prog, t - 1, cache);
    if (kind == ConcatenationKind::Left) value_len = concatenation_digit_count(prog, t - 1);
    start = t;
  }
  for (std::uint64_t j = start; j <= n; ++j) {
    mpz_class u = term(prog, j);
    if (kind == ConcatenationKind::Right) {
      value = conc(value, u, g.length);
    } else {
      value = u * pow10(detail::to_u64(value_len)) + value;
      value_len += g.length;
    }
  }
  return value;
}

/// Natural-number right-concatenation coefficients by the direct formulas:
/// first_index = 10^(length-1) - 1, num[0] = -(10^(2*length-1) + 9*10^(length-1)),
/// num[1] = -(10^length - 1). The growth numerator num[2] still comes from the
/// first three block values (100 immediately at length 1). Must agree with
/// coefficients_for_length(Right, {1,1}, length).
inline CoefficientSet smarandache_coefficients(unsigned length, CoefficientCache& cache) {
  if (length < 1) throw std::invalid_argument("smarandache_coefficients: length must be >= 1");
  const ArithmeticProgression naturals{1, 1};
  const mpz_class x = pow10(length);
  CoefficientSet cs;
  cs.kind = ConcatenationKind::Right;
  cs.length = length;
  cs.first_index = pow10(length - 1u) - 1;
  cs.denom = (x - 1) * (x - 1);
  cs.num[0] = -(pow10(2ull * length - 1) + 9 * pow10(length - 1u));
  cs.num[1] = -(x - 1);
  if (length == 1) {
    cs.num[2] = 100;
  } else {
    const std::uint64_t t = detail::to_u64(cs.first_index);
    mpz_class s0 = conc(evaluate(ConcatenationKind::Right, naturals, t - 1, cache),
                        term(naturals, t), length);
    mpz_class s1 = conc(s0, term(naturals, t + 1), length);
    mpz_class s2 = conc(s1, term(naturals, t + 2), length);
    cs.num[2] = s2 - 2 * s1 + s0;
  }
  return cs;
}

/// Digit length of the natural-number left-concatenation at its block start,
/// in closed form: (10^(length-1) * (9*length - 10) + 9*length + 1) / 9,
/// which is an integer for every length >= 1.
inline mpz_class reverse_smarandache_p(unsigned length) {
  if (length < 1) throw std::invalid_argument("reverse_smarandache_p: length must be >= 1");
  const mpz_class nine_l(9ul * length);
  mpz_class numerator = pow10(length - 1u) * (nine_l - 10) + nine_l + 1;
  return detail::divexact_checked(numerator, mpz_class(9));
}

/// Digit length of the left-concatenation at the start of the given block,
/// for an arbitrary progression: the full blocks below (empty ones skipped)
/// plus the block's own first term. Never materializes the value.
inline mpz_class general_p(const ArithmeticProgression& prog, unsigned length) {
  const BlockGeometry g = block_for_length(prog, length);
  if (g.count == 0) throw std::invalid_argument("general_p: block is empty");
  return concatenation_digit_count(prog, detail::to_u64(g.first_index));
}

/// evaluate(...) mod `modulus` without materializing the value. The whole
/// construction runs modulo `modulus` times the product of the block
/// denominators still to be divided out, which keeps every exact division
/// exact; powers of ten reduce by modular exponentiation. The coefficient
/// cache holds full-precision sets only, so this path rebuilds its reduced
/// coefficients instead of consulting it.
inline mpz_class evaluate_mod(ConcatenationKind kind, const ArithmeticProgression& prog,
                              std::uint64_t n, const mpz_class& modulus,
                              CoefficientCache& cache) {
  require_valid(prog);
  if (modulus < 2) throw std::invalid_argument("evaluate_mod: modulus must be >= 2");

  auto mod_of = [](const mpz_class& v, const mpz_class& w) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), w.get_mpz_t());
    return r;
  };
  auto powm10 = [](const mpz_class& e, const mpz_class& w) {
    mpz_class r;
    const mpz_class ten(10);
    mpz_powm(r.get_mpz_t(), ten.get_mpz_t(), e.get_mpz_t(), w.get_mpz_t());
    return r;
  };

  if (kind == ConcatenationKind::Palindromic) {
    if (n == 0) return mod_of(term(prog, 0), modulus);
    mpz_class shift = powm10(concatenation_digit_count(prog, n - 1), modulus);
    mpz_class combined =
        evaluate_mod(ConcatenationKind::Right, prog, n, modulus, cache) * shift +
        evaluate_mod(ConcatenationKind::Left, prog, n - 1, modulus, cache);
    return mod_of(combined, modulus);
  }

  // Non-empty blocks from the first term's digit length up to n's block.
  std::vector<BlockGeometry> blocks;
  const std::uint64_t top_len = digit_count(term(prog, n));
  for (std::uint64_t k = digit_count(term(prog, 0)); k <= top_len; ++k) {
    BlockGeometry g = block_for_length(prog, static_cast<unsigned>(k));
    if (g.count > 0) blocks.push_back(std::move(g));
  }

  // One denominator factor per block that will be evaluated in closed form.
  mpz_class w = modulus;
  for (const BlockGeometry& g : blocks) {
    if (g.count >= 3) {
      const mpz_class x = pow10(g.length);
      w *= (x - 1) * (x - 1);
    }
  }

  const mpz_class d(static_cast<unsigned long>(prog.d));
  mpz_class value = mod_of(term(prog, 0), w);
  mpz_class value_len(static_cast<unsigned long>(digit_count(term(prog, 0))));
  std::uint64_t idx = 0;

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const BlockGeometry& g = blocks[bi];
    const bool top = (bi + 1 == blocks.size());
    const std::uint64_t t = detail::to_u64(g.first_index);
    const std::uint64_t last = top ? n : detail::to_u64(g.first_index + g.count - 1);
    const mpz_class x = pow10(g.length);
    const mpz_class u_t = term_at(prog, g.first_index);

    if (g.count >= 3) {
      const mpz_class block_denom = (x - 1) * (x - 1);
      const std::uint64_t i = last - t;
      const mpz_class y =
          powm10(mpz_class(static_cast<unsigned long>(g.length)) * static_cast<unsigned long>(i),
                 w);
      mpz_class numerator;
      if (kind == ConcatenationKind::Right) {
        mpz_class s0 = (t == 0) ? value : mod_of(value * x + u_t, w);
        mpz_class s1 = mod_of(s0 * x + u_t + d, w);
        mpz_class s2 = mod_of(s1 * x + u_t + 2 * d, w);
        mpz_class c0 = mod_of(-((x - 1) * u_t + d * x), w);
        mpz_class c1 = mod_of(-(d * (x - 1)), w);
        mpz_class c2 = mod_of(s2 - 2 * s1 + s0, w);
        numerator = mod_of(c0 + c1 * static_cast<unsigned long>(i) + c2 * y, w);
      } else {
        const mpz_class below_len = (t == 0) ? mpz_class(0) : value_len;
        mpz_class shift0 = powm10(below_len, w);
        mpz_class s0 = (t == 0) ? value : mod_of(u_t * shift0 + value, w);
        mpz_class shift1 = mod_of(shift0 * x, w);
        mpz_class s1 = mod_of((u_t + d) * shift1 + s0, w);
        mpz_class shift2 = mod_of(shift1 * x, w);
        mpz_class s2 = mod_of((u_t + 2 * d) * shift2 + s1, w);
        mpz_class pshift = powm10(below_len + g.length, w);
        mpz_class c0 = mod_of(s2 - 2 * x * s1 + x * x * s0, w);
        mpz_class c1 = mod_of(pshift * ((x - 1) * u_t - d), w);
        mpz_class c2 = mod_of(d * pshift * (x - 1), w);
        numerator = mod_of(c0 + c1 * y + c2 * static_cast<unsigned long>(i) * y, w);
      }
      if (mod_of(numerator, block_denom) != 0)
        throw ConsistencyError("modular cascade: numerator not divisible by block denominator");
      value = numerator / block_denom;
      mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), block_denom.get_mpz_t());
      value_len += mpz_class(static_cast<unsigned long>(g.length)) *
                   static_cast<unsigned long>(last - idx);
      idx = last;
    } else {
      const std::uint64_t first = (t == 0) ? 1 : t;
      for (std::uint64_t j = first; j <= last; ++j) {
        const mpz_class u = term(prog, j);
        if (kind == ConcatenationKind::Right) {
          value = mod_of(value * x + u, w);
        } else {
          value = mod_of(u * powm10(value_len, w) + value, w);
        }
        value_len += g.length;
        idx = j;
      }
    }
  }
  return mod_of(value, modulus);
}

}  // namespace concatseq
