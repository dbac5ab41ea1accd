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

#include <cstdint>
#include <stdexcept>

namespace concatseq {

static_assert(sizeof(unsigned long) >= 8, "concatseq expects a 64-bit unsigned long");

/// Which end of the running decimal string new progression terms attach to.
/// Palindromic glues the right-concatenation at index n to the
/// left-concatenation at index n-1; its n = 0 value is the bare first term.
enum class ConcatenationKind { Right, Left, Palindromic };

inline const char* to_string(ConcatenationKind kind) {
  switch (kind) {
    case ConcatenationKind::Right: return "right";
    case ConcatenationKind::Left: return "left";
    case ConcatenationKind::Palindromic: return "palindromic";
  }
  return "?";
}

/// U(n) = u0 + n*d. Both parameters are at least 1, so every term is a
/// positive integer.
struct ArithmeticProgression {
  std::uint64_t u0 = 1;
  std::uint64_t d = 1;
};

inline void require_valid(const ArithmeticProgression& prog) {
  if (prog.u0 < 1 || prog.d < 1)
    throw std::invalid_argument("progression requires u0 >= 1 and d >= 1");
}

namespace detail {

inline std::uint64_t to_u64(const mpz_class& v) {
  if (v < 0 || !v.fits_ulong_p()) throw std::overflow_error("value out of 64-bit range");
  return static_cast<std::uint64_t>(v.get_ui());
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("digit position exceeds 64-bit range");
  return r;
}

}  // namespace detail

/// 10^e as an exact integer.
inline mpz_class pow10(std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10u, static_cast<unsigned long>(e));
  return r;
}

inline mpz_class term(const ArithmeticProgression& prog, std::uint64_t n) {
  require_valid(prog);
  return mpz_class(static_cast<unsigned long>(prog.u0)) +
         mpz_class(static_cast<unsigned long>(prog.d)) * static_cast<unsigned long>(n);
}

inline mpz_class term_at(const ArithmeticProgression& prog, const mpz_class& n) {
  require_valid(prog);
  if (n < 0) throw std::invalid_argument("term_at: negative index");
  return mpz_class(static_cast<unsigned long>(prog.u0)) +
         mpz_class(static_cast<unsigned long>(prog.d)) * n;
}

/// Number of base-10 digits of a positive integer, decided by exact integer
/// comparison. mpz_sizeinbase alone may overshoot by one near powers of ten,
/// and floating logarithms drift there, so neither is trusted directly.
inline std::uint64_t digit_count(const mpz_class& value) {
  if (value <= 0) throw std::invalid_argument("digit_count requires a positive value");
  std::size_t k = mpz_sizeinbase(value.get_mpz_t(), 10);
  if (k <= 1) return 1;
  return value < pow10(k - 1) ? k - 1 : k;
}

/// The maximal index range whose progression terms share one digit length.
/// A block may be empty (count == 0) when the common difference steps over a
/// digit length entirely, e.g. 5, 105, 205, ... has no 2-digit term.
struct BlockGeometry {
  unsigned length = 1;    ///< digit length of the block's terms
  mpz_class first_index;  ///< smallest n whose term has at least `length` digits
  mpz_class count;        ///< number of terms with exactly this digit length
};

namespace detail {

// Smallest n with U(n) >= 10^(digits-1). Rounds up: the progression moves in
// steps of d, which need not hit the threshold exactly.
inline mpz_class first_index_with_digits(const ArithmeticProgression& prog, unsigned digits) {
  mpz_class need = pow10(digits - 1u) - static_cast<unsigned long>(prog.u0);
  if (need <= 0) return 0;
  mpz_class q;
  mpz_class step(static_cast<unsigned long>(prog.d));
  mpz_cdiv_q(q.get_mpz_t(), need.get_mpz_t(), step.get_mpz_t());
  return q;
}

}  // namespace detail

inline BlockGeometry block_for_length(const ArithmeticProgression& prog, unsigned length) {
  require_valid(prog);
  if (length < 1) throw std::invalid_argument("block_for_length: length must be >= 1");
  BlockGeometry g;
  g.length = length;
  g.first_index = detail::first_index_with_digits(prog, length);
  g.count = detail::first_index_with_digits(prog, length + 1) - g.first_index;
  return g;
}

inline BlockGeometry block_for_index(const ArithmeticProgression& prog, std::uint64_t n) {
  return block_for_length(prog, static_cast<unsigned>(digit_count(term(prog, n))));
}

/// Appends `b`, zero-padded to `width` digits, to the right of `a`:
/// a * 10^width + b. Rejects a `b` too wide for the field, which would
/// corrupt the digit alignment of everything built on top.
inline mpz_class conc(const mpz_class& a, const mpz_class& b, unsigned width) {
  if (width < 1) throw std::invalid_argument("conc: width must be >= 1");
  if (a < 0) throw std::invalid_argument("conc: left part must be non-negative");
  if (b < 1) throw std::invalid_argument("conc: appended value must be positive");
  mpz_class field = pow10(width);
  if (b >= field) throw std::invalid_argument("conc: appended value exceeds the field width");
  return a * field + b;
}

/// Total digits of U(0)..U(n) -- the digit length of the right- or
/// left-concatenation at index n -- by per-block summation. Never builds the
/// concatenation itself.
inline mpz_class concatenation_digit_count(const ArithmeticProgression& prog, std::uint64_t n) {
  std::uint64_t last_len = digit_count(term(prog, n));
  mpz_class total = 0;
  for (std::uint64_t k = digit_count(term(prog, 0)); k <= last_len; ++k) {
    BlockGeometry g = block_for_length(prog, static_cast<unsigned>(k));
    if (g.count == 0) continue;
    mpz_class last_in_block = g.first_index + g.count - 1;
    if (last_in_block < static_cast<unsigned long>(n)) {
      total += g.count * static_cast<unsigned long>(k);
    } else {
      total += (static_cast<unsigned long>(n) - g.first_index + 1) * static_cast<unsigned long>(k);
      break;
    }
  }
  return total;
}

/// Digit length of the palindromic value at n: the forward half up to n plus
/// the mirrored half up to n-1.
inline mpz_class palindromic_digit_count(const ArithmeticProgression& prog, std::uint64_t n) {
  mpz_class total = concatenation_digit_count(prog, n);
  if (n >= 1) total += concatenation_digit_count(prog, n - 1);
  return total;
}

}  // namespace concatseq
