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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "concatseq/progression.hpp"

namespace concatseq {

/// Order-3 linear recurrence with constant integer coefficients, leading
/// coefficient first:
///   coeffs[0]*a(n+3) + coeffs[1]*a(n+2) + coeffs[2]*a(n+1) + coeffs[3]*a(n) = 0.
/// It holds while all touched indices stay within one digit-length block.
struct RecurrenceSpec {
  ConcatenationKind kind = ConcatenationKind::Right;
  unsigned length = 1;
  std::array<mpz_class, 4> coeffs;
};

/// The block recurrence for each concatenation kind. Characteristic
/// polynomials factor as
///   Right:       (x - 1)^2 (x - 10^l)
///   Left:        (x - 1)   (x - 10^l)^2
///   Palindromic: (x - 1)   (x - 10^l) (x - 10^{2l})
inline RecurrenceSpec recurrence_for(ConcatenationKind kind, unsigned length) {
  if (length < 1) throw std::invalid_argument("recurrence_for: length must be >= 1");
  const mpz_class x = pow10(length);
  RecurrenceSpec spec;
  spec.kind = kind;
  spec.length = length;
  switch (kind) {
    case ConcatenationKind::Right:
      spec.coeffs = {mpz_class(1), mpz_class(-(x + 2)), mpz_class(2 * x + 1), mpz_class(-x)};
      break;
    case ConcatenationKind::Left:
      spec.coeffs = {mpz_class(1), mpz_class(-(2 * x + 1)), mpz_class(x * x + 2 * x),
                     mpz_class(-(x * x))};
      break;
    case ConcatenationKind::Palindromic:
      spec.coeffs = {mpz_class(1), mpz_class(-(1 + x + x * x)),
                     mpz_class(x + x * x + x * x * x), mpz_class(-(x * x * x))};
      break;
  }
  return spec;
}

/// True iff every four consecutive values in the window satisfy the
/// recurrence exactly. Integer arithmetic throughout; no tolerance.
inline bool verify_window(const RecurrenceSpec& spec, std::span<const mpz_class> window) {
  if (window.size() < 4) throw std::invalid_argument("verify_window needs at least 4 values");
  for (std::size_t i = 0; i + 3 < window.size(); ++i) {
    mpz_class residual = spec.coeffs[0] * window[i + 3] + spec.coeffs[1] * window[i + 2] +
                         spec.coeffs[2] * window[i + 1] + spec.coeffs[3] * window[i];
    if (residual != 0) return false;
  }
  return true;
}

/// Fits a monic constant-coefficient recurrence of the given order to the
/// terms, returning the coefficients leading-first, or nullopt when no such
/// recurrence is satisfied by every term. The first order+1 windows determine
/// the candidate by exact rational elimination; every window must then
/// validate. All-zero input is rejected rather than matched by the zero
/// recurrence.
inline std::optional<std::vector<mpz_class>> fit_recurrence(std::span<const mpz_class> terms,
                                                            unsigned order) {
  if (order < 1) throw std::invalid_argument("fit_recurrence: order must be >= 1");
  if (terms.size() < 2 * static_cast<std::size_t>(order) + 2)
    throw std::invalid_argument("fit_recurrence needs at least 2*order + 2 terms");

  bool all_zero = true;
  for (const mpz_class& t : terms)
    if (t != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) return std::nullopt;

  // Unknowns c_0..c_{order-1} with the leading coefficient fixed to 1:
  // sum_j c_j * terms[i+j] = -terms[i+order] for each window i.
  const std::size_t unknowns = order;
  const std::size_t fit_rows = order + 1;
  std::vector<std::vector<mpq_class>> m(fit_rows, std::vector<mpq_class>(unknowns + 1));
  for (std::size_t i = 0; i < fit_rows; ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) m[i][j] = mpq_class(terms[i + j]);
    m[i][unknowns] = mpq_class(-terms[i + order]);
  }

  // Gauss-Jordan over exact rationals.
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < unknowns && row < fit_rows; ++col) {
    std::size_t pr = row;
    while (pr < fit_rows && m[pr][col] == 0) ++pr;
    if (pr == fit_rows) continue;
    std::swap(m[pr], m[row]);
    mpq_class pivot = m[row][col];
    for (std::size_t c = col; c <= unknowns; ++c) m[row][c] /= pivot;
    for (std::size_t r = 0; r < fit_rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      mpq_class factor = m[r][col];
      for (std::size_t c = col; c <= unknowns; ++c) m[r][c] -= factor * m[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < fit_rows; ++r)
    if (m[r][unknowns] != 0) return std::nullopt;  // inconsistent fit rows

  std::vector<mpq_class> c(unknowns, mpq_class(0));  // free variables stay zero
  for (std::size_t r = 0; r < row; ++r) c[pivot_cols[r]] = m[r][unknowns];

  // The candidate must hold on every window, not just the fitted ones.
  for (std::size_t i = 0; i + order < terms.size(); ++i) {
    mpq_class acc(terms[i + order]);
    for (std::size_t j = 0; j < unknowns; ++j) acc += c[j] * mpq_class(terms[i + j]);
    if (acc != 0) return std::nullopt;
  }

  // Normalize: clear denominators, divide by the content, leading
  // coefficient positive. Leading-first output order.
  std::vector<mpq_class> full(order + 1);
  full[0] = 1;
  for (std::size_t j = 0; j < unknowns; ++j) full[order - j] = c[j];
  mpz_class scale(1);
  for (const mpq_class& q : full)
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(full.size());
  for (const mpq_class& q : full) out.emplace_back(q.get_num() * (scale / q.get_den()));
  mpz_class content(0);
  for (const mpz_class& v : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  if (content > 1)
    for (mpz_class& v : out) v /= content;
  if (out[0] < 0)
    for (mpz_class& v : out) v = -v;
  return out;
}

/// Checks the claimed solution family of recurrence_for against the
/// recurrence itself at each sampled index:
///   Right:       { 1, n, 10^{l n} }
///   Left:        { 1, 10^{l n}, n * 10^{l n} }
///   Palindromic: { 1, 10^{l n}, 10^{2 l n} }
inline bool verify_basis(ConcatenationKind kind, unsigned length,
                         std::span<const std::uint64_t> sample_indices) {
  const RecurrenceSpec spec = recurrence_for(kind, length);
  auto member_value = [&](int member, std::uint64_t n) -> mpz_class {
    if (member == 0) return 1;
    const std::uint64_t e = detail::checked_mul(length, n);
    switch (kind) {
      case ConcatenationKind::Right:
        return member == 1 ? mpz_class(static_cast<unsigned long>(n)) : pow10(e);
      case ConcatenationKind::Left:
        return member == 1 ? pow10(e)
                           : mpz_class(static_cast<unsigned long>(n) * pow10(e));
      case ConcatenationKind::Palindromic:
        return member == 1 ? pow10(e) : pow10(detail::checked_mul(2, e));
    }
    throw std::logic_error("unreachable");
  };
  for (int member = 0; member < 3; ++member) {
    for (std::uint64_t n : sample_indices) {
      mpz_class residual = spec.coeffs[0] * member_value(member, n + 3) +
                           spec.coeffs[1] * member_value(member, n + 2) +
                           spec.coeffs[2] * member_value(member, n + 1) +
                           spec.coeffs[3] * member_value(member, n);
      if (residual != 0) return false;
    }
  }
  return true;
}

}  // namespace concatseq
