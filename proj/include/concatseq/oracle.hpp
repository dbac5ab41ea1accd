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

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "concatseq/progression.hpp"

// Ground-truth evaluation by plain string concatenation. Deliberately naive:
// one linear string build and a single parse. This is the baseline the
// closed-form path is checked against and benchmarked against.

namespace concatseq {

namespace detail {

inline void append_decimal(std::string& out, const mpz_class& v) {
  if (v.fits_ulong_p()) {
    char buf[24];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v.get_ui());
    out.append(buf, end);
  } else {
    out += v.get_str();
  }
}

}  // namespace detail

/// The concatenated decimal digits of the n-th sequence value, as text.
inline std::string oracle_decimal_string(ConcatenationKind kind, const ArithmeticProgression& prog,
                                         std::uint64_t n) {
  require_valid(prog);
  std::string s;
  const mpz_class step(static_cast<unsigned long>(prog.d));
  if (kind == ConcatenationKind::Right || kind == ConcatenationKind::Palindromic) {
    mpz_class cur(static_cast<unsigned long>(prog.u0));
    for (std::uint64_t j = 0; j <= n; ++j, cur += step) detail::append_decimal(s, cur);
  }
  if (kind == ConcatenationKind::Left || (kind == ConcatenationKind::Palindromic && n >= 1)) {
    std::uint64_t from = (kind == ConcatenationKind::Palindromic) ? n - 1 : n;
    mpz_class cur = term(prog, from);
    for (std::uint64_t remaining = from + 1; remaining > 0; --remaining, cur -= step)
      detail::append_decimal(s, cur);
  }
  return s;
}

inline mpz_class oracle_eval(ConcatenationKind kind, const ArithmeticProgression& prog,
                             std::uint64_t n) {
  std::string s = oracle_decimal_string(kind, prog, n);
  mpz_class r;
  if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::logic_error("oracle produced an unparsable digit string");
  return r;
}

inline std::uint64_t oracle_digit_count(ConcatenationKind kind, const ArithmeticProgression& prog,
                                        std::uint64_t n) {
  return oracle_decimal_string(kind, prog, n).size();
}

}  // namespace concatseq
