#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "concatseq/oracle.hpp"

using namespace concatseq;

namespace {
constexpr auto kRight = ConcatenationKind::Right;
constexpr auto kLeft = ConcatenationKind::Left;
constexpr auto kPal = ConcatenationKind::Palindromic;
}  // namespace

TEST_CASE("oracle reproduces the classic openings") {
  CHECK(oracle_eval(kRight, {1, 1}, 0) == 1);
  CHECK(oracle_eval(kRight, {1, 1}, 1) == 12);
  CHECK(oracle_eval(kRight, {1, 1}, 2) == 123);
  CHECK(oracle_eval(kLeft, {1, 1}, 1) == 21);
  CHECK(oracle_eval(kLeft, {1, 1}, 2) == 321);
  CHECK(oracle_eval(kPal, {1, 1}, 1) == 121);
  CHECK(oracle_eval(kPal, {1, 1}, 2) == 12321);
  CHECK(oracle_eval(kPal, {1, 1}, 3) == 1234321);
  CHECK(oracle_eval(kRight, {1, 2}, 2) == 135);  // odd numbers
  CHECK(oracle_eval(kRight, {1, 1}, 9) == mpz_class("12345678910"));
  CHECK(oracle_eval(kLeft, {1, 1}, 9) == mpz_class("10987654321"));
}

TEST_CASE("oracle digit counts") {
  CHECK(oracle_digit_count(kLeft, {1, 1}, 9) == 11);
  CHECK(oracle_digit_count(kRight, {1, 1}, 0) == 1);
  CHECK(oracle_digit_count(kRight, {1, 1}, 9) == 11);
}

TEST_CASE("index zero is the bare first term for every kind") {
  for (const ArithmeticProgression prog : {ArithmeticProgression{1, 1}, {5, 3}, {10, 1}, {7, 10}}) {
    for (const ConcatenationKind kind : {kRight, kLeft, kPal}) {
      CHECK(oracle_eval(kind, prog, 0) == term(prog, 0));
    }
  }
}

TEST_CASE("right and left concatenations always have equal digit counts") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    const ArithmeticProgression prog{1 + rng() % 20, 1 + rng() % 12};
    const std::uint64_t n = rng() % 300;
    CHECK(oracle_digit_count(kRight, prog, n) == oracle_digit_count(kLeft, prog, n));
  }
}

TEST_CASE("palindromic value composes from the two one-sided values") {
  for (const ArithmeticProgression prog : {ArithmeticProgression{1, 1}, {1, 2}, {5, 3}, {7, 10}}) {
    for (std::uint64_t n = 1; n <= 40; ++n) {
      const mpz_class right = oracle_eval(kRight, prog, n);
      const mpz_class left = oracle_eval(kLeft, prog, n - 1);
      const std::uint64_t left_digits = oracle_digit_count(kLeft, prog, n - 1);
      CHECK(oracle_eval(kPal, prog, n) == right * pow10(left_digits) + left);
      CHECK(oracle_digit_count(kPal, prog, n) ==
            oracle_digit_count(kRight, prog, n) + left_digits);
    }
  }
}

TEST_CASE("naturals palindrome really reads the same both ways") {
  // Single-digit terms mirror digit-for-digit; longer terms do not in general.
  for (std::uint64_t n = 0; n <= 8; ++n) {
    const std::string s = oracle_decimal_string(kPal, {1, 1}, n);
    CHECK(std::string(s.rbegin(), s.rend()) == s);
  }
}
