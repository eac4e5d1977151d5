#include <gtest/gtest.h>

#include <cmath>

#include "interp/entropy_count.hpp"
#include "interp/error.hpp"

using namespace interp;

namespace {

const Rational kDeltas[] = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2)};

}  // namespace

TEST(EntropyH, Values) {
  EXPECT_EQ(entropy_H(0.0), 0.0);
  EXPECT_EQ(entropy_H(1.0), 0.0);
  EXPECT_NEAR(entropy_H(Rational(1, 2)), std::log(2.0), 1e-15);
  for (double d : {0.1, 0.25, 0.4}) EXPECT_NEAR(entropy_H(d), entropy_H(1 - d), 1e-15);
  EXPECT_THROW(entropy_H(1.5), Error);
}

TEST(EntropyH, MatchesExactRateAtLargeM) {
  auto r = count_low_weight(400, Rational(1, 4), 2);
  EXPECT_NEAR(r.log_rate, entropy_H(Rational(1, 4)), 0.03);
}

TEST(CountLowWeight, Examples) {
  EXPECT_EQ(count_low_weight(3, Rational(1, 3), 2).count, 4);
  EXPECT_EQ(count_low_weight(4, Rational(1, 2), 3).count, 33);
  EXPECT_EQ(count_low_weight(1, Rational(0), 2).count, 1);
  try {
    count_low_weight(4, Rational(2, 3), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Domain);
  }
  EXPECT_THROW(count_low_weight(4, Rational(1, 3), 1), Error);
  EXPECT_THROW(count_low_weight(0, Rational(1, 3), 2), Error);
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_count(3, Rational(1, 3), 2), 4);
  EXPECT_EQ(brute_force_count(2, Rational(1, 2), 4), 7);
  EXPECT_EQ(brute_force_count(5, Rational(0), 3), 1);
  try {
    brute_force_count(14, Rational(1, 4), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(BruteForce, AgreesWithClosedFormUnderCap) {
  for (unsigned k : {2u, 3u, 4u})
    for (const auto& d : kDeltas)
      for (std::int64_t m = 1; m <= 10; ++m)
        EXPECT_EQ(brute_force_count(m, d, k), count_low_weight(m, d, k).count) << m << " " << to_string(d) << " " << k;
}

TEST(SplitEnumeration, AgreesWithBruteForce) {
  for (unsigned k : {2u, 3u, 4u})
    for (const auto& d : kDeltas)
      for (std::int64_t m = 1; m <= 9; ++m) EXPECT_EQ(split_enumeration_count(m, d, k), brute_force_count(m, d, k));
}

TEST(Sandwich, Examples) {
  auto b = sandwich_bounds(4, Rational(1, 2), 3);
  EXPECT_EQ(b.lower, 24);
  EXPECT_EQ(b.upper, 72);
  auto c = sandwich_bounds(3, Rational(1, 3), 2);
  EXPECT_EQ(c.lower, 3);
  EXPECT_EQ(c.upper, 6);
  auto z = sandwich_bounds(17, Rational(0), 4);
  EXPECT_EQ(z.lower, 1);
  EXPECT_EQ(z.upper, 1);
}

TEST(Sandwich, ContainsCount) {
  for (unsigned k : {2u, 3u, 4u, 9u})
    for (const auto& d : kDeltas)
      for (std::int64_t m = 1; m <= 120; m += 7) {
        auto b = sandwich_bounds(m, d, k);
        auto c = count_low_weight(m, d, k).count;
        EXPECT_LE(b.lower, c);
        EXPECT_LE(c, b.upper);
      }
}

TEST(Count, Monotonicity) {
  for (std::int64_t m = 1; m <= 40; ++m) {
    for (unsigned k = 2; k <= 5; ++k) {
      const auto base = count_low_weight(m, Rational(1, 3), k).count;
      EXPECT_LE(base, count_low_weight(m + 1, Rational(1, 3), k).count);
      EXPECT_LE(base, count_low_weight(m, Rational(1, 3), k + 1).count);
      EXPECT_LE(count_low_weight(m, Rational(1, 4), k).count, base);
      EXPECT_LE(base, count_low_weight(m, Rational(1, 2), k).count);
    }
  }
}

TEST(Count, LogCountsAreSuperadditive) {
  // Concatenating two admissible words gives an admissible word, so the
  // count for m1 + m2 dominates the product.
  for (const auto& d : kDeltas)
    for (unsigned k : {2u, 3u})
      for (std::int64_t a = 1; a <= 30; a += 3)
        for (std::int64_t b = 1; b <= 30; b += 4) {
          const mpz_class ab = count_low_weight(a + b, d, k).count;
          const mpz_class prod = count_low_weight(a, d, k).count * count_low_weight(b, d, k).count;
          EXPECT_GE(ab, prod) << a << "+" << b;
        }
}

TEST(Growth, Examples) {
  // Doubling m: superadditivity makes the rate nondecreasing along this list.
  const std::vector<std::int64_t> ms = {10, 20, 40, 80, 160, 320};
  auto rows = growth_rate_profile(Rational(1, 2), 2, ms);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].result.log_rate, rows[i - 1].result.log_rate);
    EXPECT_LE(rows[i].result.log_rate, std::log(2.0));
    EXPECT_LE(std::log(2.0) - rows[i].result.log_rate, std::log(2.0) - rows[i - 1].result.log_rate);
    EXPECT_GE(rows[i].running_sup, rows[i - 1].running_sup);
    EXPECT_LE(rows[i].running_inf, rows[i - 1].running_inf);
  }
  for (const auto& r : growth_rate_profile(Rational(0), 5, ms)) EXPECT_EQ(r.result.log_rate, 0.0);
  const std::int64_t m400[] = {400};
  auto r = growth_rate_profile(Rational(1, 4), 3, m400);
  EXPECT_LT(std::abs(r[0].result.log_rate - (entropy_H(Rational(1, 4)) + 0.25 * std::log(2.0))), 0.03);
  const std::int64_t bad[] = {5, 5};
  EXPECT_THROW(growth_rate_profile(Rational(1, 4), 3, bad), Error);
}

TEST(Growth, Csv) {
  const std::int64_t ms[] = {3, 4};
  auto rows = growth_rate_profile(Rational(1, 3), 2, ms);
  const auto csv = growth_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,count,log_rate,analytic_limit,inf_so_far");
  EXPECT_NE(csv.find("\n3,4,"), std::string::npos);
  EXPECT_NE(csv.find("\n4,5,"), std::string::npos);
}
