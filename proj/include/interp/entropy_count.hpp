#pragma once

// Exact counts of words of length m over {0..k-1} having at least (1-delta)m
// zeros, with their closed form, enumeration oracles and growth rates.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "interp/rational.hpp"

namespace interp {

double entropy_H(double delta);
double entropy_H(const Rational& delta);

/// H(delta) + delta * log(k - 1).
double analytic_growth_limit(const Rational& delta, unsigned k);

/// Natural log of a positive big integer (0 for 0).
double log_of(const mpz_class& value);

struct CountResult {
  std::int64_t m = 0;
  unsigned k = 0;
  Rational delta;
  mpz_class count;
  double log_rate = 0.0;
  double analytic_limit = 0.0;
};

/// sum_{i <= floor(delta m)} (k-1)^i C(m, i). Requires 0 <= delta <= 1/2,
/// k >= 2, m >= 1.
CountResult count_low_weight(std::int64_t m, const Rational& delta, unsigned k);

inline constexpr std::uint64_t kBruteForceCap = 100'000'000;

/// Enumerates all k^m words and counts those with >= (1-delta)m zeros.
/// Requires k^m <= kBruteForceCap.
mpz_class brute_force_count(std::int64_t m, const Rational& delta, unsigned k);

/// Same count by enumerating both halves of the word (k^ceil(m/2) words
/// each) and combining their zero-count histograms. Used past the cap.
mpz_class split_enumeration_count(std::int64_t m, const Rational& delta, unsigned k);

struct SandwichBounds {
  mpz_class lower;
  mpz_class upper;
};

/// (k-1)^j C(m, j) and (j+1)(k-1)^j C(m, j) with j = floor(delta m).
SandwichBounds sandwich_bounds(std::int64_t m, const Rational& delta, unsigned k);

struct GrowthRow {
  CountResult result;
  double running_inf = 0.0;
  double running_sup = 0.0;
};

/// Per-m exact log rates with running infimum and supremum; m_list must be
/// strictly ascending.
std::vector<GrowthRow> growth_rate_profile(const Rational& delta, unsigned k,
                                           std::span<const std::int64_t> m_list);

/// CSV with header m,count,log_rate,analytic_limit,inf_so_far.
std::string growth_csv(std::span<const GrowthRow> rows);

}  // namespace interp
