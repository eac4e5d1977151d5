#include "interp/entropy_count.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "interp/error.hpp"

namespace interp {

double entropy_H(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) fail(ErrorCode::Domain, "entropy_H needs delta in [0, 1]");
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log(delta) - (1.0 - delta) * std::log1p(-delta);
}

double entropy_H(const Rational& delta) {
  if (delta < 0 || delta > 1) fail(ErrorCode::Domain, "entropy_H needs delta in [0, 1]");
  return entropy_H(to_double(delta));
}

double analytic_growth_limit(const Rational& delta, unsigned k) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "alphabet size must be >= 2");
  return entropy_H(delta) + to_double(delta) * std::log(static_cast<double>(k - 1));
}

double log_of(const mpz_class& value) {
  if (sgn(value) <= 0) return 0.0;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

namespace {

void check_args(std::int64_t m, const Rational& delta, unsigned k) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  if (k < 2) fail(ErrorCode::InvalidArgument, "k must be >= 2");
  if (delta < 0) fail(ErrorCode::Domain, "delta must be >= 0");
  if (delta > Rational(1, 2)) fail(ErrorCode::Domain, "delta must be <= 1/2", {{"delta", to_string(delta)}});
}

mpz_class binomial(std::int64_t m, std::int64_t i) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(i));
  return r;
}

mpz_class power(unsigned base, std::int64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(e));
  return r;
}

/// Literal reading of "at least (1 - delta) m zeros" for a rational delta.
bool enough_zeros(std::int64_t zeros, std::int64_t m, const Rational& delta) {
  const __int128 p = delta.numerator(), q = delta.denominator();
  return static_cast<__int128>(zeros) * q >= (q - p) * m;
}

/// hist[z] = number of words of length len over {0..k-1} with z zeros,
/// obtained by enumerating the words one by one.
std::vector<std::uint64_t> zero_histogram(std::int64_t len, unsigned k) {
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(len) + 1, 0);
  std::vector<unsigned> digits(static_cast<std::size_t>(len), 0);
  std::int64_t zeros = len;
  while (true) {
    ++hist[static_cast<std::size_t>(zeros)];
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (digits[i] == 0) --zeros;
      if (++digits[i] < k) break;
      digits[i] = 0;
      ++zeros;
    }
    if (i == digits.size()) break;
  }
  return hist;
}

}  // namespace

CountResult count_low_weight(std::int64_t m, const Rational& delta, unsigned k) {
  check_args(m, delta, k);
  const std::int64_t j = floor_mul(delta, m);
  CountResult r;
  r.m = m;
  r.k = k;
  r.delta = delta;
  r.count = 0;
  for (std::int64_t i = 0; i <= j; ++i) r.count += power(k - 1, i) * binomial(m, i);
  r.log_rate = log_of(r.count) / static_cast<double>(m);
  r.analytic_limit = analytic_growth_limit(delta, k);
  return r;
}

mpz_class brute_force_count(std::int64_t m, const Rational& delta, unsigned k) {
  check_args(m, delta, k);
  double words = std::pow(static_cast<double>(k), static_cast<double>(m));
  if (words > static_cast<double>(kBruteForceCap))
    fail(ErrorCode::OutOfRange, "brute force refused: k^m exceeds 10^8",
         {{"m", m}, {"k", k}, {"cap", kBruteForceCap}});
  std::vector<unsigned> digits(static_cast<std::size_t>(m), 0);
  std::int64_t zeros = m;
  std::uint64_t count = 0;
  while (true) {
    if (enough_zeros(zeros, m, delta)) ++count;
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (digits[i] == 0) --zeros;
      if (++digits[i] < k) break;
      digits[i] = 0;
      ++zeros;
    }
    if (i == digits.size()) break;
  }
  return mpz_class(std::to_string(count));
}

mpz_class split_enumeration_count(std::int64_t m, const Rational& delta, unsigned k) {
  check_args(m, delta, k);
  const std::int64_t left = m / 2, right = m - left;
  double words = std::pow(static_cast<double>(k), static_cast<double>(right));
  if (words > static_cast<double>(kBruteForceCap))
    fail(ErrorCode::OutOfRange, "split enumeration refused: k^ceil(m/2) exceeds 10^8");
  auto hl = zero_histogram(left, k);
  auto hr = zero_histogram(right, k);
  mpz_class total = 0;
  for (std::size_t a = 0; a < hl.size(); ++a)
    for (std::size_t b = 0; b < hr.size(); ++b)
      if (enough_zeros(static_cast<std::int64_t>(a + b), m, delta))
        total += mpz_class(std::to_string(hl[a])) * mpz_class(std::to_string(hr[b]));
  return total;
}

SandwichBounds sandwich_bounds(std::int64_t m, const Rational& delta, unsigned k) {
  check_args(m, delta, k);
  const std::int64_t j = floor_mul(delta, m);
  SandwichBounds b;
  b.lower = power(k - 1, j) * binomial(m, j);
  b.upper = b.lower * (j + 1);
  return b;
}

std::vector<GrowthRow> growth_rate_profile(const Rational& delta, unsigned k,
                                           std::span<const std::int64_t> m_list) {
  std::vector<GrowthRow> rows;
  double inf = std::numeric_limits<double>::infinity();
  double sup = -std::numeric_limits<double>::infinity();
  std::int64_t prev = 0;
  for (std::int64_t m : m_list) {
    if (m <= prev) fail(ErrorCode::InvalidArgument, "m list must be strictly ascending");
    prev = m;
    GrowthRow row;
    row.result = count_low_weight(m, delta, k);
    inf = std::min(inf, row.result.log_rate);
    sup = std::max(sup, row.result.log_rate);
    row.running_inf = inf;
    row.running_sup = sup;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {
std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}
}  // namespace

std::string growth_csv(std::span<const GrowthRow> rows) {
  std::string out = "m,count,log_rate,analytic_limit,inf_so_far\n";
  for (const auto& r : rows) {
    out += std::to_string(r.result.m) + "," + r.result.count.get_str() + "," + fixed(r.result.log_rate) + "," +
           fixed(r.result.analytic_limit) + "," + fixed(r.running_inf) + "\n";
  }
  return out;
}

}  // namespace interp
