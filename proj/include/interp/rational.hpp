#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace interp {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or a decimal such as "0.25" (decimals are converted
/// exactly, never through floating point).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// floor(r * m), computed exactly.
std::int64_t floor_mul(const Rational& r, std::int64_t m);

/// ceil(r * m), computed exactly.
std::int64_t ceil_mul(const Rational& r, std::int64_t m);

/// Value of the finite continued fraction [a0; a1, ..., an].
Rational continued_fraction_value(std::span<const std::int64_t> terms);

/// Successive convergents of [a0; a1, ..., an].
std::vector<Rational> convergents(std::span<const std::int64_t> terms);

/// Parses a comma separated list of integers ("0,2,2,2").
std::vector<std::int64_t> parse_int_list(std::string_view text);

}  // namespace interp
