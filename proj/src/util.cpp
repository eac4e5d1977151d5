#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "interp/certificate.hpp"
#include "interp/error.hpp"
#include "interp/rational.hpp"

namespace interp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::EmptySet: return "empty-set";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Io: return "io";
    case ErrorCode::ConstructionFailed: return "construction-failed";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

namespace {

std::int64_t parse_int(std::string_view s) {
  if (s.empty()) fail(ErrorCode::InvalidArgument, "expected an integer, got an empty string");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) fail(ErrorCode::InvalidArgument, "malformed integer '" + std::string(s) + "'");
  __int128 value = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      fail(ErrorCode::InvalidArgument, "malformed integer '" + std::string(s) + "'");
    value = value * 10 + (s[i] - '0');
    if (value > std::numeric_limits<std::int64_t>::max())
      fail(ErrorCode::OutOfRange, "integer '" + std::string(s) + "' does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(negative ? -value : value);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(trim(text.substr(0, slash)));
    std::int64_t den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 17) fail(ErrorCode::OutOfRange, "too many decimal places in '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    bool negative = !whole.empty() && whole[0] == '-';
    std::int64_t w = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (f < 0) fail(ErrorCode::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
    std::int64_t mag = (w < 0 ? -w : w) * den + f;
    return Rational(negative ? -mag : mag, den);
  }
  return Rational(parse_int(text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t floor_mul(const Rational& r, std::int64_t m) {
  __int128 p = static_cast<__int128>(r.numerator()) * m;
  __int128 q = r.denominator();
  __int128 f = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --f;
  return static_cast<std::int64_t>(f);
}

std::int64_t ceil_mul(const Rational& r, std::int64_t m) {
  return -floor_mul(-r, m);
}

std::vector<Rational> convergents(std::span<const std::int64_t> terms) {
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "continued fraction needs at least one term");
  std::vector<Rational> out;
  __int128 h_prev = 1, h = terms[0];
  __int128 k_prev = 0, k = 1;
  out.emplace_back(static_cast<std::int64_t>(h), 1);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] <= 0) fail(ErrorCode::InvalidArgument, "continued fraction terms after the first must be positive");
    __int128 h_next = terms[i] * h + h_prev;
    __int128 k_next = terms[i] * k + k_prev;
    constexpr __int128 limit = std::numeric_limits<std::int64_t>::max() / 4;
    if (h_next > limit || k_next > limit)
      fail(ErrorCode::OutOfRange, "continued fraction convergent exceeds 62-bit range");
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    out.emplace_back(static_cast<std::int64_t>(h), static_cast<std::int64_t>(k));
  }
  return out;
}

Rational continued_fraction_value(std::span<const std::int64_t> terms) {
  return convergents(terms).back();
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_int(trim(text.substr(pos, comma - pos))));
    pos = comma + 1;
  }
  return out;
}

const char* to_string(Verdict v) {
  return v == Verdict::HoldsAtScale ? "holds-at-scale" : "fails-at-scale";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "holds-at-scale") return Verdict::HoldsAtScale;
  if (s == "fails-at-scale") return Verdict::FailsAtScale;
  fail(ErrorCode::InvalidArgument, "unknown verdict '" + s + "'");
}

nlohmann::json Certificate::to_json() const {
  return {{"predicate", predicate}, {"scale", scale}, {"verdict", to_string(verdict)}, {"witness", witness}};
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  Certificate c;
  c.predicate = j.at("predicate").get<std::string>();
  c.scale = j.at("scale");
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.witness = j.value("witness", nlohmann::json::object());
  return c;
}

}  // namespace interp
