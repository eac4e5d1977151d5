#include "interp/words.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "interp/error.hpp"

namespace interp {

SymbolWord::SymbolWord(unsigned alphabet_size, std::vector<Symbol> symbols)
    : alphabet_(alphabet_size), symbols_(std::move(symbols)) {
  if (alphabet_size < 1 || alphabet_size > kMaxAlphabet)
    fail(ErrorCode::InvalidArgument, "alphabet size must lie in [1, " + std::to_string(kMaxAlphabet) + "]");
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] >= alphabet_size)
      fail(ErrorCode::InvalidArgument, "symbol " + std::to_string(symbols_[i]) + " at index " + std::to_string(i) +
                                           " outside alphabet of size " + std::to_string(alphabet_size));
}

SymbolWord SymbolWord::slice(std::size_t pos, std::size_t len) const {
  if (pos > symbols_.size() || len > symbols_.size() - pos)
    fail(ErrorCode::OutOfRange, "slice exceeds word length");
  return SymbolWord(alphabet_, {symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)});
}

bool SymbolWord::has_prefix(const SymbolWord& prefix) const {
  return prefix.size() <= size() && std::equal(prefix.symbols_.begin(), prefix.symbols_.end(), symbols_.begin());
}

std::string SymbolWord::to_string() const {
  std::string s;
  if (alphabet_ <= 10) {
    s.reserve(symbols_.size());
    for (Symbol c : symbols_) s.push_back(static_cast<char>('0' + c));
    return s;
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(symbols_[i]);
  }
  return s;
}

SymbolWord concat(std::span<const SymbolWord> parts) {
  unsigned k = 1;
  std::size_t total = 0;
  for (const auto& p : parts) {
    k = std::max(k, p.alphabet_size());
    total += p.size();
  }
  std::vector<Symbol> out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.symbols().begin(), p.symbols().end());
  return SymbolWord(k, std::move(out));
}

namespace {

constexpr std::uint64_t kMod = (1ULL << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
  return r >= kMod ? r - kMod : r;
}

unsigned symbol_bits(std::span<const Symbol> w) {
  Symbol top = 0;
  for (Symbol c : w) top = std::max(top, c);
  return std::max(1u, static_cast<unsigned>(std::bit_width(static_cast<unsigned>(top))));
}

}  // namespace

std::uint64_t factor_count(std::span<const Symbol> w, std::size_t n) {
  if (n == 0) return 1;
  if (n > w.size()) return 0;
  const std::size_t count = w.size() - n + 1;
  const unsigned bits = symbol_bits(w);
  if (n * bits <= 64) {
    // Exact: each factor packs into one machine word.
    const std::uint64_t mask = n * bits == 64 ? ~0ULL : (1ULL << (n * bits)) - 1;
    std::vector<std::uint64_t> keys;
    keys.reserve(count);
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      code = ((code << bits) | w[i]) & mask;
      if (i + 1 >= n) keys.push_back(code);
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }
  // Rolling hash, with equal-hash groups split by direct comparison.
  const std::uint64_t base = 1'000'003;
  std::uint64_t top = 1;
  for (std::size_t i = 1; i < n; ++i) top = mulmod(top, base);
  std::vector<std::pair<std::uint64_t, std::size_t>> keys;
  keys.reserve(count);
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i >= n) h = (h + kMod - mulmod(top, w[i - n] + 1)) % kMod;
    h = (mulmod(h, base) + w[i] + 1) % kMod;
    if (i + 1 >= n) keys.emplace_back(h, i + 1 - n);
  }
  std::sort(keys.begin(), keys.end());
  std::uint64_t distinct = 0;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    reps.clear();
    for (; j < keys.size() && keys[j].first == keys[i].first; ++j) {
      auto here = w.subspan(keys[j].second, n);
      bool seen = std::any_of(reps.begin(), reps.end(), [&](std::size_t r) {
        return std::equal(here.begin(), here.end(), w.begin() + static_cast<std::ptrdiff_t>(r));
      });
      if (!seen) reps.push_back(keys[j].second);
    }
    distinct += reps.size();
    i = j;
  }
  return distinct;
}

std::vector<SymbolWord> factors(const SymbolWord& w, std::size_t n) {
  std::vector<SymbolWord> out;
  if (n > w.size()) fail(ErrorCode::OutOfRange, "factor length exceeds word length", {{"n", n}, {"length", w.size()}});
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.push_back(w.slice(i, n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ComplexityProfile complexity_profile(const SymbolWord& w, std::size_t n_max, bool allow_full_length) {
  const std::size_t cap = allow_full_length ? w.size() : w.size() / 2;
  n_max = std::min(n_max, cap);
  ComplexityProfile prof;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto p = factor_count(w.symbols(), n);
    prof.p.push_back(p);
    prof.h_est.push_back(std::log(static_cast<double>(p)) / static_cast<double>(n));
  }
  return prof;
}

EntropyEstimate entropy_estimate(const ComplexityProfile& profile) {
  if (profile.p.empty()) fail(ErrorCode::Precondition, "empty complexity profile");
  EntropyEstimate e;
  e.at_n_max = profile.h_est.back();
  auto it = std::min_element(profile.h_est.begin(), profile.h_est.end());
  e.infimum = *it;
  e.infimum_n = static_cast<std::size_t>(it - profile.h_est.begin()) + 1;
  return e;
}

SymbolWord mechanical_word(const Rational& delta, std::size_t length) {
  if (delta <= 0 || delta > Rational(1, 2)) fail(ErrorCode::Domain, "delta must lie in (0, 1/2]");
  const __int128 p = delta.numerator(), q = delta.denominator();
  std::vector<Symbol> out(length, 0);
  for (__int128 n = 1;; ++n) {
    __int128 s = n * q / p;
    if (s > static_cast<__int128>(length)) break;
    out[static_cast<std::size_t>(s - 1)] = 1;
  }
  return SymbolWord(2, std::move(out));
}

SymbolWord universal_word(unsigned k, std::size_t L) {
  if (k < 1 || k > kMaxAlphabet) fail(ErrorCode::InvalidArgument, "alphabet size out of range");
  if (L < 1) fail(ErrorCode::InvalidArgument, "universal word order must be >= 1");
  double size = std::pow(static_cast<double>(k), static_cast<double>(L));
  if (size > static_cast<double>(1ULL << 28)) fail(ErrorCode::OutOfRange, "universal word too long (k^L > 2^28)");
  if (k == 1) return SymbolWord(1, std::vector<Symbol>(L, 0));

  // Lyndon-word (FKM) construction of the de Bruijn cycle: emit every
  // prenecklace a[1..i] whose period i divides L.
  std::vector<Symbol> seq;
  seq.reserve(static_cast<std::size_t>(size) + L);
  std::vector<unsigned> a(L + 1, 0);
  std::size_t i = 1;
  while (true) {
    if (L % i == 0)
      for (std::size_t j = 1; j <= i; ++j) seq.push_back(static_cast<Symbol>(a[j]));
    std::size_t j = L;
    while (j >= 1 && a[j] == k - 1) --j;
    if (j == 0) break;
    ++a[j];
    for (std::size_t x = j + 1; x <= L; ++x) a[x] = a[x - j];
    i = j;
  }
  for (std::size_t j = 0; j + 1 < L; ++j) seq.push_back(seq[j]);
  return SymbolWord(k, std::move(seq));
}

std::size_t max_nonzero_in_factors(const SymbolWord& w, std::size_t m) {
  if (m == 0 || m > w.size()) return 0;
  std::size_t cur = 0, best = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    cur += w[i] != 0;
    if (i >= m) cur -= w[i - m] != 0;
    if (i + 1 >= m) best = std::max(best, cur);
  }
  return best;
}

bool is_balanced(const SymbolWord& w, std::size_t m) {
  if (m == 0 || m > w.size()) return true;
  std::size_t cur = 0, lo = m, hi = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    cur += w[i] != 0;
    if (i >= m) cur -= w[i - m] != 0;
    if (i + 1 >= m) {
      lo = std::min(lo, cur);
      hi = std::max(hi, cur);
    }
  }
  return hi - lo <= 1;
}

}  // namespace interp
