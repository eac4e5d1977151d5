#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "interp/rational.hpp"

namespace interp {

using Symbol = std::uint16_t;

inline constexpr unsigned kMaxAlphabet = 4096;

/// Finite word over {0, ..., k-1}. Symbol i stands for position i+1 of a
/// sequence indexed by N, so a word of length L covers the window [1, L].
class SymbolWord {
 public:
  SymbolWord() = default;
  SymbolWord(unsigned alphabet_size, std::vector<Symbol> symbols);

  unsigned alphabet_size() const { return alphabet_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  std::span<const Symbol> symbols() const { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  SymbolWord slice(std::size_t pos, std::size_t len) const;
  bool has_prefix(const SymbolWord& prefix) const;
  /// Digits for k <= 10, comma separated integers otherwise.
  std::string to_string() const;

  friend bool operator==(const SymbolWord&, const SymbolWord&) = default;
  friend auto operator<=>(const SymbolWord& a, const SymbolWord& b) {
    return a.symbols_ <=> b.symbols_;
  }

 private:
  unsigned alphabet_ = 1;
  std::vector<Symbol> symbols_;
};

SymbolWord concat(std::span<const SymbolWord> parts);

/// Distinct length-n factors, lexicographically ordered.
std::vector<SymbolWord> factors(const SymbolWord& w, std::size_t n);

/// Number of distinct length-n factors of `w`.
std::uint64_t factor_count(std::span<const Symbol> w, std::size_t n);

struct ComplexityProfile {
  /// p[i] = number of distinct factors of length i+1.
  std::vector<std::uint64_t> p;
  /// h_est[i] = log(p[i]) / (i+1).
  std::vector<double> h_est;

  std::size_t n_max() const { return p.size(); }
  std::uint64_t at(std::size_t n) const { return p.at(n - 1); }
};

/// Factor counts for n = 1..n_max. n_max is capped at |w|/2 unless
/// `allow_full_length` is set, keeping the profile about the sequence rather
/// than its truncation.
ComplexityProfile complexity_profile(const SymbolWord& w, std::size_t n_max,
                                     bool allow_full_length = false);

struct EntropyEstimate {
  double at_n_max = 0.0;
  double infimum = 0.0;
  std::size_t infimum_n = 0;
};

EntropyEstimate entropy_estimate(const ComplexityProfile& profile);

/// Indicator word of { floor(n / delta) : n >= 1 } on [1, length].
SymbolWord mechanical_word(const Rational& delta, std::size_t length);

/// Word containing every word of length <= L over {0..k-1}: a de Bruijn
/// cycle of order L, linearized (length k^L + L - 1).
SymbolWord universal_word(unsigned k, std::size_t L);

/// Largest number of symbols != 0 in any length-m factor.
std::size_t max_nonzero_in_factors(const SymbolWord& w, std::size_t m);

/// True iff any two length-m factors have nonzero counts differing by <= 1.
bool is_balanced(const SymbolWord& w, std::size_t m);

}  // namespace interp
