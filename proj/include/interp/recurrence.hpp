#pragma once

// IP-set closures and the sum-free set F = U_n (J_n + n), where J_n is the
// IP-set generated by { 10^k : k in I_n } for the dyadic index family
// I_n = { 2^(n-1) (2i - 1) : i >= 1 }.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace interp {

inline constexpr std::uint64_t kMaxRecurrenceBound = 1'000'000'000'000'000'000ULL;

/// All sums of at most `depth` distinct generators that are <= bound,
/// ascending and deduplicated. Generators must be positive and ascending.
std::vector<std::uint64_t> ip_closure(std::span<const std::uint64_t> generators, unsigned depth,
                                      std::uint64_t bound);

/// Description recorded with every export of F.
std::string index_family_name();

/// k in I_n, i.e. the 2-adic valuation of k equals n - 1.
bool in_index_set(unsigned n, unsigned k);

/// Index n of the family member containing k (1 + 2-adic valuation).
unsigned index_of(unsigned k);

/// Decimal exponents { k in I_n : 10^k <= limit }, ascending.
std::vector<unsigned> index_exponents(unsigned n, std::uint64_t limit);

/// A member of J_n + n kept in carry-free form: value = n + sum 10^p.
struct FElement {
  std::uint64_t value = 0;
  unsigned shift = 0;
  std::vector<unsigned> digit_positions;
};

class FSetModel {
 public:
  std::uint64_t bound() const { return bound_; }
  /// Indices n contributing at least one element <= bound.
  unsigned max_index() const { return max_index_; }
  const std::vector<FElement>& entries() const { return entries_; }
  /// Member values ascending.
  std::vector<std::uint64_t> values() const;
  bool contains(std::uint64_t x) const;

  nlohmann::json to_json() const;

 private:
  friend FSetModel build_F(std::uint64_t bound);
  std::uint64_t bound_ = 0;
  unsigned max_index_ = 0;
  std::vector<FElement> entries_;
};

/// Materializes F ∩ [1, bound] from the subset-sum closures of J_n.
FSetModel build_F(std::uint64_t bound);

/// Independent membership test by decimal digits: x is in F iff for some
/// n < x, x - n has only digits 0/1 with every 1 at a position in I_n.
bool digit_oracle_member(std::uint64_t x);

struct SumFreeVerdict {
  bool sum_free = true;
  std::uint64_t bound = 0;
  std::uint64_t pairs_checked = 0;
  /// (x, y, x + y) with all three in the set.
  std::optional<std::array<std::uint64_t, 3>> counterexample;
  nlohmann::json to_json() const;
};

/// Checks every pair x <= y of `members` (ascending) with x + y <= bound.
SumFreeVerdict verify_sum_free(std::span<const std::uint64_t> members, std::uint64_t bound);

struct ShiftIpVerdict {
  bool holds = true;
  unsigned n = 0;
  unsigned depth = 0;
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> checked;
  std::optional<std::uint64_t> missing;
  nlohmann::json to_json() const;
};

/// Every depth-truncated element j of J_n with j <= bound - n has j + n in F.
ShiftIpVerdict verify_shift_ip(const FSetModel& F, unsigned n, unsigned depth, std::uint64_t bound);

}  // namespace interp
