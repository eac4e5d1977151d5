#include "interp/recurrence.hpp"

#include <algorithm>
#include <bit>

#include "interp/error.hpp"

namespace interp {

namespace {

constexpr std::size_t kMaxClosureSize = 50'000'000;

std::optional<std::uint64_t> pow10(unsigned k) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (v > UINT64_MAX / 10) return std::nullopt;
    v *= 10;
  }
  return v;
}

}  // namespace

std::vector<std::uint64_t> ip_closure(std::span<const std::uint64_t> generators, unsigned depth,
                                      std::uint64_t bound) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] == 0) fail(ErrorCode::InvalidArgument, "IP generators must be positive");
    if (i > 0 && generators[i] <= generators[i - 1])
      fail(ErrorCode::InvalidArgument, "IP generators must be strictly ascending");
  }
  std::vector<std::uint64_t> out;
  // Depth-first over index sets i1 < i2 < ...; generators ascend, so a sum
  // that overshoots ends the scan at that level.
  struct Frame {
    std::size_t next;
    std::uint64_t sum;
    unsigned used;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.used == depth) continue;
    for (std::size_t i = f.next; i < generators.size(); ++i) {
      if (generators[i] > bound - f.sum) break;
      std::uint64_t s = f.sum + generators[i];
      out.push_back(s);
      if (out.size() > kMaxClosureSize) fail(ErrorCode::OutOfRange, "IP closure too large to materialize");
      stack.push_back({i + 1, s, f.used + 1});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string index_family_name() { return "dyadic: I_n = {2^(n-1) (2i-1) : i >= 1}"; }

bool in_index_set(unsigned n, unsigned k) {
  return n >= 1 && k >= 1 && static_cast<unsigned>(std::countr_zero(k)) == n - 1;
}

unsigned index_of(unsigned k) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "index family covers k >= 1 only");
  return static_cast<unsigned>(std::countr_zero(k)) + 1;
}

std::vector<unsigned> index_exponents(unsigned n, std::uint64_t limit) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "index n must be >= 1");
  std::vector<unsigned> out;
  if (n > 6) return out;  // min I_n = 2^(n-1) >= 64 exceeds any 64-bit power of ten
  for (unsigned k = 1u << (n - 1);; k += 1u << n) {
    auto p = pow10(k);
    if (!p || *p > limit) break;
    out.push_back(k);
  }
  return out;
}

std::vector<std::uint64_t> FSetModel::values() const {
  std::vector<std::uint64_t> v;
  v.reserve(entries_.size());
  for (const auto& e : entries_) v.push_back(e.value);
  return v;
}

bool FSetModel::contains(std::uint64_t x) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const FElement& e, std::uint64_t v) { return e.value < v; });
  return it != entries_.end() && it->value == x;
}

nlohmann::json FSetModel::to_json() const {
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& e : entries_)
    elems.push_back({{"value", e.value}, {"shift", e.shift}, {"digit_positions", e.digit_positions}});
  return {{"index_family", index_family_name()}, {"bound", bound_}, {"max_index", max_index_},
          {"elements", std::move(elems)}};
}

FSetModel build_F(std::uint64_t bound) {
  if (bound > kMaxRecurrenceBound) fail(ErrorCode::OutOfRange, "bound exceeds 10^18");
  FSetModel F;
  F.bound_ = bound;
  for (unsigned n = 1; n <= 6; ++n) {
    if (bound <= n) break;
    auto exps = index_exponents(n, bound - n);
    if (exps.empty()) break;
    F.max_index_ = n;
    // Subsets of the exponents, kept as digit-position lists (carry-free).
    std::vector<std::uint64_t> gens;
    for (unsigned k : exps) gens.push_back(*pow10(k));
    const std::size_t g = gens.size();
    for (std::uint64_t mask = 1; mask < (1ULL << g); ++mask) {
      std::uint64_t sum = 0;
      bool fits = true;
      FElement e;
      e.shift = n;
      for (std::size_t i = 0; i < g && fits; ++i) {
        if (!(mask >> i & 1)) continue;
        if (gens[i] > bound - n - sum) fits = false;
        else {
          sum += gens[i];
          e.digit_positions.push_back(exps[i]);
        }
      }
      if (!fits) continue;
      e.value = sum + n;
      F.entries_.push_back(std::move(e));
    }
  }
  std::sort(F.entries_.begin(), F.entries_.end(),
            [](const FElement& a, const FElement& b) { return a.value < b.value; });
  F.entries_.erase(std::unique(F.entries_.begin(), F.entries_.end(),
                               [](const FElement& a, const FElement& b) { return a.value == b.value; }),
                   F.entries_.end());
  return F;
}

bool digit_oracle_member(std::uint64_t x) {
  for (unsigned n = 1; n <= 6 && n < x; ++n) {
    std::uint64_t d = x - n;
    bool ok = true;
    for (unsigned pos = 0; d > 0 && ok; ++pos, d /= 10) {
      unsigned digit = static_cast<unsigned>(d % 10);
      if (digit > 1) ok = false;
      else if (digit == 1 && !in_index_set(n, pos)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

nlohmann::json SumFreeVerdict::to_json() const {
  nlohmann::json j = {{"sum_free", sum_free}, {"bound", bound}, {"pairs_checked", pairs_checked}};
  if (counterexample) j["counterexample"] = *counterexample;
  else j["counterexample"] = nullptr;
  return j;
}

SumFreeVerdict verify_sum_free(std::span<const std::uint64_t> members, std::uint64_t bound) {
  if (!std::is_sorted(members.begin(), members.end()))
    fail(ErrorCode::InvalidArgument, "members must be ascending");
  SumFreeVerdict v;
  v.bound = bound;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i; j < members.size(); ++j) {
      const std::uint64_t x = members[i], y = members[j];
      if (y > bound || x > bound - y) break;
      ++v.pairs_checked;
      if (std::binary_search(members.begin(), members.end(), x + y)) {
        v.sum_free = false;
        v.counterexample = std::array<std::uint64_t, 3>{x, y, x + y};
        return v;
      }
    }
  }
  return v;
}

nlohmann::json ShiftIpVerdict::to_json() const {
  nlohmann::json j = {{"holds", holds}, {"n", n}, {"depth", depth}, {"bound", bound}, {"checked", checked}};
  j["missing"] = missing ? nlohmann::json(*missing) : nlohmann::json(nullptr);
  return j;
}

ShiftIpVerdict verify_shift_ip(const FSetModel& F, unsigned n, unsigned depth, std::uint64_t bound) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (bound > F.bound()) fail(ErrorCode::Precondition, "F is not materialized up to the requested bound");
  ShiftIpVerdict v;
  v.n = n;
  v.depth = depth;
  v.bound = bound;
  if (bound <= n) return v;
  std::vector<std::uint64_t> gens;
  for (unsigned k : index_exponents(n, bound - n)) gens.push_back(*pow10(k));
  v.checked = ip_closure(gens, depth, bound - n);
  for (std::uint64_t j : v.checked) {
    if (!F.contains(j + n)) {
      v.holds = false;
      v.missing = j;
      break;
    }
  }
  return v;
}

}  // namespace interp
