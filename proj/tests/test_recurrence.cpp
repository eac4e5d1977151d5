#include <gtest/gtest.h>

#include <set>

#include "interp/error.hpp"
#include "interp/recurrence.hpp"

using namespace interp;

namespace {

using U = std::vector<std::uint64_t>;

}  // namespace

TEST(IpClosure, Examples) {
  EXPECT_EQ(ip_closure(U{10, 1000}, 2, 1'000'000), (U{10, 1000, 1010}));
  EXPECT_EQ(ip_closure(U{1, 2, 4}, 3, 100), (U{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(ip_closure(U{5}, 1, 100), (U{5}));
  EXPECT_THROW(ip_closure(U{4, 2}, 2, 100), Error);
  EXPECT_THROW(ip_closure(U{0, 2}, 2, 100), Error);
}

TEST(IpClosure, MatchesSubsetEnumeration) {
  const U gens = {3, 5, 11, 20, 41, 90};
  for (unsigned depth = 1; depth <= 6; ++depth) {
    std::set<std::uint64_t> want;
    for (unsigned mask = 1; mask < 64; ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) > depth) continue;
      std::uint64_t s = 0;
      for (unsigned i = 0; i < 6; ++i)
        if (mask >> i & 1) s += gens[i];
      if (s <= 120) want.insert(s);
    }
    EXPECT_EQ(ip_closure(gens, depth, 120), U(want.begin(), want.end()));
  }
}

TEST(IndexFamily, DisjointWithLargeEnoughMinimum) {
  for (unsigned k = 1; k <= 4096; ++k) {
    unsigned owners = 0;
    for (unsigned n = 1; n <= 13; ++n) owners += in_index_set(n, k);
    EXPECT_EQ(owners, 1u) << k;
    EXPECT_TRUE(in_index_set(index_of(k), k));
  }
  EXPECT_TRUE(index_exponents(6, kMaxRecurrenceBound).empty());
  for (unsigned n = 1; n <= 5; ++n) {
    auto e = index_exponents(n, kMaxRecurrenceBound);
    ASSERT_FALSE(e.empty());
    EXPECT_EQ(e.front(), 1u << (n - 1));
    EXPECT_GE(e.front(), n);
  }
}

TEST(BuildF, Examples) {
  EXPECT_EQ(build_F(200).values(), (U{11, 102}));
  auto f2000 = build_F(2000).values();
  EXPECT_EQ(f2000, (U{11, 102, 1001, 1011}));
  EXPECT_TRUE(build_F(10).values().empty());
}

TEST(BuildF, DivisibilityAndDigitCharacterization) {
  auto F = build_F(kMaxRecurrenceBound);
  std::uint64_t p10 = 1;
  for (const auto& e : F.entries()) {
    const std::uint64_t j = e.value - e.shift;
    p10 = 1;
    for (unsigned i = 0; i < e.shift; ++i) p10 *= 10;
    EXPECT_EQ(j % p10, 0u) << e.value;
    std::uint64_t rebuilt = 0;
    for (unsigned pos : e.digit_positions) {
      EXPECT_TRUE(in_index_set(e.shift, pos));
      std::uint64_t t = 1;
      for (unsigned i = 0; i < pos; ++i) t *= 10;
      rebuilt += t;
    }
    EXPECT_EQ(rebuilt, j);
    EXPECT_TRUE(digit_oracle_member(e.value));
  }
}

TEST(BuildF, OraclesAgreeOnSmallRange) {
  auto F = build_F(2'000'000);
  for (std::uint64_t x = 1; x <= 2'000'000; ++x) ASSERT_EQ(F.contains(x), digit_oracle_member(x)) << x;
}

TEST(SumFree, Examples) {
  auto F = build_F(1'000'000);
  EXPECT_TRUE(verify_sum_free(F.values(), 1'000'000).sum_free);
  auto v = verify_sum_free(U{11, 102, 113}, 200);
  ASSERT_FALSE(v.sum_free);
  EXPECT_EQ(*v.counterexample, (std::array<std::uint64_t, 3>{11, 102, 113}));
  EXPECT_TRUE(verify_sum_free(build_F(10).values(), 10).sum_free);
}

TEST(SumFree, DetectsEveryInjectedSum) {
  auto F = build_F(1'000'000).values();
  for (std::size_t i = 0; i < F.size(); ++i)
    for (std::size_t j = i; j < F.size(); ++j) {
      if (F[i] + F[j] > 1'000'000) continue;
      U g = F;
      g.push_back(F[i] + F[j]);
      std::sort(g.begin(), g.end());
      EXPECT_FALSE(verify_sum_free(g, 1'000'000).sum_free);
    }
}

TEST(ShiftIp, Examples) {
  auto F6 = build_F(1'000'000);
  auto v = verify_shift_ip(F6, 1, 3, 1'000'000);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.checked, (U{10, 1000, 1010, 100000, 100010, 101000, 101010}));
  auto d2 = verify_shift_ip(F6, 1, 2, 1'000'000);
  EXPECT_TRUE(d2.holds);
  EXPECT_EQ(d2.checked, (U{10, 1000, 1010, 100000, 100010, 101000}));
  auto v3 = verify_shift_ip(build_F(9999), 3, 3, 9999);
  EXPECT_TRUE(v3.holds);
  EXPECT_TRUE(v3.checked.empty());
  auto F7 = build_F(10'000'000);
  auto v2 = verify_shift_ip(F7, 2, 1, 10'000'000);
  EXPECT_TRUE(v2.holds);
  EXPECT_EQ(v2.checked, (U{100, 1'000'000}));
  EXPECT_THROW(verify_shift_ip(F6, 1, 2, 2'000'000), Error);
}

TEST(FExport, RecordsIndexFamily) {
  auto j = build_F(2000).to_json();
  EXPECT_EQ(j["index_family"], index_family_name());
  EXPECT_EQ(j["elements"].size(), 4u);
  EXPECT_EQ(j["elements"][3]["digit_positions"], (std::vector<unsigned>{1, 3}));
  auto v = verify_shift_ip(build_F(2000), 1, 2, 2000).to_json();
  EXPECT_TRUE(v["missing"].is_null());
}
