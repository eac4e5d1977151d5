#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "interp/constructors.hpp"
#include "interp/entropy_count.hpp"
#include "interp/error.hpp"
#include "support/faults.hpp"

using namespace interp;

namespace {

IntegerSetModel S(const char* spec) { return IntegerSetModel::parse(spec); }

InterpolationProblem problem(const char* spec, unsigned k, std::int64_t N, std::uint64_t seed) {
  auto set = S(spec);
  return {set, k, N, uniform_coloring(SetWindow(set, N), k, seed)};
}

bool restriction_holds(const SymbolWord& x, const Coloring& f, std::int64_t upto) {
  for (const auto& [s, v] : f)
    if (s <= upto && x[static_cast<std::size_t>(s - 1)] != v) return false;
  return true;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

// Two-level totally minimal trace over {2^n}; built once.
struct TmFixture {
  InterpolationProblem p = problem("kind=powers base=2", 2, 1 << 23, 7);
  ConstructionTrace trace = totally_minimal_construct(p, LevelOptions{2, 64, 0x5eed});
};

const TmFixture& tm_fixture() {
  static const TmFixture f;
  return f;
}

}  // namespace

TEST(Problem, Validation) {
  auto set = S("kind=powers base=2");
  SetWindow w(set, 100);
  InterpolationProblem p{set, 2, 100, constant_coloring(w, 1)};
  EXPECT_NO_THROW(validate_problem(p, w));
  p.f[3] = 0;
  EXPECT_THROW(validate_problem(p, w), Error);
  p.f.erase(3);
  p.f[4] = 2;
  EXPECT_THROW(validate_problem(p, w), Error);
  p.f.erase(4);
  EXPECT_THROW(validate_problem(p, w), Error);
}

TEST(Colorings, Deterministic) {
  SetWindow w(S("kind=poly exp=2"), 10000);
  EXPECT_EQ(uniform_coloring(w, 3, 7), uniform_coloring(w, 3, 7));
  EXPECT_NE(uniform_coloring(w, 3, 7), uniform_coloring(w, 3, 8));
  auto alt = alternating_coloring(w, 2);
  EXPECT_EQ(alt.at(1), 0);
  EXPECT_EQ(alt.at(4), 1);
  EXPECT_EQ(alt.at(9), 0);
}

TEST(ExtendZero, Examples) {
  auto set = S("kind=powers base=2 from=0");
  const std::int64_t N = 1 << 14;
  SetWindow w(set, N);
  InterpolationProblem p{set, 2, N, constant_coloring(w, 1)};
  auto x = extend_zero(p);
  for (std::int64_t n = 1; n <= N; ++n) EXPECT_EQ(x[static_cast<std::size_t>(n - 1)] == 1, set.contains(n));

  auto none = S("kind=explicit values=");
  InterpolationProblem e{none, 2, 500, {}};
  auto z = extend_zero(e);
  for (std::size_t n = 1; n <= 50; ++n) EXPECT_EQ(factor_count(z.symbols(), n), 1u);

  auto sq = problem("kind=poly exp=2", 3, 10000, 7);
  auto xs = extend_zero(sq);
  EXPECT_TRUE(restriction_holds(xs, sq.f, 10000));
  EXPECT_LT(complexity_profile(xs, 64).h_est.back(), 0.15);
}

TEST(ExtendZero, EntropyControlAgainstLowWeightCounts) {
  auto sq = problem("kind=poly exp=2", 3, 10000, 11);
  auto x = extend_zero(sq);
  SetWindow w(sq.set, 10000);
  for (std::int64_t m : {16, 32, 64}) {
    const Rational eta(max_window_count(w, m), m);
    ASSERT_LE(eta, Rational(1, 2));
    EXPECT_LE(mpz_class(std::to_string(factor_count(x.symbols(), static_cast<std::size_t>(m)))),
              count_low_weight(m, eta, 3).count);
  }
}

TEST(Sturmian, Examples) {
  const std::int64_t N = 40;
  auto set = IntegerSetModel::sturmian({0, 2});
  SetWindow w(set, N);
  auto x = sturmian_interpolate(Rational(1, 2), constant_coloring(w, 2), 3, N);
  EXPECT_EQ(x.slice(0, 8).to_string(), "02020202");
  EXPECT_EQ(factor_count(x.symbols(), 2), 2u);

  const Rational d = continued_fraction_value(std::vector<std::int64_t>{0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2});
  auto st = IntegerSetModel::sturmian({0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2});
  SetWindow ws(st, 10000);
  auto xs = sturmian_interpolate(d, uniform_coloring(ws, 2, 1), 2, 10000);
  EXPECT_LE(factor_count(xs.symbols(), 12), 13u * 512u);

  auto f25 = IntegerSetModel::sturmian({0, 2, 2});
  SetWindow w25(f25, 500);
  auto f = uniform_coloring(w25, 4, 3);
  auto x25 = sturmian_interpolate(Rational(2, 5), f, 4, 500);
  EXPECT_TRUE(restriction_holds(x25, f, 500));
  for (std::int64_t n = 1; n <= 500; ++n)
    if (!f25.contains(n)) EXPECT_EQ(x25[static_cast<std::size_t>(n - 1)], 0);

  Coloring off = f;
  off[1] = 1;  // 1 is not in the floor set of 2/5
  try {
    sturmian_interpolate(Rational(2, 5), off, 4, 500);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Domain);
  }
}

TEST(Sturmian, FactorBound) {
  const std::vector<std::int64_t> cf = {0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
  const Rational d = continued_fraction_value(cf);
  auto set = IntegerSetModel::sturmian(cf);
  SetWindow w(set, 10000);
  for (unsigned k : {2u, 3u}) {
    auto x = sturmian_interpolate(d, uniform_coloring(w, k, 5), k, 10000);
    for (std::int64_t m = 1; m <= 20; ++m) {
      double bound = static_cast<double>(m + 1) * std::pow(static_cast<double>(k), static_cast<double>(ceil_mul(d, m)));
      EXPECT_LE(static_cast<double>(factor_count(x.symbols(), static_cast<std::size_t>(m))), bound);
    }
  }
}

TEST(Mixing, Examples) {
  auto set = S("kind=ap a=2 b=0");
  SetWindow w(set, 500);
  InterpolationProblem even{set, 2, 500, uniform_coloring(w, 2, 1)};
  try {
    mixing_extend(even, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstructionFailed);
    EXPECT_EQ(e.details()["interval_length"], 2);
    auto cert = Certificate::from_json(e.details()["certificate"]);
    EXPECT_TRUE(cert.holds());
    EXPECT_EQ(cert.scale["g"], 2);
    EXPECT_TRUE(replay_certificate(cert, set));
  }

  auto pw = S("kind=powers base=2 from=0");
  const std::int64_t N = 1 << 12;
  SetWindow wp(pw, N);
  Coloring parity;
  for (std::int64_t n = 0; (1LL << n) <= N; ++n) parity[1LL << n] = static_cast<Symbol>(n % 2);
  auto res = mixing_extend({pw, 2, N, parity}, 4);
  EXPECT_EQ(factor_count(res.sequence.symbols(), 4), 16u);
  EXPECT_GE(res.cover_length, 4u);
  for (std::int64_t n = 0; (1LL << n) <= N; ++n) EXPECT_EQ(res.sequence[static_cast<std::size_t>((1LL << n) - 1)], n % 2);
}

TEST(Mixing, PlacementsSitInsideGaps) {
  auto p = problem("kind=powers base=2", 3, 1 << 14, 4);
  auto res = mixing_extend(p, 3);
  for (std::size_t n = 1; n <= res.placements.size(); ++n) {
    const auto& iv = res.placements[n - 1];
    EXPECT_EQ(iv.length, static_cast<std::int64_t>(n));
    for (auto s = iv.start; s < iv.end(); ++s) EXPECT_FALSE(p.set.contains(s));
    EXPECT_EQ(res.sequence.slice(static_cast<std::size_t>(iv.start - 1), n), res.universal.slice(0, n));
  }
  EXPECT_TRUE(restriction_holds(res.sequence, p.f, p.bound));
}

TEST(TotallyMinimal, LevelZeroAndTraceCoherence) {
  const auto& t = tm_fixture().trace;
  ASSERT_EQ(t.levels.size(), 3u);
  EXPECT_EQ(t.levels[0].m, 1);
  EXPECT_EQ(t.levels[0].anchor.to_string(), "0");
  EXPECT_EQ(t.levels[0].primed_anchor.to_string(), "00");
  auto checks = check_trace(t, tm_fixture().p);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  for (std::size_t k = 1; k < t.levels.size(); ++k) {
    EXPECT_EQ(t.levels[k].m % t.levels[k - 1].m, 0);
    std::int64_t fact = 1;
    for (std::int64_t i = 2; i <= static_cast<std::int64_t>(k); ++i) fact *= i;
    EXPECT_EQ(t.levels[k].m % fact, 0);
    EXPECT_TRUE(t.levels[k].anchor.has_prefix(t.levels[k - 1].anchor));
  }
}

TEST(TotallyMinimal, RestrictionOnPowers) {
  auto set = S("kind=powers base=2");
  const std::int64_t N = 1 << 23;
  SetWindow w(set, N);
  InterpolationProblem p{set, 2, N, constant_coloring(w, 1)};
  auto t = totally_minimal_construct(p, LevelOptions{2, 64, 1});
  for (std::int64_t s = 2; s <= t.coverage; s *= 2) EXPECT_EQ(t.result[static_cast<std::size_t>(s - 1)], 1);
}

TEST(TotallyMinimal, MembershipAcceptsAnchorsAndBlocks) {
  const auto& t = tm_fixture().trace;
  LevelMembership lm(t);
  for (int L = 1; L <= 2; ++L) {
    EXPECT_TRUE(lm.accepts(t.levels[static_cast<std::size_t>(L)].anchor.symbols(), L));
    EXPECT_TRUE(is_member_level(t.levels[static_cast<std::size_t>(L)].anchor, L, t));
  }
  const auto m1 = static_cast<std::size_t>(t.levels[1].m);
  for (std::size_t p = 0; p + m1 <= 200 * m1; p += m1) EXPECT_TRUE(lm.accepts(t.result.symbols().subspan(p, m1), 1));
}

TEST(TotallyMinimal, MembershipRejects) {
  const auto& t = tm_fixture().trace;
  const auto m1 = static_cast<std::size_t>(t.levels[1].m);
  EXPECT_FALSE(is_member_level(SymbolWord(2, std::vector<Symbol>(m1, 0)), 1, t));
  try {
    is_member_level(SymbolWord(2, std::vector<Symbol>(m1 + 2, 0)), 1, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(TotallyMinimal, SeededMutationsAreRejected) {
  const auto& t = tm_fixture().trace;
  LevelMembership lm(t);
  std::mt19937_64 rng(2024);
  for (int L = 1; L <= 2; ++L) {
    const auto& lower = t.levels[static_cast<std::size_t>(L - 1)];
    std::vector<const SymbolWord*> items;
    for (const auto& w : lower.samples) items.push_back(&w);
    for (const auto& w : lower.primed_samples) items.push_back(&w);
    for (int fault = 0; fault < 10; ++fault) {
      std::vector<Symbol> w(t.levels[static_cast<std::size_t>(L)].anchor.symbols().begin(),
                            t.levels[static_cast<std::size_t>(L)].anchor.symbols().end());
      const SymbolWord& item = *items[rng() % items.size()];
      ASSERT_GT(faults::erase_item(w, item.symbols(), t.alphabet, rng), 0u);
      EXPECT_FALSE(lm.accepts(w, L)) << "level " << L << " fault " << fault;
    }
  }
}

TEST(TotallyMinimal, Deterministic) {
  auto a = totally_minimal_construct(tm_fixture().p, LevelOptions{2, 64, 0x5eed});
  EXPECT_EQ(a.result, tm_fixture().trace.result);
  EXPECT_EQ(trace_summary(a), trace_summary(tm_fixture().trace));
}

TEST(TotallyMinimal, InsufficientGapsFailWithLevel) {
  auto p = problem("kind=powers base=2", 2, 1 << 16, 1);
  try {
    totally_minimal_construct(p, LevelOptions{2, 64, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstructionFailed);
    EXPECT_EQ(e.details()["level"], 2);
    EXPECT_TRUE(e.details().contains("required_gap"));
  }
  auto syn = problem("kind=ap a=2 b=0", 2, 5000, 1);
  EXPECT_THROW(totally_minimal_construct(syn, LevelOptions{1, 64, 1}), Error);
}

TEST(StrictlyErgodic, CubesTwoLevels) {
  auto set = S("kind=poly exp=3");
  const std::int64_t N = 100000;
  SetWindow w(set, N);
  InterpolationProblem p{set, 2, N, alternating_coloring(w, 2)};
  auto t = strictly_ergodic_construct(p, LevelOptions{2, 64, 3});
  for (const auto& c : check_trace(t, p)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_EQ(t.levels[0].m, 1);
  EXPECT_EQ(t.levels[0].anchor.to_string(), "0");

  // Non-anchor subblock fraction of each level word.
  for (std::size_t L = 1; L < t.levels.size(); ++L) {
    const auto& up = t.levels[L];
    const auto& low = t.levels[L - 1];
    const auto m = static_cast<std::size_t>(low.m);
    std::size_t other = 0, blocks = static_cast<std::size_t>(up.m) / m;
    for (std::size_t b = 0; b < blocks; ++b)
      if (up.anchor.slice(b * m, m) != low.anchor) ++other;
    EXPECT_LE(other * (L + 1), blocks) << "level " << L;
  }

  // Every top block: at most half of the m_1 subblocks differ from w_1 and
  // every T_1 sample occurs.
  const auto& l1 = t.levels[1];
  const auto m1 = static_cast<std::size_t>(l1.m), m2 = static_cast<std::size_t>(t.levels[2].m);
  for (std::size_t p0 = 0; p0 + m2 <= static_cast<std::size_t>(t.coverage); p0 += m2) {
    std::size_t other = 0;
    std::set<SymbolWord> seen;
    for (std::size_t b = 0; b < m2 / m1; ++b) {
      auto sub = t.result.slice(p0 + b * m1, m1);
      if (sub != l1.anchor) ++other;
      seen.insert(sub);
    }
    EXPECT_LE(2 * other, m2 / m1);
    for (const auto& s : l1.samples) EXPECT_TRUE(seen.count(s));
  }
  const std::size_t prefix = std::min<std::size_t>(10000, t.result.size());
  EXPECT_LT(complexity_profile(t.result.slice(0, prefix), 64).h_est.back(), 0.2);
}

TEST(StrictlyErgodic, DensityViolationFails) {
  auto p = problem("kind=ap a=2 b=0", 2, 20000, 1);
  try {
    strictly_ergodic_construct(p, LevelOptions{2, 64, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstructionFailed);
    EXPECT_EQ(e.details()["level"], 1);
  }
}

TEST(StrictlyErgodic, MembershipRejectsMutatedAnchor) {
  auto set = S("kind=poly exp=3");
  SetWindow w(set, 100000);
  InterpolationProblem p{set, 2, 100000, alternating_coloring(w, 2)};
  auto t = strictly_ergodic_construct(p, LevelOptions{2, 64, 3});
  std::vector<Symbol> a(t.levels[2].anchor.symbols().begin(), t.levels[2].anchor.symbols().end());
  EXPECT_TRUE(is_ergodic_member(a, 2, t));
  std::mt19937_64 rng(5);
  const auto& victim = t.levels[1].samples[1 + rng() % (t.levels[1].samples.size() - 1)];
  faults::erase_item(a, victim.symbols(), 2, rng);
  EXPECT_FALSE(is_ergodic_member(a, 2, t));
}

TEST(PartitionWitness, Examples) {
  auto nat = syndetic_partition_witness(SetWindow(S("kind=naturals"), 100), 1, 2);
  ASSERT_EQ(nat.pieces.size(), 2u);
  for (auto s : nat.pieces[0]) EXPECT_TRUE(s % 4 == 0 || s % 4 == 1);
  for (auto s : nat.pieces[1]) EXPECT_TRUE(s % 4 == 2 || s % 4 == 3);
  EXPECT_TRUE(nat.covering_holds());
  EXPECT_TRUE(nat.disjoint);
  EXPECT_TRUE(nat.all_nonempty);

  auto even = syndetic_partition_witness(SetWindow(S("kind=ap a=2 b=0"), 200), 2, 3);
  EXPECT_EQ(even.pieces.size(), 3u);
  EXPECT_TRUE(even.covering_holds());
  for (const auto& [s, v] : even.coloring) EXPECT_EQ(v, (s % 9) / 3);

  try {
    syndetic_partition_witness(SetWindow(S("kind=naturals"), 100), 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  EXPECT_THROW(syndetic_partition_witness(SetWindow(S("kind=powers base=2"), 1000), 2, 3), Error);
}

TEST(DensityColoring, Examples) {
  SetWindow w(S("kind=naturals"), 50);
  const Interval two[] = {{10, 10}, {30, 10}};
  auto f = density_coloring_witness(w, two, 2);
  for (std::int64_t s = 10; s < 20; ++s) EXPECT_EQ(f.at(s), 1);
  for (std::int64_t s = 30; s < 40; ++s) EXPECT_EQ(f.at(s), 0);
  EXPECT_EQ(f.at(5), 0);
  for (const auto& [s, v] : density_coloring_witness(w, two, 1)) EXPECT_EQ(v, 0);

  SetWindow w3(S("kind=ap a=3 b=0"), 1000);
  std::vector<Interval> ivs;
  for (std::int64_t n = 1; n <= 9; ++n) ivs.push_back({n * 100, 50});
  auto g = density_coloring_witness(w3, ivs, 3);
  for (std::int64_t n = 1; n <= 9; ++n)
    for (std::int64_t s = n * 100; s < n * 100 + 50; ++s)
      if (s % 3 == 0) EXPECT_EQ(g.at(s), n % 3);
  const Interval overlapping[] = {{10, 10}, {15, 10}};
  EXPECT_THROW(density_coloring_witness(w, overlapping, 2), Error);
}
