#include <gtest/gtest.h>

#include "interp/error.hpp"
#include "interp/reports.hpp"

using namespace interp;
using nlohmann::json;

TEST(AnalyzeReport, PeriodicSetWithoutWindow) {
  auto r = analyze_report(IntegerSetModel::parse("kind=ap a=3 b=0"), {{"syndetic", {{"g", 3}}}});
  EXPECT_EQ(r["schema"], 1);
  EXPECT_TRUE(r["exact"].get<bool>());
  EXPECT_EQ(r["verdicts"][0]["verdict"], "holds-at-scale");
  EXPECT_TRUE(r["passed"].get<bool>());
}

TEST(AnalyzeReport, NonPeriodicNeedsWindow) {
  try {
    analyze_report(IntegerSetModel::parse("kind=powers base=2"), {{"gaps", true}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(AnalyzeReport, PowersDensityProfile) {
  auto r = analyze_report(IntegerSetModel::parse("kind=powers base=2"), {{"N", 1 << 20}, {"banach", true}, {"gaps", true}});
  EXPECT_EQ(r["banach"]["exact_density"]["exact"], "0");
  const auto& entries = r["banach"]["entries"];
  EXPECT_EQ(entries.back()["n"], 1 << 19);
  EXPECT_EQ(r["gaps"]["count"], 19);
  EXPECT_TRUE(r["passed"].get<bool>());
}

TEST(AnalyzeReport, FailingVerdictClearsPassed) {
  auto r = analyze_report(IntegerSetModel::parse("kind=powers base=2"), {{"N", 100}, {"syndetic", {{"g", 10}}}});
  EXPECT_FALSE(r["passed"].get<bool>());
  EXPECT_FALSE(report_passed(r));
}

TEST(CountReport, OracleAndRefusal) {
  auto r = count_report({{"m", {3, 4}}, {"delta", "1/3"}, {"k", 2}, {"oracle", true}});
  EXPECT_EQ(r["rows"][0]["count"], "4");
  EXPECT_TRUE(r["rows"][1]["oracle_agrees"].get<bool>());
  EXPECT_TRUE(r["passed"].get<bool>());
  try {
    count_report({{"m", {14}}, {"delta", "1/4"}, {"k", 4}, {"oracle", true}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
  EXPECT_THROW(count_report({{"m", {4}}, {"delta", "3/4"}, {"k", 2}}), Error);
}

TEST(VerifyFReport, InjectedFault) {
  auto ok = verify_f_report({{"N", 200}, {"depth", 2}, {"n_min", 1}, {"n_max", 2}});
  EXPECT_TRUE(ok["passed"].get<bool>());
  auto bad = verify_f_report({{"N", 200}, {"depth", 2}, {"inject", {113}}});
  EXPECT_FALSE(bad["passed"].get<bool>());
  EXPECT_EQ(bad["sum_free"]["counterexample"], (std::vector<std::uint64_t>{11, 102, 113}));
}

TEST(WordStatsReport, Profile) {
  SymbolWord w(2, {0, 1, 0, 1, 0, 1, 0, 1});
  auto r = word_stats_report(w, {{"n_max", 3}});
  EXPECT_EQ(r["p"], (std::vector<int>{2, 2, 2}));
}

TEST(ConstructReport, ZeroKindRunsEntropyControl) {
  json problem = {{"set_spec", "kind=poly exp=2"}, {"k", 3}, {"N", 10000},
                  {"f", {{"distribution", "uniform"}, {"seed", 7}}}};
  auto out = construct_report(problem, {{"kind", "zero"}});
  EXPECT_TRUE(out.passed);
  EXPECT_EQ(out.report["seed"], 7);
  EXPECT_EQ(out.report["entropy_control"].size(), 3u);
  ASSERT_EQ(out.words.size(), 1u);
  EXPECT_EQ(out.words[0].first, "x_u.word");
}

TEST(ConstructReport, MixingRefusalCarriesCertificate) {
  json problem = {{"set_spec", "kind=ap a=2 b=0"}, {"k", 2}, {"N", 200}, {"f", {{"distribution", "constant"}, {"value", 1}}}};
  try {
    construct_report(problem, {{"kind", "mixing"}, {"cover_length", 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstructionFailed);
    EXPECT_EQ(e.details()["certificate"]["verdict"], "holds-at-scale");
  }
}

TEST(ConstructReport, RejectsBadProblems) {
  EXPECT_THROW(construct_report({{"k", 2}}, {{"kind", "zero"}}), Error);
  json problem = {{"set_spec", "kind=ap a=2 b=0"}, {"k", 2}, {"N", 20}, {"f", {{"pairs", {{1, 0}}}}}};
  try {
    construct_report(problem, {{"kind", "zero"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Domain);
  }
  json good = {{"set_spec", "kind=ap a=2 b=0"}, {"k", 2}, {"N", 20}, {"f", {{"distribution", "alternating"}}}};
  EXPECT_THROW(construct_report(good, {{"kind", "spiral"}}), Error);
}
