#include <gtest/gtest.h>

#include <string>

#include <json.hpp>

#include "interp/interp.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  interp_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, SetLifecycle) {
  interp_set* set = nullptr;
  ASSERT_EQ(interp_set_parse("kind=ap a=3 b=1", &set), INTERP_OK);
  int in = 0;
  ASSERT_EQ(interp_set_contains(set, 7, &in), INTERP_OK);
  EXPECT_EQ(in, 1);
  ASSERT_EQ(interp_set_contains(set, 8, &in), INTERP_OK);
  EXPECT_EQ(in, 0);
  char* text = nullptr;
  ASSERT_EQ(interp_set_elements_text(set, 10, &text), INTERP_OK);
  EXPECT_EQ(take(text), "1\n4\n7\n10\n");
  ASSERT_EQ(interp_set_describe(set, &text), INTERP_OK);
  EXPECT_EQ(take(text), "kind=ap a=3 b=1");
  interp_set_free(set);
}

TEST(CApi, ErrorsAreReported) {
  interp_set* set = nullptr;
  EXPECT_EQ(interp_set_parse("kind=nope", &set), INTERP_INVALID_ARGUMENT);
  EXPECT_EQ(set, nullptr);
  EXPECT_NE(std::string(interp_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(interp_set_parse(nullptr, &set), INTERP_INVALID_ARGUMENT);
  EXPECT_STREQ(interp_status_name(INTERP_DOMAIN), "domain");
  char* out = nullptr;
  EXPECT_EQ(interp_count("{not json", &out, nullptr), INTERP_INVALID_ARGUMENT);
  EXPECT_EQ(interp_count(R"({"m":[14],"delta":"1/4","k":4,"oracle":true})", &out, nullptr), INTERP_OUT_OF_RANGE);
  EXPECT_EQ(interp_count(R"({"m":[3],"delta":"1/3","k":2})", &out, nullptr), INTERP_OK);
  EXPECT_STREQ(interp_last_error(), "");
  interp_string_free(out);
}

TEST(CApi, AnalyzeReport) {
  interp_set* set = nullptr;
  ASSERT_EQ(interp_set_parse("kind=naturals", &set), INTERP_OK);
  char* out = nullptr;
  int passed = 0;
  ASSERT_EQ(interp_analyze(set, R"({"pw_syndetic":{"g":1,"L":10}})", &out, &passed), INTERP_OK);
  auto j = json::parse(take(out));
  EXPECT_EQ(passed, 1);
  EXPECT_EQ(j["verdicts"][0]["predicate"], "piecewise-syndetic");
  interp_set_free(set);
}

TEST(CApi, ConstructionAccessors) {
  const char* problem = R"({"set_spec":"kind=powers base=2 from=0","k":2,"N":4096,
                            "f":{"distribution":"uniform","seed":3}})";
  interp_construction* c = nullptr;
  ASSERT_EQ(interp_construct(problem, R"({"kind":"mixing","cover_length":4})", &c), INTERP_OK);
  EXPECT_EQ(interp_construction_passed(c), 1);
  ASSERT_EQ(interp_construction_word_count(c), 2u);
  char* name = nullptr;
  char* text = nullptr;
  ASSERT_EQ(interp_construction_word(c, 0, &name, &text), INTERP_OK);
  EXPECT_EQ(take(name), "x_u.word");
  EXPECT_EQ(take(text).substr(0, 4), "k=2\n");
  EXPECT_EQ(interp_construction_word(c, 5, &name, &text), INTERP_OUT_OF_RANGE);
  char* report = nullptr;
  ASSERT_EQ(interp_construction_report(c, &report), INTERP_OK);
  EXPECT_TRUE(json::parse(take(report))["passed"].get<bool>());
  interp_construction_free(c);
}

TEST(CApi, ConstructionRefusalDetails) {
  const char* problem = R"({"set_spec":"kind=ap a=2 b=0","k":2,"N":300,"f":{"distribution":"alternating"}})";
  interp_construction* c = nullptr;
  EXPECT_EQ(interp_construct(problem, R"({"kind":"mixing"})", &c), INTERP_CONSTRUCTION_FAILED);
  EXPECT_EQ(c, nullptr);
  auto details = json::parse(interp_last_error_details());
  EXPECT_EQ(details["certificate"]["predicate"], "syndetic");
}
