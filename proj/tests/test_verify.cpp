#include <gtest/gtest.h>

#include <json.hpp>

#include "gtorsion/errors.hpp"
#include "gtorsion/verify.hpp"

using namespace gtorsion;

namespace {

void expect_all_pass(const std::vector<PropertyResult>& results) {
  ASSERT_FALSE(results.empty());
  for (std::size_t i = 0; i + 1 < results.size(); ++i) EXPECT_GT(results[i].cases, 0u) << results[i].property;
  for (const auto& p : results) EXPECT_TRUE(p.passed) << p.suite << ": " << p.property << " -- " << p.counterexample;
  // Last property of each suite records the oracle comparison; linalg and
  // structural build no modules, so it may have zero cases there.
  EXPECT_EQ(results.back().property, "both Tate oracles agree on every module built");
}

VerifyOptions small() {
  VerifyOptions o;
  o.max_order = 8;
  o.stability_max_order = 4;
  o.fuzz_modules = 10;
  return o;
}

}  // namespace

TEST(Verify, SuiteNames) {
  const auto& names = suite_names();
  for (const char* s : {"linalg", "gamma-axioms", "theorem-3-1", "prop-3-5", "prop-4-4", "stability", "structural",
                        "oracle-fuzz", "all"})
    EXPECT_NE(std::find(names.begin(), names.end(), s), names.end()) << s;
}

TEST(Verify, UnknownSuiteThrows) { EXPECT_THROW((void)verify("nonsense"), InvalidArgumentError); }

TEST(Verify, FastSuitesPass) {
  for (const char* s : {"linalg", "structural", "gamma-axioms", "theorem-3-1", "prop-3-5", "oracle-fuzz"})
    expect_all_pass(verify(s, small()));
  EXPECT_GT(verify("theorem-3-1", small()).back().cases, 0u);
}

TEST(Verify, StabilityOnSmallGroups) { expect_all_pass(verify("stability", small())); }

TEST(Verify, SameSeedSameResults) {
  const auto a = verify("oracle-fuzz", small());
  const auto b = verify("oracle-fuzz", small());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].property, b[i].property);
    EXPECT_EQ(a[i].cases, b[i].cases);
    EXPECT_EQ(a[i].passed, b[i].passed);
  }
}

TEST(Verify, ReportFormats) {
  const auto r = verify("linalg", small());
  EXPECT_TRUE(all_passed(r));
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(j.at("properties").size(), r.size());
  EXPECT_EQ(format_text(r).rfind("PASS linalg: ", 0), 0u);

  std::vector<PropertyResult> failing{{"x", "broken", false, 3, "case 2"}};
  EXPECT_FALSE(all_passed(failing));
  EXPECT_EQ(nlohmann::json::parse(to_json(failing)).at("properties")[0].at("counterexample"), "case 2");
}
