#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "gtorsion/errors.hpp"
#include "gtorsion/pipeline.hpp"
#include "support/oracles.hpp"

using namespace gtorsion;

namespace {

std::vector<Integer> ints(std::initializer_list<std::int64_t> xs) { return {xs.begin(), xs.end()}; }

/// Scoped setenv / unsetenv.
class EnvVar {
 public:
  EnvVar(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    if (value) setenv(name, value, 1);
    else unsetenv(name);
  }
  ~EnvVar() {
    if (old_) setenv(name_, old_->c_str(), 1);
    else unsetenv(name_);
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

}  // namespace

TEST(Compute, KleinFourBothSides) {
  const auto r = compute("C2xC2", Side::both);
  EXPECT_EQ(r.group, "C2xC2");
  EXPECT_EQ(r.order, 4u);
  ASSERT_TRUE(r.ker && r.coker);
  EXPECT_FALSE(r.sum);
  EXPECT_EQ(r.ker->zrank, 7u);
  EXPECT_EQ(r.ker->gamma_zrank, 28u);
  EXPECT_TRUE(r.ker->h0.is_trivial());
  // The coker side is trivial as well (not (Z/2)^2).
  EXPECT_TRUE(r.coker->h0.is_trivial());
  EXPECT_TRUE(r.all_checks_passed());
}

TEST(Compute, TableRowsWithTorsion) {
  EXPECT_EQ(compute("C4xC2xC2", Side::ker).ker->h0.torsion, ints({2, 2}));
  EXPECT_EQ(compute("Q8xC2", Side::ker).ker->h0.torsion, ints({2, 2, 2, 2}));
}

TEST(Compute, StageTimingsInOrder) {
  const auto r = compute("C3", Side::sum);
  std::vector<std::string> stages;
  for (const auto& [s, ms] : r.timings_ms) {
    stages.push_back(s);
    EXPECT_GE(ms, 0.0);
  }
  EXPECT_EQ(stages, (std::vector<std::string>{"presentation_complex", "ker_d2", "coker_d2", "gamma_sum", "h0_sum",
                                              "h0_norm_sum"}));
  ASSERT_TRUE(r.sum);
  EXPECT_EQ(r.sum->zrank, 4u);
}

TEST(Compute, OrderBound) {
  EXPECT_THROW((void)compute("C6xC6", Side::ker), OrderBoundError);
  ComputeOptions opts;
  opts.max_order = 8;
  EXPECT_THROW((void)compute("C4xC4", Side::ker, opts), OrderBoundError);
  EXPECT_THROW((void)compute(catalog("C4xC4"), Side::ker, opts), OrderBoundError);
}

TEST(Compute, BadSpec) {
  EXPECT_THROW((void)compute("C2yC2", Side::ker), ParseError);
  EXPECT_THROW((void)compute("@/nonexistent/group.json", Side::ker), ParseError);
}

TEST(Compute, GroupFile) {
  const std::string path = ::testing::TempDir() + "gtorsion_d8.json";
  {
    std::ofstream out(path);
    out << group_to_json(catalog("D8"));
  }
  const auto r = compute("@" + path, Side::ker);
  EXPECT_EQ(r.order, 8u);
  EXPECT_TRUE(r.ker->h0.is_trivial());
}

TEST(Compute, DefaultMaxOrderFromEnvironment) {
  {
    EnvVar unset("GAMMA_TORSION_MAX_ORDER", nullptr);
    EXPECT_EQ(default_max_order(), 32u);
  }
  {
    EnvVar set("GAMMA_TORSION_MAX_ORDER", "40");
    EXPECT_EQ(default_max_order(), 40u);
  }
  {
    EnvVar bad("GAMMA_TORSION_MAX_ORDER", "forty");
    EXPECT_THROW((void)default_max_order(), ParseError);
  }
}

TEST(SideNames, ParseAndPrint) {
  for (Side s : {Side::ker, Side::coker, Side::both, Side::sum}) EXPECT_EQ(parse_side(to_string(s)), s);
  EXPECT_THROW((void)parse_side("left"), ParseError);
}

TEST(Table, CatalogOrderAndBounds) {
  const auto t = table(4);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].group, "C1");
  EXPECT_EQ(t[4].group, "C2xC2");
  for (const auto& r : t) EXPECT_TRUE(r.ker->h0.is_trivial()) << r.group;
  const auto one = table(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].ker->h0.is_trivial());
}

TEST(Json, RoundTrip) {
  const auto r = compute("C4xC2xC2", Side::both);
  const auto back = report_from_json(to_json(r));
  EXPECT_EQ(back, r);
  const std::vector<ComputationReport> rs{r, compute("C2", Side::sum)};
  EXPECT_EQ(reports_from_json(to_json(std::span<const ComputationReport>(rs), 2)), rs);
}

TEST(Json, Schema) {
  const auto j = nlohmann::json::parse(to_json(compute("C4xC2xC2", Side::ker)));
  EXPECT_EQ(j.at("group"), "C4xC2xC2");
  EXPECT_EQ(j.at("order"), 16);
  EXPECT_EQ(j.at("ker").at("zrank"), 63);
  EXPECT_EQ(j.at("ker").at("h0"), nlohmann::json::array({2, 2}));
  EXPECT_TRUE(j.at("timings_ms").is_object());
  EXPECT_TRUE(j.at("checks").is_array());
  EXPECT_FALSE(j.contains("coker"));
}

TEST(Json, BigInvariantFactorsAreStrings) {
  ComputationReport r;
  r.group = "X";
  r.order = 2;
  r.ker = TargetReport{1, 1, AbelianInvariants{0, {pow(Integer(2), 70)}}};
  const auto text = to_json(r);
  EXPECT_NE(text.find("\"1180591620717411303424\""), std::string::npos);
  EXPECT_EQ(report_from_json(text), r);
}

TEST(Json, MalformedInput) {
  EXPECT_THROW((void)report_from_json("{"), ParseError);
  EXPECT_THROW((void)report_from_json(R"({"order": 4})"), ParseError);
  EXPECT_THROW((void)report_from_json(R"({"group": "C4", "order": 4, "ker": {"zrank": 3, "h0": [4, 2]}})"), ParseError);
  EXPECT_THROW((void)reports_from_json(R"({"group": "C4"})"), ParseError);
}

TEST(Text, FormatsMentionResults) {
  const auto r = compute("C4xC2xC2", Side::ker);
  const auto text = format_text(r);
  EXPECT_NE(text.find("(Z/2)^2"), std::string::npos);
  EXPECT_EQ(text.find("FAIL"), std::string::npos);
  const std::vector<ComputationReport> rs{r};
  EXPECT_NE(format_table(rs).find("C4xC2xC2"), std::string::npos);
}

TEST(PipelineProperty, DeterministicAcrossRuns) {
  for (const char* g : {"D8", "C6", "C3xC3"}) {
    auto a = compute(g, Side::both), b = compute(g, Side::both);
    a.timings_ms.clear();
    b.timings_ms.clear();
    EXPECT_EQ(a, b) << g;
  }
}

TEST(PipelineProperty, RandomReportsRoundTrip) {
  oracle::Gen gen(601);
  for (int trial = 0; trial < 100; ++trial) {
    ComputationReport r;
    r.group = "G" + std::to_string(trial);
    r.order = static_cast<std::size_t>(gen.between(1, 64));
    auto target = [&] {
      std::vector<Integer> orders;
      for (auto k = gen.between(0, 4); k > 0; --k) orders.push_back(gen.between(2, 8));
      const std::size_t z = gen.index(40);
      return TargetReport{z, z * (z + 1) / 2, AbelianInvariants::from_cyclic_orders(0, orders)};
    };
    if (gen.coin()) r.ker = target();
    if (gen.coin()) r.coker = target();
    if (gen.coin()) r.sum = target();
    for (const char* s : {"presentation_complex", "ker_d2", "gamma_ker"})
      if (gen.coin()) r.timings_ms.emplace_back(s, static_cast<double>(gen.between(0, 1000)) / 8.0);
    r.checks.push_back({"x", gen.coin()});
    ASSERT_EQ(report_from_json(to_json(r, gen.coin() ? 2 : -1)), r);
  }
}
