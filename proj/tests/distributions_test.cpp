// Copyright 2026 The portsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "portsched/distributions.hpp"
#include "portsched/io.hpp"

namespace portsched {
namespace {

using testing::Toy1;

const OptionDistributionRow& Row(const OptionDistribution& d,
                                 std::optional<std::string> value) {
  for (const auto& row : d.rows) {
    if (row.value == value) return row;
  }
  throw std::runtime_error("missing row " + value.value_or("N/A"));
}

TEST(UniquelySolvedTest, Toy1) {
  const EvaluationMatrix m = Toy1();
  EXPECT_EQ(UniquelySolved(m, {"A"}), (std::vector<ProblemId>{"p1", "p2"}));
  EXPECT_EQ(UniquelySolved(m, {"B"}), (std::vector<ProblemId>{"p3"}));
  EXPECT_EQ(UniquelySolved(m, {"A", "B"}),
            (std::vector<ProblemId>{"p1", "p2", "p3"}));
  EXPECT_TRUE(UniquelySolved(m, {}).empty());
  EXPECT_THROW(UniquelySolved(m, {"Z"}), LookupError);
}

TEST(UniquelySolvedTest, Properties) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const EvaluationMatrix m = testing::RandomMatrix(rng);
    std::size_t singles = 0;
    for (std::size_t p = 0; p < m.num_problems(); ++p) {
      int solvers = 0;
      for (std::size_t s = 0; s < m.num_strategies(); ++s) {
        solvers += m.solve_time(s, p) != kNever;
      }
      singles += solvers == 1;
    }
    std::size_t total = 0;
    for (const StrategyId& s : m.strategies()) {
      total += UniquelySolved(m, {s}).size();
    }
    EXPECT_LE(total, singles);

    std::bernoulli_distribution coin(0.5);
    std::set<StrategyId> s1, s2;
    for (const StrategyId& s : m.strategies()) {
      if (coin(rng)) s1.insert(s);
      if (coin(rng)) s2.insert(s);
    }
    std::set<StrategyId> both = s1;
    both.insert(s2.begin(), s2.end());
    const auto u = UniquelySolved(m, both);
    const std::set<ProblemId> uset(u.begin(), u.end());
    for (const auto& part : {s1, s2}) {
      for (const ProblemId& p : UniquelySolved(m, part)) {
        EXPECT_TRUE(uset.contains(p));
      }
    }
  }
}

TEST(OptionDistributionTest, AvatarTable) {
  const auto data = testing::MakeBucketDataset(
      "avatar", {{"off", 544, 37}, {"on", 2074, 424}, {std::nullopt, 157, 6}});
  const OptionDistribution d =
      OptionValueDistribution(data.matrix, data.meta, "avatar");
  ASSERT_EQ(d.rows.size(), 3u);
  EXPECT_FALSE(d.uniform_fallback);
  const auto& off = Row(d, "off");
  const auto& on = Row(d, "on");
  const auto& na = Row(d, std::nullopt);
  EXPECT_EQ(off.strategy_count, 544);
  EXPECT_EQ(off.unique_solved, 37);
  EXPECT_EQ(on.unique_solved, 424);
  EXPECT_EQ(na.unique_solved, 6);
  EXPECT_FALSE(d.rows.back().value.has_value());
  EXPECT_NEAR(off.per_strategy, 0.07, 0.005);
  EXPECT_NEAR(on.per_strategy, 0.20, 0.005);
  EXPECT_NEAR(na.per_strategy, 0.04, 0.005);
  EXPECT_NEAR(*off.normalized, 0.25, 0.005);
  EXPECT_NEAR(*on.normalized, 0.75, 0.005);
  EXPECT_FALSE(na.normalized.has_value());
  EXPECT_EQ(Fixed2(off.per_strategy), "0.07");
  EXPECT_EQ(Fixed2(*on.normalized), "0.75");
}

TEST(OptionDistributionTest, SaturationTable) {
  const auto data = testing::MakeBucketDataset(
      "sa", {{"otter", 273, 33},
             {"lrs", 1493, 154},
             {"discount", 852, 74},
             {"fmb", 93, 6},
             {"inst_gen", 64, 0}});
  const OptionDistribution d =
      OptionValueDistribution(data.matrix, data.meta, "sa");
  const std::vector<std::pair<std::string, double>> expected = {
      {"otter", 0.32}, {"lrs", 0.27}, {"discount", 0.23},
      {"fmb", 0.17},   {"inst_gen", 0.00}};
  double sum = 0;
  for (const auto& [value, norm] : expected) {
    const auto& row = Row(d, value);
    EXPECT_NEAR(*row.normalized, norm, 0.005) << value;
    EXPECT_EQ(Fixed2(*row.normalized), Fixed2(norm)) << value;
    sum += *row.normalized;
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(OptionDistributionTest, SingleBucketAndFallback) {
  const auto one = testing::MakeBucketDataset("x", {{"v", 3, 2}});
  const OptionDistribution d = OptionValueDistribution(one.matrix, one.meta, "x");
  ASSERT_EQ(d.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(*d.rows[0].normalized, 1.0);

  const auto zero =
      testing::MakeBucketDataset("x", {{"a", 2, 0}, {"b", 3, 0}}, 2);
  const OptionDistribution z =
      OptionValueDistribution(zero.matrix, zero.meta, "x");
  EXPECT_TRUE(z.uniform_fallback);
  EXPECT_DOUBLE_EQ(*z.rows[0].normalized, 0.5);
  EXPECT_DOUBLE_EQ(*z.rows[1].normalized, 0.5);
}

TEST(OptionDistributionTest, Errors) {
  const auto data = testing::MakeBucketDataset("x", {{"v", 3, 2}});
  EXPECT_THROW(OptionValueDistribution(data.matrix, data.meta, "nope"),
               EmptyAnalysisError);
  EXPECT_THROW(OptionValueDistribution(data.matrix, {}, "x"), LookupError);
}

TEST(OptionDistributionTest, NormalizedSumsToOne) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const EvaluationMatrix m = testing::RandomMatrix(rng);
    const auto meta = testing::RandomMeta(m, rng);
    const OptionDistribution d = OptionValueDistribution(m, meta, "av");
    double sum = 0, per = 0;
    for (const auto& row : d.rows) {
      if (!row.value) continue;
      EXPECT_GE(*row.normalized, 0.0);
      sum += *row.normalized;
      per += row.per_strategy;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_EQ(d.uniform_fallback, per == 0.0);
  }
}

TEST(ConditionalDistributionTest, LayoutAndSingleSidedGroup) {
  // Group X: only sac=off strategies solve anything; group Y: both do.
  EvaluationMatrix m({"x_off", "x_on", "y_off", "y_on", "z"},
                     {"p1", "p2", "p3", "p4"});
  m.Add("x_off", "p1", {Status::kSol, 1});
  m.Add("y_off", "p2", {Status::kSol, 1});
  m.Add("y_on", "p3", {Status::kSol, 1});
  m.Add("z", "p4", {Status::kSol, 1});
  auto meta_of = [](const char* id, const char* sa, const char* sac) {
    StrategyMeta meta;
    meta.id = id;
    if (sa) meta.options["sa"] = sa;
    if (sac) meta.options["sac"] = sac;
    return meta;
  };
  const std::vector<StrategyMeta> meta = {
      meta_of("x_off", "X", "off"), meta_of("x_on", "X", "on"),
      meta_of("y_off", "Y", "off"), meta_of("y_on", "Y", "on"),
      meta_of("z", "Z", nullptr)};
  const auto rows = ConditionalOptionDistribution(m, meta, "sac", "sa");
  ASSERT_EQ(rows.size(), 3u);  // Z omitted: sac never applies there
  EXPECT_EQ(rows[0].given, "X");
  EXPECT_DOUBLE_EQ(*Row(rows[0].distribution, "off").normalized, 1.0);
  EXPECT_DOUBLE_EQ(*Row(rows[0].distribution, "on").normalized, 0.0);
  EXPECT_EQ(rows[1].given, "Y");
  EXPECT_DOUBLE_EQ(*Row(rows[1].distribution, "off").normalized, 0.5);
  EXPECT_FALSE(rows[2].given.has_value());
  // Unconditional over X and Y: off solves p1, p2 with 2 strategies.
  EXPECT_EQ(Row(rows[2].distribution, "off").unique_solved, 2);
  EXPECT_EQ(Row(rows[2].distribution, "on").unique_solved, 1);
  EXPECT_NEAR(*Row(rows[2].distribution, "off").normalized, 2.0 / 3, 1e-12);

  EXPECT_THROW(ConditionalOptionDistribution(m, meta, "nope", "sa"),
               EmptyAnalysisError);
}

TEST(SamplingFrequencyTest, Examples) {
  auto meta_of = [](std::optional<std::string> av) {
    StrategyMeta m;
    m.id = "s";
    if (av) m.options["av"] = *av;
    return m;
  };
  const std::vector<StrategyMeta> three = {meta_of("on"), meta_of("on"),
                                           meta_of("off")};
  const auto f = UpdateSamplingFrequencies(three, "av");
  EXPECT_EQ(f.at("on").count, 2);
  EXPECT_DOUBLE_EQ(f.at("on").frequency, 2.0 / 3);
  EXPECT_DOUBLE_EQ(f.at("off").frequency, 1.0 / 3);
  EXPECT_TRUE(UpdateSamplingFrequencies({}, "av").empty());
  const std::vector<StrategyMeta> partial = {meta_of("on"), meta_of(std::nullopt),
                                             meta_of("off")};
  EXPECT_DOUBLE_EQ(UpdateSamplingFrequencies(partial, "av").at("on").frequency,
                   0.5);
}

// ---------------------------------------------------------------------------
// Luby
// ---------------------------------------------------------------------------

TEST(LubyTest, Sequence) {
  const std::vector<std::uint64_t> expected = {1, 1, 2, 1, 1, 2, 4, 1, 1, 2,
                                               1, 1, 2, 4, 8, 1};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(Luby(i + 1), expected[i]) << i + 1;
  }
}

TEST(LubyLimitsTest, ProgressionAndCap) {
  LubyLimits limits(2000, 256000);
  const std::vector<Mi> values = limits.Take(600);
  EXPECT_EQ(std::vector<Mi>(values.begin(), values.begin() + 7),
            (std::vector<Mi>{2000, 2000, 4000, 2000, 2000, 4000, 8000}));
  const auto first = std::find(values.begin(), values.end(), 256000);
  EXPECT_EQ(first - values.begin() + 1, 255);
  EXPECT_EQ(values[255], 2000);
}

TEST(LubyLimitsTest, UnitAndValidation) {
  LubyLimits unit(1, 1);
  EXPECT_EQ(unit.Take(5), (std::vector<Mi>(5, 1)));
  EXPECT_THROW(LubyLimits(2000, 3000), ArgumentError);
  EXPECT_THROW(LubyLimits(2000, 6000), ArgumentError);
  EXPECT_THROW(LubyLimits(0, 8), ArgumentError);
  EXPECT_THROW(LubyLimits(8, 4), ArgumentError);
}

TEST(LubyLimitsTest, PowersOfTwoBelowCapAndCycle) {
  for (Mi cap_exp = 0; cap_exp <= 6; ++cap_exp) {
    const Mi base = 3, cap = base << cap_exp;
    LubyLimits limits(base, cap);
    const std::vector<Mi> values = limits.Take(1000);
    std::vector<std::size_t> cap_at;
    for (std::size_t i = 0; i < values.size(); ++i) {
      EXPECT_EQ(values[i] % base, 0);
      const Mi r = values[i] / base;
      EXPECT_EQ(r & (r - 1), 0);
      EXPECT_LE(values[i], cap);
      if (values[i] == cap) cap_at.push_back(i);
    }
    ASSERT_GE(cap_at.size(), 2u);
    const std::size_t period = cap_at[0] + 1;
    for (std::size_t i = period; i < values.size(); ++i) {
      EXPECT_EQ(values[i], values[i - period]);
    }
  }
}

// ---------------------------------------------------------------------------
// Problem sampling
// ---------------------------------------------------------------------------

TEST(SampleProblemTest, PicksOnlyUncovered) {
  EvaluationMatrix m({"s1", "s2"}, {"p1", "p2", "p3", "p4"});
  m.Add("s1", "p1", {Status::kSol, 1});
  m.Add("s2", "p3", {Status::kSol, 1});  // witness forgotten, so inactive
  std::vector<StrategyMeta> meta(2);
  meta[0].id = "s1";
  meta[0].witness = "p1";
  meta[1].id = "s2";
  meta[1].witness = "p2";
  Rng rng(1);
  EXPECT_EQ(PickUncoveredProblem({"p1", "p3"}, meta, m, rng), "p3");

  meta[1].witness = "p3";
  EXPECT_EQ(PickUncoveredProblem({"p1", "p3"}, meta, m, rng), std::nullopt);
}

TEST(SampleProblemTest, ForgetsHalfDeterministically) {
  std::vector<ProblemId> problems;
  for (int i = 0; i < 9; ++i) problems.push_back("p" + std::to_string(i));
  EvaluationMatrix m({"s"}, problems);
  std::vector<StrategyMeta> meta(1);
  meta[0].id = "s";
  const ProblemSample a = SampleUncoveredProblem(problems, meta, m, 42);
  const ProblemSample b = SampleUncoveredProblem(problems, meta, m, 42);
  EXPECT_EQ(a.forgotten, b.forgotten);
  EXPECT_EQ(a.pick, b.pick);
  EXPECT_EQ(a.forgotten.size(), 4u);
  EXPECT_EQ(a.remaining.size(), 5u);
  ASSERT_TRUE(a.pick.has_value());
  EXPECT_TRUE(std::find(a.remaining.begin(), a.remaining.end(), *a.pick) !=
              a.remaining.end());
  std::set<std::vector<ProblemId>> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    seen.insert(SampleUncoveredProblem(problems, meta, m, seed).forgotten);
  }
  EXPECT_GT(seen.size(), 1u);
  EXPECT_THROW(SampleUncoveredProblem({}, meta, m, 1), ArgumentError);
}

TEST(RandomTest, UniformIndexInRange) {
  Rng rng(7);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 5000; ++i) ++hits[UniformIndex(rng, 5)];
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_EQ(UniformIndex(rng, 1), 0u);
}

}  // namespace
}  // namespace portsched
