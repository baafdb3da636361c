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

#include <random>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "portsched/greedy.hpp"
#include "portsched/io.hpp"

namespace portsched {
namespace {

EvaluationMatrix NoisyMatrix(std::mt19937_64& rng) {
  EvaluationMatrix m = testing::RandomMatrix(rng);
  std::uniform_int_distribution<int> extra(0, 2), st(0, 2);
  std::uniform_int_distribution<Mi> time(0, 50);
  for (std::size_t s = 0; s < m.num_strategies(); ++s) {
    for (std::size_t p = 0; p < m.num_problems(); ++p) {
      for (int i = extra(rng); i > 0; --i) {
        m.Add(s, p, {static_cast<Status>(st(rng)), time(rng)});
      }
    }
  }
  return m;
}

TEST(MatrixCsvTest, RoundTripIsFixedPoint) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 50; ++i) {
    const EvaluationMatrix m = NoisyMatrix(rng);
    const std::string csv = MatrixToCsv(m);
    const EvaluationMatrix back = LoadMatrixCsv(csv);
    EXPECT_EQ(back, m);
    EXPECT_EQ(MatrixToCsv(back), csv);
  }
}

TEST(MatrixCsvTest, SkipsBlankLines) {
  const EvaluationMatrix m = LoadMatrixCsv(
      "strategy,problem,status,time\n\nA,p1,SOL,2\n\n");
  EXPECT_EQ(m.num_strategies(), 1u);
}

TEST(MatrixJsonTest, RoundTrip) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 30; ++i) {
    const EvaluationMatrix m = NoisyMatrix(rng);
    const Json j = MatrixToJson(m);
    EXPECT_EQ(MatrixFromJson(Json::parse(j.dump())), m);
  }
  const Json toy = MatrixToJson(testing::Toy1());
  EXPECT_EQ(toy["strategies"], Json({"A", "B"}));
  EXPECT_EQ(toy["cells"].size(), 3u);
  EXPECT_EQ(toy["cells"][0]["obs"][0]["status"], "SOL");
}

TEST(MatrixJsonTest, RejectsBadInput) {
  EXPECT_THROW(MatrixFromJson(Json::parse("{}")), ParseError);
  EXPECT_THROW(MatrixFromJson(Json::parse(
                   R"({"strategies":["A"],"problems":["p"],"cells":[
                      {"strategy":"Z","problem":"p","obs":[]}]})")),
               ParseError);
  EXPECT_THROW(MatrixFromJson(Json::parse(
                   R"({"strategies":["A"],"problems":["p"],"cells":[
                      {"strategy":"A","problem":"p",
                       "obs":[{"status":"WIN","time":1}]}]})")),
               ParseError);
  EXPECT_THROW(MatrixFromJson(Json::parse(
                   R"({"strategies":["A"],"problems":["p"],"cells":[
                      {"strategy":"A","problem":"p",
                       "obs":[{"status":"SOL","time":-1}]}]})")),
               ParseError);
}

TEST(ScheduleIoTest, JsonAndTextRoundTrip) {
  const Schedule s{{"A", 5}, {"B", 3}, {"A", 9}};
  const Json j = ScheduleToJson(s);
  EXPECT_EQ(j["total"], 17);
  EXPECT_EQ(ScheduleFromJson(Json::parse(j.dump())), s);
  EXPECT_EQ(ParseSchedule(j.dump(2)), s);
  EXPECT_EQ(ParseSchedule(ScheduleToText(s)), s);
  EXPECT_EQ(ParseSchedule("A 5\r\n\nB 3\nA 9\n"), s);
  EXPECT_TRUE(ParseSchedule("").empty());
}

TEST(ScheduleIoTest, RejectsBadInput) {
  EXPECT_THROW(ParseSchedule("A\n"), ParseError);
  EXPECT_THROW(ParseSchedule("A 0\n"), ParseError);
  EXPECT_THROW(ParseSchedule("A -3\n"), ParseError);
  EXPECT_THROW(ParseSchedule("A 3 4\n"), ParseError);
  EXPECT_THROW(ParseSchedule("{\"slices\": ["), ParseError);
  EXPECT_THROW(ParseSchedule(R"({"slices":[{"strategy":"A","limit":0}]})"),
               ParseError);
}

TEST(JournalIoTest, RoundTrip) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    const EvaluationMatrix m = testing::RandomMatrix(rng);
    RegularizationParams p;
    p.alpha = 1.3;
    p.beta = 0.3;
    const Journal j = ConstructGreedy(m, 60, p).journal;
    const Journal back = JournalFromJson(Json::parse(JournalToJson(j).dump()));
    EXPECT_EQ(back.entries, j.entries);
  }
  EXPECT_THROW(JournalFromJson(Json::parse(R"({"entries":[{}]})")),
               ParseError);
}

TEST(MetaIoTest, RoundTrip) {
  std::mt19937_64 rng(54);
  const EvaluationMatrix m = testing::RandomMatrix(rng);
  auto meta = testing::RandomMeta(m, rng);
  meta[0].probe_limit = 2000;
  auto back = MetaFromJson(Json::parse(MetaToJson(meta).dump()));
  auto by_id = [](const StrategyMeta& a, const StrategyMeta& b) {
    return a.id < b.id;
  };
  std::sort(meta.begin(), meta.end(), by_id);
  std::sort(back.begin(), back.end(), by_id);
  EXPECT_EQ(back, meta);
}

TEST(MetaIoTest, ParsesDocumentedLayout) {
  const auto meta = MetaFromJson(Json::parse(R"({"strategies": {
      "s1": {"witness": "p1", "discovered_at": 1.5, "probe_limit": 100,
             "options": {"avatar": "on", "age_weight": 4}},
      "s2": {}}})"));
  ASSERT_EQ(meta.size(), 2u);
  EXPECT_EQ(meta[0].witness, "p1");
  EXPECT_EQ(meta[0].options.at("age_weight"), "4");
  EXPECT_FALSE(meta[1].witness.has_value());
  EXPECT_THROW(MetaFromJson(Json::parse("[]")), ParseError);
}

TEST(ReportTest, CurveAndDistributionCsv) {
  EXPECT_EQ(CurveToCsv({{2, 1}, {5, 3}}), "time,solved\n2,1\n5,3\n");
  OptionDistribution d;
  d.rows.push_back({"on", 4, 1, 0.25, 1.0});
  d.rows.push_back({std::nullopt, 2, 0, 0.0, std::nullopt});
  EXPECT_EQ(DistributionCsvHeader(false),
            "value,strategies,unique_absolute,unique_per_strategy,"
            "distribution\n");
  EXPECT_EQ(DistributionRowsToCsv(d), "on,4,1,0.25,1.00\nN/A,2,0,0.00,\n");
  const std::string given = "lrs";
  EXPECT_EQ(DistributionRowsToCsv(d, &given).substr(0, 4), "lrs,");
  EXPECT_EQ(Fixed2(0.2044), "0.20");
  EXPECT_EQ(Fixed2(0.0), "0.00");
}

}  // namespace
}  // namespace portsched
