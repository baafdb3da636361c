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

// Shared test data: the small hand-checked matrices, the six-observation
// example and a seeded generator of random instances.

#ifndef PORTSCHED_TESTS_FIXTURES_HPP_
#define PORTSCHED_TESTS_FIXTURES_HPP_

#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "portsched/distributions.hpp"
#include "portsched/model.hpp"

namespace portsched::testing {

// A: p1@2, p2@5; B: p3@3.
inline EvaluationMatrix Toy1() {
  EvaluationMatrix m({"A", "B"}, {"p1", "p2", "p3"});
  m.Add("A", "p1", {Status::kSol, 2});
  m.Add("A", "p2", {Status::kSol, 5});
  m.Add("B", "p3", {Status::kSol, 3});
  return m;
}

// A: p1@2; B: p2, p3, p4 @6.
inline EvaluationMatrix Toy2() {
  EvaluationMatrix m({"A", "B"}, {"p1", "p2", "p3", "p4"});
  m.Add("A", "p1", {Status::kSol, 2});
  for (const char* p : {"p2", "p3", "p4"}) m.Add("B", p, {Status::kSol, 6});
  return m;
}

inline ObservationSet Obs1() {
  return {{Status::kTmo, 1}, {Status::kSol, 2}, {Status::kTmo, 3},
          {Status::kSol, 4}, {Status::kSol, 5}, {Status::kGup, 6}};
}

struct RandomSpec {
  int max_strategies = 8;
  int max_problems = 15;
  Mi max_time = 32;
  double solve_rate = 0.35;
};

// Deterministic-view instance with at most one SOL per cell; unsolved cells
// get a TMO or GUP so the matrix also exercises non-SOL rows.
inline EvaluationMatrix RandomMatrix(std::mt19937_64& rng,
                                     const RandomSpec& spec = {}) {
  std::uniform_int_distribution<int> ns(1, spec.max_strategies);
  std::uniform_int_distribution<int> np(1, spec.max_problems);
  std::uniform_int_distribution<Mi> time(1, spec.max_time);
  std::bernoulli_distribution solved(spec.solve_rate);
  std::bernoulli_distribution gup(0.3);
  const int n_s = ns(rng), n_p = np(rng);
  std::vector<StrategyId> strategies;
  std::vector<ProblemId> problems;
  for (int i = 0; i < n_s; ++i) strategies.push_back("s" + std::to_string(i));
  for (int i = 0; i < n_p; ++i) problems.push_back("p" + std::to_string(i));
  EvaluationMatrix m(strategies, problems);
  for (const auto& s : strategies) {
    for (const auto& p : problems) {
      if (solved(rng)) {
        m.Add(s, p, {Status::kSol, time(rng)});
      } else {
        m.Add(s, p, {gup(rng) ? Status::kGup : Status::kTmo, time(rng)});
      }
    }
  }
  return m;
}

// Random metadata over the matrix strategies: witness among the problems
// (a few strategies without one), a discovery day and two options.
inline std::vector<StrategyMeta> RandomMeta(const EvaluationMatrix& m,
                                            std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, m.num_problems() - 1);
  std::uniform_real_distribution<double> day(0.0, 20.0);
  std::bernoulli_distribution coin(0.5), rare(0.1);
  std::vector<StrategyMeta> out;
  for (const StrategyId& id : m.strategies()) {
    StrategyMeta meta;
    meta.id = id;
    if (!rare(rng)) meta.witness = m.problems()[pick(rng)];
    meta.discovered_at = day(rng);
    meta.options["av"] = coin(rng) ? "on" : "off";
    if (coin(rng)) meta.options["sa"] = coin(rng) ? "lrs" : "otter";
    out.push_back(std::move(meta));
  }
  return out;
}

struct BucketCounts {
  std::optional<std::string> value;  // nullopt = option absent
  int strategies = 0;
  int unique = 0;
};

struct BucketDataset {
  EvaluationMatrix matrix;
  std::vector<StrategyMeta> meta;
};

// Realizes the requested (strategy count, uniquely solved count) per value
// of `option`. Each unique problem is solved by one strategy of its bucket;
// a few extra problems are solved by one strategy of every bucket so they
// count for none.
inline BucketDataset MakeBucketDataset(const std::string& option,
                                       const std::vector<BucketCounts>& spec,
                                       int shared = 5) {
  auto id = [](const char* prefix, std::size_t b, int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%02zu_%05d", prefix, b, i);
    return std::string(buf);
  };
  std::vector<StrategyId> strategies;
  std::vector<ProblemId> problems;
  for (std::size_t b = 0; b < spec.size(); ++b) {
    for (int i = 0; i < spec[b].strategies; ++i) strategies.push_back(id("s", b, i));
    for (int i = 0; i < spec[b].unique; ++i) problems.push_back(id("u", b, i));
  }
  for (int i = 0; i < shared; ++i) problems.push_back(id("c", 0, i));
  BucketDataset out{EvaluationMatrix(strategies, problems), {}};
  for (std::size_t b = 0; b < spec.size(); ++b) {
    for (int i = 0; i < spec[b].strategies; ++i) {
      StrategyMeta m;
      m.id = id("s", b, i);
      if (spec[b].value) m.options[option] = *spec[b].value;
      out.meta.push_back(std::move(m));
    }
    for (int i = 0; i < spec[b].unique; ++i) {
      out.matrix.Add(id("s", b, i % spec[b].strategies), id("u", b, i),
                     {Status::kSol, 1 + i % 7});
    }
    if (spec[b].strategies > 0) {
      for (int i = 0; i < shared; ++i) {
        out.matrix.Add(id("s", b, 0), id("c", 0, i), {Status::kSol, 3});
      }
    }
  }
  return out;
}

}  // namespace portsched::testing

#endif  // PORTSCHED_TESTS_FIXTURES_HPP_
