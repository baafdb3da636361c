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

// Train/test evaluation of schedule constructors.
//
// A split trains on the strategies whose witness problem is a training
// problem and on the training problems only; the resulting schedule is
// then simulated on the test problems with the full matrix rows. Solved
// counts are rescaled to the size of the whole problem set.

#ifndef PORTSCHED_HARNESS_HPP_
#define PORTSCHED_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "portsched/baselines.hpp"
#include "portsched/distributions.hpp"
#include "portsched/exact.hpp"
#include "portsched/greedy.hpp"
#include "portsched/model.hpp"
#include "portsched/probabilistic.hpp"
#include "portsched/random.hpp"
#include "portsched/simulate.hpp"

namespace portsched {

struct SplitSpec {
  std::vector<ProblemId> train;
  std::vector<ProblemId> test;
  int round = 0;
  int fold = 0;
};

// `rounds` independent random partitions into k near-equal folds; every
// fold serves once as the test set.
inline std::vector<SplitSpec> KFoldSplits(std::vector<ProblemId> problems,
                                          int k, int rounds,
                                          std::uint64_t seed) {
  std::sort(problems.begin(), problems.end());
  problems.erase(std::unique(problems.begin(), problems.end()),
                 problems.end());
  if (k < 2) throw ArgumentError("k must be >= 2");
  if (rounds < 1) throw ArgumentError("rounds must be >= 1");
  if (static_cast<std::size_t>(k) > problems.size()) {
    throw ArgumentError("k exceeds the number of problems");
  }
  Rng rng(seed);
  std::vector<SplitSpec> out;
  const std::size_t n = problems.size();
  for (int r = 0; r < rounds; ++r) {
    std::vector<ProblemId> order = problems;
    Shuffle(order, rng);
    std::size_t begin = 0;
    for (int f = 0; f < k; ++f) {
      const std::size_t size =
          n / k + (static_cast<std::size_t>(f) < n % k ? 1 : 0);
      SplitSpec split;
      split.round = r;
      split.fold = f;
      for (std::size_t i = 0; i < n; ++i) {
        (i >= begin && i < begin + size ? split.test : split.train)
            .push_back(order[i]);
      }
      std::sort(split.train.begin(), split.train.end());
      std::sort(split.test.begin(), split.test.end());
      out.push_back(std::move(split));
      begin += size;
    }
  }
  return out;
}

struct StrategySelection {
  std::vector<StrategyId> ids;
  // Strategies left out because a required field was missing.
  std::vector<StrategyId> warnings;
};

// Strategies whose witness problem is a training problem. Strategies with
// no witness are excluded (and reported) unless `include_unwitnessed`.
inline StrategySelection TrainingStrategySet(std::span<const StrategyMeta> meta,
                                             std::span<const ProblemId> train,
                                             bool include_unwitnessed = false) {
  const std::set<ProblemId> train_set(train.begin(), train.end());
  StrategySelection out;
  for (const StrategyMeta& m : meta) {
    if (!m.witness) {
      if (include_unwitnessed) {
        out.ids.push_back(m.id);
      } else {
        out.warnings.push_back(m.id);
      }
      continue;
    }
    if (train_set.contains(*m.witness)) out.ids.push_back(m.id);
  }
  std::sort(out.ids.begin(), out.ids.end());
  return out;
}

// Strategies discovered no later than `cutoff` days.
inline StrategySelection FilterByTimestamp(std::span<const StrategyMeta> meta,
                                           double cutoff) {
  StrategySelection out;
  for (const StrategyMeta& m : meta) {
    if (!m.discovered_at) {
      out.warnings.push_back(m.id);
    } else if (*m.discovered_at <= cutoff) {
      out.ids.push_back(m.id);
    }
  }
  std::sort(out.ids.begin(), out.ids.end());
  return out;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

enum class ConstructorKind { kGreedy, kProbabilistic, kExact, kPSetheo, kBuckets };

inline std::string_view ToString(ConstructorKind kind) {
  switch (kind) {
    case ConstructorKind::kGreedy:
      return "greedy";
    case ConstructorKind::kProbabilistic:
      return "probabilistic";
    case ConstructorKind::kExact:
      return "exact";
    case ConstructorKind::kPSetheo:
      return "psetheo";
    case ConstructorKind::kBuckets:
      return "buckets";
  }
  return "?";
}

inline std::optional<ConstructorKind> ParseConstructorKind(
    std::string_view text) {
  for (ConstructorKind k :
       {ConstructorKind::kGreedy, ConstructorKind::kProbabilistic,
        ConstructorKind::kExact, ConstructorKind::kPSetheo,
        ConstructorKind::kBuckets}) {
    if (ToString(k) == text) return k;
  }
  return std::nullopt;
}

struct ConstructorConfig {
  ConstructorKind kind = ConstructorKind::kGreedy;
  RegularizationParams params;
  ExtensionMode mode = ExtensionMode::kFull;
  double epsilon = kDefaultEpsilon;
  ExactLimits exact;
  Mi psetheo_step = 1;
  Mi psetheo_quantization = 1;
  Mi bucket = 1;
  bool include_unwitnessed = false;
};

struct Construction {
  Schedule schedule;
  // Coverage the constructor itself accounts for, where it tracks one.
  std::optional<Mi> reported_coverage;
};

inline Construction Construct(const EvaluationMatrix& matrix,
                              const ConstructorConfig& config, Budget budget) {
  auto need_budget = [&]() -> Mi {
    if (!budget) {
      throw ArgumentError(std::string(ToString(config.kind)) +
                          " requires a finite budget");
    }
    return *budget;
  };
  Construction out;
  switch (config.kind) {
    case ConstructorKind::kGreedy: {
      GreedyResult r = ConstructGreedy(matrix, budget, config.params,
                                       config.mode);
      Mi covered = 0;
      for (const JournalEntry& e : r.journal.entries) {
        covered += static_cast<Mi>(e.newly_covered.size());
      }
      out.schedule = std::move(r.schedule);
      out.reported_coverage = covered;
      break;
    }
    case ConstructorKind::kProbabilistic:
      out.schedule = ConstructProbabilistic(matrix, budget, config.params,
                                            config.epsilon)
                         .schedule;
      break;
    case ConstructorKind::kExact: {
      ExactSolution sol = SolveExact(matrix, need_budget(), config.exact);
      out.schedule = Schedule::FromPreSchedule(sol.pre);
      out.reported_coverage = sol.objective;
      break;
    }
    case ConstructorKind::kPSetheo:
      out.schedule = Schedule::FromPreSchedule(
          PSetheo(matrix, {config.psetheo_step, config.psetheo_quantization,
                           need_budget()}));
      break;
    case ConstructorKind::kBuckets:
      out.schedule = BucketSchedule(matrix, config.bucket, need_budget());
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

// No training strategy survived witness hygiene.
class FoldError : public Error {
 public:
  using Error::Error;
};

struct FoldResult {
  Mi train_solved = 0;
  Mi test_solved = 0;
  double train_rescaled = 0.0;
  std::optional<double> test_rescaled;  // absent for an empty test set
  Schedule schedule;
  std::optional<Mi> reported_coverage;
  std::vector<StrategyId> training_strategies;
  double fit_seconds = 0.0;
};

inline double Rescale(Mi solved, std::size_t total, std::size_t subset) {
  return static_cast<double>(solved) * static_cast<double>(total) /
         static_cast<double>(subset);
}

inline FoldResult EvaluateSplit(const EvaluationMatrix& matrix,
                                std::span<const StrategyMeta> meta,
                                const SplitSpec& split,
                                const ConstructorConfig& config,
                                Budget budget) {
  StrategySelection selected =
      TrainingStrategySet(meta, split.train, config.include_unwitnessed);
  std::vector<StrategyId> strategies;
  for (const StrategyId& id : selected.ids) {
    if (matrix.FindStrategy(id)) strategies.push_back(id);
  }
  if (strategies.empty()) {
    throw FoldError("no training strategy has its witness in the train set");
  }
  std::vector<ProblemId> train;
  for (const ProblemId& p : split.train) {
    train.push_back(matrix.problems()[matrix.ProblemIndex(p)]);
  }
  if (train.empty()) throw FoldError("train set is empty");
  const EvaluationMatrix restricted = matrix.Restrict(strategies, train);

  const auto start = std::chrono::steady_clock::now();
  Construction built = Construct(restricted, config, budget);
  const auto stop = std::chrono::steady_clock::now();

  FoldResult out;
  out.fit_seconds = std::chrono::duration<double>(stop - start).count();
  out.training_strategies = std::move(strategies);
  out.reported_coverage = built.reported_coverage;
  out.schedule = std::move(built.schedule);
  out.train_solved =
      static_cast<Mi>(SimulateSchedule(out.schedule, restricted).size());
  const PreSchedule pre = out.schedule.Collapse();
  for (const ProblemId& id : split.test) {
    const std::size_t p = matrix.ProblemIndex(id);
    for (const auto& [strategy, limit] : pre.limits()) {
      if (matrix.Solves(matrix.StrategyIndex(strategy), p, limit)) {
        ++out.test_solved;
        break;
      }
    }
  }
  out.train_rescaled =
      Rescale(out.train_solved, matrix.num_problems(), train.size());
  if (!split.test.empty()) {
    out.test_rescaled =
        Rescale(out.test_solved, matrix.num_problems(), split.test.size());
  }
  return out;
}

struct FoldRecord {
  SplitSpec split;
  std::optional<FoldResult> result;
  std::string error;  // set when the fold was skipped
};

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  std::size_t count = 0;
};

inline MeanStd Summarize(const std::vector<double>& values) {
  MeanStd out;
  out.count = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

struct CvSummary {
  ConstructorConfig config;
  Budget budget;
  int k = 0;
  int rounds = 0;
  std::uint64_t seed = 0;
  std::vector<FoldRecord> folds;
  std::size_t skipped = 0;
  MeanStd train;
  MeanStd test;
  MeanStd fit_seconds;
};

// Folds are independent; with threads > 1 they run concurrently, and the
// summary is reduced in split order regardless.
inline CvSummary CrossValidate(const EvaluationMatrix& matrix,
                               std::span<const StrategyMeta> meta, int k,
                               int rounds, std::uint64_t seed,
                               const ConstructorConfig& config, Budget budget,
                               unsigned threads = 1) {
  const std::vector<ProblemId> problems(matrix.problems().begin(),
                                        matrix.problems().end());
  CvSummary out;
  out.config = config;
  out.budget = budget;
  out.k = k;
  out.rounds = rounds;
  out.seed = seed;
  for (SplitSpec& s : KFoldSplits(problems, k, rounds, seed)) {
    out.folds.push_back({std::move(s), std::nullopt, {}});
  }

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < out.folds.size(); i = next++) {
      FoldRecord& rec = out.folds[i];
      try {
        rec.result = EvaluateSplit(matrix, meta, rec.split, config, budget);
      } catch (const FoldError& e) {
        rec.error = e.what();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> train, test, fit;
  for (const FoldRecord& rec : out.folds) {
    if (!rec.result) {
      ++out.skipped;
      continue;
    }
    train.push_back(rec.result->train_rescaled);
    if (rec.result->test_rescaled) test.push_back(*rec.result->test_rescaled);
    fit.push_back(rec.result->fit_seconds);
  }
  out.train = Summarize(train);
  out.test = Summarize(test);
  out.fit_seconds = Summarize(fit);
  return out;
}

}  // namespace portsched

#endif  // PORTSCHED_HARNESS_HPP_
