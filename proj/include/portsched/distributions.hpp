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

// Data-driven strategy sampling: option-value distributions from uniquely
// solved problems, frequency updates, Luby limit sequences and
// forgotten-half problem sampling.

#ifndef PORTSCHED_DISTRIBUTIONS_HPP_
#define PORTSCHED_DISTRIBUTIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "portsched/model.hpp"
#include "portsched/random.hpp"

namespace portsched {

// Per-strategy metadata. An option missing from `options` is not
// applicable (N/A) to that strategy.
struct StrategyMeta {
  StrategyId id;
  std::map<std::string, std::string> options;
  std::optional<ProblemId> witness;
  std::optional<double> discovered_at;  // days
  std::optional<Mi> probe_limit;

  friend bool operator==(const StrategyMeta&, const StrategyMeta&) = default;
};

// The requested option is absent from every strategy under analysis.
class EmptyAnalysisError : public Error {
 public:
  using Error::Error;
};

// Problems solved by some strategy in `subset` and by no other strategy of
// the matrix, in problem-id order.
inline std::vector<ProblemId> UniquelySolved(
    const EvaluationMatrix& matrix, const std::set<StrategyId>& subset) {
  std::vector<bool> inside(matrix.num_strategies(), false);
  for (const StrategyId& id : subset) inside[matrix.StrategyIndex(id)] = true;
  std::vector<ProblemId> out;
  for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
    bool in = false, out_side = false;
    for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
      if (matrix.solve_time(s, p) == kNever) continue;
      (inside[s] ? in : out_side) = true;
    }
    if (in && !out_side) out.push_back(matrix.problems()[p]);
  }
  return out;
}

struct OptionDistributionRow {
  std::optional<std::string> value;  // nullopt = N/A
  Mi strategy_count = 0;
  Mi unique_solved = 0;
  double per_strategy = 0.0;
  std::optional<double> normalized;  // absent for N/A

  friend bool operator==(const OptionDistributionRow&,
                         const OptionDistributionRow&) = default;
};

struct OptionDistribution {
  // Values in lexicographic order, N/A last.
  std::vector<OptionDistributionRow> rows;
  // Set when every applicable bucket has zero utility and the
  // normalization fell back to uniform.
  bool uniform_fallback = false;
};

namespace internal {

inline std::map<StrategyId, const StrategyMeta*> IndexMeta(
    std::span<const StrategyMeta> meta) {
  std::map<StrategyId, const StrategyMeta*> out;
  for (const StrategyMeta& m : meta) out[m.id] = &m;
  return out;
}

inline const StrategyMeta& MetaOf(
    const std::map<StrategyId, const StrategyMeta*>& index,
    const StrategyId& id) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw LookupError("no metadata for strategy '" + id + "'");
  }
  return *it->second;
}

}  // namespace internal

// Utility of each option value: problems uniquely solved by the strategies
// carrying that value, per strategy, normalized over applicable values.
inline OptionDistribution OptionValueDistribution(
    const EvaluationMatrix& matrix, std::span<const StrategyMeta> meta,
    const std::string& option) {
  const auto index = internal::IndexMeta(meta);
  std::map<std::string, std::set<StrategyId>> buckets;
  std::set<StrategyId> not_applicable;
  for (const StrategyId& id : matrix.strategies()) {
    const StrategyMeta& m = internal::MetaOf(index, id);
    auto it = m.options.find(option);
    if (it == m.options.end()) {
      not_applicable.insert(id);
    } else {
      buckets[it->second].insert(id);
    }
  }
  if (buckets.empty()) {
    throw EmptyAnalysisError("option '" + option +
                             "' is not set on any strategy");
  }

  OptionDistribution dist;
  auto make_row = [&](std::optional<std::string> value,
                      const std::set<StrategyId>& ids) {
    OptionDistributionRow row;
    row.value = std::move(value);
    row.strategy_count = static_cast<Mi>(ids.size());
    row.unique_solved = static_cast<Mi>(UniquelySolved(matrix, ids).size());
    row.per_strategy = static_cast<double>(row.unique_solved) /
                       static_cast<double>(row.strategy_count);
    return row;
  };
  double sum = 0.0;
  for (const auto& [value, ids] : buckets) {
    dist.rows.push_back(make_row(value, ids));
    sum += dist.rows.back().per_strategy;
  }
  for (OptionDistributionRow& row : dist.rows) {
    row.normalized = sum > 0.0 ? row.per_strategy / sum
                               : 1.0 / static_cast<double>(buckets.size());
  }
  dist.uniform_fallback = sum <= 0.0;
  if (!not_applicable.empty()) {
    dist.rows.push_back(make_row(std::nullopt, not_applicable));
  }
  return dist;
}

struct ConditionalDistribution {
  std::optional<std::string> given;  // nullopt = unconditional row
  OptionDistribution distribution;
};

// One distribution of `option` per value of `given`, each computed within
// the strategies carrying that value, followed by the unconditional one
// over the union of those groups. Groups where `option` never applies are
// omitted.
inline std::vector<ConditionalDistribution> ConditionalOptionDistribution(
    const EvaluationMatrix& matrix, std::span<const StrategyMeta> meta,
    const std::string& option, const std::string& given) {
  const auto index = internal::IndexMeta(meta);
  std::map<std::string, std::vector<StrategyId>> groups;
  for (const StrategyId& id : matrix.strategies()) {
    const StrategyMeta& m = internal::MetaOf(index, id);
    if (auto it = m.options.find(given); it != m.options.end()) {
      groups[it->second].push_back(id);
    }
  }
  std::vector<ConditionalDistribution> out;
  std::vector<StrategyId> all;
  for (const auto& [value, ids] : groups) {
    try {
      out.push_back({value, OptionValueDistribution(
                                matrix.RestrictStrategies(ids), meta, option)});
    } catch (const EmptyAnalysisError&) {
      continue;
    }
    all.insert(all.end(), ids.begin(), ids.end());
  }
  if (out.empty()) {
    throw EmptyAnalysisError("option '" + option + "' never applies under '" +
                             given + "'");
  }
  out.push_back({std::nullopt, OptionValueDistribution(
                                   matrix.RestrictStrategies(all), meta,
                                   option)});
  return out;
}

struct ValueFrequency {
  Mi count = 0;
  double frequency = 0.0;

  friend bool operator==(const ValueFrequency&, const ValueFrequency&) = default;
};

// How often each value of `option` occurs among contributing strategies;
// strategies without the option are left out of the denominator.
inline std::map<std::string, ValueFrequency> UpdateSamplingFrequencies(
    std::span<const StrategyMeta> contributing, const std::string& option) {
  std::map<std::string, ValueFrequency> out;
  Mi total = 0;
  for (const StrategyMeta& m : contributing) {
    auto it = m.options.find(option);
    if (it == m.options.end()) continue;
    ++out[it->second].count;
    ++total;
  }
  for (auto& [value, f] : out) {
    f.frequency = static_cast<double>(f.count) / static_cast<double>(total);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Luby limits
// ---------------------------------------------------------------------------

// i-th (1-based) element of 1, 1, 2, 1, 1, 2, 4, 1, ...
inline std::uint64_t Luby(std::uint64_t i) {
  while (true) {
    std::uint64_t k = 1;
    while ((std::uint64_t{1} << k) - 1 < i) ++k;
    if ((std::uint64_t{1} << k) - 1 == i) return std::uint64_t{1} << (k - 1);
    i -= (std::uint64_t{1} << (k - 1)) - 1;
  }
}

// base * Luby(i), restarting from i = 1 right after the first emission of
// `cap`, so no limit ever exceeds cap.
class LubyLimits {
 public:
  LubyLimits(Mi base, Mi cap) : base_(base), cap_(cap) {
    if (base < 1 || cap < base || cap % base != 0) {
      throw ArgumentError("Luby cap must be base * 2^k");
    }
    const Mi ratio = cap / base;
    if ((ratio & (ratio - 1)) != 0) {
      throw ArgumentError("Luby cap must be base * 2^k");
    }
  }

  Mi Next() {
    const Mi value = base_ * static_cast<Mi>(Luby(index_));
    index_ = value == cap_ ? 1 : index_ + 1;
    return value;
  }

  std::vector<Mi> Take(std::size_t count) {
    std::vector<Mi> out(count);
    for (Mi& v : out) v = Next();
    return out;
  }

 private:
  Mi base_;
  Mi cap_;
  std::uint64_t index_ = 1;
};

// ---------------------------------------------------------------------------
// Problem sampling
// ---------------------------------------------------------------------------

struct ProblemSample {
  std::vector<ProblemId> forgotten;
  std::vector<ProblemId> remaining;
  std::optional<ProblemId> pick;
};

// Picks uniformly among `remaining` problems not solved by any strategy
// whose witness lies in `remaining`.
inline std::optional<ProblemId> PickUncoveredProblem(
    const std::vector<ProblemId>& remaining, std::span<const StrategyMeta> meta,
    const EvaluationMatrix& matrix, Rng& rng) {
  const std::set<ProblemId> remaining_set(remaining.begin(), remaining.end());
  std::vector<std::size_t> active;
  for (const StrategyMeta& m : meta) {
    if (!m.witness || !remaining_set.contains(*m.witness)) continue;
    if (auto s = matrix.FindStrategy(m.id)) active.push_back(*s);
  }
  std::vector<ProblemId> open;
  for (const ProblemId& id : remaining_set) {
    bool covered = false;
    if (auto p = matrix.FindProblem(id)) {
      for (std::size_t s : active) {
        if (matrix.solve_time(s, *p) != kNever) {
          covered = true;
          break;
        }
      }
    }
    if (!covered) open.push_back(id);
  }
  if (open.empty()) return std::nullopt;
  return open[UniformIndex(rng, open.size())];
}

// Forgets a uniformly random floor(|P|/2) problems, then picks an
// uncovered problem among the rest. Deterministic for a given seed.
inline ProblemSample SampleUncoveredProblem(std::vector<ProblemId> problems,
                                            std::span<const StrategyMeta> meta,
                                            const EvaluationMatrix& matrix,
                                            std::uint64_t seed) {
  if (problems.empty()) throw ArgumentError("problem set is empty");
  std::sort(problems.begin(), problems.end());
  problems.erase(std::unique(problems.begin(), problems.end()),
                 problems.end());
  Rng rng(seed);
  Shuffle(problems, rng);
  ProblemSample out;
  const std::size_t half = problems.size() / 2;
  out.forgotten.assign(problems.begin(), problems.begin() + half);
  out.remaining.assign(problems.begin() + half, problems.end());
  std::sort(out.forgotten.begin(), out.forgotten.end());
  std::sort(out.remaining.begin(), out.remaining.end());
  out.pick = PickUncoveredProblem(out.remaining, meta, matrix, rng);
  return out;
}

}  // namespace portsched

#endif  // PORTSCHED_DISTRIBUTIONS_HPP_
