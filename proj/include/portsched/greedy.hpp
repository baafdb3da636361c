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

// Greedy schedule construction for the budgeted coverage problem.
//
// Each iteration picks the (strategy, limit) pair with the best ratio of
// reward to additionally claimed time, where the limit ranges over the
// solve times recorded for that strategy. An already scheduled strategy can
// be extended and is charged only for the extension. Three regularizations
// compose freely with the base criterion:
//
//   slack        emitted limit = round(t * w) + b; the budget is checked
//                against the emitted (extended) total
//   alpha        criterion = reward^alpha / dt
//   beta         a problem already covered k times contributes beta^k
//
// The defaults (w = 1, b = 0, alpha = 1, beta = 0) give the base algorithm.

#ifndef PORTSCHED_GREEDY_HPP_
#define PORTSCHED_GREEDY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "portsched/model.hpp"

namespace portsched {

struct RegularizationParams {
  double slack_mul = 1.0;  // w >= 1
  Mi slack_add = 0;        // b >= 0
  double alpha = 1.0;      // >= 0
  double beta = 0.0;       // in [0, 1]

  void Validate() const {
    if (!(slack_mul >= 1.0)) throw ArgumentError("slack_mul must be >= 1");
    if (slack_add < 0) throw ArgumentError("slack_add must be >= 0");
    if (!(alpha >= 0.0)) throw ArgumentError("alpha must be >= 0");
    if (!(beta >= 0.0 && beta <= 1.0)) {
      throw ArgumentError("beta must lie in [0, 1]");
    }
  }

  // Emitted limit for a raw limit; 0 stays 0 (strategy not scheduled).
  Mi Extend(Mi raw) const {
    if (raw <= 0) return 0;
    return static_cast<Mi>(std::floor(static_cast<double>(raw) * slack_mul +
                                      0.5)) +
           slack_add;
  }

  // Reward of a problem covered `k` times so far. pow(0, 0) == 1.
  double ProblemReward(int k) const { return std::pow(beta, k); }

  friend bool operator==(const RegularizationParams&,
                         const RegularizationParams&) = default;
};

enum class ExtensionMode {
  kFull,          // any scheduled slice may be extended
  kConservative,  // only the most recent slice may be extended
  kNone,          // every pick is a fresh slice; strategies may repeat
};

inline std::string_view ToString(ExtensionMode mode) {
  switch (mode) {
    case ExtensionMode::kFull:
      return "full";
    case ExtensionMode::kConservative:
      return "conservative";
    case ExtensionMode::kNone:
      return "none";
  }
  return "?";
}

inline std::optional<ExtensionMode> ParseExtensionMode(std::string_view text) {
  if (text == "full") return ExtensionMode::kFull;
  if (text == "conservative") return ExtensionMode::kConservative;
  if (text == "none") return ExtensionMode::kNone;
  return std::nullopt;
}

// One greedy iteration. Limits and deltas are emitted (slack-extended)
// values; `cumulative` is the emitted schedule total after the step.
struct JournalEntry {
  StrategyId strategy;
  Mi new_limit = 0;
  Mi delta = 0;
  Mi cumulative = 0;
  std::vector<ProblemId> newly_covered;
  double criterion = 0.0;

  friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

struct Journal {
  std::vector<JournalEntry> entries;

  friend bool operator==(const Journal&, const Journal&) = default;
};

struct GreedyResult {
  // Slices in order of first selection. In kFull mode every strategy
  // appears once and `pre` carries the same limits.
  Schedule schedule;
  PreSchedule pre;
  Journal journal;
};

// nullopt means no budget.
using Budget = std::optional<Mi>;

namespace internal {

// (solve time, problem) pairs of one strategy, ascending; solve times below
// the 1 Mi granularity are lifted to 1.
inline std::vector<std::vector<std::pair<Mi, std::size_t>>> SolveEvents(
    const EvaluationMatrix& matrix) {
  std::vector<std::vector<std::pair<Mi, std::size_t>>> events(
      matrix.num_strategies());
  for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      const Mi d = matrix.solve_time(s, p);
      if (d != kNever) events[s].emplace_back(std::max<Mi>(d, 1), p);
    }
    std::sort(events[s].begin(), events[s].end());
  }
  return events;
}

struct Candidate {
  std::size_t strategy = 0;
  Mi limit = 0;     // raw
  Mi dt = 0;        // raw additional time
  Mi charge = 0;    // emitted additional time
  double score = 0;  // reward^alpha
  bool extends = false;
};

// True iff `a` is preferred to `b`: higher score/dt, then smaller dt, then
// smaller strategy id (index order), then smaller limit.
inline bool Better(const Candidate& a, const Candidate& b) {
  const double lhs = a.score * static_cast<double>(b.dt);
  const double rhs = b.score * static_cast<double>(a.dt);
  if (lhs != rhs) return lhs > rhs;
  if (a.dt != b.dt) return a.dt < b.dt;
  if (a.strategy != b.strategy) return a.strategy < b.strategy;
  return a.limit < b.limit;
}

}  // namespace internal

inline GreedyResult ConstructGreedy(
    const EvaluationMatrix& matrix, Budget budget,
    const RegularizationParams& params = {},
    ExtensionMode mode = ExtensionMode::kFull) {
  const Mi cap = budget.value_or(kNever);
  if (cap < 0) throw ArgumentError("budget must be >= 0");
  params.Validate();

  const auto events = internal::SolveEvents(matrix);

  struct OpenSlice {
    std::size_t strategy;
    Mi raw;
    Mi emitted;
  };
  std::vector<OpenSlice> slices;
  // kFull: index into `slices` per strategy.
  std::vector<std::optional<std::size_t>> slot(matrix.num_strategies());
  std::vector<int> covered(matrix.num_problems(), 0);
  Mi total = 0;
  Journal journal;

  // Raw limit an extension of s would start from, or nullopt if s can only
  // open a fresh slice.
  auto extension_base = [&](std::size_t s) -> std::optional<std::size_t> {
    switch (mode) {
      case ExtensionMode::kFull:
        return slot[s];
      case ExtensionMode::kConservative:
        if (!slices.empty() && slices.back().strategy == s) {
          return slices.size() - 1;
        }
        return std::nullopt;
      case ExtensionMode::kNone:
        return std::nullopt;
    }
    return std::nullopt;
  };

  while (true) {
    std::optional<internal::Candidate> best;
    for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
      const auto base = extension_base(s);
      const Mi cur = base ? slices[*base].raw : 0;
      const Mi cur_emitted = base ? slices[*base].emitted : 0;
      double reward = 0.0;
      const auto& ev = events[s];
      auto it = std::upper_bound(
          ev.begin(), ev.end(),
          std::make_pair(cur, std::numeric_limits<std::size_t>::max()));
      while (it != ev.end()) {
        const Mi t = it->first;
        for (; it != ev.end() && it->first == t; ++it) {
          reward += params.ProblemReward(covered[it->second]);
        }
        if (reward <= 0.0) continue;
        internal::Candidate c;
        c.strategy = s;
        c.limit = t;
        c.dt = t - cur;
        c.charge = params.Extend(t) - cur_emitted;
        c.score = std::pow(reward, params.alpha);
        c.extends = base.has_value();
        if (total + c.charge > cap) break;  // larger t costs more
        if (!best || internal::Better(c, *best)) best = c;
      }
    }
    if (!best) break;

    const internal::Candidate& c = *best;
    const auto base = extension_base(c.strategy);
    const Mi cur = base ? slices[*base].raw : 0;
    JournalEntry entry;
    entry.strategy = matrix.strategies()[c.strategy];
    entry.criterion = c.score / static_cast<double>(c.dt);
    for (const auto& [t, p] : events[c.strategy]) {
      if (t > c.limit) break;
      if (t <= cur) continue;
      if (covered[p] == 0) entry.newly_covered.push_back(matrix.problems()[p]);
      ++covered[p];
    }
    std::sort(entry.newly_covered.begin(), entry.newly_covered.end());

    if (base) {
      slices[*base].raw = c.limit;
      slices[*base].emitted = params.Extend(c.limit);
    } else {
      slices.push_back({c.strategy, c.limit, params.Extend(c.limit)});
      if (mode == ExtensionMode::kFull) slot[c.strategy] = slices.size() - 1;
    }
    total += c.charge;
    entry.new_limit = params.Extend(c.limit);
    entry.delta = c.charge;
    entry.cumulative = total;
    journal.entries.push_back(std::move(entry));
  }

  GreedyResult result;
  for (const OpenSlice& s : slices) {
    result.schedule.Append({matrix.strategies()[s.strategy], s.emitted});
  }
  result.pre = result.schedule.Collapse();
  result.journal = std::move(journal);
  return result;
}

// Limits after the longest journal prefix whose cumulative time fits.
inline PreSchedule ReplayJournal(const Journal& journal, Mi budget) {
  PreSchedule pre;
  for (const JournalEntry& e : journal.entries) {
    if (e.cumulative > budget) break;
    pre.Set(e.strategy, std::max(pre.Get(e.strategy), e.new_limit));
  }
  return pre;
}

// Greedy execution order: repeatedly emit the slice with the most
// not-yet-covered problems per Mi of its limit. Ties go to the smaller
// strategy id, then the smaller limit.
inline Schedule OrderSlices(std::span<const Slice> slices,
                            const EvaluationMatrix& matrix) {
  std::vector<std::size_t> index(slices.size());
  for (std::size_t i = 0; i < slices.size(); ++i) {
    index[i] = matrix.StrategyIndex(slices[i].strategy);
  }
  std::vector<bool> covered(matrix.num_problems(), false);
  std::vector<bool> used(slices.size(), false);
  Schedule out;
  for (std::size_t round = 0; round < slices.size(); ++round) {
    std::optional<std::size_t> best;
    Mi best_gain = 0;
    for (std::size_t i = 0; i < slices.size(); ++i) {
      if (used[i]) continue;
      Mi gain = 0;
      for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
        if (!covered[p] && matrix.Solves(index[i], p, slices[i].limit)) ++gain;
      }
      bool take = !best;
      if (!take) {
        const Slice& b = slices[*best];
        const Mi lhs = gain * b.limit;
        const Mi rhs = best_gain * slices[i].limit;
        if (lhs != rhs) {
          take = lhs > rhs;
        } else if (slices[i].strategy != b.strategy) {
          take = slices[i].strategy < b.strategy;
        } else {
          take = slices[i].limit < b.limit;
        }
      }
      if (take) {
        best = i;
        best_gain = gain;
      }
    }
    used[*best] = true;
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      if (matrix.Solves(index[*best], p, slices[*best].limit)) covered[p] = true;
    }
    out.Append(slices[*best]);
  }
  return out;
}

inline Schedule OrderSlices(const PreSchedule& pre,
                            const EvaluationMatrix& matrix) {
  const Schedule unordered = Schedule::FromPreSchedule(pre);
  return OrderSlices(unordered.slices(), matrix);
}

inline Schedule PadSlices(const Schedule& schedule, Mi pad) {
  if (pad < 0) throw ArgumentError("pad must be >= 0");
  Schedule out;
  for (const Slice& s : schedule.slices()) out.Append({s.strategy, s.limit + pad});
  return out;
}

}  // namespace portsched

#endif  // PORTSCHED_GREEDY_HPP_
