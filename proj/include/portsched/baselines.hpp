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

// Reference constructors and cumulative-performance curves.

#ifndef PORTSCHED_BASELINES_HPP_
#define PORTSCHED_BASELINES_HPP_

#include <algorithm>
#include <vector>

#include "portsched/greedy.hpp"
#include "portsched/model.hpp"
#include "portsched/simulate.hpp"

namespace portsched {

struct PSetheoParams {
  Mi step = 1;          // initial extension step
  Mi quantization = 1;  // l; the step grows by ceil(budget / l)
  Mi budget = 0;

  void Validate() const {
    if (step < 1) throw ArgumentError("p-SETHEO step must be >= 1");
    if (quantization < 1) throw ArgumentError("quantization must be >= 1");
    if (budget < 0) throw ArgumentError("budget must be >= 0");
  }
};

// Step-quantized greedy: extend by the current step the strategy that
// solves the most uncovered problems; grow the step whenever no strategy
// gains anything. Never starts an extension that would exceed the budget.
inline PreSchedule PSetheo(const EvaluationMatrix& matrix,
                           const PSetheoParams& params) {
  params.Validate();
  const std::size_t num_s = matrix.num_strategies();
  const std::size_t num_p = matrix.num_problems();
  const Mi growth = (params.budget + params.quantization - 1) /
                    params.quantization;

  std::vector<Mi> limit(num_s, 0);
  std::vector<bool> covered(num_p, false);
  Mi open = 0;
  for (std::size_t p = 0; p < num_p; ++p) {
    for (std::size_t s = 0; s < num_s; ++s) {
      if (matrix.solve_time(s, p) != kNever) {
        ++open;
        break;
      }
    }
  }
  Mi used = 0;
  Mi step = params.step;
  while (open > 0 && used + step <= params.budget) {
    std::size_t best = num_s;
    Mi best_gain = 0;
    for (std::size_t s = 0; s < num_s; ++s) {
      Mi gain = 0;
      for (std::size_t p = 0; p < num_p; ++p) {
        if (!covered[p] && matrix.Solves(s, p, limit[s] + step)) ++gain;
      }
      if (gain > best_gain) {
        best = s;
        best_gain = gain;
      }
    }
    if (best == num_s) {
      if (growth == 0) break;
      step += growth;
      continue;
    }
    limit[best] += step;
    used += step;
    for (std::size_t p = 0; p < num_p; ++p) {
      if (!covered[p] && matrix.Solves(best, p, limit[best])) {
        covered[p] = true;
        --open;
      }
    }
  }
  PreSchedule pre;
  for (std::size_t s = 0; s < num_s; ++s) {
    pre.Set(matrix.strategies()[s], limit[s]);
  }
  return pre;
}

// Equal-sized slices stacked greedily: each round appends the unused
// strategy that solves the most uncovered problems within `bucket` Mi.
inline Schedule BucketSchedule(const EvaluationMatrix& matrix, Mi bucket,
                               Mi budget) {
  if (bucket < 1) throw ArgumentError("bucket must be >= 1");
  if (budget < 0) throw ArgumentError("budget must be >= 0");
  const std::size_t num_s = matrix.num_strategies();
  std::vector<bool> used(num_s, false), covered(matrix.num_problems(), false);
  Schedule out;
  while (out.Total() + bucket <= budget) {
    std::size_t best = num_s;
    Mi best_gain = 0;
    for (std::size_t s = 0; s < num_s; ++s) {
      if (used[s]) continue;
      Mi gain = 0;
      for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
        if (!covered[p] && matrix.Solves(s, p, bucket)) ++gain;
      }
      if (gain > best_gain) {
        best = s;
        best_gain = gain;
      }
    }
    if (best == num_s) break;
    used[best] = true;
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      if (matrix.Solves(best, p, bucket)) covered[p] = true;
    }
    out.Append({matrix.strategies()[best], bucket});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

struct CurvePoint {
  Mi time = 0;
  Mi solved = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

using Curve = std::vector<CurvePoint>;

// Problems solvable by the best strategy within each distinct solve time.
inline Curve VbssCurve(const EvaluationMatrix& matrix) {
  std::vector<Mi> times;
  for (const auto& [p, t] : VbssTimes(matrix)) {
    if (t != kNever) times.push_back(std::max<Mi>(t, 1));
  }
  std::sort(times.begin(), times.end());
  Curve curve;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i + 1 < times.size() && times[i + 1] == times[i]) continue;
    curve.push_back({times[i], static_cast<Mi>(i + 1)});
  }
  return curve;
}

// Number of problems the VBSS curve solves by `time`.
inline Mi CurveValueAt(const Curve& curve, Mi time) {
  Mi solved = 0;
  for (const CurvePoint& pt : curve) {
    if (pt.time > time) break;
    solved = pt.solved;
  }
  return solved;
}

inline Curve JournalCurve(const Journal& journal) {
  Curve curve;
  Mi solved = 0;
  for (const JournalEntry& e : journal.entries) {
    solved += static_cast<Mi>(e.newly_covered.size());
    curve.push_back({e.cumulative, solved});
  }
  return curve;
}

// One point per slice prefix of an ordered schedule.
inline Curve ScheduleCurve(const Schedule& schedule,
                           const EvaluationMatrix& matrix) {
  Curve curve;
  std::vector<bool> covered(matrix.num_problems(), false);
  Mi solved = 0, time = 0;
  for (const Slice& slice : schedule.slices()) {
    const std::size_t s = matrix.StrategyIndex(slice.strategy);
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      if (!covered[p] && matrix.Solves(s, p, slice.limit)) {
        covered[p] = true;
        ++solved;
      }
    }
    time += slice.limit;
    curve.push_back({time, solved});
  }
  return curve;
}

}  // namespace portsched

#endif  // PORTSCHED_BASELINES_HPP_
