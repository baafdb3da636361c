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

#ifndef PORTSCHED_SIMULATE_HPP_
#define PORTSCHED_SIMULATE_HPP_

#include <map>
#include <vector>

#include "portsched/model.hpp"

namespace portsched {

// Problems solved by some slice under the deterministic view, in problem-id
// order. Only the per-strategy maximum limit matters.
inline std::vector<ProblemId> SimulateSchedule(const PreSchedule& pre,
                                               const EvaluationMatrix& matrix) {
  std::vector<bool> solved(matrix.num_problems(), false);
  for (const auto& [strategy, limit] : pre.limits()) {
    const std::size_t s = matrix.StrategyIndex(strategy);
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      if (matrix.Solves(s, p, limit)) solved[p] = true;
    }
  }
  std::vector<ProblemId> out;
  for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
    if (solved[p]) out.push_back(matrix.problems()[p]);
  }
  return out;
}

inline std::vector<ProblemId> SimulateSchedule(const Schedule& schedule,
                                               const EvaluationMatrix& matrix) {
  return SimulateSchedule(schedule.Collapse(), matrix);
}

// Per problem, the best solve time over all strategies (kNever if none).
inline std::map<ProblemId, Mi> VbssTimes(const EvaluationMatrix& matrix) {
  std::map<ProblemId, Mi> out;
  for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
    Mi best = kNever;
    for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
      best = std::min(best, matrix.solve_time(s, p));
    }
    out.emplace(matrix.problems()[p], best);
  }
  return out;
}

}  // namespace portsched

#endif  // PORTSCHED_SIMULATE_HPP_
