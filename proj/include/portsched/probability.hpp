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

// Empirical success-probability estimates for nondeterministic evaluations.
//
// A single observation (status, t) predicts a new run with limit T as:
//   SOL: success iff T > t
//   GUP: failure
//   TMO: failure if T <= t, unknown otherwise
// Over a multiset the estimate is the share of successes among the
// observations that carry information about T.

#ifndef PORTSCHED_PROBABILITY_HPP_
#define PORTSCHED_PROBABILITY_HPP_

#include <cstdint>
#include <span>
#include <string>

#include "portsched/model.hpp"

namespace portsched {

// Unreduced count ratio. `unknown` is set when no observation is
// informative; value() is then 0.
struct SuccessEstimate {
  std::int64_t successes = 0;
  std::int64_t informative = 0;
  bool unknown = true;

  double value() const {
    return informative == 0 ? 0.0
                            : static_cast<double>(successes) /
                                  static_cast<double>(informative);
  }

  std::string ToString() const {
    return std::to_string(successes) + "/" + std::to_string(informative);
  }

  friend bool operator==(const SuccessEstimate&,
                         const SuccessEstimate&) = default;
};

inline SuccessEstimate EstimateSuccessProbability(const ObservationSet& obs,
                                                  Mi limit) {
  SuccessEstimate est;
  for (const Observation& o : obs.entries()) {
    if (limit > o.runtime && o.status == Status::kSol) ++est.successes;
    if (limit <= o.runtime || o.status != Status::kTmo) ++est.informative;
  }
  est.unknown = est.informative == 0;
  return est;
}

// 1 - prod(1 - P_SOL) over the slices. `cells[i]` holds the observations of
// slice i's strategy on the problem in question; an empty set contributes
// the factor 1.
inline double ScheduleSuccessProbability(
    const Schedule& schedule, std::span<const ObservationSet* const> cells) {
  if (cells.size() != schedule.size()) {
    throw ArgumentError("one observation set per slice is required");
  }
  double fail = 1.0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (cells[i] == nullptr) continue;
    fail *= 1.0 - EstimateSuccessProbability(*cells[i],
                                             schedule.slices()[i].limit)
                      .value();
  }
  return 1.0 - fail;
}

// Same, looking the cells up in a matrix for one problem.
inline double ScheduleSuccessProbability(const Schedule& schedule,
                                         const EvaluationMatrix& matrix,
                                         std::string_view problem) {
  const std::size_t p = matrix.ProblemIndex(problem);
  std::vector<const ObservationSet*> cells;
  cells.reserve(schedule.size());
  for (const Slice& slice : schedule.slices()) {
    cells.push_back(
        &matrix.observations(matrix.StrategyIndex(slice.strategy), p));
  }
  return ScheduleSuccessProbability(schedule, cells);
}

}  // namespace portsched

#endif  // PORTSCHED_PROBABILITY_HPP_
