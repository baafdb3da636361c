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

// Greedy construction over nondeterministic observations. Slices are never
// extended; each pick appends (s, T) where T - 1 is an observed SOL runtime
// of s. The score of a candidate is the expected number of new solves per
// Mi, with the probability that the partial schedule already solves p kept
// as 1 - prod(1 - P_SOL) over the chosen slices.

#ifndef PORTSCHED_PROBABILISTIC_HPP_
#define PORTSCHED_PROBABILISTIC_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "portsched/greedy.hpp"
#include "portsched/model.hpp"
#include "portsched/probability.hpp"

namespace portsched {

struct ProbabilisticResult {
  Schedule schedule;
  Journal journal;
  // Final P_solved per matrix problem.
  std::vector<double> solved_probability;
};

inline constexpr double kDefaultEpsilon = 1e-9;

// With beta > 0 a problem p contributes
//   P_SOL * ((1 - P_solved(p)) + beta^k_p * P_solved(p)),
// k_p being the number of chosen slices with positive P_SOL on p. For
// 0/1 probabilities this is exactly the deterministic beta^k reward, and
// beta = 0 leaves the plain expected-new-solves score.
inline ProbabilisticResult ConstructProbabilistic(
    const EvaluationMatrix& matrix, Budget budget,
    const RegularizationParams& params = {},
    double epsilon = kDefaultEpsilon) {
  if (!budget) {
    throw ArgumentError("probabilistic construction requires a finite budget");
  }
  if (*budget < 0) throw ArgumentError("budget must be >= 0");
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be > 0");
  params.Validate();

  const std::size_t num_s = matrix.num_strategies();
  const std::size_t num_p = matrix.num_problems();

  // Candidate limits and problems with at least one SOL observation.
  std::vector<std::vector<Mi>> limits(num_s);
  std::vector<std::vector<std::size_t>> solvable(num_s);
  for (std::size_t s = 0; s < num_s; ++s) {
    for (std::size_t p = 0; p < num_p; ++p) {
      bool any = false;
      for (const Observation& o : matrix.observations(s, p).entries()) {
        if (o.status != Status::kSol) continue;
        limits[s].push_back(o.runtime + 1);
        any = true;
      }
      if (any) solvable[s].push_back(p);
    }
    std::sort(limits[s].begin(), limits[s].end());
    limits[s].erase(std::unique(limits[s].begin(), limits[s].end()),
                    limits[s].end());
  }

  ProbabilisticResult result;
  std::vector<double>& solved = result.solved_probability;
  solved.assign(num_p, 0.0);
  std::vector<int> covered(num_p, 0);
  Mi total = 0;

  while (true) {
    std::optional<internal::Candidate> best;
    for (std::size_t s = 0; s < num_s; ++s) {
      for (Mi t : limits[s]) {
        const Mi charge = params.Extend(t);
        if (total + charge > *budget) break;
        double gain = 0.0;
        for (std::size_t p : solvable[s]) {
          const double ps =
              EstimateSuccessProbability(matrix.observations(s, p), t).value();
          if (ps <= 0.0) continue;
          gain += ps * ((1.0 - solved[p]) +
                        (covered[p] > 0 ? params.ProblemReward(covered[p])
                                        : 0.0) *
                            solved[p]);
        }
        if (gain <= 0.0) continue;
        internal::Candidate c;
        c.strategy = s;
        c.limit = t;
        c.dt = t;
        c.charge = charge;
        c.score = std::pow(gain, params.alpha);
        if (!best || internal::Better(c, *best)) best = c;
      }
    }
    if (!best) break;
    const double criterion = best->score / static_cast<double>(best->dt);
    if (criterion < epsilon) break;

    const std::size_t s = best->strategy;
    JournalEntry entry;
    entry.strategy = matrix.strategies()[s];
    entry.criterion = criterion;
    for (std::size_t p : solvable[s]) {
      const double ps =
          EstimateSuccessProbability(matrix.observations(s, p), best->limit)
              .value();
      if (ps <= 0.0) continue;
      if (solved[p] == 0.0) entry.newly_covered.push_back(matrix.problems()[p]);
      solved[p] = 1.0 - (1.0 - solved[p]) * (1.0 - ps);
      ++covered[p];
    }
    total += best->charge;
    entry.new_limit = best->charge;
    entry.delta = best->charge;
    entry.cumulative = total;
    result.schedule.Append({entry.strategy, entry.new_limit});
    result.journal.entries.push_back(std::move(entry));
  }
  return result;
}

}  // namespace portsched

#endif  // PORTSCHED_PROBABILISTIC_HPP_
