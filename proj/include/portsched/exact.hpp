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

// Exact schedule construction.
//
// The MIP encoding has one integer time variable t_s per strategy and one
// binary r_{s,p} per finite solve time:
//
//   maximize   sum r_{s,p}
//   subject to sum_s t_s <= T
//              D(s,p) * r_{s,p} <= t_s
//              sum_s r_{s,p} <= 1          for every p
//
// It is exported as CPLEX LP text for external solvers. For small
// instances the library solves the problem itself by branch and bound over
// t_s in {0} u {D(s,p)}: lowering any t_s to the largest solve time it
// covers keeps coverage and never breaks the budget, so some optimum lies
// on that grid.

#ifndef PORTSCHED_EXACT_HPP_
#define PORTSCHED_EXACT_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "portsched/model.hpp"

namespace portsched {

struct MipVariable {
  enum class Kind { kTime, kReward };
  Kind kind = Kind::kTime;
  std::size_t strategy = 0;  // matrix index
  std::size_t problem = 0;   // matrix index, kReward only
};

struct MipTerm {
  Mi coef = 1;
  std::size_t var = 0;
};

struct MipConstraint {
  std::vector<MipTerm> terms;  // sum terms <= rhs
  Mi rhs = 0;
};

struct MipModel {
  std::vector<StrategyId> strategies;
  std::vector<ProblemId> problems;
  Mi budget = 0;
  std::vector<MipVariable> variables;
  std::vector<std::size_t> objective;  // variable indices, coefficient 1
  MipConstraint budget_constraint;
  std::vector<MipConstraint> linking;      // D * r - t <= 0
  std::vector<MipConstraint> per_problem;  // sum r <= 1

  std::size_t TimeVar(std::size_t strategy) const { return strategy; }
};

inline MipModel BuildMip(const EvaluationMatrix& matrix, Mi budget) {
  if (budget < 0) throw ArgumentError("budget must be >= 0");
  MipModel model;
  model.strategies.assign(matrix.strategies().begin(),
                          matrix.strategies().end());
  model.problems.assign(matrix.problems().begin(), matrix.problems().end());
  model.budget = budget;
  for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
    model.variables.push_back({MipVariable::Kind::kTime, s, 0});
    model.budget_constraint.terms.push_back({1, s});
  }
  model.budget_constraint.rhs = budget;
  std::vector<MipConstraint> per_problem(matrix.num_problems());
  for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      const Mi d = matrix.solve_time(s, p);
      if (d == kNever) continue;
      const std::size_t r = model.variables.size();
      model.variables.push_back({MipVariable::Kind::kReward, s, p});
      model.objective.push_back(r);
      // A slice needs a positive limit, so D = 0 is charged as 1 Mi.
      model.linking.push_back(
          {{{std::max<Mi>(d, 1), r}, {-1, model.TimeVar(s)}}, 0});
      per_problem[p].terms.push_back({1, r});
      per_problem[p].rhs = 1;
    }
  }
  for (MipConstraint& c : per_problem) {
    if (!c.terms.empty()) model.per_problem.push_back(std::move(c));
  }
  return model;
}

namespace internal {

inline std::string Sanitize(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) c = '_';
  }
  return out;
}

}  // namespace internal

// Variable names: t_<strategy>, r_<strategy>__<problem>.
inline std::vector<std::string> MipVariableNames(const MipModel& model) {
  std::vector<std::string> names;
  names.reserve(model.variables.size());
  std::set<std::string> seen;
  for (const MipVariable& v : model.variables) {
    std::string name =
        v.kind == MipVariable::Kind::kTime
            ? "t_" + internal::Sanitize(model.strategies[v.strategy])
            : "r_" + internal::Sanitize(model.strategies[v.strategy]) + "__" +
                  internal::Sanitize(model.problems[v.problem]);
    if (!seen.insert(name).second) {
      throw ExportError("variable name collision after sanitization: " + name);
    }
    names.push_back(std::move(name));
  }
  return names;
}

inline std::string ExportLp(const MipModel& model) {
  const std::vector<std::string> names = MipVariableNames(model);
  auto expr = [&](const std::vector<MipTerm>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Mi coef = terms[i].coef;
      if (i > 0) {
        out += coef < 0 ? " - " : " + ";
        coef = coef < 0 ? -coef : coef;
      } else if (coef < 0) {
        out += "-";
        coef = -coef;
      }
      if (coef != 1) out += std::to_string(coef) + " ";
      out += names[terms[i].var];
    }
    return out;
  };
  auto line = [&](const MipConstraint& c) {
    return expr(c.terms) + " <= " + std::to_string(c.rhs) + "\n";
  };

  std::ostringstream out;
  out << "\\ schedule construction: maximize covered problems\n";
  out << "Maximize\n";
  if (model.objective.empty()) {
    out << "obj: 0\n";
  } else {
    std::vector<MipTerm> obj;
    for (std::size_t v : model.objective) obj.push_back({1, v});
    out << expr(obj) << "\n";
  }
  out << "Subject To\n";
  if (!model.budget_constraint.terms.empty()) {
    out << line(model.budget_constraint);
  }
  for (const MipConstraint& c : model.linking) out << line(c);
  for (const MipConstraint& c : model.per_problem) out << line(c);
  std::vector<std::string> generals, binaries;
  for (std::size_t i = 0; i < model.variables.size(); ++i) {
    (model.variables[i].kind == MipVariable::Kind::kTime ? generals : binaries)
        .push_back(names[i]);
  }
  if (!generals.empty()) {
    out << "Bounds\n";
    for (const std::string& n : generals) out << n << " >= 0\n";
    out << "Generals\n";
    for (const std::string& n : generals) out << n << "\n";
  }
  if (!binaries.empty()) {
    out << "Binaries\n";
    for (const std::string& n : binaries) out << n << "\n";
  }
  out << "End\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

struct ExactLimits {
  std::uint64_t max_combinations = 10'000'000;
  std::optional<double> wall_seconds;
};

struct ExactSolution {
  PreSchedule pre;
  Mi objective = 0;  // coverage, or total time for the full-cover variant
};

namespace internal {

// Candidate limits per strategy: distinct solve times (lifted to >= 1), at
// most `cap` each.
inline std::vector<std::vector<Mi>> CandidateGrid(
    const EvaluationMatrix& matrix, Mi cap) {
  std::vector<std::vector<Mi>> grid(matrix.num_strategies());
  for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      const Mi d = matrix.solve_time(s, p);
      if (d != kNever && std::max<Mi>(d, 1) <= cap) {
        grid[s].push_back(std::max<Mi>(d, 1));
      }
    }
    std::sort(grid[s].begin(), grid[s].end());
    grid[s].erase(std::unique(grid[s].begin(), grid[s].end()), grid[s].end());
  }
  return grid;
}

inline void CheckCapacity(const std::vector<std::vector<Mi>>& grid,
                          const ExactLimits& limits) {
  std::uint64_t product = 1;
  for (const auto& g : grid) {
    const std::uint64_t options = g.size() + 1;
    if (product > limits.max_combinations / options) {
      throw CapacityError(
          "instance exceeds " + std::to_string(limits.max_combinations) +
          " candidate combinations; export the LP model and use an external "
          "MIP solver");
    }
    product *= options;
  }
}

class Deadline {
 public:
  explicit Deadline(std::optional<double> seconds)
      : end_(seconds ? std::optional(std::chrono::steady_clock::now() +
                                     std::chrono::duration_cast<
                                         std::chrono::steady_clock::duration>(
                                         std::chrono::duration<double>(
                                             *seconds)))
                     : std::nullopt) {}

  void Tick() {
    if (!end_ || (ticks_++ & 0xfff) != 0) return;
    if (std::chrono::steady_clock::now() >= *end_) {
      throw CapacityError(
          "exact search exceeded its wall-clock cap; export the LP model and "
          "use an external MIP solver");
    }
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
  std::uint64_t ticks_ = 0;
};

// suffix[i][p]: smallest lifted solve time of p among strategies >= i.
inline std::vector<std::vector<Mi>> SuffixMinTimes(
    const EvaluationMatrix& matrix) {
  const std::size_t n = matrix.num_strategies();
  std::vector<std::vector<Mi>> suffix(
      n + 1, std::vector<Mi>(matrix.num_problems(), kNever));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      const Mi d = matrix.solve_time(i, p);
      suffix[i][p] =
          std::min(suffix[i + 1][p], d == kNever ? kNever : std::max<Mi>(d, 1));
    }
  }
  return suffix;
}

}  // namespace internal

// Maximum coverage under the budget. Among optimal limit vectors (in
// strategy order) the lexicographically smallest is returned.
inline ExactSolution SolveExact(const EvaluationMatrix& matrix, Mi budget,
                                const ExactLimits& limits = {}) {
  if (budget < 0) throw ArgumentError("budget must be >= 0");
  const auto grid = internal::CandidateGrid(matrix, budget);
  internal::CheckCapacity(grid, limits);
  const auto suffix = internal::SuffixMinTimes(matrix);
  const std::size_t n = matrix.num_strategies();
  const std::size_t num_p = matrix.num_problems();

  std::vector<int> cover(num_p, 0);
  std::vector<Mi> current(n, 0), best_vec(n, 0);
  Mi best = -1;
  internal::Deadline deadline(limits.wall_seconds);

  auto dfs = [&](auto&& self, std::size_t i, Mi remaining, Mi covered) -> void {
    deadline.Tick();
    if (i == n) {
      if (covered > best) {
        best = covered;
        best_vec = current;
      }
      return;
    }
    Mi bound = covered;
    for (std::size_t p = 0; p < num_p; ++p) {
      if (cover[p] == 0 && suffix[i][p] <= remaining) ++bound;
    }
    if (bound <= best) return;

    current[i] = 0;
    self(self, i + 1, remaining, covered);
    for (Mi t : grid[i]) {
      if (t > remaining) break;
      Mi gained = 0;
      for (std::size_t p = 0; p < num_p; ++p) {
        if (matrix.Solves(i, p, t) && cover[p]++ == 0) ++gained;
      }
      current[i] = t;
      self(self, i + 1, remaining - t, covered + gained);
      for (std::size_t p = 0; p < num_p; ++p) {
        if (matrix.Solves(i, p, t)) --cover[p];
      }
    }
    current[i] = 0;
  };
  dfs(dfs, 0, budget, 0);

  ExactSolution sol;
  sol.objective = std::max<Mi>(best, 0);
  for (std::size_t s = 0; s < n; ++s) {
    sol.pre.Set(matrix.strategies()[s], best_vec[s]);
  }
  return sol;
}

// Minimum total time covering every problem some strategy solves.
inline ExactSolution MinTimeFullCover(const EvaluationMatrix& matrix,
                                      const ExactLimits& limits = {}) {
  const auto grid = internal::CandidateGrid(matrix, kNever);
  internal::CheckCapacity(grid, limits);
  const auto suffix = internal::SuffixMinTimes(matrix);
  const std::size_t n = matrix.num_strategies();
  const std::size_t num_p = matrix.num_problems();

  std::vector<bool> target(num_p, false);
  Mi uncovered_targets = 0;
  for (std::size_t p = 0; p < num_p; ++p) {
    if (n > 0 && suffix[0][p] != kNever) {
      target[p] = true;
      ++uncovered_targets;
    }
  }

  std::vector<int> cover(num_p, 0);
  std::vector<Mi> current(n, 0), best_vec(n, 0);
  std::optional<Mi> best;
  internal::Deadline deadline(limits.wall_seconds);

  auto dfs = [&](auto&& self, std::size_t i, Mi cost, Mi open) -> void {
    deadline.Tick();
    if (open == 0) {
      if (!best || cost < *best) {
        best = cost;
        best_vec = current;
      }
      return;
    }
    if (i == n) return;
    Mi lower = 0;
    for (std::size_t p = 0; p < num_p; ++p) {
      if (!target[p] || cover[p] > 0) continue;
      if (suffix[i][p] == kNever) return;  // cannot be covered any more
      lower = std::max(lower, suffix[i][p]);
    }
    if (best && cost + lower >= *best) return;

    current[i] = 0;
    self(self, i + 1, cost, open);
    for (Mi t : grid[i]) {
      if (best && cost + t >= *best) break;
      Mi closed = 0;
      for (std::size_t p = 0; p < num_p; ++p) {
        if (target[p] && matrix.Solves(i, p, t) && cover[p]++ == 0) ++closed;
      }
      current[i] = t;
      self(self, i + 1, cost + t, open - closed);
      for (std::size_t p = 0; p < num_p; ++p) {
        if (target[p] && matrix.Solves(i, p, t)) --cover[p];
      }
    }
    current[i] = 0;
  };
  dfs(dfs, 0, 0, uncovered_targets);

  ExactSolution sol;
  sol.objective = best.value_or(0);
  for (std::size_t s = 0; s < n; ++s) {
    sol.pre.Set(matrix.strategies()[s], best_vec[s]);
  }
  return sol;
}

}  // namespace portsched

#endif  // PORTSCHED_EXACT_HPP_
