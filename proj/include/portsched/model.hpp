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

// Core data model: evaluation observations, the evaluation matrix, slices,
// pre-schedules and schedules. All values are immutable once built.

#ifndef PORTSCHED_MODEL_HPP_
#define PORTSCHED_MODEL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace portsched {

// Time in megainstructions (Mi). Integer granularity throughout.
using Mi = std::int64_t;

// Marks "not solved within any limit" in the deterministic view. Never
// written to files; the CSV carries a status instead.
inline constexpr Mi kNever = std::numeric_limits<Mi>::max();

using StrategyId = std::string;
using ProblemId = std::string;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (CSV, JSON, schedule text).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Reference to an id the dataset does not declare.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid argument to an operation (negative budget, bad k, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Exact search refused because the instance exceeds the configured limits.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// LP export failed (identifier collision after sanitization).
class ExportError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Observations
// ---------------------------------------------------------------------------

enum class Status { kSol, kGup, kTmo };

inline std::string_view ToString(Status status) {
  switch (status) {
    case Status::kSol:
      return "SOL";
    case Status::kGup:
      return "GUP";
    case Status::kTmo:
      return "TMO";
  }
  return "?";
}

inline std::optional<Status> ParseStatus(std::string_view text) {
  if (text == "SOL") return Status::kSol;
  if (text == "GUP") return Status::kGup;
  if (text == "TMO") return Status::kTmo;
  return std::nullopt;
}

struct Observation {
  Status status = Status::kTmo;
  Mi runtime = 0;

  friend bool operator==(const Observation&, const Observation&) = default;
  friend auto operator<=>(const Observation& a, const Observation& b) {
    if (auto c = a.runtime <=> b.runtime; c != 0) return c;
    return static_cast<int>(a.status) <=> static_cast<int>(b.status);
  }
};

// Multiset of observations for one (strategy, problem) pair. Order of
// insertion is kept; equality compares as multisets.
class ObservationSet {
 public:
  ObservationSet() = default;
  ObservationSet(std::initializer_list<Observation> init) : entries_(init) {
    for (const Observation& o : entries_) Validate(o);
  }

  void Add(Observation o) {
    Validate(o);
    entries_.push_back(o);
  }

  std::span<const Observation> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Minimum SOL runtime, or kNever when no SOL observation exists.
  Mi MinSolveTime() const {
    Mi best = kNever;
    for (const Observation& o : entries_) {
      if (o.status == Status::kSol) best = std::min(best, o.runtime);
    }
    return best;
  }

  friend bool operator==(const ObservationSet& a, const ObservationSet& b) {
    std::vector<Observation> x = a.entries_, y = b.entries_;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }

 private:
  static void Validate(const Observation& o) {
    if (o.runtime < 0) throw ArgumentError("observation runtime is negative");
  }

  std::vector<Observation> entries_;
};

// ---------------------------------------------------------------------------
// Evaluation matrix
// ---------------------------------------------------------------------------

// Dense strategy x problem table of observation multisets. Strategy and
// problem ids are kept in lexicographic order, so an index comparison is an
// id comparison; every tie-break in the library relies on that.
class EvaluationMatrix {
 public:
  EvaluationMatrix() = default;

  // Ids are deduplicated and sorted. Cells start empty.
  EvaluationMatrix(std::vector<StrategyId> strategies,
                   std::vector<ProblemId> problems)
      : strategies_(Canonical(std::move(strategies), "strategy")),
        problems_(Canonical(std::move(problems), "problem")),
        cells_(strategies_.size() * problems_.size()),
        solve_time_(cells_.size(), kNever) {}

  std::span<const StrategyId> strategies() const { return strategies_; }
  std::span<const ProblemId> problems() const { return problems_; }
  std::size_t num_strategies() const { return strategies_.size(); }
  std::size_t num_problems() const { return problems_.size(); }
  bool empty() const { return strategies_.empty() || problems_.empty(); }

  std::optional<std::size_t> FindStrategy(std::string_view id) const {
    return Find(strategies_, id);
  }
  std::optional<std::size_t> FindProblem(std::string_view id) const {
    return Find(problems_, id);
  }
  std::size_t StrategyIndex(std::string_view id) const {
    if (auto i = FindStrategy(id)) return *i;
    throw LookupError("unknown strategy '" + std::string(id) + "'");
  }
  std::size_t ProblemIndex(std::string_view id) const {
    if (auto i = FindProblem(id)) return *i;
    throw LookupError("unknown problem '" + std::string(id) + "'");
  }

  void Add(std::size_t s, std::size_t p, Observation o) {
    const std::size_t k = Cell(s, p);
    cells_[k].Add(o);
    if (o.status == Status::kSol) {
      solve_time_[k] = std::min(solve_time_[k], o.runtime);
    }
  }
  void Add(std::string_view s, std::string_view p, Observation o) {
    Add(StrategyIndex(s), ProblemIndex(p), o);
  }

  const ObservationSet& observations(std::size_t s, std::size_t p) const {
    return cells_[Cell(s, p)];
  }

  // Deterministic view: minimum SOL runtime, kNever if none.
  Mi solve_time(std::size_t s, std::size_t p) const {
    return solve_time_[Cell(s, p)];
  }
  Mi solve_time(std::string_view s, std::string_view p) const {
    return solve_time(StrategyIndex(s), ProblemIndex(p));
  }

  // True iff a slice of strategy s with the given limit solves p. A zero
  // limit means the strategy is not run at all.
  bool Solves(std::size_t s, std::size_t p, Mi limit) const {
    return limit > 0 && solve_time(s, p) <= limit;
  }

  // Sub-matrix over the given ids (unknown ids raise LookupError).
  EvaluationMatrix Restrict(std::span<const StrategyId> strategies,
                            std::span<const ProblemId> problems) const {
    EvaluationMatrix out({strategies.begin(), strategies.end()},
                         {problems.begin(), problems.end()});
    std::vector<std::size_t> pmap(out.num_problems());
    for (std::size_t q = 0; q < out.num_problems(); ++q) {
      pmap[q] = ProblemIndex(out.problems_[q]);
    }
    for (std::size_t r = 0; r < out.num_strategies(); ++r) {
      const std::size_t s = StrategyIndex(out.strategies_[r]);
      for (std::size_t q = 0; q < out.num_problems(); ++q) {
        for (const Observation& o : observations(s, pmap[q]).entries()) {
          out.Add(r, q, o);
        }
      }
    }
    return out;
  }

  EvaluationMatrix RestrictStrategies(
      std::span<const StrategyId> strategies) const {
    return Restrict(strategies, problems_);
  }

  friend bool operator==(const EvaluationMatrix& a,
                         const EvaluationMatrix& b) {
    return a.strategies_ == b.strategies_ && a.problems_ == b.problems_ &&
           a.cells_ == b.cells_;
  }

 private:
  static std::vector<std::string> Canonical(std::vector<std::string> ids,
                                            const char* what) {
    for (const std::string& id : ids) {
      if (id.empty()) {
        throw ArgumentError(std::string("empty ") + what + " id");
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  static std::optional<std::size_t> Find(const std::vector<std::string>& ids,
                                         std::string_view id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
  }

  std::size_t Cell(std::size_t s, std::size_t p) const {
    return s * problems_.size() + p;
  }

  std::vector<StrategyId> strategies_;
  std::vector<ProblemId> problems_;
  std::vector<ObservationSet> cells_;
  std::vector<Mi> solve_time_;
};

// ---------------------------------------------------------------------------
// Schedules
// ---------------------------------------------------------------------------

struct Slice {
  StrategyId strategy;
  Mi limit = 1;

  friend bool operator==(const Slice&, const Slice&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Slice& s) {
    return os << '(' << s.strategy << ',' << s.limit << ')';
  }
};

// Unordered time assignment t_s. Zero entries are treated as absent and are
// never stored.
class PreSchedule {
 public:
  PreSchedule() = default;
  PreSchedule(std::initializer_list<std::pair<const StrategyId, Mi>> init) {
    for (const auto& [s, t] : init) Set(s, t);
  }

  void Set(const StrategyId& strategy, Mi limit) {
    if (limit < 0) throw ArgumentError("negative time limit");
    if (limit == 0) {
      limits_.erase(strategy);
    } else {
      limits_[strategy] = limit;
    }
  }

  Mi Get(std::string_view strategy) const {
    auto it = limits_.find(std::string(strategy));
    return it == limits_.end() ? 0 : it->second;
  }

  Mi Total() const {
    Mi total = 0;
    for (const auto& [s, t] : limits_) total += t;
    return total;
  }

  const std::map<StrategyId, Mi>& limits() const { return limits_; }
  std::size_t size() const { return limits_.size(); }
  bool empty() const { return limits_.empty(); }

  friend bool operator==(const PreSchedule&, const PreSchedule&) = default;
  friend std::ostream& operator<<(std::ostream& os, const PreSchedule& pre) {
    os << '{';
    const char* sep = "";
    for (const auto& [s, t] : pre.limits_) {
      os << sep << s << ':' << t;
      sep = ",";
    }
    return os << '}';
  }

 private:
  std::map<StrategyId, Mi> limits_;
};

// Ordered slices. A strategy may appear more than once.
class Schedule {
 public:
  Schedule() = default;
  Schedule(std::initializer_list<Slice> init) {
    for (const Slice& s : init) Append(s);
  }
  explicit Schedule(std::vector<Slice> slices) {
    for (Slice& s : slices) Append(std::move(s));
  }

  // Slices in strategy-id order.
  static Schedule FromPreSchedule(const PreSchedule& pre) {
    Schedule out;
    for (const auto& [s, t] : pre.limits()) out.Append({s, t});
    return out;
  }

  void Append(Slice slice) {
    if (slice.strategy.empty()) throw ArgumentError("empty strategy id");
    if (slice.limit < 1) throw ArgumentError("slice limit must be >= 1");
    slices_.push_back(std::move(slice));
  }

  std::span<const Slice> slices() const { return slices_; }
  std::size_t size() const { return slices_.size(); }
  bool empty() const { return slices_.empty(); }

  Mi Total() const {
    Mi total = 0;
    for (const Slice& s : slices_) total += s.limit;
    return total;
  }

  // Per-strategy maximum limit.
  PreSchedule Collapse() const {
    PreSchedule pre;
    for (const Slice& s : slices_) {
      pre.Set(s.strategy, std::max(pre.Get(s.strategy), s.limit));
    }
    return pre;
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Schedule& s) {
    os << '[';
    for (std::size_t i = 0; i < s.slices_.size(); ++i) {
      os << (i ? "," : "") << s.slices_[i];
    }
    return os << ']';
  }

 private:
  std::vector<Slice> slices_;
};

}  // namespace portsched

#endif  // PORTSCHED_MODEL_HPP_
