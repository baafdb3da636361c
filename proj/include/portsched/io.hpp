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

// File formats.
//
//   evaluation CSV   header `strategy,problem,status,time`, one observation
//                    per row, status in {SOL, GUP, TMO}, time in integer Mi
//   matrix JSON      {"strategies", "problems", "cells": [{"strategy",
//                    "problem", "obs": [{"status", "time"}]}]}
//   schedule JSON    {"slices": [{"strategy", "limit"}], "total"}
//   journal JSON     {"entries": [{"strategy", "new_limit", "delta",
//                    "cumulative", "newly_covered", "criterion"}]}
//   schedule text    one `strategy limit` pair per line
//   metadata JSON    {"strategies": {"<id>": {"witness", "discovered_at",
//                    "probe_limit", "options": {...}}}}

#ifndef PORTSCHED_IO_HPP_
#define PORTSCHED_IO_HPP_

#include <charconv>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "portsched/baselines.hpp"
#include "portsched/distributions.hpp"
#include "portsched/exact.hpp"
#include "portsched/greedy.hpp"
#include "portsched/model.hpp"

namespace portsched {

using Json = nlohmann::json;

inline constexpr std::string_view kCsvHeader = "strategy,problem,status,time";

namespace internal {

inline void StripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline std::vector<std::string> SplitFields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// Base-10 integer, digits only (an optional leading '-' is reported as
// negative rather than malformed).
inline std::optional<Mi> ParseInteger(std::string_view text, bool& negative) {
  negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  Mi value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

[[noreturn]] inline void LineError(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace internal

// ---------------------------------------------------------------------------
// Evaluation matrix
// ---------------------------------------------------------------------------

inline EvaluationMatrix LoadMatrixCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::tuple<std::string, std::string, Observation>> rows;
  std::vector<std::string> strategies, problems;
  while (std::getline(in, line)) {
    ++line_no;
    internal::StripCr(line);
    if (!have_header) {
      if (line != kCsvHeader) {
        internal::LineError(line_no, "expected header '" +
                                         std::string(kCsvHeader) + "'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    if (line == kCsvHeader) internal::LineError(line_no, "duplicate header");
    const std::vector<std::string> f = internal::SplitFields(line, ',');
    if (f.size() != 4) {
      internal::LineError(line_no, "expected 4 columns, found " +
                                       std::to_string(f.size()));
    }
    if (f[0].empty()) internal::LineError(line_no, "empty strategy id");
    if (f[1].empty()) internal::LineError(line_no, "empty problem id");
    const auto status = ParseStatus(f[2]);
    if (!status) internal::LineError(line_no, "unknown status '" + f[2] + "'");
    bool negative = false;
    const auto time = internal::ParseInteger(f[3], negative);
    if (!time) internal::LineError(line_no, "malformed time '" + f[3] + "'");
    if (negative) internal::LineError(line_no, "negative time");
    rows.emplace_back(f[0], f[1], Observation{*status, *time});
    strategies.push_back(f[0]);
    problems.push_back(f[1]);
  }
  if (!have_header) throw ParseError("line 1: missing header");
  EvaluationMatrix matrix(std::move(strategies), std::move(problems));
  for (const auto& [s, p, o] : rows) matrix.Add(s, p, o);
  return matrix;
}

inline EvaluationMatrix LoadMatrixCsv(const std::string& text) {
  std::istringstream in(text);
  return LoadMatrixCsv(in);
}

inline void WriteMatrixCsv(const EvaluationMatrix& matrix, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      for (const Observation& o : matrix.observations(s, p).entries()) {
        out << matrix.strategies()[s] << ',' << matrix.problems()[p] << ','
            << ToString(o.status) << ',' << o.runtime << "\n";
      }
    }
  }
}

inline std::string MatrixToCsv(const EvaluationMatrix& matrix) {
  std::ostringstream out;
  WriteMatrixCsv(matrix, out);
  return out.str();
}

inline Json MatrixToJson(const EvaluationMatrix& matrix) {
  Json cells = Json::array();
  for (std::size_t s = 0; s < matrix.num_strategies(); ++s) {
    for (std::size_t p = 0; p < matrix.num_problems(); ++p) {
      const ObservationSet& obs = matrix.observations(s, p);
      if (obs.empty()) continue;
      Json list = Json::array();
      for (const Observation& o : obs.entries()) {
        list.push_back({{"status", ToString(o.status)}, {"time", o.runtime}});
      }
      cells.push_back({{"strategy", matrix.strategies()[s]},
                       {"problem", matrix.problems()[p]},
                       {"obs", std::move(list)}});
    }
  }
  return {{"strategies", matrix.strategies()},
          {"problems", matrix.problems()},
          {"cells", std::move(cells)}};
}

namespace internal {

template <typename F>
auto Guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace internal

inline EvaluationMatrix MatrixFromJson(const Json& j) {
  return internal::Guard("matrix JSON", [&] {
    EvaluationMatrix matrix(j.at("strategies").get<std::vector<std::string>>(),
                            j.at("problems").get<std::vector<std::string>>());
    for (const Json& cell : j.at("cells")) {
      const auto s = matrix.FindStrategy(cell.at("strategy").get<std::string>());
      const auto p = matrix.FindProblem(cell.at("problem").get<std::string>());
      if (!s || !p) throw ParseError("matrix JSON: cell id not declared");
      for (const Json& o : cell.at("obs")) {
        const auto status = ParseStatus(o.at("status").get<std::string>());
        if (!status) throw ParseError("matrix JSON: unknown status");
        const Mi time = o.at("time").get<Mi>();
        if (time < 0) throw ParseError("matrix JSON: negative time");
        matrix.Add(*s, *p, {*status, time});
      }
    }
    return matrix;
  });
}

// ---------------------------------------------------------------------------
// Schedules and journals
// ---------------------------------------------------------------------------

inline Json ScheduleToJson(const Schedule& schedule) {
  Json slices = Json::array();
  for (const Slice& s : schedule.slices()) {
    slices.push_back({{"strategy", s.strategy}, {"limit", s.limit}});
  }
  return {{"slices", std::move(slices)}, {"total", schedule.Total()}};
}

inline Schedule ScheduleFromJson(const Json& j) {
  return internal::Guard("schedule JSON", [&] {
    Schedule out;
    for (const Json& s : j.at("slices")) {
      out.Append({s.at("strategy").get<std::string>(), s.at("limit").get<Mi>()});
    }
    return out;
  });
}

inline std::string ScheduleToText(const Schedule& schedule) {
  std::string out;
  for (const Slice& s : schedule.slices()) {
    out += s.strategy + " " + std::to_string(s.limit) + "\n";
  }
  return out;
}

inline Schedule ScheduleFromText(std::istream& in) {
  Schedule out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    internal::StripCr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string strategy, limit, extra;
    fields >> strategy >> limit;
    if (strategy.empty() || limit.empty() || (fields >> extra)) {
      internal::LineError(line_no, "expected 'strategy limit'");
    }
    bool negative = false;
    const auto t = internal::ParseInteger(limit, negative);
    if (!t || negative || *t < 1) {
      internal::LineError(line_no, "limit must be a positive integer");
    }
    out.Append({strategy, *t});
  }
  return out;
}

// Accepts either schedule JSON or schedule text.
inline Schedule ParseSchedule(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw ParseError(std::string("schedule JSON: ") + e.what());
    }
    return ScheduleFromJson(j);
  }
  std::istringstream in(text);
  return ScheduleFromText(in);
}

inline Json JournalToJson(const Journal& journal) {
  Json entries = Json::array();
  for (const JournalEntry& e : journal.entries) {
    entries.push_back({{"strategy", e.strategy},
                       {"new_limit", e.new_limit},
                       {"delta", e.delta},
                       {"cumulative", e.cumulative},
                       {"newly_covered", e.newly_covered},
                       {"criterion", e.criterion}});
  }
  return {{"entries", std::move(entries)}};
}

inline Journal JournalFromJson(const Json& j) {
  return internal::Guard("journal JSON", [&] {
    Journal out;
    for (const Json& e : j.at("entries")) {
      JournalEntry entry;
      entry.strategy = e.at("strategy").get<std::string>();
      entry.new_limit = e.at("new_limit").get<Mi>();
      entry.delta = e.at("delta").get<Mi>();
      entry.cumulative = e.at("cumulative").get<Mi>();
      entry.newly_covered =
          e.at("newly_covered").get<std::vector<std::string>>();
      entry.criterion = e.at("criterion").get<double>();
      out.entries.push_back(std::move(entry));
    }
    return out;
  });
}

inline Json SolutionToJson(const ExactSolution& sol) {
  Json j = ScheduleToJson(Schedule::FromPreSchedule(sol.pre));
  j["objective"] = sol.objective;
  return j;
}

// ---------------------------------------------------------------------------
// Strategy metadata
// ---------------------------------------------------------------------------

inline std::vector<StrategyMeta> MetaFromJson(const Json& j) {
  return internal::Guard("metadata JSON", [&] {
    std::vector<StrategyMeta> out;
    for (const auto& [id, entry] : j.at("strategies").items()) {
      StrategyMeta m;
      m.id = id;
      if (entry.contains("witness") && !entry["witness"].is_null()) {
        m.witness = entry["witness"].get<std::string>();
      }
      if (entry.contains("discovered_at") && !entry["discovered_at"].is_null()) {
        m.discovered_at = entry["discovered_at"].get<double>();
      }
      if (entry.contains("probe_limit") && !entry["probe_limit"].is_null()) {
        m.probe_limit = entry["probe_limit"].get<Mi>();
      }
      if (entry.contains("options")) {
        for (const auto& [name, value] : entry["options"].items()) {
          if (name.empty()) throw ParseError("metadata JSON: empty option name");
          m.options[name] =
              value.is_string() ? value.get<std::string>() : value.dump();
        }
      }
      out.push_back(std::move(m));
    }
    return out;
  });
}

inline Json MetaToJson(std::span<const StrategyMeta> meta) {
  Json strategies = Json::object();
  for (const StrategyMeta& m : meta) {
    Json entry = {{"options", m.options}};
    if (m.witness) entry["witness"] = *m.witness;
    if (m.discovered_at) entry["discovered_at"] = *m.discovered_at;
    if (m.probe_limit) entry["probe_limit"] = *m.probe_limit;
    strategies[m.id] = std::move(entry);
  }
  return {{"strategies", std::move(strategies)}};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline std::string CurveToCsv(const Curve& curve) {
  std::string out = "time,solved\n";
  for (const CurvePoint& p : curve) {
    out += std::to_string(p.time) + "," + std::to_string(p.solved) + "\n";
  }
  return out;
}

// Two decimals.
inline std::string Fixed2(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << value;
  return out.str();
}

inline std::string DistributionCsvHeader(bool conditional) {
  return std::string(conditional ? "given," : "") +
         "value,strategies,unique_absolute,unique_per_strategy,distribution\n";
}

inline std::string DistributionRowsToCsv(const OptionDistribution& dist,
                                         const std::string* given = nullptr) {
  std::string out;
  for (const OptionDistributionRow& row : dist.rows) {
    if (given) out += *given + ",";
    out += row.value.value_or("N/A") + "," +
           std::to_string(row.strategy_count) + "," +
           std::to_string(row.unique_solved) + "," +
           Fixed2(row.per_strategy) + "," +
           (row.normalized ? Fixed2(*row.normalized) : std::string()) + "\n";
  }
  return out;
}

}  // namespace portsched

#endif  // PORTSCHED_IO_HPP_
