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

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 input or
// parse error, 3 capacity error (exact search too large). Diagnostics go to
// the error stream only.

#ifndef PORTSCHED_TOOLS_CLI_HPP_
#define PORTSCHED_TOOLS_CLI_HPP_

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "portsched/baselines.hpp"
#include "portsched/distributions.hpp"
#include "portsched/exact.hpp"
#include "portsched/greedy.hpp"
#include "portsched/harness.hpp"
#include "portsched/io.hpp"
#include "portsched/probabilistic.hpp"
#include "portsched/simulate.hpp"

namespace portsched::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kCapacity = 3 };

class IoError : public Error {
 public:
  using Error::Error;
};

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json ReadJsonFile(const std::string& path) {
  try {
    return Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline EvaluationMatrix ReadMatrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return LoadMatrixCsv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Writes to `path` through a temporary file and a rename, or to `out` when
// the path is empty or "-".
inline void WriteOutput(const std::string& path, const std::string& content,
                        std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw IoError("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename onto '" + path + "': " + ec.message());
}

inline std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

struct RegularizationFlags {
  RegularizationParams params;
  std::string extension = "full";

  void Register(CLI::App* app, bool with_extension = true) {
    app->add_option("--alpha", params.alpha,
                    "Temporal reward exponent (>= 0)")
        ->capture_default_str();
    app->add_option("--beta", params.beta,
                    "Diminishing reward base in [0, 1]")
        ->capture_default_str();
    app->add_option("--slack-mul", params.slack_mul,
                    "Multiplicative slack (>= 1)")
        ->capture_default_str();
    app->add_option("--slack-add", params.slack_add,
                    "Additive slack in Mi (>= 0)")
        ->capture_default_str();
    if (with_extension) {
      app->add_option("--extension", extension,
                      "Slice extension: full, conservative or none")
          ->check(CLI::IsMember({"full", "conservative", "none"}))
          ->capture_default_str();
    }
  }

  ExtensionMode mode() const { return *ParseExtensionMode(extension); }
};

inline Json CvReportToJson(const CvSummary& cv) {
  const ConstructorConfig& c = cv.config;
  Json config = {{"constructor", ToString(c.kind)},
                 {"alpha", c.params.alpha},
                 {"beta", c.params.beta},
                 {"slack_mul", c.params.slack_mul},
                 {"slack_add", c.params.slack_add},
                 {"extension", ToString(c.mode)},
                 {"epsilon", c.epsilon},
                 {"dt", c.psetheo_step},
                 {"l", c.psetheo_quantization},
                 {"bucket", c.bucket},
                 {"include_unwitnessed", c.include_unwitnessed}};
  Json folds = Json::array();
  for (const FoldRecord& rec : cv.folds) {
    Json f = {{"round", rec.split.round},
              {"fold", rec.split.fold},
              {"train_size", rec.split.train.size()},
              {"test_size", rec.split.test.size()}};
    if (rec.result) {
      const FoldResult& r = *rec.result;
      f["train_solved"] = r.train_solved;
      f["test_solved"] = r.test_solved;
      f["train_rescaled"] = r.train_rescaled;
      f["test_rescaled"] =
          r.test_rescaled ? Json(*r.test_rescaled) : Json(nullptr);
      f["fit_seconds"] = r.fit_seconds;
      f["schedule"] = ScheduleToJson(r.schedule);
    } else {
      f["error"] = rec.error;
    }
    folds.push_back(std::move(f));
  }
  auto stat = [](const MeanStd& m) {
    return Json{{"mean", m.mean}, {"stddev", m.stddev}, {"count", m.count}};
  };
  return {{"config", std::move(config)},
          {"budget", cv.budget ? Json(*cv.budget) : Json("unbounded")},
          {"k", cv.k},
          {"rounds", cv.rounds},
          {"seed", cv.seed},
          {"folds", std::move(folds)},
          {"skipped", cv.skipped},
          {"stddev_kind", "sample"},
          {"train", stat(cv.train)},
          {"test", stat(cv.test)},
          {"fit_seconds", stat(cv.fit_seconds)}};
}

inline std::string CvSummaryCsv(const CvSummary& cv) {
  const ConstructorConfig& c = cv.config;
  std::ostringstream out;
  out << "constructor,alpha,beta,slack_mul,slack_add,extension,budget,folds,"
         "skipped,train_mean,train_stddev,test_mean,test_stddev,"
         "fit_seconds_mean\n";
  out << ToString(c.kind) << ',' << c.params.alpha << ',' << c.params.beta
      << ',' << c.params.slack_mul << ',' << c.params.slack_add << ','
      << ToString(c.mode) << ','
      << (cv.budget ? std::to_string(*cv.budget) : "unbounded") << ','
      << cv.folds.size() - cv.skipped << ',' << cv.skipped << ','
      << cv.train.mean << ',' << cv.train.stddev << ',' << cv.test.mean << ','
      << cv.test.stddev << ',' << cv.fit_seconds.mean << "\n";
  return out.str();
}

inline int Run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Strategy schedule construction for algorithm portfolios",
               "portsched"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Output file (default: stdout)");

  // construct
  auto* construct = app.add_subcommand(
      "construct", "Greedy schedule construction from an evaluation matrix");
  std::string matrix_path, journal_path, schedule_path, meta_path, format =
                                                                        "json";
  Mi budget = 0, pad = 0;
  bool unbounded = false, order = false;
  RegularizationFlags reg;
  construct->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  auto* c_budget = construct->add_option("--budget", budget, "Budget in Mi");
  auto* c_unbounded =
      construct->add_flag("--unbounded", unbounded, "Run without a budget");
  c_budget->excludes(c_unbounded);
  reg.Register(construct);
  construct->add_flag("--order", order, "Order slices greedily by utility");
  construct->add_option("--pad", pad, "Extend every slice by N Mi")
      ->capture_default_str();
  construct->add_option("--journal", journal_path, "Write the journal here");
  construct->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // replay
  auto* replay = app.add_subcommand(
      "replay", "Replay a budget-less journal up to a budget");
  replay->add_option("--journal", journal_path, "Journal JSON")->required();
  replay->add_option("--budget", budget, "Budget in Mi")->required();
  replay->add_option("--matrix", matrix_path, "Evaluation CSV (for --order)");
  replay->add_flag("--order", order, "Order slices greedily by utility");

  // prob-construct
  auto* prob = app.add_subcommand(
      "prob-construct", "Greedy construction over success probabilities");
  double epsilon = kDefaultEpsilon;
  prob->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  prob->add_option("--budget", budget, "Budget in Mi")->required();
  prob->add_option("--epsilon", epsilon, "Stop below this score")
      ->capture_default_str();
  RegularizationFlags prob_reg;
  prob_reg.Register(prob, /*with_extension=*/false);
  prob->add_option("--journal", journal_path, "Write the journal here");

  // exact
  auto* exact = app.add_subcommand(
      "exact", "Exact schedule construction (LP export or small-instance solve)");
  std::string lp_path;
  bool solve = false;
  ExactLimits limits;
  double wall = 0.0;
  exact->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  exact->add_option("--budget", budget, "Budget in Mi")->required();
  auto* lp_opt = exact->add_option("--export-lp", lp_path, "Write LP model");
  auto* solve_opt = exact->add_flag("--solve", solve, "Solve by branch and bound");
  lp_opt->excludes(solve_opt);
  exact->add_option("--max-combinations", limits.max_combinations,
                    "Refuse larger candidate grids")
      ->capture_default_str();
  exact->add_option("--time-limit", wall, "Wall-clock cap in seconds");

  // min-cover
  auto* min_cover = app.add_subcommand(
      "min-cover", "Shortest pre-schedule covering every solvable problem");
  min_cover->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  min_cover->add_option("--max-combinations", limits.max_combinations,
                        "Refuse larger candidate grids")
      ->capture_default_str();
  min_cover->add_option("--time-limit", wall, "Wall-clock cap in seconds");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Problems a schedule solves on a matrix");
  simulate->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  simulate->add_option("--schedule", schedule_path, "Schedule JSON or text")
      ->required();

  // curve
  auto* curve = app.add_subcommand("curve", "Cumulative performance curve");
  bool vbss = false;
  curve->add_option("--matrix", matrix_path, "Evaluation CSV");
  auto* cj = curve->add_option("--journal", journal_path, "Journal JSON");
  auto* cs = curve->add_option("--schedule", schedule_path, "Schedule file");
  auto* cv_flag = curve->add_flag("--vbss", vbss, "Virtual best selector");
  cj->excludes(cs)->excludes(cv_flag);
  cs->excludes(cv_flag);

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Reference constructors");
  baseline->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  baseline->require_subcommand(1);
  auto* psetheo = baseline->add_subcommand("psetheo", "Step-quantized greedy");
  PSetheoParams ps;
  psetheo->add_option("--dt", ps.step, "Initial step in Mi")->required();
  psetheo->add_option("--l", ps.quantization, "Quantization")->required();
  psetheo->add_option("--budget", ps.budget, "Budget in Mi")->required();
  auto* buckets = baseline->add_subcommand("buckets", "Equal-sized slices");
  Mi bucket = 1;
  buckets->add_option("--bucket", bucket, "Slice size in Mi")->required();
  buckets->add_option("--budget", budget, "Budget in Mi")->required();

  // dist
  auto* dist = app.add_subcommand(
      "dist", "Option-value distribution from uniquely solved problems");
  std::string option, given;
  dist->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  dist->add_option("--meta", meta_path, "Strategy metadata JSON")->required();
  dist->add_option("--option", option, "Option name")->required();
  dist->add_option("--given", given, "Condition on this option");

  // freq
  auto* freq = app.add_subcommand(
      "freq", "Value frequencies among contributing strategies");
  freq->add_option("--meta", meta_path, "Strategy metadata JSON")->required();
  freq->add_option("--option", option, "Option name")->required();

  // luby
  auto* luby = app.add_subcommand("luby", "Luby-scaled probe limits");
  Mi base = 1, cap = 1;
  std::size_t count = 1;
  luby->add_option("--base", base, "Lowest limit in Mi")->required();
  luby->add_option("--cap", cap, "Highest limit (base * 2^k)")->required();
  luby->add_option("--count", count, "Number of limits")->required();

  // sample
  auto* sample = app.add_subcommand(
      "sample", "Forget half the problems and pick an uncovered one");
  std::uint64_t seed = 0;
  sample->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  sample->add_option("--meta", meta_path, "Strategy metadata JSON")->required();
  sample->add_option("--seed", seed, "Random seed")->capture_default_str();

  // cv
  auto* cv = app.add_subcommand("cv", "k-fold cross-validation");
  int k = 5, rounds = 10;
  unsigned threads = 1;
  std::string constructor = "greedy", csv_path;
  std::optional<double> cutoff;
  ConstructorConfig config;
  cv->add_option("--matrix", matrix_path, "Evaluation CSV")->required();
  cv->add_option("--meta", meta_path, "Strategy metadata JSON")->required();
  cv->add_option("--k", k, "Folds per round")->capture_default_str();
  cv->add_option("--rounds", rounds, "Rounds")->capture_default_str();
  cv->add_option("--seed", seed, "Random seed")->capture_default_str();
  auto* cv_budget = cv->add_option("--budget", budget, "Budget in Mi");
  auto* cv_unbounded =
      cv->add_flag("--unbounded", unbounded, "Greedy without a budget");
  cv_budget->excludes(cv_unbounded);
  cv->add_option("--constructor", constructor,
                 "greedy, probabilistic, exact, psetheo or buckets")
      ->check(CLI::IsMember(
          {"greedy", "probabilistic", "exact", "psetheo", "buckets"}))
      ->capture_default_str();
  RegularizationFlags cv_reg;
  cv_reg.Register(cv);
  cv->add_option("--epsilon", config.epsilon, "Probabilistic stop score")
      ->capture_default_str();
  cv->add_option("--dt", config.psetheo_step, "p-SETHEO initial step")
      ->capture_default_str();
  cv->add_option("--l", config.psetheo_quantization, "p-SETHEO quantization")
      ->capture_default_str();
  cv->add_option("--bucket", config.bucket, "Bucket size")
      ->capture_default_str();
  cv->add_option("--max-combinations", config.exact.max_combinations,
                 "Exact search limit")
      ->capture_default_str();
  cv->add_flag("--include-unwitnessed", config.include_unwitnessed,
               "Keep strategies that have no witness problem");
  cv->add_option("--cutoff", cutoff,
                 "Only strategies discovered no later than this (days)");
  cv->add_option("--threads", threads, "Folds evaluated concurrently")
      ->capture_default_str();
  cv->add_option("--csv", csv_path, "Also write a one-row CSV summary");

  // export-matrix
  auto* export_matrix = app.add_subcommand(
      "export-matrix", "Re-serialize an evaluation matrix");
  export_matrix->add_option("--matrix", matrix_path, "Evaluation CSV")
      ->required();
  export_matrix->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto require_budget = [&](CLI::Option* b, CLI::Option* u) -> Budget {
    if (u->count() > 0) return std::nullopt;
    if (b->count() == 0) throw ArgumentError("either --budget or --unbounded is required");
    return budget;
  };
  auto emit_schedule = [&](const Schedule& schedule) {
    WriteOutput(output,
                format == "text" ? ScheduleToText(schedule)
                                 : Dump(ScheduleToJson(schedule)),
                out);
  };

  try {
    if (construct->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      GreedyResult r = ConstructGreedy(matrix,
                                       require_budget(c_budget, c_unbounded),
                                       reg.params, reg.mode());
      Schedule schedule = r.schedule;
      if (order) schedule = OrderSlices(schedule.slices(), matrix);
      if (pad > 0) schedule = PadSlices(schedule, pad);
      if (!journal_path.empty()) {
        WriteOutput(journal_path, Dump(JournalToJson(r.journal)), out);
      }
      emit_schedule(schedule);
    } else if (replay->parsed()) {
      const Journal journal = JournalFromJson(ReadJsonFile(journal_path));
      if (budget < 0) throw ArgumentError("budget must be >= 0");
      const PreSchedule pre = ReplayJournal(journal, budget);
      Schedule schedule = Schedule::FromPreSchedule(pre);
      if (order) {
        if (matrix_path.empty()) throw ArgumentError("--order needs --matrix");
        schedule = OrderSlices(pre, ReadMatrix(matrix_path));
      }
      emit_schedule(schedule);
    } else if (prob->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      ProbabilisticResult r =
          ConstructProbabilistic(matrix, budget, prob_reg.params, epsilon);
      if (!journal_path.empty()) {
        WriteOutput(journal_path, Dump(JournalToJson(r.journal)), out);
      }
      emit_schedule(r.schedule);
    } else if (exact->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      if (wall > 0) limits.wall_seconds = wall;
      if (!lp_path.empty()) {
        WriteOutput(lp_path, ExportLp(BuildMip(matrix, budget)), out);
      } else if (solve) {
        WriteOutput(output, Dump(SolutionToJson(SolveExact(matrix, budget, limits))),
                    out);
      } else {
        throw ArgumentError("exact needs --export-lp FILE or --solve");
      }
    } else if (min_cover->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      if (wall > 0) limits.wall_seconds = wall;
      WriteOutput(output, Dump(SolutionToJson(MinTimeFullCover(matrix, limits))),
                  out);
    } else if (simulate->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      const Schedule schedule = ParseSchedule(ReadFile(schedule_path));
      const auto solved = SimulateSchedule(schedule, matrix);
      WriteOutput(output,
                  Dump({{"solved", solved}, {"count", solved.size()},
                        {"total", schedule.Total()}}),
                  out);
    } else if (curve->parsed()) {
      Curve points;
      if (!journal_path.empty()) {
        points = JournalCurve(JournalFromJson(ReadJsonFile(journal_path)));
      } else {
        if (matrix_path.empty()) {
          throw ArgumentError("--matrix is required with --schedule/--vbss");
        }
        const EvaluationMatrix matrix = ReadMatrix(matrix_path);
        if (vbss) {
          points = VbssCurve(matrix);
        } else if (!schedule_path.empty()) {
          points = ScheduleCurve(ParseSchedule(ReadFile(schedule_path)), matrix);
        } else {
          throw ArgumentError("curve needs --journal, --schedule or --vbss");
        }
      }
      WriteOutput(output, CurveToCsv(points), out);
    } else if (baseline->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      if (psetheo->parsed()) {
        emit_schedule(Schedule::FromPreSchedule(PSetheo(matrix, ps)));
      } else {
        emit_schedule(BucketSchedule(matrix, bucket, budget));
      }
    } else if (dist->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      const auto meta = MetaFromJson(ReadJsonFile(meta_path));
      std::string csv;
      bool fallback = false;
      if (given.empty()) {
        const OptionDistribution d = OptionValueDistribution(matrix, meta, option);
        fallback = d.uniform_fallback;
        csv = DistributionCsvHeader(false) + DistributionRowsToCsv(d);
      } else {
        csv = DistributionCsvHeader(true);
        for (const auto& row :
             ConditionalOptionDistribution(matrix, meta, option, given)) {
          const std::string label = row.given.value_or("Unconditional");
          fallback = fallback || row.distribution.uniform_fallback;
          csv += DistributionRowsToCsv(row.distribution, &label);
        }
      }
      if (fallback) {
        err << "warning: no applicable value has positive utility; "
               "distribution is uniform\n";
      }
      WriteOutput(output, csv, out);
    } else if (freq->parsed()) {
      const auto meta = MetaFromJson(ReadJsonFile(meta_path));
      Json j = Json::object();
      for (const auto& [value, f] : UpdateSamplingFrequencies(meta, option)) {
        j[value] = {{"count", f.count}, {"frequency", f.frequency}};
      }
      WriteOutput(output, Dump(j), out);
    } else if (luby->parsed()) {
      LubyLimits seq(base, cap);
      std::string text;
      for (Mi v : seq.Take(count)) text += std::to_string(v) + "\n";
      WriteOutput(output, text, out);
    } else if (sample->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      const auto meta = MetaFromJson(ReadJsonFile(meta_path));
      const ProblemSample s = SampleUncoveredProblem(
          {matrix.problems().begin(), matrix.problems().end()}, meta, matrix,
          seed);
      WriteOutput(output,
                  Dump({{"forgotten", s.forgotten},
                        {"remaining", s.remaining},
                        {"pick", s.pick ? Json(*s.pick) : Json(nullptr)}}),
                  out);
    } else if (cv->parsed()) {
      const EvaluationMatrix full = ReadMatrix(matrix_path);
      auto meta = MetaFromJson(ReadJsonFile(meta_path));
      config.kind = *ParseConstructorKind(constructor);
      config.params = cv_reg.params;
      config.mode = cv_reg.mode();
      EvaluationMatrix matrix = full;
      if (cutoff) {
        const StrategySelection kept = FilterByTimestamp(meta, *cutoff);
        for (const StrategyId& id : kept.warnings) {
          err << "warning: strategy '" << id
              << "' has no discovery time and is excluded\n";
        }
        std::vector<StrategyId> ids;
        for (const StrategyId& id : kept.ids) {
          if (full.FindStrategy(id)) ids.push_back(id);
        }
        matrix = full.RestrictStrategies(ids);
      }
      if (!config.include_unwitnessed) {
        for (const StrategyMeta& m : meta) {
          if (!m.witness) {
            err << "warning: strategy '" << m.id
                << "' has no witness and is excluded from training\n";
          }
        }
      }
      const CvSummary summary =
          CrossValidate(matrix, meta, k, rounds, seed, config,
                        require_budget(cv_budget, cv_unbounded), threads);
      if (!csv_path.empty()) WriteOutput(csv_path, CvSummaryCsv(summary), out);
      WriteOutput(output, Dump(CvReportToJson(summary)), out);
    } else if (export_matrix->parsed()) {
      const EvaluationMatrix matrix = ReadMatrix(matrix_path);
      WriteOutput(output,
                  format == "json" ? Dump(MatrixToJson(matrix))
                                   : MatrixToCsv(matrix),
                  out);
    }
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}

}  // namespace portsched::cli

#endif  // PORTSCHED_TOOLS_CLI_HPP_
