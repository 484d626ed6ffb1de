// Copyright 2026 The FSC Hanabi Benchmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// fsc: few-shot coordination benchmark driver for two-player Hanabi.
//
//   fsc train     --spec spec.json          pre-train one agent (or emit a
//                                           rule-convention checkpoint)
//   fsc crossplay --spec spec.json          pairwise matrix over a pool
//   fsc select    --spec spec.json          pick partners by strength/diversity
//   fsc adapt     --spec spec.json          fine-tune a learner vs partners
//   fsc sweep     --spec spec.json          hyperparameter sweep of adapt
//   fsc report    report.json [--out-dir d] re-render plots/CSVs from JSON
//
// Precedence: CLI flag > spec file value > built-in default. FSC_MAX_WORKERS
// caps both orchestration workers and training actor threads.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsc/agents.h"
#include "fsc/json_io.h"
#include "fsc/protocol.h"
#include "fsc/report.h"
#include "fsc/runspec.h"
#include "fsc/training.h"

namespace fsc {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonArgs {
  std::string spec_path;
  bool explain = false;
  std::optional<double> lr;
  std::optional<int> batch_size;
  std::optional<int> replay_buffer_size;
  std::optional<int> num_threads;
  std::optional<int> num_games_per_thread;
  std::optional<int> num_workers;
  std::optional<uint64_t> seed;
  std::optional<std::string> output_dir;
};

void AddCommon(CLI::App* cmd, CommonArgs* a) {
  cmd->add_option("--spec", a->spec_path, "run spec JSON file");
  cmd->add_flag("--explain", a->explain,
                "print the fully resolved spec and exit");
  cmd->add_option("--lr", a->lr, "learning rate");
  cmd->add_option("--batch-size", a->batch_size, "gradient batch size");
  cmd->add_option("--replay-buffer-size", a->replay_buffer_size,
                  "replay capacity in episodes");
  cmd->add_option("--num-threads", a->num_threads, "actor threads");
  cmd->add_option("--num-games-per-thread", a->num_games_per_thread,
                  "parallel game slots per actor thread");
  cmd->add_option("--num-workers", a->num_workers,
                  "orchestration worker pool size");
  cmd->add_option("--seed", a->seed, "base seed");
  cmd->add_option("--output-dir", a->output_dir, "artifact directory");
}

RunSpec Resolve(const CommonArgs& a) {
  RunSpec spec =
      a.spec_path.empty() ? RunSpec{} : RunSpec::Load(a.spec_path);
  if (a.lr) spec.train.lr = *a.lr;
  if (a.batch_size) spec.train.batch_size = *a.batch_size;
  if (a.replay_buffer_size) {
    spec.train.replay_buffer_size = *a.replay_buffer_size;
  }
  if (a.num_threads) spec.train.num_threads = *a.num_threads;
  if (a.num_games_per_thread) {
    spec.train.num_games_per_thread = *a.num_games_per_thread;
  }
  if (a.num_workers) spec.num_workers = *a.num_workers;
  if (a.seed) spec.seed = *a.seed;
  if (a.output_dir) spec.output_dir = *a.output_dir;
  int cap = WorkerCapFromEnv();
  if (cap > 0) {
    spec.num_workers = std::min(spec.num_workers, cap);
    spec.train.num_threads = std::min(spec.train.num_threads, cap);
  }
  return spec;
}

std::string Stem(const std::string& path) {
  return fs::path(path).stem().string();
}

AgentPool LoadPool(const RunSpec& spec) {
  if (spec.pool_paths.empty()) {
    throw SchemaError("paths.pool is empty; nothing to load");
  }
  AgentPool pool;
  for (const std::string& p : spec.pool_paths) {
    pool.ids.push_back(Stem(p));
    pool.checkpoints.push_back(LoadCheckpoint(p));
  }
  pool.Validate();
  return pool;
}

std::string MatrixPath(const RunSpec& spec) {
  return spec.matrix_path.empty() ? spec.output_dir + "/matrix.json"
                                  : spec.matrix_path;
}

CrossPlayMatrix LoadMatrix(const std::string& path) {
  json j = json::parse(ReadTextFile(path));
  if (j.contains("matrix")) return j.at("matrix").get<CrossPlayMatrix>();
  return j.get<CrossPlayMatrix>();
}

json SelectionToJson(const PartnerSelection& sel) {
  return json{{"ids", sel.ids},
              {"indices", sel.indices},
              {"strength", sel.strength},
              {"diversity", sel.diversity},
              {"c_star", sel.c_star},
              {"k", sel.k},
              {"strength_min", sel.strength_min},
              {"diversity_target", sel.diversity_target},
              {"upper_bound", ToString(sel.upper_bound)},
              {"exhaustive", sel.exhaustive}};
}

// Recomputes S and D from the numbers embedded in the report; a mismatch
// means the artifact is internally inconsistent and the command must fail.
void CheckReportConsistency(const AdaptationReport& r) {
  StrengthResult sr = Strength(r.c_star, r.max_score);
  double d = Diversity(r.partner_matrix, r.max_score);
  if (std::abs(sr.pool - r.pool_strength) > 1e-9 ||
      std::abs(d - r.pool_diversity) > 1e-9) {
    throw UsageError("report failed the S/D self-consistency check");
  }
}

int CmdTrain(const RunSpec& spec) {
  spec.game.Validate();
  std::string comment = spec.ToJson().dump();
  Checkpoint ckpt;
  std::vector<TrainLogRow> log;
  if (!spec.convention.empty()) {
    // Rule agents need no training; emit their checkpoint directly.
    MakeRuleAgent(spec.convention, spec.rule_params, spec.game);
    ckpt.algorithm = "RULE";
    ckpt.config = spec.game;
    ckpt.convention_id = spec.convention;
    ckpt.rule_params = spec.rule_params;
    ckpt.training_seed = spec.seed;
  } else {
    TrainResult res = RunSelfPlayTraining(spec.game, spec.train, spec.seed);
    ckpt = std::move(res.checkpoint);
    log = std::move(res.log);
  }
  std::string out = spec.output_dir + "/agent.fscb";
  fs::create_directories(spec.output_dir);
  SaveCheckpoint(ckpt, out);
  WriteTrainLogCsv(log, spec.output_dir + "/train_log.csv", comment);
  Checkpoint back = LoadCheckpoint(out);  // round-trip self-check
  if (back.payload != ckpt.payload) {
    throw UsageError("checkpoint round-trip mismatch");
  }
  std::cout << "wrote " << out << " (" << ckpt.algorithm
            << ", selfplay_score=" << ckpt.selfplay_score << ")\n";
  return 0;
}

int CmdCrossplay(const RunSpec& spec) {
  AgentPool pool = LoadPool(spec);
  CrossPlayMatrix m = ComputeCrossplay(pool, spec.games_per_pair, spec.seed,
                                       spec.num_workers);
  std::string comment = spec.ToJson().dump();
  std::string mpath = MatrixPath(spec);
  WriteTextFile(mpath,
                json{{"runspec", spec.ToJson()}, {"matrix", m}}.dump(2) + "\n");
  WriteMatrixCsv(m, spec.output_dir + "/matrix_mean.csv",
                 spec.output_dir + "/matrix_stderr.csv", comment);
  WriteTextFile(spec.output_dir + "/crossplay_heatmap.svg",
                RenderHeatmap("Cross-play (mean score)", m,
                              pool.config().MaxScore()));
  if (LoadMatrix(mpath).size() != pool.size()) {
    throw UsageError("matrix round-trip mismatch");
  }
  std::cout << "wrote " << mpath << " (" << m.size() << "x" << m.size()
            << ")\n";
  return 0;
}

int CmdSelect(const RunSpec& spec) {
  CrossPlayMatrix m = LoadMatrix(MatrixPath(spec));
  double max_score = static_cast<double>(spec.game.MaxScore());
  PartnerSelection sel =
      SelectPartners(m, spec.k_partners, spec.strength_min,
                     spec.diversity_target, spec.upper_bound, max_score);
  std::string out = spec.output_dir + "/selection.json";
  WriteTextFile(out, json{{"runspec", spec.ToJson()},
                          {"selection", SelectionToJson(sel)}}
                             .dump(2) +
                         "\n");
  std::cout << "wrote " << out << " (S=" << sel.strength
            << ", D=" << sel.diversity << ")\n";
  return 0;
}

struct AdaptSetup {
  Checkpoint learner;
  std::string learner_id;
  AgentPool pool;
  CrossPlayMatrix matrix;
  PartnerSelection selection;
};

AdaptSetup PrepareAdapt(const RunSpec& spec) {
  AdaptSetup s;
  if (spec.learner_path.empty()) {
    throw SchemaError("paths.learner is required for adapt/sweep");
  }
  s.learner = LoadCheckpoint(spec.learner_path);
  s.learner_id = Stem(spec.learner_path);
  s.pool = LoadPool(spec);
  int self = s.pool.Find(s.learner_id);
  if (self >= 0) {  // a learner may not partner with itself
    s.pool.ids.erase(s.pool.ids.begin() + self);
    s.pool.checkpoints.erase(s.pool.checkpoints.begin() + self);
    s.pool.Validate();
  }
  if (!spec.matrix_path.empty() && fs::exists(spec.matrix_path)) {
    s.matrix = LoadMatrix(spec.matrix_path);
    if (s.matrix.ids != s.pool.ids) {
      throw UsageError("matrix ids do not match the (learner-free) pool");
    }
  } else {
    s.matrix = ComputeCrossplay(s.pool, spec.games_per_pair, spec.seed,
                                spec.num_workers);
  }
  int k = std::min(spec.k_partners, s.pool.size());
  s.selection = SelectPartners(s.matrix, k, spec.strength_min,
                               spec.diversity_target, spec.upper_bound,
                               s.pool.config().MaxScore());
  return s;
}

void WritePartnerTraces(const AdaptationReport& r, const std::string& dir,
                        const std::string& comment, uint64_t seed) {
  for (size_t p = 0; p < r.partner_ids.size(); ++p) {
    AdaptationTrace tr;
    tr.learner_id = r.learner_id;
    tr.partner_id = r.partner_ids[p];
    tr.seed = seed;
    tr.max_score = r.max_score;
    for (size_t t = 0; t < r.episodes.size(); ++t) {
      tr.points.push_back({r.episodes[t], r.score_curves[p][t],
                           r.perfect_rate_curves[p][t]});
    }
    WriteTraceCsv(tr, dir + "/trace_" + r.partner_ids[p] + ".csv", comment);
  }
}

int CmdAdapt(const RunSpec& spec) {
  AdaptSetup s = PrepareAdapt(spec);
  AdaptationReport report = RunBenchmark(
      s.learner, s.learner_id, s.pool, s.selection, s.matrix, spec.train,
      spec.budget_episodes, spec.seeds_per_pair, spec.seed, spec.aggregator,
      spec.num_workers);
  CheckReportConsistency(report);
  std::string comment = spec.ToJson().dump();
  std::string out = spec.output_dir + "/report.json";
  WriteTextFile(out, json{{"runspec", spec.ToJson()}, {"report", report}}
                             .dump(2) +
                         "\n");
  EmitReportArtifacts(report, spec.output_dir, comment);
  WritePartnerTraces(report, spec.output_dir, comment, spec.seed);
  std::cout << "wrote " << out << " (final aggregate score="
            << report.aggregate_score.back() << ")\n";
  return 0;
}

int CmdSweep(const RunSpec& spec) {
  if (spec.sweep.Empty()) {
    throw SchemaError("sweep grid is empty; set the sweep section");
  }
  AdaptSetup s = PrepareAdapt(spec);
  SweepReport sweep = RunHpSweep(
      s.learner, s.learner_id, s.pool, s.selection, s.matrix, spec.train,
      spec.sweep, spec.budget_episodes, spec.seeds_per_pair, spec.seed,
      spec.aggregator, spec.num_workers);
  for (const SweepPoint& p : sweep.points) CheckReportConsistency(p.report);
  std::string comment = spec.ToJson().dump();
  json points = json::array();
  for (const SweepPoint& p : sweep.points) {
    points.push_back({{"hp_name", p.hp_name},
                      {"hp_value", p.hp_value},
                      {"final_average_regret", p.final_average_regret},
                      {"final_perfect_rate", p.final_perfect_rate},
                      {"report", p.report}});
  }
  std::string out = spec.output_dir + "/sweep.json";
  WriteTextFile(out, json{{"runspec", spec.ToJson()}, {"points", points}}
                             .dump(2) +
                         "\n");
  EmitSweepArtifacts(sweep, spec.output_dir, comment);
  std::cout << "wrote " << out << " (" << sweep.points.size()
            << " grid points)\n";
  return 0;
}

int CmdReport(const std::vector<std::string>& paths,
              const std::string& out_dir) {
  for (const std::string& path : paths) {
    json j = json::parse(ReadTextFile(path));
    std::string comment =
        j.contains("runspec") ? j.at("runspec").dump() : std::string();
    std::string dir =
        out_dir.empty() ? fs::path(path).parent_path().string() : out_dir;
    if (dir.empty()) dir = ".";
    if (j.contains("report")) {
      AdaptationReport r = j.at("report").get<AdaptationReport>();
      CheckReportConsistency(r);
      EmitReportArtifacts(r, dir, comment);
    } else if (j.contains("points")) {
      SweepReport sweep;
      for (const json& pj : j.at("points")) {
        SweepPoint p;
        pj.at("hp_name").get_to(p.hp_name);
        pj.at("hp_value").get_to(p.hp_value);
        pj.at("final_average_regret").get_to(p.final_average_regret);
        pj.at("final_perfect_rate").get_to(p.final_perfect_rate);
        p.report = pj.at("report").get<AdaptationReport>();
        sweep.points.push_back(std::move(p));
      }
      EmitSweepArtifacts(sweep, dir, comment);
    } else {
      throw SchemaError(path + " is neither a report nor a sweep document");
    }
    std::cout << "rendered " << path << " -> " << dir << "\n";
  }
  return 0;
}

int Run(int argc, char** argv) {
  CLI::App app{"Few-shot coordination benchmark for two-player Hanabi"};
  app.require_subcommand(1);

  CommonArgs train_args, cross_args, select_args, adapt_args, sweep_args;
  CLI::App* train = app.add_subcommand("train", "pre-train one agent");
  AddCommon(train, &train_args);
  CLI::App* cross = app.add_subcommand("crossplay", "pairwise pool matrix");
  AddCommon(cross, &cross_args);
  CLI::App* select = app.add_subcommand("select", "pick benchmark partners");
  AddCommon(select, &select_args);
  CLI::App* adapt = app.add_subcommand("adapt", "fine-tune vs partners");
  AddCommon(adapt, &adapt_args);
  CLI::App* sweep = app.add_subcommand("sweep", "hyperparameter sweep");
  AddCommon(sweep, &sweep_args);

  std::vector<std::string> report_paths;
  std::string report_out_dir;
  CLI::App* report = app.add_subcommand("report", "re-render plots from JSON");
  report->add_option("paths", report_paths, "report/sweep JSON files")
      ->required();
  report->add_option("--out-dir", report_out_dir, "plot output directory");

  CLI11_PARSE(app, argc, argv);

  auto dispatch = [&](CLI::App* cmd, CommonArgs* args,
                      int (*fn)(const RunSpec&)) -> std::optional<int> {
    if (!cmd->parsed()) return std::nullopt;
    RunSpec spec = Resolve(*args);
    if (args->explain) {
      std::cout << spec.ToJson().dump(2) << "\n";
      return 0;
    }
    return fn(spec);
  };

  if (auto r = dispatch(train, &train_args, &CmdTrain)) return *r;
  if (auto r = dispatch(cross, &cross_args, &CmdCrossplay)) return *r;
  if (auto r = dispatch(select, &select_args, &CmdSelect)) return *r;
  if (auto r = dispatch(adapt, &adapt_args, &CmdAdapt)) return *r;
  if (auto r = dispatch(sweep, &sweep_args, &CmdSweep)) return *r;
  if (report->parsed()) return CmdReport(report_paths, report_out_dir);
  return 1;
}

}  // namespace
}  // namespace fsc

int main(int argc, char** argv) {
  try {
    return fsc::Run(argc, argv);
  } catch (const fsc::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const fsc::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return 3;
  } catch (const fsc::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const fsc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 5;
  } catch (const fsc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
