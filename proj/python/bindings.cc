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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fsc/json_io.h"
#include "fsc/metrics.h"
#include "fsc/protocol.h"
#include "fsc/runspec.h"
#include "fsc/training.h"

namespace py = pybind11;

namespace fsc {
namespace {

py::object JsonToPy(const nlohmann::json& j) {
  py::module_ pyjson = py::module_::import("json");
  return pyjson.attr("loads")(j.dump());
}

// Interactive game handle for scripting and smoke tests.
class PyGame {
 public:
  PyGame(const GameConfig& config, uint64_t seed)
      : state_(NewGame(config, seed)) {}

  bool terminal() const { return state_.terminal; }
  int score() const { return state_.Score(); }
  int recorded_score() const { return state_.RecordedScore(); }
  int current_player() const { return state_.current_player; }

  std::vector<int> legal_actions() const {
    std::vector<int> out;
    for (const Action& a : LegalActions(state_)) {
      out.push_back(a.Flatten(state_.config));
    }
    return out;
  }

  double step(int flat_action) {
    StepResult res =
        Step(state_, Action::Unflatten(flat_action, state_.config));
    state_ = std::move(res.state);
    return res.reward;
  }

  std::vector<float> encode_observation(int player) const {
    return EncodeObservation(Observe(state_, player));
  }

 private:
  GameState state_;
};

AgentPool MakePool(const std::vector<std::string>& ids,
                   const std::vector<Checkpoint>& checkpoints) {
  AgentPool pool;
  pool.ids = ids;
  pool.checkpoints = checkpoints;
  pool.Validate();
  return pool;
}

}  // namespace

PYBIND11_MODULE(_fsc, m) {
  m.doc() = "Few-shot coordination benchmark for two-player Hanabi";

  py::register_exception<ConfigError>(m, "FscConfigError");
  py::register_exception<UsageError>(m, "FscUsageError");
  py::register_exception<CheckpointError>(m, "FscCheckpointError");
  py::register_exception<InfeasibleError>(m, "FscInfeasibleError");
  py::register_exception<SchemaError>(m, "FscSchemaError");

  py::class_<GameConfig>(m, "GameConfig")
      .def(py::init<>())
      .def_readwrite("num_colors", &GameConfig::num_colors)
      .def_readwrite("num_ranks", &GameConfig::num_ranks)
      .def_readwrite("rank_counts", &GameConfig::rank_counts)
      .def_readwrite("hand_size", &GameConfig::hand_size)
      .def_readwrite("info_tokens", &GameConfig::info_tokens)
      .def_readwrite("life_tokens", &GameConfig::life_tokens)
      .def_readwrite("bomb_zero", &GameConfig::bomb_zero)
      .def("max_score", &GameConfig::MaxScore)
      .def("action_space_size", &GameConfig::ActionSpaceSize)
      .def("deck_size", &GameConfig::DeckSize)
      .def("validate", &GameConfig::Validate);

  py::class_<ArchitectureDescriptor>(m, "ArchitectureDescriptor")
      .def(py::init<>())
      .def_readwrite("history_len", &ArchitectureDescriptor::history_len)
      .def_readwrite("num_hidden_layers",
                     &ArchitectureDescriptor::num_hidden_layers)
      .def_readwrite("hidden_dim", &ArchitectureDescriptor::hidden_dim)
      .def_readwrite("dueling", &ArchitectureDescriptor::dueling)
      .def("name", &ArchitectureDescriptor::Name);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("lr", &TrainConfig::lr)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("replay_buffer_size", &TrainConfig::replay_buffer_size)
      .def_readwrite("num_threads", &TrainConfig::num_threads)
      .def_readwrite("num_games_per_thread",
                     &TrainConfig::num_games_per_thread)
      .def_readwrite("gamma", &TrainConfig::gamma)
      .def_readwrite("target_update_period",
                     &TrainConfig::target_update_period)
      .def_readwrite("prioritized", &TrainConfig::prioritized)
      .def_readwrite("vdn", &TrainConfig::vdn)
      .def_readwrite("other_play", &TrainConfig::other_play)
      .def_readwrite("total_train_episodes",
                     &TrainConfig::total_train_episodes)
      .def_readwrite("updates_per_episode", &TrainConfig::updates_per_episode)
      .def_readwrite("min_buffer_episodes", &TrainConfig::min_buffer_episodes)
      .def_readwrite("eval_every", &TrainConfig::eval_every)
      .def_readwrite("eval_games", &TrainConfig::eval_games)
      .def_readwrite("arch", &TrainConfig::arch)
      .def("validate", &TrainConfig::Validate)
      .def("algorithm_tag", &TrainConfig::AlgorithmTag);

  py::class_<Checkpoint>(m, "Checkpoint")
      .def(py::init<>())
      .def_readwrite("algorithm", &Checkpoint::algorithm)
      .def_readwrite("config", &Checkpoint::config)
      .def_readwrite("convention_id", &Checkpoint::convention_id)
      .def_readwrite("training_seed", &Checkpoint::training_seed)
      .def_readwrite("train_steps", &Checkpoint::train_steps)
      .def_readwrite("selfplay_score", &Checkpoint::selfplay_score)
      .def_readonly("payload", &Checkpoint::payload);

  py::class_<CrossPlayMatrix>(m, "CrossPlayMatrix")
      .def(py::init<>())
      .def_readwrite("ids", &CrossPlayMatrix::ids)
      .def_readwrite("mean", &CrossPlayMatrix::mean)
      .def_readwrite("stderr", &CrossPlayMatrix::stderr_)
      .def_readwrite("games_per_cell", &CrossPlayMatrix::games_per_cell)
      .def("size", &CrossPlayMatrix::size);

  py::class_<PartnerSelection>(m, "PartnerSelection")
      .def_readonly("ids", &PartnerSelection::ids)
      .def_readonly("strength", &PartnerSelection::strength)
      .def_readonly("diversity", &PartnerSelection::diversity)
      .def_readonly("c_star", &PartnerSelection::c_star)
      .def_readonly("exhaustive", &PartnerSelection::exhaustive);

  py::class_<EvalStats>(m, "EvalStats")
      .def_readonly("mean", &EvalStats::mean)
      .def_readonly("stderr", &EvalStats::stderr_)
      .def_readonly("perfect_rate", &EvalStats::perfect_rate)
      .def_readonly("scores", &EvalStats::scores);

  py::class_<PyGame>(m, "Game")
      .def(py::init<const GameConfig&, uint64_t>(), py::arg("config"),
           py::arg("seed"))
      .def_property_readonly("terminal", &PyGame::terminal)
      .def_property_readonly("current_player", &PyGame::current_player)
      .def("score", &PyGame::score)
      .def("recorded_score", &PyGame::recorded_score)
      .def("legal_actions", &PyGame::legal_actions)
      .def("step", &PyGame::step, py::arg("flat_action"))
      .def("encode_observation", &PyGame::encode_observation,
           py::arg("player"));

  // Metrics.
  m.def(
      "adaptation_regret",
      [](const std::vector<double>& trace, double c_star, int T) {
        RegretResult r = AdaptationRegret(trace, c_star, T);
        return py::make_tuple(r.total, r.average);
      },
      py::arg("trace"), py::arg("c_star"), py::arg("T"));
  m.def("diversity", &Diversity, py::arg("matrix"), py::arg("max_score"));
  m.def(
      "strength",
      [](const std::vector<double>& c_stars, double max_score) {
        StrengthResult s = Strength(c_stars, max_score);
        return py::make_tuple(s.per_partner, s.pool);
      },
      py::arg("c_stars"), py::arg("max_score"));
  m.def(
      "iqm",
      [](std::vector<double> values) {
        return Aggregate(std::move(values), Aggregator::kIqm);
      },
      py::arg("values"));
  m.def("perfect_rate", &PerfectRate, py::arg("scores"),
        py::arg("max_score"));

  // Checkpoints and agents.
  m.def("save_checkpoint", &SaveCheckpoint, py::arg("checkpoint"),
        py::arg("path"));
  m.def("load_checkpoint", &LoadCheckpoint, py::arg("path"));
  m.def("known_conventions", &KnownConventions);
  m.def(
      "make_rule_checkpoint",
      [](const std::string& convention, const GameConfig& config) {
        MakeRuleAgent(convention, RuleParams{}, config);  // validates id
        Checkpoint c;
        c.algorithm = "RULE";
        c.config = config;
        c.convention_id = convention;
        return c;
      },
      py::arg("convention"), py::arg("config"));

  // Training and evaluation.
  m.def(
      "train_selfplay",
      [](const GameConfig& config, const TrainConfig& tconfig,
         uint64_t seed) {
        TrainResult res;
        {
          py::gil_scoped_release release;
          res = RunSelfPlayTraining(config, tconfig, seed);
        }
        py::list log;
        for (const TrainLogRow& row : res.log) {
          py::dict d;
          d["episode"] = row.episode;
          d["step"] = row.step;
          d["loss"] = row.loss;
          d["eval_score"] = row.eval_score;
          d["perfect_rate"] = row.perfect_rate;
          log.append(d);
        }
        return py::make_tuple(res.checkpoint, log);
      },
      py::arg("config"), py::arg("tconfig"), py::arg("seed"));
  m.def(
      "evaluate_pair",
      [](const Checkpoint& a, const Checkpoint& b, int games,
         uint64_t seed) {
        auto pa = MakePolicy(a);
        auto pb = MakePolicy(b);
        py::gil_scoped_release release;
        return EvaluatePair(*pa, *pb, a.config, games, seed);
      },
      py::arg("a"), py::arg("b"), py::arg("games"), py::arg("seed"));
  m.def(
      "finetune",
      [](const Checkpoint& learner, const Checkpoint& partner,
         const TrainConfig& tconfig, int64_t budget_episodes, uint64_t seed) {
        FinetuneResult res;
        {
          py::gil_scoped_release release;
          res = Finetune(learner, partner, tconfig, budget_episodes, seed);
        }
        py::list points;
        for (const EvalPoint& pt : res.trace.points) {
          py::dict d;
          d["episode"] = pt.episode;
          d["score"] = pt.score;
          d["perfect_rate"] = pt.perfect_rate;
          points.append(d);
        }
        return py::make_tuple(res.final_learner, points);
      },
      py::arg("learner"), py::arg("partner"), py::arg("tconfig"),
      py::arg("budget_episodes"), py::arg("seed"));

  // Protocol.
  m.def(
      "compute_crossplay",
      [](const std::vector<std::string>& ids,
         const std::vector<Checkpoint>& checkpoints, int games_per_pair,
         uint64_t seed, int num_workers) {
        AgentPool pool = MakePool(ids, checkpoints);
        py::gil_scoped_release release;
        return ComputeCrossplay(pool, games_per_pair, seed, num_workers);
      },
      py::arg("ids"), py::arg("checkpoints"), py::arg("games_per_pair"),
      py::arg("seed"), py::arg("num_workers") = 1);
  m.def(
      "select_partners",
      [](const CrossPlayMatrix& matrix, int k, double strength_min,
         double diversity_target, const std::string& upper_bound,
         double max_score) {
        return SelectPartners(matrix, k, strength_min, diversity_target,
                              UpperBoundModeFromString(upper_bound),
                              max_score);
      },
      py::arg("matrix"), py::arg("k"), py::arg("strength_min"),
      py::arg("diversity_target"), py::arg("upper_bound"),
      py::arg("max_score"));
  m.def(
      "run_benchmark",
      [](const Checkpoint& learner, const std::string& learner_id,
         const std::vector<std::string>& ids,
         const std::vector<Checkpoint>& checkpoints,
         const PartnerSelection& selection, const CrossPlayMatrix& matrix,
         const TrainConfig& tconfig, int64_t budget_episodes,
         int seeds_per_pair, uint64_t seed, const std::string& aggregator,
         int num_workers) {
        AgentPool pool = MakePool(ids, checkpoints);
        AdaptationReport report;
        {
          py::gil_scoped_release release;
          report = RunBenchmark(learner, learner_id, pool, selection, matrix,
                                tconfig, budget_episodes, seeds_per_pair,
                                seed, AggregatorFromString(aggregator),
                                num_workers);
        }
        nlohmann::json j = report;
        return JsonToPy(j);
      },
      py::arg("learner"), py::arg("learner_id"), py::arg("ids"),
      py::arg("checkpoints"), py::arg("selection"), py::arg("matrix"),
      py::arg("tconfig"), py::arg("budget_episodes"),
      py::arg("seeds_per_pair"), py::arg("seed"), py::arg("aggregator"),
      py::arg("num_workers") = 1);

  m.attr("ENCODING_VERSION") = kEncodingVersion;
  m.attr("CHECKPOINT_MAGIC") = "FSCB";
}

}  // namespace fsc
