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

#include "fsc/runspec.h"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <string>

namespace fsc {

namespace {

using nlohmann::json;

void CheckKeys(const json& j, std::initializer_list<const char*> allowed,
               const std::string& ctx) {
  if (!j.is_object()) throw SchemaError(ctx + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) throw SchemaError("unknown key '" + item.key() + "' in " + ctx);
  }
}

template <typename T>
void Opt(const json& j, const char* key, T* out) {
  if (j.contains(key)) {
    try {
      j.at(key).get_to(*out);
    } catch (const json::exception& e) {
      throw SchemaError(std::string("bad value for '") + key +
                        "': " + e.what());
    }
  }
}

void ParseGame(const json& j, GameConfig* g) {
  CheckKeys(j,
            {"num_colors", "num_ranks", "rank_counts", "hand_size",
             "info_tokens", "life_tokens", "num_players", "bomb_zero"},
            "game");
  Opt(j, "num_colors", &g->num_colors);
  Opt(j, "num_ranks", &g->num_ranks);
  Opt(j, "rank_counts", &g->rank_counts);
  Opt(j, "hand_size", &g->hand_size);
  Opt(j, "info_tokens", &g->info_tokens);
  Opt(j, "life_tokens", &g->life_tokens);
  Opt(j, "num_players", &g->num_players);
  Opt(j, "bomb_zero", &g->bomb_zero);
}

void ParseArch(const json& j, ArchitectureDescriptor* a) {
  CheckKeys(
      j, {"history_len", "num_hidden_layers", "hidden_dim", "dueling", "cell"},
      "train.arch");
  Opt(j, "history_len", &a->history_len);
  Opt(j, "num_hidden_layers", &a->num_hidden_layers);
  Opt(j, "hidden_dim", &a->hidden_dim);
  Opt(j, "dueling", &a->dueling);
  Opt(j, "cell", &a->cell);
}

void ParseTrain(const json& j, TrainConfig* t) {
  CheckKeys(j,
            {"lr", "batch_size", "replay_buffer_size", "num_threads",
             "num_games_per_thread", "gamma", "eps_schedule",
             "target_update_period", "prioritized", "priority_alpha",
             "importance_beta", "vdn", "other_play", "total_train_episodes",
             "updates_per_episode", "min_buffer_episodes", "eval_every",
             "eval_games", "arch"},
            "train");
  Opt(j, "lr", &t->lr);
  Opt(j, "batch_size", &t->batch_size);
  Opt(j, "replay_buffer_size", &t->replay_buffer_size);
  Opt(j, "num_threads", &t->num_threads);
  Opt(j, "num_games_per_thread", &t->num_games_per_thread);
  Opt(j, "gamma", &t->gamma);
  Opt(j, "eps_schedule", &t->eps_schedule);
  Opt(j, "target_update_period", &t->target_update_period);
  Opt(j, "prioritized", &t->prioritized);
  Opt(j, "priority_alpha", &t->priority_alpha);
  Opt(j, "importance_beta", &t->importance_beta);
  Opt(j, "vdn", &t->vdn);
  Opt(j, "other_play", &t->other_play);
  Opt(j, "total_train_episodes", &t->total_train_episodes);
  Opt(j, "updates_per_episode", &t->updates_per_episode);
  Opt(j, "min_buffer_episodes", &t->min_buffer_episodes);
  Opt(j, "eval_every", &t->eval_every);
  Opt(j, "eval_games", &t->eval_games);
  if (j.contains("arch")) ParseArch(j.at("arch"), &t->arch);
}

void ParseSweep(const json& j, HpGrid* g) {
  CheckKeys(j, {"lr", "batch_size", "replay_buffer_size", "workers"},
            "sweep");
  Opt(j, "lr", &g->lr);
  Opt(j, "batch_size", &g->batch_size);
  Opt(j, "replay_buffer_size", &g->replay_buffer_size);
  Opt(j, "workers", &g->workers);
}

}  // namespace

void to_json(json& j, const TrainConfig& t) {
  j = json{{"lr", t.lr},
           {"batch_size", t.batch_size},
           {"replay_buffer_size", t.replay_buffer_size},
           {"num_threads", t.num_threads},
           {"num_games_per_thread", t.num_games_per_thread},
           {"gamma", t.gamma},
           {"eps_schedule", t.eps_schedule},
           {"target_update_period", t.target_update_period},
           {"prioritized", t.prioritized},
           {"priority_alpha", t.priority_alpha},
           {"importance_beta", t.importance_beta},
           {"vdn", t.vdn},
           {"other_play", t.other_play},
           {"total_train_episodes", t.total_train_episodes},
           {"updates_per_episode", t.updates_per_episode},
           {"min_buffer_episodes", t.min_buffer_episodes},
           {"eval_every", t.eval_every},
           {"eval_games", t.eval_games},
           {"arch", t.arch}};
}

void from_json(const json& j, TrainConfig& t) {
  t = TrainConfig{};
  ParseTrain(j, &t);
}

json RunSpec::ToJson() const {
  return json{
      {"schema_version", schema_version},
      {"seed", seed},
      {"output_dir", output_dir},
      {"num_workers", num_workers},
      {"game", game},
      {"train", train},
      {"convention", convention},
      {"rule_params", rule_params},
      {"crossplay", {{"games_per_pair", games_per_pair}}},
      {"select",
       {{"k", k_partners},
        {"strength_min", strength_min},
        {"diversity_target", diversity_target},
        {"upper_bound", ToString(upper_bound)}}},
      {"adapt",
       {{"budget_episodes", budget_episodes},
        {"seeds_per_pair", seeds_per_pair},
        {"aggregator", ToString(aggregator)}}},
      {"sweep",
       {{"lr", sweep.lr},
        {"batch_size", sweep.batch_size},
        {"replay_buffer_size", sweep.replay_buffer_size},
        {"workers", sweep.workers}}},
      {"paths",
       {{"learner", learner_path},
        {"pool", pool_paths},
        {"matrix", matrix_path}}}};
}

RunSpec RunSpec::FromJson(const json& j) {
  RunSpec spec;
  CheckKeys(j,
            {"schema_version", "seed", "output_dir", "num_workers", "game",
             "train", "convention", "rule_params", "crossplay", "select",
             "adapt", "sweep", "paths"},
            "spec");
  Opt(j, "schema_version", &spec.schema_version);
  if (spec.schema_version != kRunSpecSchemaVersion) {
    throw SchemaError("unsupported schema_version " +
                      std::to_string(spec.schema_version));
  }
  Opt(j, "seed", &spec.seed);
  Opt(j, "output_dir", &spec.output_dir);
  Opt(j, "num_workers", &spec.num_workers);
  if (j.contains("game")) ParseGame(j.at("game"), &spec.game);
  if (j.contains("train")) ParseTrain(j.at("train"), &spec.train);
  Opt(j, "convention", &spec.convention);
  if (j.contains("rule_params")) {
    const json& r = j.at("rule_params");
    CheckKeys(r, {"discard_newest", "play_threshold"}, "rule_params");
    Opt(r, "discard_newest", &spec.rule_params.discard_newest);
    Opt(r, "play_threshold", &spec.rule_params.play_threshold);
  }
  if (j.contains("crossplay")) {
    const json& c = j.at("crossplay");
    CheckKeys(c, {"games_per_pair"}, "crossplay");
    Opt(c, "games_per_pair", &spec.games_per_pair);
  }
  if (j.contains("select")) {
    const json& s = j.at("select");
    CheckKeys(s, {"k", "strength_min", "diversity_target", "upper_bound"},
              "select");
    Opt(s, "k", &spec.k_partners);
    Opt(s, "strength_min", &spec.strength_min);
    Opt(s, "diversity_target", &spec.diversity_target);
    if (s.contains("upper_bound")) {
      try {
        spec.upper_bound = UpperBoundModeFromString(s.at("upper_bound"));
      } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
      }
    }
  }
  if (j.contains("adapt")) {
    const json& a = j.at("adapt");
    CheckKeys(a, {"budget_episodes", "seeds_per_pair", "aggregator"},
              "adapt");
    Opt(a, "budget_episodes", &spec.budget_episodes);
    Opt(a, "seeds_per_pair", &spec.seeds_per_pair);
    if (a.contains("aggregator")) {
      try {
        spec.aggregator = AggregatorFromString(a.at("aggregator"));
      } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
      }
    }
  }
  if (j.contains("sweep")) ParseSweep(j.at("sweep"), &spec.sweep);
  if (j.contains("paths")) {
    const json& p = j.at("paths");
    CheckKeys(p, {"learner", "pool", "matrix"}, "paths");
    Opt(p, "learner", &spec.learner_path);
    Opt(p, "pool", &spec.pool_paths);
    Opt(p, "matrix", &spec.matrix_path);
  }
  return spec;
}

RunSpec RunSpec::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open spec file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError("invalid JSON in " + path + ": " + e.what());
  }
  return FromJson(j);
}

int WorkerCapFromEnv() {
  const char* v = std::getenv("FSC_MAX_WORKERS");
  if (v == nullptr) return 0;
  int cap = std::atoi(v);
  return cap > 0 ? cap : 0;
}

}  // namespace fsc
