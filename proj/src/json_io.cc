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

#include "fsc/json_io.h"

#include "fsc/agents.h"

namespace fsc {

void to_json(nlohmann::json& j, const GameConfig& c) {
  j = nlohmann::json{{"num_colors", c.num_colors},
                     {"num_ranks", c.num_ranks},
                     {"rank_counts", c.rank_counts},
                     {"hand_size", c.hand_size},
                     {"info_tokens", c.info_tokens},
                     {"life_tokens", c.life_tokens},
                     {"num_players", c.num_players},
                     {"bomb_zero", c.bomb_zero}};
}

void from_json(const nlohmann::json& j, GameConfig& c) {
  c = GameConfig{};
  j.at("num_colors").get_to(c.num_colors);
  j.at("num_ranks").get_to(c.num_ranks);
  j.at("rank_counts").get_to(c.rank_counts);
  j.at("hand_size").get_to(c.hand_size);
  j.at("info_tokens").get_to(c.info_tokens);
  j.at("life_tokens").get_to(c.life_tokens);
  j.at("num_players").get_to(c.num_players);
  j.at("bomb_zero").get_to(c.bomb_zero);
}

void to_json(nlohmann::json& j, const ArchitectureDescriptor& a) {
  j = nlohmann::json{{"history_len", a.history_len},
                     {"num_hidden_layers", a.num_hidden_layers},
                     {"hidden_dim", a.hidden_dim},
                     {"dueling", a.dueling},
                     {"cell", a.cell}};
}

void from_json(const nlohmann::json& j, ArchitectureDescriptor& a) {
  a = ArchitectureDescriptor{};
  j.at("history_len").get_to(a.history_len);
  j.at("num_hidden_layers").get_to(a.num_hidden_layers);
  j.at("hidden_dim").get_to(a.hidden_dim);
  j.at("dueling").get_to(a.dueling);
  j.at("cell").get_to(a.cell);
}

void to_json(nlohmann::json& j, const RuleParams& p) {
  j = nlohmann::json{{"discard_newest", p.discard_newest},
                     {"play_threshold", p.play_threshold}};
}

void from_json(const nlohmann::json& j, RuleParams& p) {
  p = RuleParams{};
  j.at("discard_newest").get_to(p.discard_newest);
  j.at("play_threshold").get_to(p.play_threshold);
}

void to_json(nlohmann::json& j, const CrossPlayMatrix& m) {
  j = nlohmann::json{{"ids", m.ids},
                     {"mean", m.mean},
                     {"stderr", m.stderr_},
                     {"games_per_cell", m.games_per_cell}};
}

void from_json(const nlohmann::json& j, CrossPlayMatrix& m) {
  m = CrossPlayMatrix{};
  j.at("ids").get_to(m.ids);
  j.at("mean").get_to(m.mean);
  j.at("stderr").get_to(m.stderr_);
  j.at("games_per_cell").get_to(m.games_per_cell);
}

void to_json(nlohmann::json& j, const AdaptationReport& r) {
  j = nlohmann::json{
      {"learner_id", r.learner_id},
      {"partner_ids", r.partner_ids},
      {"episodes", r.episodes},
      {"score_curves", r.score_curves},
      {"perfect_rate_curves", r.perfect_rate_curves},
      {"total_regret_curves", r.total_regret_curves},
      {"average_regret_curves", r.average_regret_curves},
      {"aggregate_score", r.aggregate_score},
      {"aggregate_perfect_rate", r.aggregate_perfect_rate},
      {"aggregate_total_regret", r.aggregate_total_regret},
      {"aggregate_average_regret", r.aggregate_average_regret},
      {"c_star", r.c_star},
      {"upper_bound", ToString(r.upper_bound)},
      {"aggregator", ToString(r.aggregator)},
      {"max_score", r.max_score},
      {"pool_strength", r.pool_strength},
      {"pool_diversity", r.pool_diversity},
      {"seeds_per_pair", r.seeds_per_pair},
      {"partner_matrix", r.partner_matrix},
      // Regret between evaluation points integrates the last evaluated
      // score (piecewise-constant interpolation).
      {"interpolation", "piecewise_constant"}};
}

void from_json(const nlohmann::json& j, AdaptationReport& r) {
  r = AdaptationReport{};
  j.at("learner_id").get_to(r.learner_id);
  j.at("partner_ids").get_to(r.partner_ids);
  j.at("episodes").get_to(r.episodes);
  j.at("score_curves").get_to(r.score_curves);
  j.at("perfect_rate_curves").get_to(r.perfect_rate_curves);
  j.at("total_regret_curves").get_to(r.total_regret_curves);
  j.at("average_regret_curves").get_to(r.average_regret_curves);
  j.at("aggregate_score").get_to(r.aggregate_score);
  j.at("aggregate_perfect_rate").get_to(r.aggregate_perfect_rate);
  j.at("aggregate_total_regret").get_to(r.aggregate_total_regret);
  j.at("aggregate_average_regret").get_to(r.aggregate_average_regret);
  j.at("c_star").get_to(r.c_star);
  r.upper_bound = UpperBoundModeFromString(j.at("upper_bound"));
  r.aggregator = AggregatorFromString(j.at("aggregator"));
  j.at("max_score").get_to(r.max_score);
  j.at("pool_strength").get_to(r.pool_strength);
  j.at("pool_diversity").get_to(r.pool_diversity);
  j.at("seeds_per_pair").get_to(r.seeds_per_pair);
  j.at("partner_matrix").get_to(r.partner_matrix);
}

}  // namespace fsc
