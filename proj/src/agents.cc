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

#include "fsc/agents.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>

#include "fsc/json_io.h"
#include "json.hpp"

namespace fsc {

Action Policy::Act(const History& history, double epsilon, Rng& rng) const {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw UsageError("epsilon out of [0,1]");
  }
  if (epsilon > 0.0 && rng.Uniform() < epsilon) {
    const auto& mask = history.Latest().legal_action_mask;
    std::vector<int> legal;
    for (int id = 0; id < static_cast<int>(mask.size()); ++id) {
      if (mask[id]) legal.push_back(id);
    }
    if (legal.empty()) throw UsageError("no legal actions");
    int pick = static_cast<int>(rng.UniformInt(legal.size()));
    Action a =
        Action::Unflatten(legal[pick], history.Latest().config);
    return a;
  }
  return GreedyAct(history);
}

Action QNetworkPolicy::GreedyAct(const History& history) const {
  std::vector<float> input = history.Encode();
  std::vector<double> q = net_.Forward(input);
  const auto& mask = history.Latest().legal_action_mask;
  int id = net_.MaskedArgmax(q, mask);
  return Action::Unflatten(id, net_.config());
}

// --- Rule-based conventions ----------------------------------------------

namespace {

// Playability statistics for one own slot, combining the hint-derived
// candidate mask with public card counting (discards, fireworks, and the
// partner's visible hand).
struct SlotStats {
  bool certainly_playable = false;
  bool certainly_useless = false;
  double play_prob = 0.0;
};

SlotStats ComputeSlotStats(const Observation& o, const SlotKnowledge& k) {
  const GameConfig& cfg = o.config;
  int R = cfg.num_ranks;
  SlotStats st;
  double playable_w = 0.0, useless_w = 0.0, total_w = 0.0;
  for (int c = 0; c < cfg.num_colors; ++c) {
    for (int r = 0; r < R; ++r) {
      int b = c * R + r;
      if (!(k.candidates & (uint64_t{1} << b))) continue;
      int remaining = cfg.rank_counts[r] - o.discard_counts[b] -
                      (o.fireworks[c] > r ? 1 : 0);
      for (const Card& pc : o.partner_hand) {
        if (pc.color == c && pc.rank == r) remaining -= 1;
      }
      if (remaining <= 0) continue;
      double w = remaining;
      total_w += w;
      if (o.fireworks[c] == r) playable_w += w;
      if (o.fireworks[c] > r) useless_w += w;
    }
  }
  if (total_w > 0.0) {
    st.play_prob = playable_w / total_w;
    st.certainly_playable = playable_w == total_w;
    st.certainly_useless = useless_w == total_w;
  }
  return st;
}

bool MaskCertainlyPlayable(const Observation& o, const SlotKnowledge& k) {
  const GameConfig& cfg = o.config;
  bool any = false;
  for (int c = 0; c < cfg.num_colors; ++c) {
    for (int r = 0; r < cfg.num_ranks; ++r) {
      if (!(k.candidates & (uint64_t{1} << (c * cfg.num_ranks + r)))) continue;
      any = true;
      if (o.fireworks[c] != r) return false;
    }
  }
  return any;
}

bool Legal(const Observation& o, const Action& a) {
  return o.legal_action_mask[a.Flatten(o.config)] != 0;
}

Action FirstLegal(const Observation& o) {
  for (int id = 0; id < static_cast<int>(o.legal_action_mask.size()); ++id) {
    if (o.legal_action_mask[id]) return Action::Unflatten(id, o.config);
  }
  throw UsageError("state has no legal action");
}

class RuleAgentBase : public Policy {
 public:
  RuleAgentBase(std::string id, RuleParams params, GameConfig config)
      : id_(std::move(id)), params_(params), config_(std::move(config)) {
    config_.Validate();
  }

  std::string AlgorithmTag() const override { return "RULE"; }
  const std::string& convention_id() const { return id_; }
  const RuleParams& params() const { return params_; }

  Action GreedyAct(const History& history) const override {
    const Observation& o = history.Latest();
    Action a = Choose(o);
    if (!Legal(o, a)) a = FirstLegal(o);
    return a;
  }

 protected:
  virtual Action Choose(const Observation& o) const = 0;

  int PickDiscardSlot(const Observation& o) const {
    int n = static_cast<int>(o.own_knowledge.size());
    // Known-useless card first.
    for (int i = 0; i < n; ++i) {
      if (ComputeSlotStats(o, o.own_knowledge[i]).certainly_useless) return i;
    }
    // Then an untouched card, oldest or newest per convention parameters.
    if (params_.discard_newest) {
      for (int i = n - 1; i >= 0; --i) {
        const SlotKnowledge& k = o.own_knowledge[i];
        if (!k.color_known && !k.rank_known) return i;
      }
      return n - 1;
    }
    for (int i = 0; i < n; ++i) {
      const SlotKnowledge& k = o.own_knowledge[i];
      if (!k.color_known && !k.rank_known) return i;
    }
    return 0;
  }

  // A hint that cannot mislead a certainty-style partner; used when the
  // hand is empty or discarding is illegal and no useful hint exists.
  Action FillerHint(const Observation& o) const {
    int best_slot = -1;
    for (size_t j = 0; j < o.partner_hand.size(); ++j) {
      if (best_slot < 0 ||
          o.partner_hand[j].rank > o.partner_hand[best_slot].rank) {
        best_slot = static_cast<int>(j);
      }
    }
    return {Action::Type::kHintRank, o.partner_hand[best_slot].rank};
  }

  std::string id_;
  RuleParams params_;
  GameConfig config_;
};

// Hints identify playable partner cards fully (rank then color, or color
// then rank); plays only on certainty, so it never loses a life.
class CertaintyAgent : public RuleAgentBase {
 public:
  CertaintyAgent(std::string id, RuleParams params, GameConfig config,
                 bool color_first)
      : RuleAgentBase(std::move(id), params, std::move(config)),
        color_first_(color_first) {}

 protected:
  Action Choose(const Observation& o) const override {
    for (size_t i = 0; i < o.own_knowledge.size(); ++i) {
      if (ComputeSlotStats(o, o.own_knowledge[i]).certainly_playable) {
        return {Action::Type::kPlay, static_cast<int>(i)};
      }
    }
    if (o.info_tokens_left > 0) {
      // Lowest-rank playable partner card that still needs information.
      int best = -1;
      for (size_t j = 0; j < o.partner_hand.size(); ++j) {
        const Card& c = o.partner_hand[j];
        if (o.fireworks[c.color] != c.rank) continue;
        if (MaskCertainlyPlayable(o, o.partner_knowledge[j])) continue;
        if (best < 0 || c.rank < o.partner_hand[best].rank) {
          best = static_cast<int>(j);
        }
      }
      if (best >= 0) {
        const Card& c = o.partner_hand[best];
        const SlotKnowledge& k = o.partner_knowledge[best];
        if (color_first_) {
          if (!k.color_known) return {Action::Type::kHintColor, c.color};
          return {Action::Type::kHintRank, c.rank};
        }
        if (!k.rank_known) return {Action::Type::kHintRank, c.rank};
        return {Action::Type::kHintColor, c.color};
      }
    }
    if (o.info_tokens_left < o.config.info_tokens &&
        !o.own_knowledge.empty()) {
      return {Action::Type::kDiscard, PickDiscardSlot(o)};
    }
    return FillerHint(o);
  }

 private:
  bool color_first_;
};

// Any hint means "play your newest touched slot". One token per play, so
// very efficient in self-play and badly miscalibrated against the
// knowledge-based conventions.
class PositionalAgent : public RuleAgentBase {
 public:
  using RuleAgentBase::RuleAgentBase;

 protected:
  Action Choose(const Observation& o) const override {
    const auto& la = o.last_action;
    if (la && la->actor != o.viewer &&
        (la->action.type == Action::Type::kHintColor ||
         la->action.type == Action::Type::kHintRank) &&
        la->touched_slots != 0) {
      int top = 31 - std::countl_zero(la->touched_slots);
      if (top < static_cast<int>(o.own_knowledge.size())) {
        return {Action::Type::kPlay, top};
      }
    }
    if (o.info_tokens_left > 0) {
      Action hint;
      if (FindPositionalHint(o, /*require_playable=*/true, &hint)) return hint;
    }
    if (o.info_tokens_left < o.config.info_tokens &&
        !o.own_knowledge.empty()) {
      return {Action::Type::kDiscard, PickDiscardSlot(o)};
    }
    // Forced hint: prefer one pointing at a dead card.
    Action hint;
    if (FindPositionalHint(o, /*require_playable=*/false, &hint)) return hint;
    return FillerHint(o);
  }

 private:
  bool FindPositionalHint(const Observation& o, bool require_playable,
                          Action* out) const {
    const GameConfig& cfg = o.config;
    auto top_touched = [&](auto&& matches) {
      int top = -1;
      for (size_t j = 0; j < o.partner_hand.size(); ++j) {
        if (matches(o.partner_hand[j])) top = static_cast<int>(j);
      }
      return top;
    };
    auto consider = [&](const Action& a, int top) {
      if (top < 0) return false;
      const Card& c = o.partner_hand[top];
      bool ok = require_playable ? o.fireworks[c.color] == c.rank
                                 : o.fireworks[c.color] > c.rank;
      if (ok) *out = a;
      return ok;
    };
    for (int r = 0; r < cfg.num_ranks; ++r) {
      int top = top_touched([&](const Card& c) { return c.rank == r; });
      if (consider({Action::Type::kHintRank, r}, top)) return true;
    }
    for (int c = 0; c < cfg.num_colors; ++c) {
      int top = top_touched([&](const Card& cc) { return cc.color == c; });
      if (consider({Action::Type::kHintColor, c}, top)) return true;
    }
    return false;
  }
};

// Plays the most promising slot once its playability probability clears
// the threshold; trades lives for tempo.
class RecklessAgent : public RuleAgentBase {
 public:
  using RuleAgentBase::RuleAgentBase;

 protected:
  Action Choose(const Observation& o) const override {
    int best = -1;
    double best_p = -1.0;
    for (size_t i = 0; i < o.own_knowledge.size(); ++i) {
      double p = ComputeSlotStats(o, o.own_knowledge[i]).play_prob;
      if (p > best_p) {
        best_p = p;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0 && best_p >= params_.play_threshold) {
      return {Action::Type::kPlay, best};
    }
    if (o.info_tokens_left > 0) {
      int pick = -1;
      for (size_t j = 0; j < o.partner_hand.size(); ++j) {
        const Card& c = o.partner_hand[j];
        if (o.fireworks[c.color] != c.rank) continue;
        if (o.partner_knowledge[j].rank_known) continue;
        if (pick < 0 || c.rank < o.partner_hand[pick].rank) {
          pick = static_cast<int>(j);
        }
      }
      if (pick >= 0) {
        return {Action::Type::kHintRank, o.partner_hand[pick].rank};
      }
    }
    if (o.info_tokens_left < o.config.info_tokens &&
        !o.own_knowledge.empty()) {
      return {Action::Type::kDiscard, PickDiscardSlot(o)};
    }
    return FillerHint(o);
  }
};

}  // namespace

std::vector<std::string> KnownConventions() {
  return {"certainty-rank", "certainty-color", "positional", "reckless"};
}

std::shared_ptr<Policy> MakeRuleAgent(const std::string& convention_id,
                                      const RuleParams& params,
                                      const GameConfig& config) {
  if (convention_id == "certainty-rank") {
    return std::make_shared<CertaintyAgent>(convention_id, params, config,
                                            false);
  }
  if (convention_id == "certainty-color") {
    return std::make_shared<CertaintyAgent>(convention_id, params, config,
                                            true);
  }
  if (convention_id == "positional") {
    return std::make_shared<PositionalAgent>(convention_id, params, config);
  }
  if (convention_id == "reckless") {
    return std::make_shared<RecklessAgent>(convention_id, params, config);
  }
  throw ConfigError("unknown convention: " + convention_id);
}

// --- Other-Play wrapper ---------------------------------------------------

OtherPlayWrapper::OtherPlayWrapper(std::shared_ptr<const Policy> inner,
                                   const GameConfig& config)
    : inner_(std::move(inner)), config_(config) {
  perm_.resize(config_.num_colors);
  std::iota(perm_.begin(), perm_.end(), 0);
  inverse_ = perm_;
}

void OtherPlayWrapper::SetPermutation(std::vector<int> perm) {
  if (static_cast<int>(perm.size()) != config_.num_colors) {
    throw UsageError("permutation has wrong size");
  }
  perm_ = std::move(perm);
  inverse_.assign(perm_.size(), 0);
  for (size_t i = 0; i < perm_.size(); ++i) inverse_[perm_[i]] = static_cast<int>(i);
}

void OtherPlayWrapper::ResamplePermutation(Rng& rng) {
  std::vector<int> perm(config_.num_colors);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = static_cast<int>(perm.size()) - 1; i > 0; --i) {
    int j = static_cast<int>(rng.UniformInt(i + 1));
    std::swap(perm[i], perm[j]);
  }
  SetPermutation(std::move(perm));
}

Action OtherPlayWrapper::GreedyAct(const History& history) const {
  Action a = inner_->GreedyAct(history.Permuted(perm_));
  return ApplyColorPermutation(a, config_, inverse_);
}

// --- Checkpoint IO ---------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'F', 'S', 'C', 'B'};

template <typename T>
void WriteScalar(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T ReadScalar(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) {
    throw CheckpointError(CheckpointErrorKind::kFormat, "truncated header");
  }
  return v;
}

}  // namespace

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  nlohmann::json meta;
  meta["algorithm"] = ckpt.algorithm;
  meta["game_config"] = ckpt.config;
  meta["config_hash"] = ckpt.config.Fingerprint();
  meta["encoding_version"] = kEncodingVersion;
  if (ckpt.arch) meta["architecture"] = *ckpt.arch;
  if (!ckpt.convention_id.empty()) {
    meta["convention"] = {{"id", ckpt.convention_id},
                          {"params", ckpt.rule_params}};
  }
  meta["training_seed"] = ckpt.training_seed;
  meta["train_steps"] = ckpt.train_steps;
  meta["selfplay_score"] = ckpt.selfplay_score;
  meta["param_count"] = ckpt.payload.size();
  std::string json_bytes = meta.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(kMagic, 4);
  WriteScalar<uint32_t>(out, ckpt.format_version);
  WriteScalar<uint32_t>(out, static_cast<uint32_t>(json_bytes.size()));
  out.write(json_bytes.data(), json_bytes.size());
  out.write(reinterpret_cast<const char*>(ckpt.payload.data()),
            ckpt.payload.size() * sizeof(float));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CheckpointError(CheckpointErrorKind::kFormat,
                          "cannot open " + path);
  }
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw CheckpointError(CheckpointErrorKind::kFormat, "bad magic bytes");
  }
  Checkpoint ckpt;
  ckpt.format_version = ReadScalar<uint32_t>(in);
  if (ckpt.format_version != kCheckpointVersion) {
    throw CheckpointError(
        CheckpointErrorKind::kVersion,
        "unsupported checkpoint version " +
            std::to_string(ckpt.format_version));
  }
  uint32_t json_len = ReadScalar<uint32_t>(in);
  std::string json_bytes(json_len, '\0');
  in.read(json_bytes.data(), json_len);
  if (!in) {
    throw CheckpointError(CheckpointErrorKind::kFormat, "truncated metadata");
  }
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(json_bytes);
    ckpt.algorithm = meta.at("algorithm").get<std::string>();
    ckpt.config = meta.at("game_config").get<GameConfig>();
    if (meta.contains("architecture")) {
      ckpt.arch = meta["architecture"].get<ArchitectureDescriptor>();
    }
    if (meta.contains("convention")) {
      ckpt.convention_id = meta["convention"].at("id").get<std::string>();
      ckpt.rule_params = meta["convention"].at("params").get<RuleParams>();
    }
    ckpt.training_seed = meta.at("training_seed").get<uint64_t>();
    ckpt.train_steps = meta.at("train_steps").get<int64_t>();
    ckpt.selfplay_score = meta.at("selfplay_score").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(CheckpointErrorKind::kFormat,
                          std::string("bad metadata: ") + e.what());
  }
  if (meta.at("config_hash").get<uint64_t>() != ckpt.config.Fingerprint()) {
    throw CheckpointError(CheckpointErrorKind::kConfigHash,
                          "config hash mismatch (incompatible game config "
                          "or encoding version)");
  }
  size_t param_count = meta.at("param_count").get<size_t>();
  ckpt.payload.resize(param_count);
  in.read(reinterpret_cast<char*>(ckpt.payload.data()),
          param_count * sizeof(float));
  if (static_cast<size_t>(in.gcount()) != param_count * sizeof(float)) {
    throw CheckpointError(CheckpointErrorKind::kPayloadLength,
                          "payload shorter than param_count");
  }
  in.peek();
  if (!in.eof()) {
    throw CheckpointError(CheckpointErrorKind::kPayloadLength,
                          "trailing bytes after payload");
  }
  return ckpt;
}

std::shared_ptr<Policy> MakePolicy(const Checkpoint& ckpt) {
  if (ckpt.algorithm == "RULE") {
    return MakeRuleAgent(ckpt.convention_id, ckpt.rule_params, ckpt.config);
  }
  if (!ckpt.arch) {
    throw CheckpointError(CheckpointErrorKind::kFormat,
                          "network checkpoint without architecture");
  }
  QNetwork net(*ckpt.arch, ckpt.config, /*init_seed=*/0);
  if (static_cast<int>(ckpt.payload.size()) != net.num_params()) {
    throw CheckpointError(CheckpointErrorKind::kPayloadLength,
                          "payload length does not match architecture");
  }
  net.SetParams(ckpt.payload);
  return std::make_shared<QNetworkPolicy>(std::move(net), ckpt.algorithm);
}

}  // namespace fsc
