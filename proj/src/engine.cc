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

#include "fsc/engine.h"

#include <algorithm>
#include <numeric>

namespace fsc {
namespace {

uint64_t HashCombine(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

uint64_t ColorBits(const GameConfig& cfg, int color) {
  uint64_t rank_block = (uint64_t{1} << cfg.num_ranks) - 1;
  return rank_block << (color * cfg.num_ranks);
}

uint64_t RankBits(const GameConfig& cfg, int rank) {
  uint64_t bits = 0;
  for (int c = 0; c < cfg.num_colors; ++c) {
    bits |= uint64_t{1} << (c * cfg.num_ranks + rank);
  }
  return bits;
}

SlotKnowledge FreshKnowledge(const GameConfig& cfg) {
  SlotKnowledge k;
  k.candidates = (cfg.num_colors * cfg.num_ranks == 64)
                     ? ~uint64_t{0}
                     : (uint64_t{1} << (cfg.num_colors * cfg.num_ranks)) - 1;
  return k;
}

void DrawCard(GameState& s, int player) {
  if (s.deck.empty()) return;
  s.hands[player].push_back(s.deck.back());
  s.deck.pop_back();
  s.knowledge[player].push_back(FreshKnowledge(s.config));
}

void RemoveSlot(GameState& s, int player, int slot) {
  s.hands[player].erase(s.hands[player].begin() + slot);
  s.knowledge[player].erase(s.knowledge[player].begin() + slot);
}

void CheckPermutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) {
    throw UsageError("color permutation has wrong size");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) {
      throw UsageError("color permutation is not a bijection");
    }
    seen[p] = true;
  }
}

uint64_t PermuteCandidates(uint64_t candidates, const GameConfig& cfg,
                           const std::vector<int>& perm) {
  uint64_t out = 0;
  uint64_t rank_block = (uint64_t{1} << cfg.num_ranks) - 1;
  for (int c = 0; c < cfg.num_colors; ++c) {
    uint64_t block = (candidates >> (c * cfg.num_ranks)) & rank_block;
    out |= block << (perm[c] * cfg.num_ranks);
  }
  return out;
}

void PermuteLastAction(std::optional<LastAction>& la, const GameConfig& cfg,
                       const std::vector<int>& perm) {
  if (!la) return;
  la->action = ApplyColorPermutation(la->action, cfg, perm);
  if (la->revealed) la->revealed->color = perm[la->revealed->color];
}

}  // namespace

int GameConfig::DeckSize() const {
  int per_color = std::accumulate(rank_counts.begin(), rank_counts.end(), 0);
  return num_colors * per_color;
}

void GameConfig::Validate() const {
  if (num_players != 2) throw ConfigError("engine supports exactly 2 players");
  if (num_colors < 1) throw ConfigError("num_colors must be >= 1");
  if (num_ranks < 1) throw ConfigError("num_ranks must be >= 1");
  if (static_cast<int>(rank_counts.size()) != num_ranks) {
    throw ConfigError("rank_counts length must equal num_ranks");
  }
  for (int rc : rank_counts) {
    if (rc < 1) throw ConfigError("rank_counts entries must be >= 1");
  }
  if (hand_size < 1) throw ConfigError("hand_size must be >= 1");
  if (info_tokens < 1) throw ConfigError("info_tokens must be >= 1");
  if (life_tokens < 1) throw ConfigError("life_tokens must be >= 1");
  if (num_colors * num_ranks > 64) {
    throw ConfigError("num_colors * num_ranks must be <= 64");
  }
  if (hand_size * num_players > DeckSize()) {
    throw ConfigError("hand_size too large for deck");
  }
}

uint64_t GameConfig::Fingerprint() const {
  uint64_t h = 0x46534342;  // "FSCB"
  h = HashCombine(h, num_colors);
  h = HashCombine(h, num_ranks);
  for (int rc : rank_counts) h = HashCombine(h, rc);
  h = HashCombine(h, hand_size);
  h = HashCombine(h, info_tokens);
  h = HashCombine(h, life_tokens);
  h = HashCombine(h, num_players);
  h = HashCombine(h, bomb_zero ? 1 : 0);
  h = HashCombine(h, kEncodingVersion);
  return h;
}

int Action::Flatten(const GameConfig& cfg) const {
  switch (type) {
    case Type::kPlay:
      return index;
    case Type::kDiscard:
      return cfg.hand_size + index;
    case Type::kHintColor:
      return 2 * cfg.hand_size + index;
    case Type::kHintRank:
      return 2 * cfg.hand_size + cfg.num_colors + index;
  }
  throw UsageError("bad action type");
}

Action Action::Unflatten(int id, const GameConfig& cfg) {
  if (id < 0 || id >= cfg.ActionSpaceSize()) {
    throw UsageError("action id out of range");
  }
  if (id < cfg.hand_size) return {Type::kPlay, id};
  id -= cfg.hand_size;
  if (id < cfg.hand_size) return {Type::kDiscard, id};
  id -= cfg.hand_size;
  if (id < cfg.num_colors) return {Type::kHintColor, id};
  return {Type::kHintRank, id - cfg.num_colors};
}

std::string Action::ToString() const {
  switch (type) {
    case Type::kPlay:
      return "play:" + std::to_string(index);
    case Type::kDiscard:
      return "discard:" + std::to_string(index);
    case Type::kHintColor:
      return "hint_color:" + std::to_string(index);
    case Type::kHintRank:
      return "hint_rank:" + std::to_string(index);
  }
  return "?";
}

int GameState::Score() const {
  return std::accumulate(fireworks.begin(), fireworks.end(), 0);
}

int GameState::RecordedScore() const {
  return (bombed && config.bomb_zero) ? 0 : Score();
}

GameState NewGame(const GameConfig& config, uint64_t seed) {
  config.Validate();
  GameState s;
  s.config = config;

  s.deck.reserve(config.DeckSize());
  for (int c = 0; c < config.num_colors; ++c) {
    for (int r = 0; r < config.num_ranks; ++r) {
      for (int k = 0; k < config.rank_counts[r]; ++k) {
        s.deck.push_back({static_cast<int8_t>(c), static_cast<int8_t>(r)});
      }
    }
  }
  Rng rng(seed);
  // Fisher-Yates.
  for (int i = static_cast<int>(s.deck.size()) - 1; i > 0; --i) {
    int j = static_cast<int>(rng.UniformInt(i + 1));
    std::swap(s.deck[i], s.deck[j]);
  }

  s.hands.resize(config.num_players);
  s.knowledge.resize(config.num_players);
  s.fireworks.assign(config.num_colors, 0);
  s.discard_counts.assign(config.num_colors * config.num_ranks, 0);
  s.info_tokens_left = config.info_tokens;
  s.life_tokens_left = config.life_tokens;
  for (int p = 0; p < config.num_players; ++p) {
    for (int i = 0; i < config.hand_size; ++i) DrawCard(s, p);
  }
  s.rng_state = rng.state();
  return s;
}

bool IsLegal(const GameState& s, const Action& a) {
  if (s.terminal) return false;
  const GameConfig& cfg = s.config;
  const auto& hand = s.hands[s.current_player];
  const auto& partner = s.hands[1 - s.current_player];
  switch (a.type) {
    case Action::Type::kPlay:
      return a.index >= 0 && a.index < static_cast<int>(hand.size());
    case Action::Type::kDiscard:
      return a.index >= 0 && a.index < static_cast<int>(hand.size()) &&
             s.info_tokens_left < cfg.info_tokens;
    case Action::Type::kHintColor: {
      if (a.index < 0 || a.index >= cfg.num_colors) return false;
      if (s.info_tokens_left == 0) return false;
      return std::any_of(partner.begin(), partner.end(),
                         [&](const Card& c) { return c.color == a.index; });
    }
    case Action::Type::kHintRank: {
      if (a.index < 0 || a.index >= cfg.num_ranks) return false;
      if (s.info_tokens_left == 0) return false;
      return std::any_of(partner.begin(), partner.end(),
                         [&](const Card& c) { return c.rank == a.index; });
    }
  }
  return false;
}

std::vector<Action> LegalActions(const GameState& s) {
  if (s.terminal) throw UsageError("legal_actions on terminal state");
  std::vector<Action> out;
  for (int id = 0; id < s.config.ActionSpaceSize(); ++id) {
    Action a = Action::Unflatten(id, s.config);
    if (IsLegal(s, a)) out.push_back(a);
  }
  return out;
}

StepResult Step(const GameState& state, const Action& action) {
  if (state.terminal) throw UsageError("step on terminal state");
  if (!IsLegal(state, action)) {
    throw UsageError("illegal action: " + action.ToString());
  }
  StepResult res;
  res.state = state;
  GameState& s = res.state;
  const GameConfig& cfg = s.config;
  int me = s.current_player;
  int partner = 1 - me;

  LastAction la;
  la.actor = me;
  la.action = action;

  switch (action.type) {
    case Action::Type::kPlay: {
      Card card = s.hands[me][action.index];
      la.revealed = card;
      if (s.fireworks[card.color] == card.rank) {
        s.fireworks[card.color] += 1;
        res.reward = 1.0;
        la.success = true;
        // Completing a stack refunds a hint token.
        if (s.fireworks[card.color] == cfg.num_ranks &&
            s.info_tokens_left < cfg.info_tokens) {
          s.info_tokens_left += 1;
        }
      } else {
        s.life_tokens_left -= 1;
        s.discard_counts[card.color * cfg.num_ranks + card.rank] += 1;
        la.success = false;
      }
      RemoveSlot(s, me, action.index);
      DrawCard(s, me);
      break;
    }
    case Action::Type::kDiscard: {
      Card card = s.hands[me][action.index];
      la.revealed = card;
      s.discard_counts[card.color * cfg.num_ranks + card.rank] += 1;
      s.info_tokens_left += 1;
      RemoveSlot(s, me, action.index);
      DrawCard(s, me);
      break;
    }
    case Action::Type::kHintColor: {
      s.info_tokens_left -= 1;
      for (size_t i = 0; i < s.hands[partner].size(); ++i) {
        SlotKnowledge& k = s.knowledge[partner][i];
        if (s.hands[partner][i].color == action.index) {
          k.color_known = true;
          k.candidates &= ColorBits(cfg, action.index);
          la.touched_slots |= uint32_t{1} << i;
        } else {
          k.candidates &= ~ColorBits(cfg, action.index);
        }
      }
      break;
    }
    case Action::Type::kHintRank: {
      s.info_tokens_left -= 1;
      for (size_t i = 0; i < s.hands[partner].size(); ++i) {
        SlotKnowledge& k = s.knowledge[partner][i];
        if (s.hands[partner][i].rank == action.index) {
          k.rank_known = true;
          k.candidates &= RankBits(cfg, action.index);
          la.touched_slots |= uint32_t{1} << i;
        } else {
          k.candidates &= ~RankBits(cfg, action.index);
        }
      }
      break;
    }
  }

  s.last_action = la;
  s.turn += 1;
  s.current_player = partner;

  if (s.life_tokens_left == 0) {
    s.bombed = true;
    s.terminal = true;
    if (cfg.bomb_zero) {
      // Cumulative episode reward must equal the recorded score of 0.
      res.reward -= static_cast<double>(s.Score());
    }
  } else if (s.Score() == cfg.MaxScore()) {
    s.terminal = true;
  } else {
    if (s.final_round_countdown) {
      *s.final_round_countdown -= 1;
      if (*s.final_round_countdown == 0) s.terminal = true;
    } else if (s.deck.empty()) {
      // Each player gets one more turn after the last draw.
      s.final_round_countdown = cfg.num_players;
    }
  }
  res.terminal = s.terminal;
  return res;
}

Observation Observe(const GameState& s, int player) {
  if (player < 0 || player >= s.config.num_players) {
    throw UsageError("invalid player index");
  }
  Observation o;
  o.config = s.config;
  o.viewer = player;
  o.partner_hand = s.hands[1 - player];
  o.own_knowledge = s.knowledge[player];
  o.partner_knowledge = s.knowledge[1 - player];
  o.fireworks = s.fireworks;
  o.discard_counts = s.discard_counts;
  o.info_tokens_left = s.info_tokens_left;
  o.life_tokens_left = s.life_tokens_left;
  o.deck_remaining = static_cast<int>(s.deck.size());
  o.current_player = s.current_player;
  o.last_action = s.last_action;

  // Legality for the viewer as if acting now; matches LegalActions when
  // viewer == current_player.
  o.legal_action_mask.assign(s.config.ActionSpaceSize(), 0);
  if (!s.terminal) {
    GameState as_actor = s;
    as_actor.current_player = player;
    for (int id = 0; id < s.config.ActionSpaceSize(); ++id) {
      if (IsLegal(as_actor, Action::Unflatten(id, s.config))) {
        o.legal_action_mask[id] = 1;
      }
    }
  }
  return o;
}

int EncodedObservationSize(const GameConfig& cfg) {
  int C = cfg.num_colors, R = cfg.num_ranks, H = cfg.hand_size;
  int cr = C * R;
  int last_action = 1 + 2 + 4 + H + C + R + 1 + cr + H;
  return H * cr        // partner hand
         + H * cr      // candidate masks
         + H * 2       // known flags
         + H * cr      // partner candidate masks
         + H * 2       // partner known flags
         + C * (R + 1)  // fireworks
         + cr           // discard
         + (cfg.info_tokens + 1) + (cfg.life_tokens + 1)  // tokens
         + 1            // deck remaining
         + last_action + cfg.ActionSpaceSize();
}

std::vector<float> EncodeObservation(const Observation& o) {
  const GameConfig& cfg = o.config;
  int C = cfg.num_colors, R = cfg.num_ranks, H = cfg.hand_size;
  int cr = C * R;
  std::vector<float> v(EncodedObservationSize(cfg), 0.0f);
  int off = 0;

  for (size_t i = 0; i < o.partner_hand.size(); ++i) {
    const Card& c = o.partner_hand[i];
    v[off + static_cast<int>(i) * cr + c.color * R + c.rank] = 1.0f;
  }
  off += H * cr;

  for (size_t i = 0; i < o.own_knowledge.size(); ++i) {
    uint64_t mask = o.own_knowledge[i].candidates;
    for (int b = 0; b < cr; ++b) {
      if (mask & (uint64_t{1} << b)) v[off + static_cast<int>(i) * cr + b] = 1.0f;
    }
  }
  off += H * cr;

  for (size_t i = 0; i < o.own_knowledge.size(); ++i) {
    v[off + 2 * static_cast<int>(i) + 0] = o.own_knowledge[i].color_known ? 1.0f : 0.0f;
    v[off + 2 * static_cast<int>(i) + 1] = o.own_knowledge[i].rank_known ? 1.0f : 0.0f;
  }
  off += H * 2;

  for (size_t i = 0; i < o.partner_knowledge.size(); ++i) {
    uint64_t mask = o.partner_knowledge[i].candidates;
    for (int b = 0; b < cr; ++b) {
      if (mask & (uint64_t{1} << b)) v[off + static_cast<int>(i) * cr + b] = 1.0f;
    }
  }
  off += H * cr;

  for (size_t i = 0; i < o.partner_knowledge.size(); ++i) {
    v[off + 2 * static_cast<int>(i) + 0] =
        o.partner_knowledge[i].color_known ? 1.0f : 0.0f;
    v[off + 2 * static_cast<int>(i) + 1] =
        o.partner_knowledge[i].rank_known ? 1.0f : 0.0f;
  }
  off += H * 2;

  for (int c = 0; c < C; ++c) v[off + c * (R + 1) + o.fireworks[c]] = 1.0f;
  off += C * (R + 1);

  for (int b = 0; b < cr; ++b) {
    int rank = b % R;
    v[off + b] = static_cast<float>(o.discard_counts[b]) /
                 static_cast<float>(cfg.rank_counts[rank]);
  }
  off += cr;

  v[off + o.info_tokens_left] = 1.0f;
  off += cfg.info_tokens + 1;
  v[off + o.life_tokens_left] = 1.0f;
  off += cfg.life_tokens + 1;

  v[off] = static_cast<float>(o.deck_remaining) /
           static_cast<float>(cfg.DeckSize());
  off += 1;

  // Last action block.
  if (o.last_action) {
    const LastAction& la = *o.last_action;
    v[off + 0] = 1.0f;                       // present flag
    v[off + 1 + la.actor] = 1.0f;            // actor
    v[off + 3 + static_cast<int>(la.action.type)] = 1.0f;  // type
    int p = off + 7;
    switch (la.action.type) {
      case Action::Type::kPlay:
      case Action::Type::kDiscard:
        v[p + la.action.index] = 1.0f;
        break;
      case Action::Type::kHintColor:
        v[p + H + la.action.index] = 1.0f;
        break;
      case Action::Type::kHintRank:
        v[p + H + C + la.action.index] = 1.0f;
        break;
    }
    p += H + C + R;
    v[p] = la.success ? 1.0f : 0.0f;
    p += 1;
    if (la.revealed) {
      v[p + la.revealed->color * R + la.revealed->rank] = 1.0f;
    }
    p += cr;
    for (int i = 0; i < H; ++i) {
      if (la.touched_slots & (uint32_t{1} << i)) v[p + i] = 1.0f;
    }
  }
  off += 1 + 2 + 4 + H + C + R + 1 + cr + H;

  for (int id = 0; id < cfg.ActionSpaceSize(); ++id) {
    v[off + id] = o.legal_action_mask[id] ? 1.0f : 0.0f;
  }
  return v;
}

Action ApplyColorPermutation(const Action& a, const GameConfig& cfg,
                             const std::vector<int>& perm) {
  CheckPermutation(perm, cfg.num_colors);
  Action out = a;
  if (a.type == Action::Type::kHintColor) out.index = perm[a.index];
  return out;
}

GameState ApplyColorPermutation(const GameState& state,
                                const std::vector<int>& perm) {
  CheckPermutation(perm, state.config.num_colors);
  const GameConfig& cfg = state.config;
  GameState s = state;
  for (Card& c : s.deck) c.color = static_cast<int8_t>(perm[c.color]);
  for (auto& hand : s.hands) {
    for (Card& c : hand) c.color = static_cast<int8_t>(perm[c.color]);
  }
  for (auto& pk : s.knowledge) {
    for (SlotKnowledge& k : pk) {
      k.candidates = PermuteCandidates(k.candidates, cfg, perm);
    }
  }
  for (int c = 0; c < cfg.num_colors; ++c) {
    s.fireworks[perm[c]] = state.fireworks[c];
    for (int r = 0; r < cfg.num_ranks; ++r) {
      s.discard_counts[perm[c] * cfg.num_ranks + r] =
          state.discard_counts[c * cfg.num_ranks + r];
    }
  }
  PermuteLastAction(s.last_action, cfg, perm);
  return s;
}

Observation ApplyColorPermutation(const Observation& obs,
                                  const std::vector<int>& perm) {
  CheckPermutation(perm, obs.config.num_colors);
  const GameConfig& cfg = obs.config;
  Observation o = obs;
  for (Card& c : o.partner_hand) c.color = static_cast<int8_t>(perm[c.color]);
  for (SlotKnowledge& k : o.own_knowledge) {
    k.candidates = PermuteCandidates(k.candidates, cfg, perm);
  }
  for (SlotKnowledge& k : o.partner_knowledge) {
    k.candidates = PermuteCandidates(k.candidates, cfg, perm);
  }
  for (int c = 0; c < cfg.num_colors; ++c) {
    o.fireworks[perm[c]] = obs.fireworks[c];
    for (int r = 0; r < cfg.num_ranks; ++r) {
      o.discard_counts[perm[c] * cfg.num_ranks + r] =
          obs.discard_counts[c * cfg.num_ranks + r];
    }
  }
  PermuteLastAction(o.last_action, cfg, perm);
  // Hint-color legality moves with the relabeling.
  int base = 2 * cfg.hand_size;
  for (int c = 0; c < cfg.num_colors; ++c) {
    o.legal_action_mask[base + perm[c]] = obs.legal_action_mask[base + c];
  }
  return o;
}

int MaxScore(const GameConfig& config) {
  config.Validate();
  return config.MaxScore();
}

void History::Push(Observation obs, std::optional<Action> prev_action) {
  entries_.push_back({std::move(obs), prev_action});
  if (static_cast<int>(entries_.size()) > capacity_) {
    entries_.erase(entries_.begin());
  }
}

const Observation& History::Latest() const {
  if (entries_.empty()) throw UsageError("empty history");
  return entries_.back().obs;
}

int History::EncodedSize(int capacity, const GameConfig& cfg) {
  return capacity * (EncodedObservationSize(cfg) + cfg.ActionSpaceSize());
}

std::vector<float> History::Encode() const {
  int per_entry = EncodedObservationSize(config_) + config_.ActionSpaceSize();
  std::vector<float> v(capacity_ * per_entry, 0.0f);
  // Newest entry always occupies the last block.
  int start = capacity_ - static_cast<int>(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    std::vector<float> enc = EncodeObservation(e.obs);
    int off = (start + static_cast<int>(i)) * per_entry;
    std::copy(enc.begin(), enc.end(), v.begin() + off);
    if (e.prev_action) {
      v[off + static_cast<int>(enc.size()) + e.prev_action->Flatten(config_)] =
          1.0f;
    }
  }
  return v;
}

History History::Permuted(const std::vector<int>& perm) const {
  History out(capacity_, config_);
  for (const Entry& e : entries_) {
    std::optional<Action> a;
    if (e.prev_action) a = ApplyColorPermutation(*e.prev_action, config_, perm);
    out.Push(ApplyColorPermutation(e.obs, perm), a);
  }
  return out;
}

}  // namespace fsc
