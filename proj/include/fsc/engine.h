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

#ifndef FSC_ENGINE_H_
#define FSC_ENGINE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsc/rng.h"

namespace fsc {

// Invalid configuration (deck too small, non-positive counts, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse: illegal action, stepping a terminal state, bad permutation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameterizable two-player Hanabi deal. Defaults are the full game:
// 5 colors x ranks {1,1,1,2,2,3,3,4,4,5} per color, 50-card deck, max 25.
struct GameConfig {
  int num_colors = 5;
  int num_ranks = 5;
  std::vector<int> rank_counts = {3, 2, 2, 2, 1};  // copies per rank
  int hand_size = 5;
  int info_tokens = 8;
  int life_tokens = 3;
  int num_players = 2;  // the engine only supports 2
  bool bomb_zero = true;  // recorded score is 0 when lives run out

  int DeckSize() const;
  int MaxScore() const { return num_colors * num_ranks; }
  // Flat action ids: [0,H) Play, [H,2H) Discard, [2H,2H+C) HintColor,
  // [2H+C,2H+C+R) HintRank.
  int ActionSpaceSize() const { return 2 * hand_size + num_colors + num_ranks; }

  void Validate() const;  // throws ConfigError
  bool operator==(const GameConfig&) const = default;

  // Stable hash over every field that affects state evolution or encoding.
  uint64_t Fingerprint() const;
};

struct Card {
  int8_t color = -1;
  int8_t rank = -1;
  bool operator==(const Card&) const = default;
};

// What a player knows about one of its own slots, accumulated from hints.
struct SlotKnowledge {
  bool color_known = false;
  bool rank_known = false;
  // Bit (color * num_ranks + rank) set iff that identity is still possible.
  uint64_t candidates = 0;

  bool operator==(const SlotKnowledge&) const = default;
};

struct Action {
  enum class Type : int8_t { kPlay, kDiscard, kHintColor, kHintRank };
  Type type = Type::kPlay;
  int index = 0;  // slot for Play/Discard, color or rank for hints

  bool operator==(const Action&) const = default;

  int Flatten(const GameConfig& cfg) const;
  static Action Unflatten(int id, const GameConfig& cfg);
  std::string ToString() const;
};

// Public record of the previous move, visible to both players.
struct LastAction {
  int actor = 0;
  Action action;
  std::optional<Card> revealed;  // identity of a played/discarded card
  bool success = false;          // Play landed on a firework
  uint32_t touched_slots = 0;    // bitmask of hinted slots

  bool operator==(const LastAction&) const = default;
};

struct GameState {
  GameConfig config;
  std::vector<Card> deck;  // back of the vector is drawn first
  std::vector<std::vector<Card>> hands;
  std::vector<std::vector<SlotKnowledge>> knowledge;
  std::vector<int> fireworks;  // per color, height = next needed rank
  std::vector<int> discard_counts;  // indexed color * num_ranks + rank
  int info_tokens_left = 0;
  int life_tokens_left = 0;
  int current_player = 0;
  int turn = 0;
  std::optional<int> final_round_countdown;
  std::optional<LastAction> last_action;
  bool terminal = false;
  bool bombed = false;  // lives reached zero
  uint64_t rng_state = 0;  // generator state after the deal

  int Score() const;          // current firework sum
  int RecordedScore() const;  // 0 if bombed under bomb_zero

  bool operator==(const GameState&) const = default;
};

struct Observation {
  GameConfig config;
  int viewer = 0;
  std::vector<Card> partner_hand;
  std::vector<SlotKnowledge> own_knowledge;
  // What the partner knows about its own hand. Public information (hints
  // are announced); encoded so policies can judge hint economy.
  std::vector<SlotKnowledge> partner_knowledge;
  std::vector<int> fireworks;
  std::vector<int> discard_counts;
  int info_tokens_left = 0;
  int life_tokens_left = 0;
  int deck_remaining = 0;
  int current_player = 0;
  std::optional<LastAction> last_action;
  std::vector<uint8_t> legal_action_mask;  // for the viewer, as actor

  bool operator==(const Observation&) const = default;
};

struct StepResult {
  GameState state;
  double reward = 0.0;
  bool terminal = false;
};

GameState NewGame(const GameConfig& config, uint64_t seed);

// All actions valid for state.current_player. Throws UsageError on a
// terminal state.
std::vector<Action> LegalActions(const GameState& state);
bool IsLegal(const GameState& state, const Action& action);

// Copy-on-step transition. Cumulative reward over an episode equals the
// recorded score, including the bomb_zero correction on the final step.
StepResult Step(const GameState& state, const Action& action);

Observation Observe(const GameState& state, int player);

// Fixed feature layout; dimensionality depends only on the config.
// Blocks, in order:
//   partner hand one-hots        H * C*R
//   own candidate masks          H * C*R
//   own color/rank known flags   H * 2
//   fireworks height one-hots    C * (R+1)
//   discard counts (normalized)  C*R
//   info tokens one-hot          info_tokens + 1
//   life tokens one-hot          life_tokens + 1
//   deck remaining (normalized)  1
//   last action block            1 + 2 + 4 + H + C + R + 1 + C*R + H
//   legal action mask            2H + C + R
// Bump kEncodingVersion when the layout changes.
inline constexpr int kEncodingVersion = 2;
int EncodedObservationSize(const GameConfig& config);
std::vector<float> EncodeObservation(const Observation& obs);

// Relabels all color indices. perm must be a bijection on [0, num_colors).
GameState ApplyColorPermutation(const GameState& state,
                                const std::vector<int>& perm);
Observation ApplyColorPermutation(const Observation& obs,
                                  const std::vector<int>& perm);
Action ApplyColorPermutation(const Action& action, const GameConfig& cfg,
                             const std::vector<int>& perm);

int MaxScore(const GameConfig& config);

// Bounded action-observation window of one player, oldest first. Feeds
// feedforward Q networks; see QNetwork for the flattened input layout.
class History {
 public:
  History(int capacity, const GameConfig& cfg)
      : capacity_(capacity), config_(cfg) {}

  void Push(Observation obs, std::optional<Action> prev_action);
  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }
  const GameConfig& config() const { return config_; }
  const Observation& Latest() const;

  // Flattened window: capacity * (obs_encoding + prev-action one-hot),
  // zero-padded at the front while the history is shorter than capacity.
  std::vector<float> Encode() const;
  static int EncodedSize(int capacity, const GameConfig& cfg);

  // Relabels all colors in the stored observations and actions.
  History Permuted(const std::vector<int>& perm) const;

 private:
  struct Entry {
    Observation obs;
    std::optional<Action> prev_action;  // viewer's own preceding action
  };
  int capacity_;
  GameConfig config_;
  std::vector<Entry> entries_;
};

}  // namespace fsc

#endif  // FSC_ENGINE_H_
