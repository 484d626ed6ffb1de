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

#ifndef FSC_TRAINING_H_
#define FSC_TRAINING_H_

#include <cstdint>
#include <mutex>
#include <set>
#include <span>
#include <vector>

#include "fsc/agents.h"
#include "fsc/engine.h"
#include "fsc/metrics.h"
#include "fsc/net.h"

namespace fsc {

struct TrainConfig {
  double lr = 6.25e-5;
  int batch_size = 128;
  int replay_buffer_size = 5000;  // episodes; full-scale runs use 1e5
  int num_threads = 8;
  int num_games_per_thread = 8;  // full-scale runs use 80x80
  double gamma = 0.99;
  // Exploration per parallel game slot; empty = geometric spread
  // eps_i = 0.25^(1 + 3.5 i/(n-1)), from 0.25 down to ~2e-3.
  std::vector<double> eps_schedule;
  int target_update_period = 500;
  bool prioritized = false;
  double priority_alpha = 0.6;
  double importance_beta = 0.4;
  bool vdn = false;
  bool other_play = false;
  int64_t total_train_episodes = 48000;
  int updates_per_episode = 8;
  int min_buffer_episodes = 200;  // warmup before gradient steps
  int64_t eval_every = 1000;
  int eval_games = 200;
  ArchitectureDescriptor arch;

  void Validate() const;
  std::string AlgorithmTag() const;  // IQL / VDN (+OP)
  double EpsForSlot(int slot) const;
  int NumParallelGames() const { return num_threads * num_games_per_thread; }
};

// One decision point of a self-play or fine-tuning episode.
struct TurnRecord {
  int8_t player = 0;
  int action = 0;  // flat id, in the actor's (possibly OP-permuted) frame
  double reward = 0.0;  // shared reward emitted by this turn
  std::vector<float> input;    // encoded history window the actor saw
  std::vector<uint8_t> legal;  // legal mask at decision time
};

struct Episode {
  std::vector<TurnRecord> turns;
  double total_reward = 0.0;
  int recorded_score = 0;
  int worker_id = 0;
  uint64_t seed = 0;
  // Fine-tuning episodes record only the learner's turns; transitions then
  // chain consecutive records instead of same-player records.
  bool single_player = false;
};

// Assembled view of one TD transition (or one VDN round).
struct Transition {
  const TurnRecord* turn = nullptr;
  const TurnRecord* partner_turn = nullptr;  // VDN rounds only
  const TurnRecord* next = nullptr;          // nullptr at terminal
  const TurnRecord* partner_next = nullptr;
  double reward = 0.0;
  bool terminal = false;
};

// Ring of episodes with FIFO eviction. Sampling units are transitions
// (uniform or prioritized); in VDN mode a unit is a two-turn round.
// Append/sample/update are serialized by an internal mutex.
class ReplayBuffer {
 public:
  ReplayBuffer(int capacity_episodes, bool vdn_rounds, bool prioritized,
               double alpha);

  void Append(Episode ep);
  int64_t NumEpisodes() const;
  int64_t NumUnits() const;
  int DistinctWorkers() const;
  // Oldest stored episode seeds, in storage order (eviction testing).
  std::vector<uint64_t> EpisodeSeedsInOrder() const;

  struct SampleRef {
    int slot = 0;   // ring slot
    int unit = 0;   // transition/round index within the episode
    double importance_weight = 1.0;
  };

  // Prioritized mode draws with probability proportional to priority^alpha
  // and fills normalized importance weights (N*P)^-beta / max.
  std::vector<SampleRef> SampleBatch(int batch_size, double beta, Rng& rng);
  Transition GetTransition(const SampleRef& ref) const;
  void UpdatePriority(const SampleRef& ref, double priority);

  // Transitions point into stored episodes; hold this lock across
  // sample/get/update so a concurrent Append cannot evict them mid-use.
  std::unique_lock<std::recursive_mutex> AcquireLock() const {
    return std::unique_lock<std::recursive_mutex>(mu_);
  }

  static int UnitsInEpisode(const Episode& ep, bool vdn_rounds);
  static Transition MakeTransition(const Episode& ep, int unit,
                                   bool vdn_rounds);

 private:
  int capacity_;
  bool vdn_rounds_;
  bool prioritized_;
  double alpha_;
  mutable std::recursive_mutex mu_;
  std::vector<Episode> ring_;
  std::vector<std::vector<double>> priorities_;  // priority^alpha per unit
  std::vector<double> episode_weight_;           // sum of unit weights
  int64_t next_slot_ = 0;
  int64_t stored_ = 0;
  double max_priority_pow_ = 1.0;
  std::set<int> workers_;
};

// Double-DQN target: r + gamma * Q_target(s', argmax_legal Q_online(s')),
// zero bootstrap at terminal.
double TdTarget(double reward, bool terminal, double gamma,
                std::span<const double> q_online_next,
                std::span<const double> q_target_next,
                std::span<const uint8_t> legal_next);

// VDN joint value: sum of per-agent Q-values for the chosen joint action.
double JointQVdn(std::span<const double> per_agent_q);

// Online/target pair with Adam. Gradient steps implement IQL (independent
// per-transition regression) or VDN (joint-sum regression) on the shared
// reward.
class Learner {
 public:
  Learner(const ArchitectureDescriptor& arch, const GameConfig& config,
          const TrainConfig& tconfig, uint64_t init_seed);

  const QNetwork& online() const { return online_; }
  QNetwork& mutable_online() { return online_; }
  const QNetwork& target() const { return target_; }
  int64_t step_count() const { return steps_; }

  double TrainStep(ReplayBuffer& buffer, Rng& rng);
  void SyncTarget();

 private:
  TrainConfig tconfig_;
  QNetwork online_;
  QNetwork target_;
  AdamOptimizer opt_;
  int64_t steps_ = 0;
};

struct TrainLogRow {
  int64_t episode = 0;
  int64_t step = 0;
  double loss = 0.0;
  double eval_score = -1.0;  // negative when the row has no evaluation
  double perfect_rate = 0.0;
};

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<TrainLogRow> log;
  int distinct_workers = 0;
};

// Self-play pre-training: num_threads x num_games_per_thread parallel game
// slots feeding the buffer, both seats sharing the online weights.
// Single-worker mode (1x1) is fully deterministic.
TrainResult RunSelfPlayTraining(const GameConfig& config,
                                const TrainConfig& tconfig, uint64_t seed);

// Greedy evaluation of a fixed pair. Seats alternate with game parity.
struct EvalStats {
  double mean = 0.0;
  double stderr_ = 0.0;
  double perfect_rate = 0.0;
  std::vector<double> scores;
};
EvalStats EvaluatePair(const Policy& a, const Policy& b,
                       const GameConfig& config, int games,
                       uint64_t base_seed);

struct FinetuneResult {
  AdaptationTrace trace;
  Checkpoint final_learner;
};

// Fine-tunes the learner as an IQL agent against a frozen, greedy partner.
// Only the learner's parameters change; the learner's seat alternates with
// game parity; evaluation points (including t=0) use epsilon 0 for both.
FinetuneResult Finetune(const Checkpoint& learner_ckpt,
                        const Checkpoint& partner_ckpt,
                        const TrainConfig& tconfig, int64_t budget_episodes,
                        uint64_t seed);

// Derives decorrelated seed streams from a base seed.
uint64_t DeriveSeed(uint64_t base, uint64_t stream, uint64_t index);

}  // namespace fsc

#endif  // FSC_TRAINING_H_
