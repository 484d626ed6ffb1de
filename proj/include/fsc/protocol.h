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

#ifndef FSC_PROTOCOL_H_
#define FSC_PROTOCOL_H_

#include <optional>
#include <string>
#include <vector>

#include "fsc/agents.h"
#include "fsc/metrics.h"
#include "fsc/training.h"

namespace fsc {

// Raised when no partner subset satisfies the selection constraints.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Named checkpoints sharing one GameConfig.
struct AgentPool {
  std::vector<std::string> ids;
  std::vector<Checkpoint> checkpoints;

  int size() const { return static_cast<int>(ids.size()); }
  int Find(const std::string& id) const;  // -1 when absent
  const GameConfig& config() const;
  void Validate() const;  // nonempty, unique ids, shared config
};

// Greedy pairwise evaluation of the whole pool. Every cell averages both
// seat orders over games_per_pair games; cell seeds derive from base_seed
// and the pair index, so results are identical for any worker count.
CrossPlayMatrix ComputeCrossplay(const AgentPool& pool, int games_per_pair,
                                 uint64_t base_seed, int num_workers = 1);

struct PartnerSelection {
  std::vector<std::string> ids;  // chosen members, id-sorted
  std::vector<int> indices;      // positions in the source matrix
  double strength = 0.0;         // mean S_j over the chosen set
  double diversity = 0.0;        // D of the chosen sub-matrix
  std::vector<double> c_star;    // per chosen member
  // Criteria record.
  int k = 0;
  double strength_min = 0.0;
  double diversity_target = 0.0;
  UpperBoundMode upper_bound = UpperBoundMode::kSelfPlay;
  bool exhaustive = true;
};

// Picks the k-subset whose diversity is closest to diversity_target among
// subsets whose members all satisfy S_j >= strength_min. Exhaustive when
// C(n, k) <= 1e6, else greedy swap-improvement; ties break to the
// lexicographically smallest sorted id list. best_response supplies C*_j
// for UpperBoundMode::kBestResponse.
PartnerSelection SelectPartners(
    const CrossPlayMatrix& matrix, int k, double strength_min,
    double diversity_target, UpperBoundMode upper_bound, double max_score,
    const std::optional<std::vector<double>>& best_response = std::nullopt,
    bool force_greedy = false);

// Fine-tunes the learner against each selected partner over seeds_per_pair
// independent runs, averages traces pointwise, and assembles the report
// (regret/score/perfect-rate curves, embedded sub-matrix, S and D).
// Per-run seeds derive from base_seed, so any worker count gives identical
// results; bit-level determinism additionally needs tconfig.num_threads==1.
AdaptationReport RunBenchmark(const Checkpoint& learner,
                              const std::string& learner_id,
                              const AgentPool& pool,
                              const PartnerSelection& selection,
                              const CrossPlayMatrix& matrix,
                              const TrainConfig& tconfig,
                              int64_t budget_episodes, int seeds_per_pair,
                              uint64_t base_seed, Aggregator aggregator,
                              int num_workers = 1);

// One-at-a-time hyperparameter grid around a base TrainConfig.
struct HpGrid {
  std::vector<double> lr;
  std::vector<int> batch_size;
  std::vector<int> replay_buffer_size;
  // (num_threads, num_games_per_thread) pairs.
  std::vector<std::pair<int, int>> workers;

  bool Empty() const {
    return lr.empty() && batch_size.empty() && replay_buffer_size.empty() &&
           workers.empty();
  }
};

struct SweepPoint {
  std::string hp_name;
  std::string hp_value;
  AdaptationReport report;
  double final_average_regret = 0.0;
  double final_perfect_rate = 0.0;
};

struct SweepReport {
  std::vector<SweepPoint> points;
};

// One RunBenchmark per grid value, varying a single hyperparameter at a
// time; every point reuses base_seed so points differ only by the HP.
SweepReport RunHpSweep(const Checkpoint& learner, const std::string& learner_id,
                       const AgentPool& pool,
                       const PartnerSelection& selection,
                       const CrossPlayMatrix& matrix,
                       const TrainConfig& base_tconfig, const HpGrid& grid,
                       int64_t budget_episodes, int seeds_per_pair,
                       uint64_t base_seed, Aggregator aggregator,
                       int num_workers = 1);

}  // namespace fsc

#endif  // FSC_PROTOCOL_H_
