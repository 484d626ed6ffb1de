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

#ifndef FSC_AGENTS_H_
#define FSC_AGENTS_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsc/engine.h"
#include "fsc/net.h"
#include "fsc/rng.h"

namespace fsc {

// A playable agent. Policies are immutable after construction and safe for
// concurrent read-only use.
class Policy {
 public:
  virtual ~Policy() = default;

  // Epsilon-greedy: with probability epsilon a uniform legal action, else
  // the deterministic greedy choice. epsilon=0 never touches the rng.
  Action Act(const History& history, double epsilon, Rng& rng) const;

  virtual Action GreedyAct(const History& history) const = 0;
  virtual std::string AlgorithmTag() const = 0;
  virtual int HistoryLen() const { return 1; }
};

struct RuleParams {
  bool discard_newest = false;
  double play_threshold = 0.6;  // reckless family only

  bool operator==(const RuleParams&) const = default;
};

// Convention families shipped with the benchmark:
//   certainty-rank   hint rank then color of playable cards; play only on
//                    certainty; never misplays
//   certainty-color  same, color-first hint priority
//   positional       a hint means "play your newest touched slot"
//   reckless         plays the most likely playable slot above a
//                    probability threshold
std::vector<std::string> KnownConventions();
std::shared_ptr<Policy> MakeRuleAgent(const std::string& convention_id,
                                      const RuleParams& params,
                                      const GameConfig& config);

class QNetworkPolicy : public Policy {
 public:
  QNetworkPolicy(QNetwork net, std::string algorithm_tag)
      : net_(std::move(net)), tag_(std::move(algorithm_tag)) {}

  Action GreedyAct(const History& history) const override;
  std::string AlgorithmTag() const override { return tag_; }
  int HistoryLen() const override { return net_.arch().history_len; }

  const QNetwork& net() const { return net_; }
  QNetwork& mutable_net() { return net_; }

 private:
  QNetwork net_;
  std::string tag_;
};

// Plays the inner policy through a color relabeling: observations are
// permuted before the inner policy sees them and the chosen action is
// mapped back. Evaluation mode keeps the identity permutation; training
// draws a fresh permutation per episode via ResamplePermutation.
class OtherPlayWrapper : public Policy {
 public:
  OtherPlayWrapper(std::shared_ptr<const Policy> inner,
                   const GameConfig& config);

  void ResamplePermutation(Rng& rng);
  void SetPermutation(std::vector<int> perm);
  const std::vector<int>& permutation() const { return perm_; }

  Action GreedyAct(const History& history) const override;
  std::string AlgorithmTag() const override {
    return inner_->AlgorithmTag() + "+OP";
  }
  int HistoryLen() const override { return inner_->HistoryLen(); }

 private:
  std::shared_ptr<const Policy> inner_;
  GameConfig config_;
  std::vector<int> perm_;      // color -> relabeled color
  std::vector<int> inverse_;
};

// --- Checkpoint container ------------------------------------------------
//
// File layout (little-endian):
//   bytes 0..3   magic "FSCB"
//   u32          format version
//   u32          metadata length in bytes
//   ...          JSON metadata
//   f32[...]     raw parameter payload, length from metadata param_count

inline constexpr uint32_t kCheckpointVersion = 1;

enum class CheckpointErrorKind {
  kFormat,
  kVersion,
  kPayloadLength,
  kConfigHash,
};

class CheckpointError : public std::runtime_error {
 public:
  CheckpointError(CheckpointErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  CheckpointErrorKind kind() const { return kind_; }

 private:
  CheckpointErrorKind kind_;
};

struct Checkpoint {
  uint32_t format_version = kCheckpointVersion;
  std::string algorithm;  // IQL, VDN, IQL+OP, VDN+OP, RULE
  GameConfig config;
  std::optional<ArchitectureDescriptor> arch;  // network policies
  std::string convention_id;                   // rule policies
  RuleParams rule_params;
  uint64_t training_seed = 0;
  int64_t train_steps = 0;
  double selfplay_score = -1.0;  // negative = not measured
  std::vector<float> payload;
};

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

// Instantiates the policy a checkpoint describes. Throws CheckpointError
// (kPayloadLength) when the payload does not match the architecture.
std::shared_ptr<Policy> MakePolicy(const Checkpoint& ckpt);

}  // namespace fsc

#endif  // FSC_AGENTS_H_
