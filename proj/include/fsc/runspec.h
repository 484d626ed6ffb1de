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

#ifndef FSC_RUNSPEC_H_
#define FSC_RUNSPEC_H_

#include <string>
#include <vector>

#include "fsc/json_io.h"
#include "fsc/metrics.h"
#include "fsc/protocol.h"
#include "fsc/training.h"

namespace fsc {

// Malformed or out-of-schema configuration documents.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kRunSpecSchemaVersion = 1;

// Declarative run configuration. Every field has a default; a spec file
// overrides the fields it names and any unknown key is rejected. CLI flags
// override file values (flag > file > default).
struct RunSpec {
  int schema_version = kRunSpecSchemaVersion;
  uint64_t seed = 1;
  std::string output_dir = "out";
  int num_workers = 1;  // orchestration worker pool

  GameConfig game;
  TrainConfig train;
  // Non-empty: cmd_train writes a rule-convention checkpoint instead of
  // running gradient training.
  std::string convention;
  RuleParams rule_params;

  // crossplay
  int games_per_pair = 200;

  // select
  int k_partners = 5;
  double strength_min = 0.0;
  double diversity_target = 0.5;
  UpperBoundMode upper_bound = UpperBoundMode::kSelfPlay;

  // adapt
  int64_t budget_episodes = 2000;
  int seeds_per_pair = 1;
  Aggregator aggregator = Aggregator::kMean;

  HpGrid sweep;

  // paths
  std::string learner_path;
  std::vector<std::string> pool_paths;
  std::string matrix_path;  // crossplay output / select input (JSON)

  nlohmann::json ToJson() const;  // fully resolved, including defaults
  static RunSpec FromJson(const nlohmann::json& j);
  static RunSpec Load(const std::string& path);
};

void to_json(nlohmann::json& j, const TrainConfig& t);
void from_json(const nlohmann::json& j, TrainConfig& t);

// Worker-pool cap from the FSC_MAX_WORKERS environment variable;
// 0 when unset.
int WorkerCapFromEnv();

}  // namespace fsc

#endif  // FSC_RUNSPEC_H_
