# Copyright 2026 The FSC Hanabi Benchmark Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Few-shot coordination benchmark for two-player Hanabi."""

from ._fsc import (
    CHECKPOINT_MAGIC,
    ENCODING_VERSION,
    ArchitectureDescriptor,
    Checkpoint,
    CrossPlayMatrix,
    EvalStats,
    FscCheckpointError,
    FscConfigError,
    FscInfeasibleError,
    FscSchemaError,
    FscUsageError,
    Game,
    GameConfig,
    PartnerSelection,
    TrainConfig,
    adaptation_regret,
    compute_crossplay,
    diversity,
    evaluate_pair,
    finetune,
    iqm,
    known_conventions,
    load_checkpoint,
    make_rule_checkpoint,
    perfect_rate,
    run_benchmark,
    save_checkpoint,
    select_partners,
    strength,
    train_selfplay,
)

__all__ = [
    "CHECKPOINT_MAGIC",
    "ENCODING_VERSION",
    "ArchitectureDescriptor",
    "Checkpoint",
    "CrossPlayMatrix",
    "EvalStats",
    "FscCheckpointError",
    "FscConfigError",
    "FscInfeasibleError",
    "FscSchemaError",
    "FscUsageError",
    "Game",
    "GameConfig",
    "PartnerSelection",
    "TrainConfig",
    "adaptation_regret",
    "compute_crossplay",
    "diversity",
    "evaluate_pair",
    "finetune",
    "iqm",
    "known_conventions",
    "load_checkpoint",
    "make_rule_checkpoint",
    "perfect_rate",
    "run_benchmark",
    "save_checkpoint",
    "select_partners",
    "strength",
    "train_selfplay",
]

__version__ = "0.1.0"
