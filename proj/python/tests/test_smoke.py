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
"""End-to-end smoke tests for the fscbench python module."""

import math
import random

import pytest

import fscbench as fb


def small_config():
    cfg = fb.GameConfig()
    cfg.num_colors = 2
    cfg.num_ranks = 5
    cfg.hand_size = 2
    return cfg


def test_game_random_playout_reward_equals_score():
    cfg = small_config()
    rng = random.Random(7)
    for seed in range(20):
        game = fb.Game(cfg, seed)
        total = 0.0
        while not game.terminal:
            total += game.step(rng.choice(game.legal_actions()))
        assert total == pytest.approx(game.recorded_score())
        assert 0 <= game.score() <= cfg.max_score()


def test_observation_encoding_is_fixed_size():
    cfg = small_config()
    game = fb.Game(cfg, 1)
    n = len(game.encode_observation(0))
    assert n > 0
    game.step(game.legal_actions()[0])
    assert len(game.encode_observation(1)) == n


def test_metrics_match_hand_computations():
    total, average = fb.adaptation_regret([10.0, 15.0, 20.0, 25.0], 25.0, 4)
    assert total == pytest.approx(30.0)
    assert average == pytest.approx(7.5)
    assert fb.iqm([1, 2, 3, 4, 5, 6, 7, 8]) == pytest.approx(4.5)
    assert fb.perfect_rate([10.0] * 37 + [5.0] * 163, 10.0) == pytest.approx(
        0.185
    )
    per, pool = fb.strength([24.0, 23.0, 22.0, 24.0, 23.0], 25.0)
    assert pool == pytest.approx(0.928)
    assert len(per) == 5


def test_rule_pool_crossplay_and_selection():
    cfg = small_config()
    ids = fb.known_conventions()
    assert len(ids) >= 4
    ckpts = [fb.make_rule_checkpoint(c, cfg) for c in ids]
    matrix = fb.compute_crossplay(ids, ckpts, 20, seed=3, num_workers=2)
    assert matrix.size() == len(ids)
    assert fb.diversity(matrix, cfg.max_score()) <= 1.0

    sel = fb.select_partners(
        matrix, 2, 0.0, 0.5, "self_play", cfg.max_score()
    )
    assert len(sel.ids) == 2
    assert sel.exhaustive


def test_train_finetune_and_checkpoint_roundtrip(tmp_path):
    cfg = small_config()
    tc = fb.TrainConfig()
    tc.num_threads = 1
    tc.num_games_per_thread = 1
    tc.batch_size = 8
    tc.replay_buffer_size = 32
    tc.min_buffer_episodes = 2
    tc.total_train_episodes = 30
    tc.eval_every = 15
    tc.eval_games = 8
    tc.lr = 1e-3
    tc.arch.hidden_dim = 16

    ckpt, log = fb.train_selfplay(cfg, tc, seed=5)
    assert ckpt.algorithm == "IQL"
    assert log[0]["episode"] == 0
    assert log[-1]["episode"] == 30

    path = str(tmp_path / "agent.fscb")
    fb.save_checkpoint(ckpt, path)
    back = fb.load_checkpoint(path)
    assert list(back.payload) == list(ckpt.payload)

    partner = fb.make_rule_checkpoint("certainty-rank", cfg)
    final, points = fb.finetune(ckpt, partner, tc, 15, seed=9)
    assert points[0]["episode"] == 0
    assert points[-1]["episode"] == 15
    assert list(final.payload) != list(ckpt.payload)

    stats = fb.evaluate_pair(ckpt, partner, 20, seed=4)
    assert len(stats.scores) == 20
    assert 0.0 <= stats.mean <= cfg.max_score()


def test_errors_are_typed():
    cfg = small_config()
    with pytest.raises(fb.FscConfigError):
        fb.make_rule_checkpoint("no-such-convention", cfg)
    with pytest.raises(fb.FscCheckpointError):
        fb.load_checkpoint("/nonexistent/agent.fscb")
    bad = fb.GameConfig()
    bad.hand_size = 100
    with pytest.raises(fb.FscConfigError):
        bad.validate()
    with pytest.raises(ValueError):
        fb.adaptation_regret([], 25.0, 1)


def test_benchmark_report_structure():
    cfg = small_config()
    ids = fb.known_conventions()[:3]
    ckpts = [fb.make_rule_checkpoint(c, cfg) for c in ids]
    matrix = fb.compute_crossplay(ids, ckpts, 10, seed=3)
    sel = fb.select_partners(
        matrix, 2, 0.0, 0.5, "self_play", cfg.max_score()
    )

    tc = fb.TrainConfig()
    tc.num_threads = 1
    tc.num_games_per_thread = 1
    tc.batch_size = 8
    tc.replay_buffer_size = 32
    tc.min_buffer_episodes = 2
    tc.eval_every = 10
    tc.eval_games = 8
    tc.lr = 1e-3
    tc.arch.hidden_dim = 16
    tc.total_train_episodes = 0
    learner, _ = fb.train_selfplay(cfg, tc, seed=1)

    report = fb.run_benchmark(
        learner,
        "learner",
        ids,
        ckpts,
        sel,
        matrix,
        tc,
        budget_episodes=20,
        seeds_per_pair=1,
        seed=5,
        aggregator="mean",
    )
    assert report["episodes"] == [0, 10, 20]
    assert len(report["score_curves"]) == 2
    assert len(report["aggregate_average_regret"]) == 3
    assert not math.isnan(report["pool_diversity"])
