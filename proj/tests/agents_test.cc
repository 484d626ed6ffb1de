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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include "doctest.h"
#include "fsc/engine.h"
#include "fsc/rng.h"

namespace fsc {
namespace {

GameConfig SmallConfig() {
  GameConfig c;
  c.num_colors = 2;
  c.num_ranks = 5;
  c.hand_size = 2;
  return c;
}

std::string TmpPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

Checkpoint NetworkCheckpoint(const GameConfig& cfg, uint64_t seed) {
  ArchitectureDescriptor arch;
  QNetwork net(arch, cfg, seed);
  Checkpoint ckpt;
  ckpt.algorithm = "IQL";
  ckpt.config = cfg;
  ckpt.arch = arch;
  ckpt.training_seed = seed;
  ckpt.payload = net.params();
  return ckpt;
}

// Advances a random game to some mid-game state and returns the current
// player's history window.
History RandomHistory(const GameConfig& cfg, uint64_t seed, int depth,
                      int history_len) {
  Rng rng(seed);
  GameState s = NewGame(cfg, seed);
  History h(history_len, cfg);
  for (int d = 0; d < depth; ++d) {
    std::vector<Action> legal = LegalActions(s);
    GameState next =
        Step(s, legal[rng.UniformInt(static_cast<uint32_t>(legal.size()))])
            .state;
    if (next.terminal) break;  // keep the state steppable
    s = std::move(next);
  }
  h.Push(Observe(s, s.current_player), std::nullopt);
  return h;
}

std::vector<char> ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

void WriteAll(const std::string& path, const std::vector<char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), bytes.size());
}

// Scores one full game between two policies with p0 at seat 0.
int PlayGame(const Policy& p0, const Policy& p1, const GameConfig& cfg,
             uint64_t seed) {
  GameState s = NewGame(cfg, seed);
  History h0(p0.HistoryLen(), cfg), h1(p1.HistoryLen(), cfg);
  std::optional<Action> prev0, prev1;
  while (!s.terminal) {
    int p = s.current_player;
    Observation obs = Observe(s, p);
    Action a;
    if (p == 0) {
      h0.Push(obs, prev0);
      a = p0.GreedyAct(h0);
      prev0 = a;
    } else {
      h1.Push(obs, prev1);
      a = p1.GreedyAct(h1);
      prev1 = a;
    }
    s = Step(s, a).state;
  }
  return s.RecordedScore();
}

TEST_CASE("four convention families ship and unknown ids are rejected") {
  std::vector<std::string> ids = KnownConventions();
  CHECK(ids.size() >= 4);
  GameConfig cfg = SmallConfig();
  for (const std::string& id : ids) {
    CHECK(MakeRuleAgent(id, RuleParams{}, cfg) != nullptr);
  }
  CHECK_THROWS_AS(MakeRuleAgent("no-such-convention", RuleParams{}, cfg),
                  ConfigError);
}

TEST_CASE("epsilon=1 explores uniformly over legal actions only") {
  GameConfig cfg = SmallConfig();
  auto policy = MakeRuleAgent("certainty-rank", RuleParams{}, cfg);
  Rng rng(10);
  History h = RandomHistory(cfg, 3, 4, 1);
  const std::vector<uint8_t>& legal = h.Latest().legal_action_mask;
  std::set<int> seen;
  for (int i = 0; i < 500; ++i) {
    Action a = policy->Act(h, 1.0, rng);
    int id = a.Flatten(cfg);
    CHECK(legal[id] == 1);
    seen.insert(id);
  }
  int num_legal = 0;
  for (uint8_t v : legal) num_legal += v;
  CHECK(static_cast<int>(seen.size()) == num_legal);
}

TEST_CASE("epsilon=0 is deterministic and never touches the rng") {
  GameConfig cfg = SmallConfig();
  auto policy = MakeRuleAgent("positional", RuleParams{}, cfg);
  History h = RandomHistory(cfg, 8, 3, 1);
  Rng r1(1), r2(999);
  Action a1 = policy->Act(h, 0.0, r1);
  Action a2 = policy->Act(h, 0.0, r2);
  CHECK(a1 == a2);
  CHECK(r1.state() == Rng(1).state());  // untouched
}

TEST_CASE("all policies emit only legal actions across many states") {
  GameConfig cfg = SmallConfig();
  std::vector<std::shared_ptr<Policy>> policies;
  for (const std::string& id : KnownConventions()) {
    policies.push_back(MakeRuleAgent(id, RuleParams{}, cfg));
  }
  Checkpoint net_ckpt = NetworkCheckpoint(cfg, 77);
  policies.push_back(MakePolicy(net_ckpt));

  for (const auto& policy : policies) {
    for (uint64_t seed = 0; seed < 40; ++seed) {
      for (int depth : {0, 2, 5, 9}) {
        History h = RandomHistory(cfg, seed, depth, policy->HistoryLen());
        Action a = policy->GreedyAct(h);
        CHECK(h.Latest().legal_action_mask[a.Flatten(cfg)] == 1);
      }
    }
  }
}

TEST_CASE("rule-agent self-play traces are reproducible") {
  GameConfig cfg = SmallConfig();
  auto p = MakeRuleAgent("certainty-rank", RuleParams{}, cfg);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(PlayGame(*p, *p, cfg, seed) == PlayGame(*p, *p, cfg, seed));
  }
}

TEST_CASE("other-play wrapper with identity permutation matches inner") {
  GameConfig cfg = SmallConfig();
  auto inner = MakeRuleAgent("certainty-color", RuleParams{}, cfg);
  OtherPlayWrapper wrapped(inner, cfg);  // identity by default
  for (uint64_t seed = 0; seed < 30; ++seed) {
    History h = RandomHistory(cfg, seed, 4, 1);
    CHECK(wrapped.GreedyAct(h) == inner->GreedyAct(h));
  }
}

TEST_CASE("other-play wrapper plays legally under any permutation") {
  GameConfig cfg = SmallConfig();
  auto inner = MakeRuleAgent("certainty-rank", RuleParams{}, cfg);
  OtherPlayWrapper wrapped(inner, cfg);
  wrapped.SetPermutation({1, 0});
  for (uint64_t seed = 0; seed < 30; ++seed) {
    History h = RandomHistory(cfg, seed, 5, 1);
    Action a = wrapped.GreedyAct(h);
    CHECK(h.Latest().legal_action_mask[a.Flatten(cfg)] == 1);
  }
  CHECK(wrapped.AlgorithmTag() == inner->AlgorithmTag() + "+OP");
}

TEST_CASE("checkpoint round-trip is lossless") {
  GameConfig cfg = SmallConfig();
  Checkpoint ckpt = NetworkCheckpoint(cfg, 123);
  ckpt.train_steps = 999;
  ckpt.selfplay_score = 7.5;
  std::string path = TmpPath("fsc_ckpt_roundtrip.fscb");
  SaveCheckpoint(ckpt, path);
  Checkpoint back = LoadCheckpoint(path);
  CHECK(back.payload == ckpt.payload);  // bitwise equal parameters
  CHECK(back.algorithm == "IQL");
  CHECK(back.config == cfg);
  CHECK(back.arch == ckpt.arch);
  CHECK(back.train_steps == 999);
  CHECK(back.selfplay_score == 7.5);

  auto a = MakePolicy(ckpt);
  auto b = MakePolicy(back);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    History h = RandomHistory(cfg, seed, seed % 7, a->HistoryLen());
    CHECK(a->GreedyAct(h) == b->GreedyAct(h));
  }
  std::remove(path.c_str());
}

TEST_CASE("rule checkpoints round-trip through MakePolicy") {
  GameConfig cfg = SmallConfig();
  Checkpoint ckpt;
  ckpt.algorithm = "RULE";
  ckpt.config = cfg;
  ckpt.convention_id = "reckless";
  ckpt.rule_params.play_threshold = 0.8;
  std::string path = TmpPath("fsc_ckpt_rule.fscb");
  SaveCheckpoint(ckpt, path);
  Checkpoint back = LoadCheckpoint(path);
  CHECK(back.convention_id == "reckless");
  CHECK(back.rule_params.play_threshold == 0.8);
  CHECK(MakePolicy(back)->AlgorithmTag() == MakePolicy(ckpt)->AlgorithmTag());
  std::remove(path.c_str());
}

TEST_CASE("corrupted checkpoints raise typed errors") {
  GameConfig cfg = SmallConfig();
  Checkpoint ckpt = NetworkCheckpoint(cfg, 5);
  std::string path = TmpPath("fsc_ckpt_corrupt.fscb");
  SaveCheckpoint(ckpt, path);
  std::vector<char> good = ReadAll(path);

  auto kind_of = [&](const std::vector<char>& bytes) {
    WriteAll(path, bytes);
    try {
      LoadCheckpoint(path);
    } catch (const CheckpointError& e) {
      return e.kind();
    }
    FAIL("expected a CheckpointError");
    return CheckpointErrorKind::kFormat;
  };

  std::vector<char> bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(kind_of(bad_magic) == CheckpointErrorKind::kFormat);

  std::vector<char> bad_version = good;
  bad_version[4] = 99;  // little-endian u32 format version
  CHECK(kind_of(bad_version) == CheckpointErrorKind::kVersion);

  std::vector<char> truncated(good.begin(), good.end() - 3);
  CHECK(kind_of(truncated) == CheckpointErrorKind::kPayloadLength);

  std::vector<char> trailing = good;
  trailing.insert(trailing.end(), {0, 0, 0, 0});
  CHECK(kind_of(trailing) == CheckpointErrorKind::kPayloadLength);

  // Flip one digit of the embedded config hash.
  std::string text(good.begin(), good.end());
  size_t pos = text.find("\"config_hash\":");
  REQUIRE(pos != std::string::npos);
  size_t digit = pos + 14;
  text[digit] = text[digit] == '1' ? '2' : '1';
  CHECK(kind_of(std::vector<char>(text.begin(), text.end())) ==
        CheckpointErrorKind::kConfigHash);

  std::remove(path.c_str());
}

TEST_CASE("MakePolicy rejects payload/architecture mismatches") {
  GameConfig cfg = SmallConfig();
  Checkpoint ckpt = NetworkCheckpoint(cfg, 5);
  ckpt.payload.pop_back();
  CHECK_THROWS_AS(MakePolicy(ckpt), CheckpointError);
}

}  // namespace
}  // namespace fsc
