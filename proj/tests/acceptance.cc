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
//
// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the binary exits nonzero when any criterion fails. Pass the path of
// the `fsc` CLI binary as argv[1] (used by the end-to-end criteria).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fsc/json_io.h"
#include "fsc/metrics.h"
#include "fsc/protocol.h"
#include "fsc/report.h"
#include "fsc/rng.h"
#include "fsc/runspec.h"
#include "fsc/training.h"

namespace fsc {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string g_cli_path;

double Now() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

bool Close(double a, double b, double rel = 1e-12) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

GameConfig SmallConfig() {
  GameConfig c;
  c.num_colors = 2;
  c.num_ranks = 5;
  c.hand_size = 2;
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 1: metric oracles.

double OracleRegretTotal(const std::vector<double>& trace, double c_star,
                         int T) {
  double sum = 0.0;
  for (int t = 0; t < T; ++t) sum += trace[t];
  return static_cast<double>(T) * c_star - sum;
}

double OracleDiversity(const std::vector<std::vector<double>>& m,
                       double max_score) {
  int n = static_cast<int>(m.size());
  double sum = 0.0;
  int cnt = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) {
        sum += m[i][j];
        ++cnt;
      }
    }
  }
  return 1.0 - (sum / cnt) / max_score;
}

double OracleIqm(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  int n = static_cast<int>(v.size());
  int trim = n / 4;
  double sum = 0.0;
  for (int i = trim; i < n - trim; ++i) sum += v[i];
  return sum / (n - 2 * trim);
}

bool Criterion1() {
  double t0 = Now();
  Rng rng(1001);
  bool ok = true;

  // Frozen examples.
  {
    RegretResult r = AdaptationRegret({10, 15, 20, 25}, 25.0, 4);
    ok = ok && r.total == 30.0 && r.average == 7.5;
    RegretResult z = AdaptationRegret(std::vector<double>(10, 0.0), 25.0, 10);
    ok = ok && z.total == 250.0 && z.average == 25.0;
    ok = ok && AdaptationRegret({25.0}, 25.0, 1).total == 0.0;

    CrossPlayMatrix m;
    m.ids = {"a", "b", "c"};
    m.mean = {{9, 10, 20}, {15, 9, 5}, {25, 0, 9}};
    ok = ok && Close(Diversity(m, 25.0), 0.5);

    StrengthResult s = Strength({24, 23, 22, 24, 23}, 25.0);
    ok = ok && Close(s.pool, 0.928);

    ok = ok && Close(Aggregate({1, 2, 3, 4, 5, 6, 7, 8}, Aggregator::kIqm),
                     4.5);
    ok = ok && Close(Aggregate({0, 2, 3, 4, 100}, Aggregator::kIqm), 3.0);

    std::vector<double> scores(200, 5.0);
    for (int i = 0; i < 37; ++i) scores[i] = 10.0;
    ok = ok && PerfectRate(scores, 10.0) == 0.185;
  }

  // 1000 randomized inputs per metric against brute-force oracles.
  for (int it = 0; it < 1000 && ok; ++it) {
    int len = 1 + static_cast<int>(rng.UniformInt(40));
    std::vector<double> trace(len);
    for (double& v : trace) v = rng.Uniform() * 25.0;
    double c_star = rng.Uniform() * 25.0;
    int T = 1 + static_cast<int>(rng.UniformInt(len));
    RegretResult r = AdaptationRegret(trace, c_star, T);
    double total = OracleRegretTotal(trace, c_star, T);
    ok = ok && Close(r.total, total) && Close(r.average, total / T);

    int n = 2 + static_cast<int>(rng.UniformInt(6));
    CrossPlayMatrix m;
    m.mean.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      m.ids.push_back(std::to_string(i));
      for (int j = 0; j < n; ++j) m.mean[i][j] = rng.Uniform() * 25.0;
    }
    ok = ok && Close(Diversity(m, 25.0), OracleDiversity(m.mean, 25.0));

    std::vector<double> cs(n);
    for (double& v : cs) v = rng.Uniform() * 25.0;
    StrengthResult s = Strength(cs, 25.0);
    double mean = std::accumulate(cs.begin(), cs.end(), 0.0) / n / 25.0;
    ok = ok && Close(s.pool, mean);
    for (int i = 0; i < n; ++i) {
      ok = ok && Close(s.per_partner[i], cs[i] / 25.0);
    }

    int vn = 4 + static_cast<int>(rng.UniformInt(30));
    std::vector<double> vals(vn);
    for (double& v : vals) v = rng.Uniform() * 100.0 - 50.0;
    ok = ok && Close(Aggregate(vals, Aggregator::kIqm), OracleIqm(vals));

    int hits = 0;
    std::vector<double> sc(vn);
    for (double& v : sc) {
      if (rng.Uniform() < 0.3) {
        v = 10.0;
        ++hits;
      } else {
        v = rng.Uniform() * 9.0;
      }
    }
    ok = ok && Close(PerfectRate(sc, 10.0),
                     static_cast<double>(hits) / vn);
  }

  double dt = Now() - t0;
  ok = ok && dt < 60.0;
  std::printf("%s - 1: metric oracle suite (1000 random inputs, %.1fs)\n",
              ok ? "PASS" : "FAIL", dt);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 2: upper-bound identity.

bool Criterion2() {
  Rng rng(2002);
  bool ok = true;
  double max_score = 25.0;
  for (int it = 0; it < 100 && ok; ++it) {
    int len = 1 + static_cast<int>(rng.UniformInt(60));
    std::vector<double> trace(len);
    for (double& v : trace) v = rng.Uniform() * max_score;
    double c_sp = rng.Uniform() * max_score;
    int T = 1 + static_cast<int>(rng.UniformInt(len));
    RegretResult rm = AdaptationRegret(trace, max_score, T);
    RegretResult rs = AdaptationRegret(trace, c_sp, T);
    ok = ok && Close(rm.total - rs.total, T * (max_score - c_sp));
    // The average-regret curves differ by the constant gap at every T.
    for (int t = 1; t <= T; ++t) {
      double am = AdaptationRegret(trace, max_score, t).average;
      double as = AdaptationRegret(trace, c_sp, t).average;
      ok = ok && Close(am - as, max_score - c_sp);
    }
  }
  std::printf("%s - 2: upper-bound identity on 100 random traces\n",
              ok ? "PASS" : "FAIL");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 3: engine invariants.

bool CheckConservation(const GameState& s) {
  const GameConfig& cfg = s.config;
  for (int c = 0; c < cfg.num_colors; ++c) {
    for (int r = 0; r < cfg.num_ranks; ++r) {
      int count = s.discard_counts[c * cfg.num_ranks + r];
      if (s.fireworks[c] > r) ++count;
      for (const Card& card : s.deck) {
        if (card.color == c && card.rank == r) ++count;
      }
      for (const auto& hand : s.hands) {
        for (const Card& card : hand) {
          if (card.color == c && card.rank == r) ++count;
        }
      }
      if (count != cfg.rank_counts[r]) return false;
    }
  }
  return true;
}

bool Criterion3() {
  double t0 = Now();
  bool ok = true;
  std::vector<GameConfig> configs{GameConfig{}, SmallConfig()};
  for (const GameConfig& cfg : configs) {
    std::vector<int> ident(cfg.num_colors);
    std::iota(ident.begin(), ident.end(), 0);
    for (uint64_t seed = 0; seed < 5000 && ok; ++seed) {
      Rng rng(DeriveSeed(3003, 1, seed));
      std::vector<int> perm = ident;
      for (int i = cfg.num_colors - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng.UniformInt(i + 1)]);
      }
      GameState s = NewGame(cfg, seed);
      GameState sp = ApplyColorPermutation(s, perm);
      double cum = 0.0;
      while (!s.terminal) {
        std::vector<Action> legal = LegalActions(s);
        Action a = legal[rng.UniformInt(static_cast<uint32_t>(legal.size()))];
        StepResult res = Step(s, a);
        StepResult resp = Step(sp, ApplyColorPermutation(a, cfg, perm));
        ok = ok && resp.reward == res.reward &&
             resp.state == ApplyColorPermutation(res.state, perm);
        s = res.state;
        sp = resp.state;
        cum += res.reward;
        ok = ok && CheckConservation(s) && s.Score() >= 0 &&
             s.Score() <= cfg.MaxScore();
        if (!ok) break;
      }
      ok = ok && cum == static_cast<double>(s.RecordedScore());
    }
  }
  double dt = Now() - t0;
  ok = ok && dt < 300.0;
  std::printf(
      "%s - 3: engine invariants over 10000 random games (%.1fs)\n",
      ok ? "PASS" : "FAIL", dt);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 4: gradient check.

bool Criterion4() {
  GameConfig cfg = SmallConfig();
  Rng rng(4004);
  bool ok = true;
  for (const ArchitectureDescriptor& arch : EnumerateArchitectures()) {
    QNetwork net(arch, cfg, 44);
    std::vector<float> input(net.input_size());
    for (float& v : input) v = static_cast<float>(rng.Uniform() * 2.0 - 1.0);
    int action = static_cast<int>(rng.UniformInt(net.num_actions()));
    double y = rng.Uniform() * 10.0 - 5.0;

    QNetwork::Cache cache;
    std::vector<double> q = net.Forward(input, &cache);
    std::vector<double> dq(net.num_actions(), 0.0);
    dq[action] = q[action] - y;
    std::vector<double> grad(net.num_params(), 0.0);
    net.Backward(cache, dq, &grad);

    for (int check = 0; check < 100 && ok; ++check) {
      int k = static_cast<int>(rng.UniformInt(net.num_params()));
      auto loss_at = [&](float p) {
        float saved = net.mutable_params()[k];
        net.mutable_params()[k] = p;
        double qq = net.Forward(input)[action];
        net.mutable_params()[k] = saved;
        return 0.5 * (qq - y) * (qq - y);
      };
      float x = net.params()[k];
      float h = std::max(1e-4f, std::abs(x) * 1e-3f);
      float hi = x + h, lo = x - h;
      double fd = (loss_at(hi) - loss_at(lo)) /
                  (static_cast<double>(hi) - static_cast<double>(lo));
      double scale = std::max({1.0, std::abs(fd), std::abs(grad[k])});
      ok = ok && std::abs(grad[k] - fd) / scale < 1e-4;
    }
  }
  std::printf(
      "%s - 4: TD-loss gradients vs finite differences, all architectures\n",
      ok ? "PASS" : "FAIL");
  return ok;
}

// ---------------------------------------------------------------------------
// Criteria 5-7: learning, cross-play gap, adaptation. These share a set of
// independently seeded self-play agents on the 2x5 hand-2 config.

struct TrainedAgents {
  std::vector<Checkpoint> agents;
  double train_seconds = 0.0;
};

TrainConfig DeskConfig() {
  TrainConfig t;  // desk-scale defaults
  // Single worker thread with the same number of parallel game slots:
  // deterministic, and avoids actor/learner contention on small CPUs.
  t.num_threads = 1;
  t.num_games_per_thread = 8;
  return t;
}

TrainedAgents TrainAgents(int count) {
  TrainedAgents out;
  GameConfig cfg = SmallConfig();
  TrainConfig t = DeskConfig();
  double t0 = Now();
  for (int i = 0; i < count; ++i) {
    TrainResult res = RunSelfPlayTraining(cfg, t, 100 + i);
    out.agents.push_back(std::move(res.checkpoint));
  }
  out.train_seconds = Now() - t0;
  return out;
}

bool Criterion5(const TrainedAgents& trained) {
  GameConfig cfg = SmallConfig();
  double per_agent = trained.train_seconds / trained.agents.size();
  auto p = MakePolicy(trained.agents[0]);
  EvalStats st = EvaluatePair(*p, *p, cfg, 500, 5005);
  // Regression bound frozen from the first verified run on a single-core
  // runner: 6.73/10 at the shipped defaults. 0.65 x max keeps seed margin
  // while staying above every rule convention's self-play (best: 6.33) and
  // far above the random baseline (~0.4).
  const double bound = 0.65 * cfg.MaxScore();
  bool ok = st.mean >= bound && per_agent < 1800.0;
  std::printf(
      "%s - 5: desk IQL self-play score %.2f/%d (>= %.1f) in %.0fs/agent\n",
      ok ? "PASS" : "FAIL", st.mean, cfg.MaxScore(), bound, per_agent);
  return ok;
}

bool Criterion6(const TrainedAgents& trained) {
  GameConfig cfg = SmallConfig();
  int n = static_cast<int>(trained.agents.size());
  std::vector<std::shared_ptr<Policy>> pols;
  std::vector<EvalStats> sp(n);
  for (int i = 0; i < n; ++i) {
    pols.push_back(MakePolicy(trained.agents[i]));
    sp[i] = EvaluatePair(*pols[i], *pols[i], cfg, 500,
                         DeriveSeed(6006, 1, i));
  }
  double gap_sum = 0.0, var_sum = 0.0;
  int pairs = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      EvalStats xp = EvaluatePair(*pols[i], *pols[j], cfg, 500,
                                  DeriveSeed(6006, 2, i * n + j));
      const EvalStats& weaker = sp[i].mean < sp[j].mean ? sp[i] : sp[j];
      gap_sum += weaker.mean - xp.mean;
      var_sum += weaker.stderr_ * weaker.stderr_ + xp.stderr_ * xp.stderr_;
      ++pairs;
    }
  }
  double gap = gap_sum / pairs;
  double se = std::sqrt(var_sum) / pairs;
  bool ok = pairs >= 5 && gap > 3.0 * se;
  std::printf(
      "%s - 6: cross-play gap %.2f points over %d pairs (3 SE = %.2f)\n",
      ok ? "PASS" : "FAIL", gap, pairs, 3.0 * se);
  return ok;
}

bool Criterion7(const TrainedAgents& trained) {
  GameConfig cfg = SmallConfig();
  Checkpoint partner;
  partner.algorithm = "RULE";
  partner.config = cfg;
  partner.convention_id = "certainty-rank";

  TrainConfig t = DeskConfig();
  t.eval_every = 250;
  t.eval_games = 200;
  const int64_t budget = 3000;

  std::vector<std::vector<double>> traces;
  double zero_shot = 0.0, final_score = 0.0;
  std::vector<int64_t> episodes;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    FinetuneResult res =
        Finetune(trained.agents[0], partner, t, budget, 700 + seed);
    std::vector<double> scores;
    episodes.clear();
    for (const EvalPoint& pt : res.trace.points) {
      episodes.push_back(pt.episode);
      scores.push_back(pt.score);
    }
    zero_shot += scores.front() / 5.0;
    final_score += scores.back() / 5.0;
    traces.push_back(std::move(scores));
  }

  // Seed-averaged average-regret curve, lightly smoothed, must not rise.
  std::vector<double> mean_scores(traces[0].size(), 0.0);
  for (const auto& tr : traces) {
    for (size_t i = 0; i < tr.size(); ++i) mean_scores[i] += tr[i] / 5.0;
  }
  std::vector<double> total, average;
  FillRegretCurves(episodes, mean_scores, cfg.MaxScore(), &total, &average);
  std::vector<double> smooth(average.size(), 0.0);
  for (size_t i = 0; i < average.size(); ++i) {
    double s = 0.0;
    int c = 0;
    for (size_t j = (i == 0 ? 0 : i - 1);
         j < average.size() && j <= i + 1; ++j) {
      s += average[j];
      ++c;
    }
    smooth[i] = s / c;
  }
  bool monotone = true;
  for (size_t i = 1; i < smooth.size(); ++i) {
    if (smooth[i] > smooth[i - 1] + 1e-9) monotone = false;
  }

  double gain = final_score - zero_shot;
  bool ok = gain >= 2.0 && monotone;
  std::printf(
      "%s - 7: adaptation gain %.2f points over 5 seeds (zero-shot %.2f -> "
      "%.2f), smoothed average regret nonincreasing: %s\n",
      ok ? "PASS" : "FAIL", gain, zero_shot, final_score,
      monotone ? "yes" : "no");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 8: VDN sum property and IQL gradient independence.

bool Criterion8() {
  Rng rng(8008);
  bool ok = true;
  for (int it = 0; it < 100; ++it) {
    double a = rng.Uniform() * 20.0 - 10.0;
    double b = rng.Uniform() * 20.0 - 10.0;
    ok = ok && JointQVdn(std::vector<double>{a, b}) == a + b;  // exact
  }

  GameConfig cfg = SmallConfig();
  TrainConfig t;
  t.arch.hidden_dim = 32;
  t.vdn = false;
  Learner learner(t.arch, cfg, t, 88);
  const QNetwork& net = learner.online();

  // Two synthetic episodes identical except for the partner's turn; with
  // vdn=false the learner-turn gradient must be bitwise identical, i.e.
  // cross-agent gradients are exactly zero.
  auto make_ep = [&](float partner_shift) {
    Episode ep;
    Rng r(99);
    for (int turn = 0; turn < 4; ++turn) {
      TurnRecord rec;
      rec.player = static_cast<int8_t>(turn % 2);
      rec.action = static_cast<int>(r.UniformInt(net.num_actions()));
      rec.reward = r.Uniform();
      rec.input.resize(net.input_size());
      for (float& v : rec.input) v = static_cast<float>(r.Uniform());
      if (turn == 1) {
        for (float& v : rec.input) v += partner_shift;
      }
      rec.legal.assign(net.num_actions(), 1);
      ep.turns.push_back(std::move(rec));
    }
    return ep;
  };
  auto grad_for = [&](const Episode& ep) {
    Transition tr = ReplayBuffer::MakeTransition(ep, 0, false);
    QNetwork::Cache cache;
    std::vector<double> q = net.Forward(tr.turn->input, &cache);
    std::vector<double> q_on = net.Forward(tr.next->input);
    std::vector<double> q_tg = learner.target().Forward(tr.next->input);
    double y = TdTarget(tr.reward, tr.terminal, t.gamma, q_on, q_tg,
                        tr.next->legal);
    std::vector<double> dq(net.num_actions(), 0.0);
    dq[tr.turn->action] = q[tr.turn->action] - y;
    std::vector<double> grad(net.num_params(), 0.0);
    net.Backward(cache, dq, &grad);
    return grad;
  };
  ok = ok && grad_for(make_ep(0.0f)) == grad_for(make_ep(5.0f));

  std::printf(
      "%s - 8: VDN joint Q is an exact sum; IQL cross-agent gradients are "
      "zero\n",
      ok ? "PASS" : "FAIL");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 9: partner-selection oracle.

std::vector<std::string> BruteForceSelect(const CrossPlayMatrix& m, int k,
                                          double strength_min, double target,
                                          double max_score) {
  int n = m.size();
  std::vector<int> feasible;
  for (int i = 0; i < n; ++i) {
    if (m.mean[i][i] / max_score >= strength_min - 1e-12) feasible.push_back(i);
  }
  std::sort(feasible.begin(), feasible.end(),
            [&](int a, int b) { return m.ids[a] < m.ids[b]; });
  int fn = static_cast<int>(feasible.size());
  std::vector<int> best, pick(k);
  double best_err = 0.0;
  std::function<void(int, int)> recurse = [&](int pos, int start) {
    if (pos == k) {
      double sum = 0.0;
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (a != b) sum += m.mean[feasible[pick[a]]][feasible[pick[b]]];
        }
      }
      double d = 1.0 - sum / (k * (k - 1)) / max_score;
      double e = std::abs(d - target);
      if (best.empty() || e < best_err) {
        best = pick;
        best_err = e;
      }
      return;
    }
    for (int i = start; i < fn; ++i) {
      pick[pos] = i;
      recurse(pos + 1, i + 1);
    }
  };
  recurse(0, 0);
  std::vector<std::string> ids;
  for (int i : best) ids.push_back(m.ids[feasible[i]]);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool Criterion9() {
  Rng rng(9009);
  bool ok = true;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    int n = 8;
    CrossPlayMatrix m;
    m.mean.assign(n, std::vector<double>(n, 0.0));
    m.stderr_.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      m.ids.push_back("a" + std::to_string(i));
      m.mean[i][i] = 10.0 + 15.0 * rng.Uniform();
      for (int j = 0; j < i; ++j) {
        m.mean[i][j] = m.mean[j][i] = 25.0 * rng.Uniform();
      }
    }
    double target = rng.Uniform();
    PartnerSelection ex = SelectPartners(m, 5, 0.0, target,
                                         UpperBoundMode::kSelfPlay, 25.0);
    ok = ok && ex.exhaustive &&
         ex.ids == BruteForceSelect(m, 5, 0.0, target, 25.0);

    PartnerSelection gr =
        SelectPartners(m, 5, 0.0, target, UpperBoundMode::kSelfPlay, 25.0,
                       std::nullopt, /*force_greedy=*/true);
    ok = ok && std::abs(gr.diversity - target) <=
                   std::abs(ex.diversity - target) + 0.05;
  }
  std::printf(
      "%s - 9: exhaustive selection matches brute force on 50 matrices; "
      "greedy within 0.05 D\n",
      ok ? "PASS" : "FAIL");
  return ok;
}

// ---------------------------------------------------------------------------
// Criteria 10-11: CLI end-to-end runs.

int RunCli(const std::string& args) {
  std::string cmd = g_cli_path + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return rc;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes a small learner checkpoint plus a rule-agent pool and returns the
// shared spec skeleton.
json MakeCliFixture(const fs::path& dir, const Checkpoint& learner) {
  fs::create_directories(dir);
  GameConfig cfg = SmallConfig();
  SaveCheckpoint(learner, (dir / "learner.fscb").string());
  json pool = json::array();
  for (const std::string& id :
       {std::string("certainty-rank"), std::string("certainty-color"),
        std::string("positional")}) {
    Checkpoint c;
    c.algorithm = "RULE";
    c.config = cfg;
    c.convention_id = id;
    std::string path = (dir / (id + ".fscb")).string();
    SaveCheckpoint(c, path);
    pool.push_back(path);
  }
  json spec = {
      {"seed", 21},
      {"game",
       {{"num_colors", 2}, {"num_ranks", 5}, {"hand_size", 2}}},
      {"crossplay", {{"games_per_pair", 50}}},
      {"select", {{"k", 2}, {"diversity_target", 0.5}}},
      {"paths",
       {{"learner", (dir / "learner.fscb").string()}, {"pool", pool}}}};
  return spec;
}

bool Criterion10() {
  fs::path dir = fs::temp_directory_path() / "fsc_accept_adapt";
  std::error_code ec;
  fs::remove_all(dir, ec);

  GameConfig cfg = SmallConfig();
  ArchitectureDescriptor arch;
  arch.hidden_dim = 32;
  QNetwork net(arch, cfg, 10);
  Checkpoint learner;
  learner.algorithm = "IQL";
  learner.config = cfg;
  learner.arch = arch;
  learner.payload = net.params();

  json spec = MakeCliFixture(dir, learner);
  spec["output_dir"] = (dir / "out").string();
  spec["train"] = {{"num_threads", 1},      {"num_games_per_thread", 1},
                   {"batch_size", 8},       {"replay_buffer_size", 32},
                   {"min_buffer_episodes", 2}, {"eval_every", 10},
                   {"eval_games", 8},       {"lr", 1e-3},
                   {"arch", {{"hidden_dim", 32}}}};
  spec["adapt"] = {{"budget_episodes", 20}, {"seeds_per_pair", 1}};
  std::string spec_path = (dir / "spec.json").string();
  std::ofstream(spec_path) << spec.dump(2);

  bool ok = RunCli("adapt --spec " + spec_path) == 0;
  std::string first = Slurp((dir / "out" / "report.json").string());
  ok = ok && !first.empty();
  ok = ok && RunCli("adapt --spec " + spec_path) == 0;
  std::string second = Slurp((dir / "out" / "report.json").string());
  ok = ok && first == second;  // bit-identical report JSON

  std::printf(
      "%s - 10: cmd_adapt is bit-identical across two single-worker runs\n",
      ok ? "PASS" : "FAIL");
  fs::remove_all(dir, ec);
  return ok;
}

bool Criterion11(const TrainedAgents& trained) {
  double t0 = Now();
  fs::path dir = fs::temp_directory_path() / "fsc_accept_sweep";
  std::error_code ec;
  fs::remove_all(dir, ec);

  json spec = MakeCliFixture(dir, trained.agents[0]);
  spec["output_dir"] = (dir / "out").string();
  spec["num_workers"] = 3;
  TrainConfig base = DeskConfig();
  json train = base;
  train["eval_every"] = 200;
  train["eval_games"] = 100;
  spec["train"] = train;
  spec["adapt"] = {{"budget_episodes", 800}, {"seeds_per_pair", 1}};
  spec["sweep"] = {{"lr", {0.0, 6.25e-5, 6.25e-4}}};
  std::string spec_path = (dir / "spec.json").string();
  std::ofstream(spec_path) << spec.dump(2);

  bool ok = RunCli("sweep --spec " + spec_path) == 0;
  double zero_lr_regret = 0.0, best_other = 1e18;
  if (ok) {
    json out = json::parse(Slurp((dir / "out" / "sweep.json").string()));
    ok = out.at("points").size() == 3;
    for (const json& p : out.at("points")) {
      ok = ok && p.at("hp_name") == "lr";
      double reg = p.at("final_average_regret").get<double>();
      const json& rep = p.at("report");
      ok = ok && rep.at("aggregate_average_regret").size() ==
                     rep.at("episodes").size();
      ok = ok && !rep.at("aggregate_perfect_rate").empty();
      if (p.at("hp_value") == "0") {
        zero_lr_regret = reg;
      } else {
        best_other = std::min(best_other, reg);
      }
    }
    ok = ok && zero_lr_regret > best_other;  // zero step size is worst
    ok = ok && fs::exists(dir / "out" / "sweep_lr_average_regret.svg") &&
         fs::exists(dir / "out" / "sweep_lr_perfect_rate.svg") &&
         fs::exists(dir / "out" / "sweep_summary.csv");
  }
  double dt = Now() - t0;
  ok = ok && dt < 7200.0;
  std::printf(
      "%s - 11: lr sweep emits per-value series; lr=0 regret %.2f vs best "
      "%.2f (%.0fs)\n",
      ok ? "PASS" : "FAIL", zero_lr_regret, best_other, dt);
  fs::remove_all(dir, ec);
  return ok;
}

}  // namespace
}  // namespace fsc

int main(int argc, char** argv) {
  using namespace fsc;
  if (argc > 1) {
    g_cli_path = argv[1];
  } else {
    g_cli_path = "./tools/fsc";  // build-tree default
  }

  bool all = true;
  all &= Criterion1();
  all &= Criterion2();
  all &= Criterion3();
  all &= Criterion4();
  all &= Criterion8();
  all &= Criterion9();

  TrainedAgents trained = TrainAgents(5);
  all &= Criterion5(trained);
  all &= Criterion6(trained);
  all &= Criterion7(trained);
  all &= Criterion10();
  all &= Criterion11(trained);

  std::printf("%s\n", all ? "ALL ACCEPTANCE CRITERIA PASSED"
                          : "ACCEPTANCE FAILURES PRESENT");
  return all ? 0 : 1;
}
