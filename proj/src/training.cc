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

#include "fsc/training.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <thread>

namespace fsc {

uint64_t DeriveSeed(uint64_t base, uint64_t stream, uint64_t index) {
  Rng r1(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  Rng r2(r1.NextUint64() ^ (0xbf58476d1ce4e5b9ULL * (index + 1)));
  return r2.NextUint64();
}

void TrainConfig::Validate() const {
  if (lr < 0.0) throw ConfigError("lr must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (replay_buffer_size < 1) throw ConfigError("replay_buffer_size >= 1");
  if (num_threads < 1 || num_games_per_thread < 1) {
    throw ConfigError("num_threads x num_games_per_thread must be >= 1");
  }
  if (gamma < 0.0 || gamma > 1.0) throw ConfigError("gamma in [0,1]");
  if (target_update_period < 1) throw ConfigError("target_update_period >= 1");
  if (total_train_episodes < 0) throw ConfigError("total_train_episodes >= 0");
  if (eval_every < 1) throw ConfigError("eval_every >= 1");
  if (eval_games < 1) throw ConfigError("eval_games >= 1");
  if (updates_per_episode < 0) throw ConfigError("updates_per_episode >= 0");
  for (double e : eps_schedule) {
    if (e < 0.0 || e > 1.0) throw ConfigError("eps values in [0,1]");
  }
}

std::string TrainConfig::AlgorithmTag() const {
  std::string tag = vdn ? "VDN" : "IQL";
  if (other_play) tag += "+OP";
  return tag;
}

double TrainConfig::EpsForSlot(int slot) const {
  int n = NumParallelGames();
  if (!eps_schedule.empty()) {
    return eps_schedule[slot % eps_schedule.size()];
  }
  if (n == 1) return 0.25;
  double frac = static_cast<double>(slot % n) / static_cast<double>(n - 1);
  return std::pow(0.25, 1.0 + 3.5 * frac);
}

// --- Replay buffer ----------------------------------------------------------

ReplayBuffer::ReplayBuffer(int capacity_episodes, bool vdn_rounds,
                           bool prioritized, double alpha)
    : capacity_(capacity_episodes),
      vdn_rounds_(vdn_rounds),
      prioritized_(prioritized),
      alpha_(alpha) {
  if (capacity_ < 1) throw ConfigError("buffer capacity must be >= 1");
  ring_.resize(capacity_);
  priorities_.resize(capacity_);
  episode_weight_.assign(capacity_, 0.0);
}

int ReplayBuffer::UnitsInEpisode(const Episode& ep, bool vdn_rounds) {
  int t = static_cast<int>(ep.turns.size());
  if (ep.single_player || !vdn_rounds) return t;
  return (t + 1) / 2;
}

Transition ReplayBuffer::MakeTransition(const Episode& ep, int unit,
                                        bool vdn_rounds) {
  Transition tr;
  int t = static_cast<int>(ep.turns.size());
  auto at = [&](int i) -> const TurnRecord* {
    return i < t ? &ep.turns[i] : nullptr;
  };
  if (ep.single_player) {
    tr.turn = at(unit);
    tr.next = at(unit + 1);
    tr.reward = ep.turns[unit].reward;
    tr.terminal = tr.next == nullptr;
  } else if (!vdn_rounds) {
    // Same-player chaining: players alternate strictly, so the actor's
    // next decision point is two turns later. The shared reward of the
    // intervening partner turn belongs to this transition.
    tr.turn = at(unit);
    tr.next = at(unit + 2);
    tr.reward = ep.turns[unit].reward;
    if (at(unit + 1)) tr.reward += ep.turns[unit + 1].reward;
    tr.terminal = tr.next == nullptr;
  } else {
    int m = 2 * unit;
    tr.turn = at(m);
    tr.partner_turn = at(m + 1);
    tr.next = at(m + 2);
    tr.partner_next = at(m + 3);
    tr.reward = ep.turns[m].reward;
    if (tr.partner_turn) tr.reward += tr.partner_turn->reward;
    tr.terminal = tr.next == nullptr;
  }
  return tr;
}

void ReplayBuffer::Append(Episode ep) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  int slot = static_cast<int>(next_slot_ % capacity_);
  int units = UnitsInEpisode(ep, vdn_rounds_);
  workers_.insert(ep.worker_id);
  ring_[slot] = std::move(ep);
  priorities_[slot].assign(units, max_priority_pow_);
  episode_weight_[slot] = max_priority_pow_ * units;
  next_slot_ += 1;
  stored_ = std::min<int64_t>(stored_ + 1, capacity_);
}

int64_t ReplayBuffer::NumEpisodes() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return stored_;
}

int64_t ReplayBuffer::NumUnits() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  int64_t n = 0;
  for (int64_t i = 0; i < stored_; ++i) {
    n += static_cast<int64_t>(priorities_[i].size());
  }
  return n;
}

int ReplayBuffer::DistinctWorkers() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return static_cast<int>(workers_.size());
}

std::vector<uint64_t> ReplayBuffer::EpisodeSeedsInOrder() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  std::vector<uint64_t> seeds;
  int64_t first = next_slot_ >= capacity_ ? next_slot_ % capacity_ : 0;
  for (int64_t i = 0; i < stored_; ++i) {
    seeds.push_back(ring_[(first + i) % capacity_].seed);
  }
  return seeds;
}

std::vector<ReplayBuffer::SampleRef> ReplayBuffer::SampleBatch(int batch_size,
                                                               double beta,
                                                               Rng& rng) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  std::vector<SampleRef> out;
  out.reserve(batch_size);

  if (!prioritized_) {
    std::vector<int64_t> cum(stored_ + 1, 0);
    for (int64_t i = 0; i < stored_; ++i) {
      cum[i + 1] = cum[i] + static_cast<int64_t>(priorities_[i].size());
    }
    int64_t total = cum[stored_];
    if (total < batch_size) throw UsageError("buffer underfull");
    for (int b = 0; b < batch_size; ++b) {
      int64_t u = static_cast<int64_t>(rng.UniformInt(
          static_cast<uint32_t>(total)));
      auto it = std::upper_bound(cum.begin(), cum.end(), u);
      int slot = static_cast<int>(it - cum.begin()) - 1;
      out.push_back({slot, static_cast<int>(u - cum[slot]), 1.0});
    }
    return out;
  }

  std::vector<double> cum(stored_ + 1, 0.0);
  int64_t total_units = 0;
  for (int64_t i = 0; i < stored_; ++i) {
    cum[i + 1] = cum[i] + episode_weight_[i];
    total_units += static_cast<int64_t>(priorities_[i].size());
  }
  double total_w = cum[stored_];
  if (total_units < batch_size || total_w <= 0.0) {
    throw UsageError("buffer underfull");
  }
  double max_w = 0.0;
  for (int b = 0; b < batch_size; ++b) {
    double u = rng.Uniform() * total_w;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    int slot = std::min<int>(static_cast<int>(it - cum.begin()) - 1,
                             static_cast<int>(stored_) - 1);
    double rem = u - cum[slot];
    const auto& pri = priorities_[slot];
    int unit = 0;
    for (; unit + 1 < static_cast<int>(pri.size()); ++unit) {
      if (rem < pri[unit]) break;
      rem -= pri[unit];
    }
    double prob = pri[unit] / total_w;
    double w = std::pow(static_cast<double>(total_units) * prob, -beta);
    out.push_back({slot, unit, w});
    max_w = std::max(max_w, w);
  }
  for (auto& ref : out) ref.importance_weight /= max_w;
  return out;
}

Transition ReplayBuffer::GetTransition(const SampleRef& ref) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return MakeTransition(ring_[ref.slot], ref.unit, vdn_rounds_);
}

void ReplayBuffer::UpdatePriority(const SampleRef& ref, double priority) {
  if (!prioritized_) return;
  std::lock_guard<std::recursive_mutex> lock(mu_);
  double p = std::pow(priority + 1e-6, alpha_);
  auto& pri = priorities_[ref.slot];
  episode_weight_[ref.slot] += p - pri[ref.unit];
  pri[ref.unit] = p;
  max_priority_pow_ = std::max(max_priority_pow_, p);
}

// --- TD machinery ------------------------------------------------------------

double TdTarget(double reward, bool terminal, double gamma,
                std::span<const double> q_online_next,
                std::span<const double> q_target_next,
                std::span<const uint8_t> legal_next) {
  if (terminal) return reward;
  int best = -1;
  double best_q = 0.0;
  for (size_t a = 0; a < q_online_next.size(); ++a) {
    if (!legal_next[a]) continue;
    if (best < 0 || q_online_next[a] > best_q) {
      best = static_cast<int>(a);
      best_q = q_online_next[a];
    }
  }
  if (best < 0) throw UsageError("no legal next action");
  return reward + gamma * q_target_next[best];
}

double JointQVdn(std::span<const double> per_agent_q) {
  return std::accumulate(per_agent_q.begin(), per_agent_q.end(), 0.0);
}

Learner::Learner(const ArchitectureDescriptor& arch, const GameConfig& config,
                 const TrainConfig& tconfig, uint64_t init_seed)
    : tconfig_(tconfig),
      online_(arch, config, init_seed),
      target_(arch, config, init_seed),
      opt_(online_.num_params(), tconfig.lr) {
  tconfig_.Validate();
  target_.SetParams(online_.params());
}

void Learner::SyncTarget() { target_.SetParams(online_.params()); }

double Learner::TrainStep(ReplayBuffer& buffer, Rng& rng) {
  // Keep the sampled episodes pinned for the whole gradient computation;
  // concurrent appends would otherwise evict them under our feet.
  auto lock = buffer.AcquireLock();
  auto refs = buffer.SampleBatch(tconfig_.batch_size,
                                 tconfig_.importance_beta, rng);
  std::vector<double> grad(online_.num_params(), 0.0);
  std::vector<double> dq(online_.num_actions(), 0.0);
  QNetwork::Cache cache, partner_cache;
  double loss = 0.0;

  auto bootstrap = [&](const TurnRecord* next) -> double {
    if (next == nullptr) return 0.0;
    std::vector<double> q_on = online_.Forward(next->input);
    std::vector<double> q_tg = target_.Forward(next->input);
    return TdTarget(0.0, false, 1.0, q_on, q_tg, next->legal);
  };

  for (const auto& ref : refs) {
    Transition tr = buffer.GetTransition(ref);
    double w = ref.importance_weight;
    if (!tconfig_.vdn) {
      std::vector<double> q = online_.Forward(tr.turn->input, &cache);
      double y = tr.terminal
                     ? tr.reward
                     : tr.reward + tconfig_.gamma * bootstrap(tr.next);
      double td = q[tr.turn->action] - y;
      loss += 0.5 * w * td * td;
      std::fill(dq.begin(), dq.end(), 0.0);
      dq[tr.turn->action] = w * td;
      online_.Backward(cache, dq, &grad);
      buffer.UpdatePriority(ref, std::abs(td));
    } else {
      std::vector<double> q0 = online_.Forward(tr.turn->input, &cache);
      double joint = q0[tr.turn->action];
      std::vector<double> q1;
      if (tr.partner_turn) {
        q1 = online_.Forward(tr.partner_turn->input, &partner_cache);
        joint = JointQVdn(
            std::array{q0[tr.turn->action], q1[tr.partner_turn->action]});
      }
      double y = tr.reward +
                 tconfig_.gamma * (bootstrap(tr.next) +
                                   bootstrap(tr.partner_next));
      double td = joint - y;
      loss += 0.5 * w * td * td;
      // The joint Q is a sum, so the TD error flows with weight 1 into
      // each agent's selected Q.
      std::fill(dq.begin(), dq.end(), 0.0);
      dq[tr.turn->action] = w * td;
      online_.Backward(cache, dq, &grad);
      if (tr.partner_turn) {
        std::fill(dq.begin(), dq.end(), 0.0);
        dq[tr.partner_turn->action] = w * td;
        online_.Backward(partner_cache, dq, &grad);
      }
      buffer.UpdatePriority(ref, std::abs(td));
    }
  }

  double inv = 1.0 / static_cast<double>(refs.size());
  for (double& g : grad) g *= inv;
  opt_.Step(grad, &online_.mutable_params());
  steps_ += 1;
  if (steps_ % tconfig_.target_update_period == 0) SyncTarget();
  return loss * inv;
}

// --- Episode generation ------------------------------------------------------

namespace {

int PickEpsilonGreedy(const QNetwork& net, const std::vector<float>& input,
                      const std::vector<uint8_t>& legal, double eps,
                      Rng& rng) {
  if (eps > 0.0 && rng.Uniform() < eps) {
    std::vector<int> ids;
    for (int i = 0; i < static_cast<int>(legal.size()); ++i) {
      if (legal[i]) ids.push_back(i);
    }
    return ids[rng.UniformInt(static_cast<uint32_t>(ids.size()))];
  }
  std::vector<double> q = net.Forward(input);
  return net.MaskedArgmax(q, legal);
}

std::vector<int> IdentityPerm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<int> RandomPerm(int n, Rng& rng) {
  std::vector<int> p = IdentityPerm(n);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.UniformInt(i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

std::vector<int> InvertPerm(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

Episode PlaySelfPlayEpisode(const QNetwork& net, const GameConfig& cfg,
                            bool other_play, uint64_t seed, double eps,
                            int worker_id) {
  Rng rng(DeriveSeed(seed, 3, 0));
  GameState s = NewGame(cfg, seed);
  int H = net.arch().history_len;
  std::vector<History> hist(2, History(H, cfg));
  std::array<std::optional<Action>, 2> prev_action;

  // Other-Play: seat 1 lives in a color-relabeled frame for the whole
  // episode; its stored inputs/actions are in that frame.
  std::vector<int> perm = IdentityPerm(cfg.num_colors);
  if (other_play) perm = RandomPerm(cfg.num_colors, rng);
  std::vector<int> inv = InvertPerm(perm);
  bool permuted_seat = other_play;

  Episode ep;
  ep.seed = seed;
  ep.worker_id = worker_id;
  while (!s.terminal) {
    int p = s.current_player;
    Observation obs = Observe(s, p);
    if (p == 1 && permuted_seat) obs = ApplyColorPermutation(obs, perm);
    hist[p].Push(obs, prev_action[p]);
    std::vector<float> input = hist[p].Encode();
    int aid = PickEpsilonGreedy(net, input, obs.legal_action_mask, eps, rng);
    Action a_frame = Action::Unflatten(aid, cfg);
    Action a_env = (p == 1 && permuted_seat)
                       ? ApplyColorPermutation(a_frame, cfg, inv)
                       : a_frame;
    StepResult res = Step(s, a_env);
    TurnRecord rec;
    rec.player = static_cast<int8_t>(p);
    rec.action = aid;
    rec.reward = res.reward;
    rec.input = std::move(input);
    rec.legal = obs.legal_action_mask;
    ep.turns.push_back(std::move(rec));
    ep.total_reward += res.reward;
    prev_action[p] = a_frame;
    s = std::move(res.state);
  }
  ep.recorded_score = s.RecordedScore();
  return ep;
}

Episode PlayFinetuneEpisode(const QNetwork& net, const Policy& partner,
                            const GameConfig& cfg, int learner_seat,
                            uint64_t seed, double eps, int worker_id) {
  Rng rng(DeriveSeed(seed, 3, 0));
  GameState s = NewGame(cfg, seed);
  History learner_hist(net.arch().history_len, cfg);
  History partner_hist(partner.HistoryLen(), cfg);
  std::optional<Action> learner_prev, partner_prev;

  Episode ep;
  ep.seed = seed;
  ep.worker_id = worker_id;
  ep.single_player = true;
  while (!s.terminal) {
    int p = s.current_player;
    Observation obs = Observe(s, p);
    if (p == learner_seat) {
      learner_hist.Push(obs, learner_prev);
      std::vector<float> input = learner_hist.Encode();
      int aid =
          PickEpsilonGreedy(net, input, obs.legal_action_mask, eps, rng);
      Action a = Action::Unflatten(aid, cfg);
      StepResult res = Step(s, a);
      TurnRecord rec;
      rec.player = static_cast<int8_t>(p);
      rec.action = aid;
      rec.reward = res.reward;
      rec.input = std::move(input);
      rec.legal = obs.legal_action_mask;
      ep.turns.push_back(std::move(rec));
      ep.total_reward += res.reward;
      learner_prev = a;
      s = std::move(res.state);
    } else {
      partner_hist.Push(obs, partner_prev);
      Action a = partner.GreedyAct(partner_hist);
      StepResult res = Step(s, a);
      // Shared reward from partner turns accrues to the learner's last
      // decision; pre-first-decision reward has no transition to carry it.
      if (!ep.turns.empty()) ep.turns.back().reward += res.reward;
      ep.total_reward += res.reward;
      partner_prev = a;
      s = std::move(res.state);
    }
  }
  ep.recorded_score = s.RecordedScore();
  return ep;
}

double PlayGreedyGame(const Policy& p0, const Policy& p1,
                      const GameConfig& cfg, uint64_t seed) {
  GameState s = NewGame(cfg, seed);
  std::array<const Policy*, 2> pol{&p0, &p1};
  std::array<History, 2> hist{History(p0.HistoryLen(), cfg),
                              History(p1.HistoryLen(), cfg)};
  std::array<std::optional<Action>, 2> prev;
  while (!s.terminal) {
    int p = s.current_player;
    hist[p].Push(Observe(s, p), prev[p]);
    Action a = pol[p]->GreedyAct(hist[p]);
    StepResult res = Step(s, a);
    prev[p] = a;
    s = std::move(res.state);
  }
  return static_cast<double>(s.RecordedScore());
}

// Shared actor/learner driver. Single-worker configurations run strictly
// sequentially and are bit-deterministic.
struct LoopHooks {
  // slot is the global parallel-game slot; returns a finished episode.
  std::function<Episode(int slot, uint64_t ep_seed, const QNetwork& net,
                        int worker_id, int64_t episode_index)>
      play;
  std::function<EvalStats(const QNetwork& net)> evaluate;
};

std::vector<TrainLogRow> RunTrainingLoop(Learner& learner,
                                         ReplayBuffer& buffer,
                                         const TrainConfig& t, uint64_t seed,
                                         const LoopHooks& hooks) {
  std::vector<TrainLogRow> log;
  int64_t total = t.total_train_episodes;
  Rng learner_rng(DeriveSeed(seed, 17, 0));
  double loss_acc = 0.0;
  int64_t loss_n = 0;

  auto ready = [&]() {
    return buffer.NumEpisodes() >= t.min_buffer_episodes &&
           buffer.NumUnits() >= t.batch_size;
  };
  auto eval_row = [&](int64_t episode) {
    EvalStats st = hooks.evaluate(learner.online());
    TrainLogRow row;
    row.episode = episode;
    row.step = learner.step_count();
    row.loss = loss_n > 0 ? loss_acc / static_cast<double>(loss_n) : 0.0;
    row.eval_score = st.mean;
    row.perfect_rate = st.perfect_rate;
    log.push_back(row);
    loss_acc = 0.0;
    loss_n = 0;
  };

  eval_row(0);  // zero-shot / untrained point

  bool sequential = t.num_threads == 1;
  if (sequential) {
    for (int64_t e = 0; e < total; ++e) {
      int slot = static_cast<int>(e % t.num_games_per_thread);
      Episode ep = hooks.play(slot, DeriveSeed(seed, 7, e),
                              learner.online(), /*worker_id=*/0, e);
      buffer.Append(std::move(ep));
      if (ready()) {
        for (int u = 0; u < t.updates_per_episode; ++u) {
          loss_acc += learner.TrainStep(buffer, learner_rng);
          loss_n += 1;
        }
      }
      if ((e + 1) % t.eval_every == 0 && e + 1 != total) eval_row(e + 1);
    }
    if (total > 0) eval_row(total);
    return log;
  }

  std::atomic<int64_t> episodes_claimed{0};
  std::atomic<int64_t> episodes_done{0};
  std::mutex snap_mu;
  auto snapshot =
      std::make_shared<const std::vector<float>>(learner.online().params());
  auto publish = [&](const std::vector<float>& p) {
    auto s = std::make_shared<const std::vector<float>>(p);
    std::lock_guard<std::mutex> lock(snap_mu);
    snapshot = std::move(s);
  };
  auto latest = [&]() {
    std::lock_guard<std::mutex> lock(snap_mu);
    return snapshot;
  };

  std::vector<std::thread> actors;
  for (int tid = 0; tid < t.num_threads; ++tid) {
    actors.emplace_back([&, tid]() {
      QNetwork net = learner.online();
      int local = 0;
      while (true) {
        int64_t e = episodes_claimed.fetch_add(1);
        if (e >= total) break;
        net.SetParams(*latest());
        int slot = tid * t.num_games_per_thread +
                   (local++ % t.num_games_per_thread);
        Episode ep = hooks.play(slot, DeriveSeed(seed, 7, e), net, tid, e);
        buffer.Append(std::move(ep));
        episodes_done.fetch_add(1);
      }
    });
  }

  int64_t steps_done = 0;
  int64_t next_eval = t.eval_every;
  int64_t warmup_mark = -1;
  while (episodes_done.load() < total) {
    int64_t done = episodes_done.load();
    if (ready()) {
      if (warmup_mark < 0) warmup_mark = done;
      int64_t allowed = t.updates_per_episode * (done - warmup_mark + 1);
      if (steps_done < allowed) {
        loss_acc += learner.TrainStep(buffer, learner_rng);
        loss_n += 1;
        steps_done += 1;
        publish(learner.online().params());
        continue;
      }
    }
    if (done >= next_eval && next_eval < total) {
      eval_row(next_eval);
      next_eval += t.eval_every;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  for (auto& th : actors) th.join();
  // Actors can outpace the learner; catch up to the per-episode step budget
  // so the threaded path trains as much as the sequential one.
  auto drain_to = [&](int64_t done) {
    if (!ready()) return;
    if (warmup_mark < 0) {
      warmup_mark = std::min<int64_t>(done, t.min_buffer_episodes);
    }
    int64_t allowed = t.updates_per_episode * (done - warmup_mark + 1);
    while (steps_done < allowed) {
      loss_acc += learner.TrainStep(buffer, learner_rng);
      loss_n += 1;
      steps_done += 1;
    }
  };
  while (next_eval < total) {
    drain_to(next_eval);
    eval_row(next_eval);
    next_eval += t.eval_every;
  }
  drain_to(total);
  if (total > 0) eval_row(total);
  return log;
}

EvalStats ComputeStats(std::vector<double> scores, double max_score) {
  EvalStats st;
  st.scores = std::move(scores);
  double n = static_cast<double>(st.scores.size());
  st.mean = std::accumulate(st.scores.begin(), st.scores.end(), 0.0) / n;
  if (st.scores.size() > 1) {
    double ss = 0.0;
    for (double s : st.scores) ss += (s - st.mean) * (s - st.mean);
    st.stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  st.perfect_rate = PerfectRate(st.scores, max_score);
  return st;
}

}  // namespace

EvalStats EvaluatePair(const Policy& a, const Policy& b,
                       const GameConfig& config, int games,
                       uint64_t base_seed) {
  std::vector<double> scores;
  scores.reserve(games);
  for (int g = 0; g < games; ++g) {
    uint64_t seed = DeriveSeed(base_seed, 11, g);
    scores.push_back(g % 2 == 0 ? PlayGreedyGame(a, b, config, seed)
                                : PlayGreedyGame(b, a, config, seed));
  }
  return ComputeStats(std::move(scores), config.MaxScore());
}

TrainResult RunSelfPlayTraining(const GameConfig& config,
                                const TrainConfig& tconfig, uint64_t seed) {
  config.Validate();
  tconfig.Validate();
  Learner learner(tconfig.arch, config, tconfig, DeriveSeed(seed, 1, 0));
  ReplayBuffer buffer(tconfig.replay_buffer_size, tconfig.vdn,
                      tconfig.prioritized, tconfig.priority_alpha);

  LoopHooks hooks;
  hooks.play = [&](int slot, uint64_t ep_seed, const QNetwork& net,
                   int worker_id, int64_t /*index*/) {
    return PlaySelfPlayEpisode(net, config, tconfig.other_play, ep_seed,
                               tconfig.EpsForSlot(slot), worker_id);
  };
  hooks.evaluate = [&](const QNetwork& net) {
    QNetworkPolicy pol(net, tconfig.AlgorithmTag());
    return EvaluatePair(pol, pol, config, tconfig.eval_games,
                        DeriveSeed(seed, 23, 0));
  };

  std::vector<TrainLogRow> log =
      RunTrainingLoop(learner, buffer, tconfig, seed, hooks);

  TrainResult result;
  result.log = std::move(log);
  result.distinct_workers = buffer.DistinctWorkers();
  Checkpoint& ckpt = result.checkpoint;
  ckpt.algorithm = tconfig.AlgorithmTag();
  ckpt.config = config;
  ckpt.arch = tconfig.arch;
  ckpt.training_seed = seed;
  ckpt.train_steps = learner.step_count();
  ckpt.selfplay_score = result.log.back().eval_score;
  ckpt.payload = learner.online().params();
  return result;
}

FinetuneResult Finetune(const Checkpoint& learner_ckpt,
                        const Checkpoint& partner_ckpt,
                        const TrainConfig& tconfig, int64_t budget_episodes,
                        uint64_t seed) {
  if (learner_ckpt.config != partner_ckpt.config) {
    throw ConfigError("learner and partner game configs differ");
  }
  if (learner_ckpt.algorithm == "RULE" || !learner_ckpt.arch) {
    throw ConfigError("learner checkpoint is not a trainable network");
  }
  const GameConfig& config = learner_ckpt.config;

  TrainConfig t = tconfig;
  t.arch = *learner_ckpt.arch;
  t.vdn = false;        // adaptation always runs IQL updates
  t.other_play = false;
  t.total_train_episodes = budget_episodes;
  t.Validate();

  Learner learner(t.arch, config, t, DeriveSeed(seed, 1, 0));
  if (static_cast<int>(learner_ckpt.payload.size()) !=
      learner.online().num_params()) {
    throw CheckpointError(CheckpointErrorKind::kPayloadLength,
                          "learner payload does not match architecture");
  }
  learner.mutable_online().SetParams(learner_ckpt.payload);
  learner.SyncTarget();

  std::shared_ptr<Policy> partner = MakePolicy(partner_ckpt);
  ReplayBuffer buffer(t.replay_buffer_size, /*vdn_rounds=*/false,
                      t.prioritized, t.priority_alpha);

  LoopHooks hooks;
  hooks.play = [&](int slot, uint64_t ep_seed, const QNetwork& net,
                   int worker_id, int64_t index) {
    int learner_seat = static_cast<int>(index % 2);
    return PlayFinetuneEpisode(net, *partner, config, learner_seat, ep_seed,
                               t.EpsForSlot(slot), worker_id);
  };
  hooks.evaluate = [&](const QNetwork& net) {
    QNetworkPolicy pol(net, learner_ckpt.algorithm);
    return EvaluatePair(pol, *partner, config, t.eval_games,
                        DeriveSeed(seed, 23, 0));
  };

  std::vector<TrainLogRow> log =
      RunTrainingLoop(learner, buffer, t, seed, hooks);

  FinetuneResult result;
  result.trace.learner_id = learner_ckpt.algorithm;
  result.trace.partner_id = partner_ckpt.algorithm;
  result.trace.seed = seed;
  result.trace.max_score = config.MaxScore();
  for (const TrainLogRow& row : log) {
    if (row.eval_score < 0.0) continue;
    result.trace.points.push_back(
        {row.episode, row.eval_score, row.perfect_rate});
  }

  Checkpoint& out = result.final_learner;
  out = learner_ckpt;
  out.train_steps += learner.step_count();
  out.payload = learner.online().params();
  out.selfplay_score = learner_ckpt.selfplay_score;
  return result;
}

}  // namespace fsc
