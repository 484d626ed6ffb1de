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

#include "fsc/protocol.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <thread>

namespace fsc {

namespace {

// Runs fn(0..n-1) on up to `workers` threads. Each index must be
// independent; results land in caller-owned slots, so merge order never
// affects the outcome.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  int count = std::min(workers, n);
  for (int t = 0; t < count; ++t) {
    threads.emplace_back([&]() {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& th : threads) th.join();
}

std::string FormatValue(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double SubsetDiversity(const CrossPlayMatrix& m, const std::vector<int>& idx,
                       double max_score) {
  double sum = 0.0;
  int n = static_cast<int>(idx.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) sum += m.mean[idx[a]][idx[b]];
    }
  }
  return 1.0 - sum / static_cast<double>(n * (n - 1)) / max_score;
}

CrossPlayMatrix Submatrix(const CrossPlayMatrix& m,
                          const std::vector<int>& idx) {
  CrossPlayMatrix out;
  out.games_per_cell = m.games_per_cell;
  int n = static_cast<int>(idx.size());
  out.mean.assign(n, std::vector<double>(n, 0.0));
  out.stderr_.assign(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    out.ids.push_back(m.ids[idx[a]]);
    for (int b = 0; b < n; ++b) {
      out.mean[a][b] = m.mean[idx[a]][idx[b]];
      out.stderr_[a][b] = m.stderr_[idx[a]][idx[b]];
    }
  }
  return out;
}

}  // namespace

int AgentPool::Find(const std::string& id) const {
  for (int i = 0; i < size(); ++i) {
    if (ids[i] == id) return i;
  }
  return -1;
}

const GameConfig& AgentPool::config() const {
  if (checkpoints.empty()) throw ConfigError("empty pool");
  return checkpoints[0].config;
}

void AgentPool::Validate() const {
  if (ids.empty()) throw ConfigError("empty pool");
  if (ids.size() != checkpoints.size()) {
    throw ConfigError("pool ids/checkpoints size mismatch");
  }
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      if (ids[i] == ids[j]) throw ConfigError("duplicate pool id: " + ids[i]);
    }
    if (!(checkpoints[i].config == checkpoints[0].config)) {
      throw ConfigError("pool member " + ids[i] + " has a different config");
    }
  }
}

CrossPlayMatrix ComputeCrossplay(const AgentPool& pool, int games_per_pair,
                                 uint64_t base_seed, int num_workers) {
  pool.Validate();
  if (games_per_pair < 1) throw ConfigError("games_per_pair must be >= 1");
  int n = pool.size();
  const GameConfig& config = pool.config();

  std::vector<std::shared_ptr<Policy>> policies;
  policies.reserve(n);
  for (const Checkpoint& c : pool.checkpoints) policies.push_back(MakePolicy(c));

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  }

  CrossPlayMatrix m;
  m.ids = pool.ids;
  m.games_per_cell = games_per_pair;
  m.mean.assign(n, std::vector<double>(n, 0.0));
  m.stderr_.assign(n, std::vector<double>(n, 0.0));

  ParallelFor(static_cast<int>(pairs.size()), num_workers, [&](int p) {
    auto [i, j] = pairs[p];
    uint64_t seed = DeriveSeed(base_seed, 31, static_cast<uint64_t>(i) * n + j);
    EvalStats st =
        EvaluatePair(*policies[i], *policies[j], config, games_per_pair, seed);
    m.mean[i][j] = m.mean[j][i] = st.mean;
    m.stderr_[i][j] = m.stderr_[j][i] = st.stderr_;
  });
  return m;
}

PartnerSelection SelectPartners(
    const CrossPlayMatrix& matrix, int k, double strength_min,
    double diversity_target, UpperBoundMode upper_bound, double max_score,
    const std::optional<std::vector<double>>& best_response,
    bool force_greedy) {
  int n = matrix.size();
  if (k < 2) throw ConfigError("k must be >= 2");
  if (k > n) throw InfeasibleError("k exceeds pool size");

  std::vector<double> c_star(n, max_score);
  if (upper_bound == UpperBoundMode::kSelfPlay) {
    for (int i = 0; i < n; ++i) c_star[i] = matrix.mean[i][i];
  } else if (upper_bound == UpperBoundMode::kBestResponse) {
    if (!best_response || static_cast<int>(best_response->size()) != n) {
      throw ConfigError("best_response scores required, one per pool member");
    }
    c_star = *best_response;
  }

  std::vector<int> feasible;
  for (int i = 0; i < n; ++i) {
    if (c_star[i] / max_score >= strength_min - 1e-12) feasible.push_back(i);
  }
  if (static_cast<int>(feasible.size()) < k) {
    throw InfeasibleError("fewer than k members meet the strength floor");
  }
  // Id order fixes both the enumeration order and the documented
  // tie-break, making the result invariant under pool reordering.
  std::sort(feasible.begin(), feasible.end(),
            [&](int a, int b) { return matrix.ids[a] < matrix.ids[b]; });
  int m = static_cast<int>(feasible.size());

  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos *= static_cast<double>(m - i) / (i + 1);
  bool exhaustive = !force_greedy && combos <= 1e6;

  auto err_of = [&](const std::vector<int>& idx) {
    return std::abs(SubsetDiversity(matrix, idx, max_score) -
                    diversity_target);
  };

  std::vector<int> best;
  if (exhaustive) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    double best_err = 0.0;
    while (true) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = feasible[pick[i]];
      double e = err_of(idx);
      if (best.empty() || e < best_err) {
        best = idx;
        best_err = e;
      }
      // Next lexicographic combination.
      int i = k - 1;
      while (i >= 0 && pick[i] == m - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  } else {
    // Multi-start greedy: grow a subset from each feasible member (adding
    // whichever candidate keeps the partial diversity closest to target),
    // refine with swap hill-climbing, and keep the best run. Deterministic
    // and pool-order invariant (feasible is id-sorted).
    double best_err = 0.0;
    for (int s = 0; s < m; ++s) {
      std::vector<int> cur{feasible[s]};
      while (static_cast<int>(cur.size()) < k) {
        int pick = -1;
        double pick_err = 0.0;
        for (int cand : feasible) {
          if (std::find(cur.begin(), cur.end(), cand) != cur.end()) continue;
          cur.push_back(cand);
          double e = std::abs(SubsetDiversity(matrix, cur, max_score) -
                              diversity_target);
          cur.pop_back();
          if (pick < 0 || e < pick_err) {
            pick = cand;
            pick_err = e;
          }
        }
        cur.push_back(pick);
      }
      double cur_err = err_of(cur);
      bool improved = true;
      while (improved) {
        improved = false;
        for (int pos = 0; pos < k && !improved; ++pos) {
          for (int cand : feasible) {
            if (std::find(cur.begin(), cur.end(), cand) != cur.end()) {
              continue;
            }
            std::vector<int> trial = cur;
            trial[pos] = cand;
            double e = err_of(trial);
            if (e < cur_err) {
              cur = trial;
              cur_err = e;
              improved = true;
              break;
            }
          }
        }
      }
      if (best.empty() || cur_err < best_err) {
        best = cur;
        best_err = cur_err;
      }
    }
  }

  std::sort(best.begin(), best.end(),
            [&](int a, int b) { return matrix.ids[a] < matrix.ids[b]; });

  PartnerSelection sel;
  sel.indices = best;
  for (int i : best) {
    sel.ids.push_back(matrix.ids[i]);
    sel.c_star.push_back(c_star[i]);
  }
  StrengthResult sr = Strength(sel.c_star, max_score);
  sel.strength = sr.pool;
  sel.diversity = SubsetDiversity(matrix, best, max_score);
  sel.k = k;
  sel.strength_min = strength_min;
  sel.diversity_target = diversity_target;
  sel.upper_bound = upper_bound;
  sel.exhaustive = exhaustive;
  return sel;
}

AdaptationReport RunBenchmark(const Checkpoint& learner,
                              const std::string& learner_id,
                              const AgentPool& pool,
                              const PartnerSelection& selection,
                              const CrossPlayMatrix& matrix,
                              const TrainConfig& tconfig,
                              int64_t budget_episodes, int seeds_per_pair,
                              uint64_t base_seed, Aggregator aggregator,
                              int num_workers) {
  pool.Validate();
  if (seeds_per_pair < 1) throw ConfigError("seeds_per_pair must be >= 1");
  if (!(learner.config == pool.config())) {
    throw ConfigError("learner and pool game configs differ");
  }
  int np = static_cast<int>(selection.ids.size());
  std::vector<int> partner_pool_idx(np);
  for (int p = 0; p < np; ++p) {
    if (selection.ids[p] == learner_id) {
      throw ConfigError("learner cannot be one of its partners");
    }
    int idx = pool.Find(selection.ids[p]);
    if (idx < 0) {
      throw ConfigError("partner " + selection.ids[p] + " not in pool");
    }
    partner_pool_idx[p] = idx;
  }

  int runs = np * seeds_per_pair;
  std::vector<AdaptationTrace> traces(runs);
  ParallelFor(runs, num_workers, [&](int r) {
    int p = r / seeds_per_pair;
    int s = r % seeds_per_pair;
    uint64_t seed = DeriveSeed(base_seed, 41, r);
    FinetuneResult fr =
        Finetune(learner, pool.checkpoints[partner_pool_idx[p]], tconfig,
                 budget_episodes, seed);
    fr.trace.learner_id = learner_id;
    fr.trace.partner_id = selection.ids[p];
    traces[r] = std::move(fr.trace);
    (void)s;
  });

  AdaptationReport report;
  report.learner_id = learner_id;
  report.partner_ids = selection.ids;
  for (const EvalPoint& pt : traces[0].points) {
    report.episodes.push_back(pt.episode);
  }
  size_t ne = report.episodes.size();
  for (const AdaptationTrace& tr : traces) {
    if (tr.points.size() != ne) {
      throw UsageError("finetune traces disagree on the evaluation grid");
    }
  }

  report.c_star = selection.c_star;
  report.upper_bound = selection.upper_bound;
  report.aggregator = aggregator;
  report.max_score = static_cast<double>(pool.config().MaxScore());
  report.pool_strength = selection.strength;
  report.pool_diversity = selection.diversity;
  report.seeds_per_pair = seeds_per_pair;
  report.partner_matrix = Submatrix(matrix, selection.indices);

  for (int p = 0; p < np; ++p) {
    std::vector<double> score(ne, 0.0), perfect(ne, 0.0);
    for (int s = 0; s < seeds_per_pair; ++s) {
      const AdaptationTrace& tr = traces[p * seeds_per_pair + s];
      for (size_t t = 0; t < ne; ++t) {
        score[t] += tr.points[t].score / seeds_per_pair;
        perfect[t] += tr.points[t].perfect_rate / seeds_per_pair;
      }
    }
    std::vector<double> total, average;
    FillRegretCurves(report.episodes, score, report.c_star[p], &total,
                     &average);
    report.score_curves.push_back(std::move(score));
    report.perfect_rate_curves.push_back(std::move(perfect));
    report.total_regret_curves.push_back(std::move(total));
    report.average_regret_curves.push_back(std::move(average));
  }

  report.aggregate_score = AggregateCurves(report.score_curves, aggregator);
  report.aggregate_perfect_rate =
      AggregateCurves(report.perfect_rate_curves, aggregator);
  report.aggregate_total_regret =
      AggregateCurves(report.total_regret_curves, aggregator);
  report.aggregate_average_regret =
      AggregateCurves(report.average_regret_curves, aggregator);
  return report;
}

SweepReport RunHpSweep(const Checkpoint& learner, const std::string& learner_id,
                       const AgentPool& pool,
                       const PartnerSelection& selection,
                       const CrossPlayMatrix& matrix,
                       const TrainConfig& base_tconfig, const HpGrid& grid,
                       int64_t budget_episodes, int seeds_per_pair,
                       uint64_t base_seed, Aggregator aggregator,
                       int num_workers) {
  if (grid.Empty()) throw ConfigError("empty hyperparameter grid");

  SweepReport sweep;
  auto run_point = [&](const std::string& name, const std::string& value,
                       const TrainConfig& t) {
    SweepPoint pt;
    pt.hp_name = name;
    pt.hp_value = value;
    pt.report = RunBenchmark(learner, learner_id, pool, selection, matrix, t,
                             budget_episodes, seeds_per_pair, base_seed,
                             aggregator, num_workers);
    pt.final_average_regret = pt.report.aggregate_average_regret.back();
    pt.final_perfect_rate = pt.report.aggregate_perfect_rate.back();
    sweep.points.push_back(std::move(pt));
  };

  for (double v : grid.lr) {
    TrainConfig t = base_tconfig;
    t.lr = v;
    run_point("lr", FormatValue(v), t);
  }
  for (int v : grid.batch_size) {
    TrainConfig t = base_tconfig;
    t.batch_size = v;
    run_point("batch_size", std::to_string(v), t);
  }
  for (int v : grid.replay_buffer_size) {
    TrainConfig t = base_tconfig;
    t.replay_buffer_size = v;
    run_point("replay_buffer_size", std::to_string(v), t);
  }
  for (auto [threads, games] : grid.workers) {
    TrainConfig t = base_tconfig;
    t.num_threads = threads;
    t.num_games_per_thread = games;
    run_point("workers",
              std::to_string(threads) + "x" + std::to_string(games), t);
  }
  return sweep;
}

}  // namespace fsc
