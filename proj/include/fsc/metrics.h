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

#ifndef FSC_METRICS_H_
#define FSC_METRICS_H_

#include <string>
#include <vector>

namespace fsc {

// Pairwise mean scores over a pool. Cell (i, j) averages both seat orders;
// the diagonal holds self-play scores.
struct CrossPlayMatrix {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> stderr_;
  int games_per_cell = 0;

  int size() const { return static_cast<int>(ids.size()); }
};

enum class UpperBoundMode { kMaxScore, kSelfPlay, kBestResponse };
enum class Aggregator { kMean, kIqm };

std::string ToString(UpperBoundMode mode);
std::string ToString(Aggregator mode);
UpperBoundMode UpperBoundModeFromString(const std::string& s);
Aggregator AggregatorFromString(const std::string& s);

struct PoolMetrics {
  std::vector<double> per_partner_strength;  // S_j = C*_j / max_score
  double pool_strength = 0.0;                // mean of S_j
  double diversity = 0.0;                    // D
  std::vector<double> c_star;                // chosen upper bound per partner
};

struct RegretResult {
  double total = 0.0;
  double average = 0.0;
};

// Total regret over the first T per-episode scores: T*c_star - sum(C^t).
// Throws std::invalid_argument on an empty trace or T > trace length.
RegretResult AdaptationRegret(const std::vector<double>& trace, double c_star,
                              int T);

// Expands sparse (episode, score) samples into a dense per-episode trace of
// length T. Scores are piecewise-constant at the last evaluation point;
// episodes before the first sample take the first sample's value.
std::vector<double> ExpandTrace(const std::vector<int64_t>& episodes,
                                const std::vector<double>& scores, int64_t T);

// D = 1 - mean(off-diagonal C_ij) / max_score. Requires n >= 2.
double Diversity(const CrossPlayMatrix& matrix, double max_score);

struct StrengthResult {
  std::vector<double> per_partner;
  double pool = 0.0;
};
StrengthResult Strength(const std::vector<double>& c_stars, double max_score);

// Pointwise aggregation across partners. IQM sorts and trims floor(M/4)
// values from each side before averaging.
double Aggregate(std::vector<double> values, Aggregator mode);
std::vector<double> AggregateCurves(
    const std::vector<std::vector<double>>& curves, Aggregator mode);

// Fraction of games that ended at max_score.
double PerfectRate(const std::vector<double>& scores, double max_score);

// One evaluation point of a fine-tuning run.
struct EvalPoint {
  int64_t episode = 0;
  double score = 0.0;
  double perfect_rate = 0.0;
};

struct AdaptationTrace {
  std::string learner_id;
  std::string partner_id;
  uint64_t seed = 0;
  double max_score = 0.0;
  std::vector<EvalPoint> points;
};

// Per-partner and aggregated curves of a benchmark run. Regret integration
// between evaluation points is piecewise-constant (see ExpandTrace).
struct AdaptationReport {
  std::vector<std::string> partner_ids;
  std::string learner_id;
  std::vector<int64_t> episodes;  // shared evaluation grid
  // Indexed [partner][eval point].
  std::vector<std::vector<double>> score_curves;
  std::vector<std::vector<double>> perfect_rate_curves;
  std::vector<std::vector<double>> total_regret_curves;
  std::vector<std::vector<double>> average_regret_curves;
  // Aggregated across partners.
  std::vector<double> aggregate_score;
  std::vector<double> aggregate_perfect_rate;
  std::vector<double> aggregate_total_regret;
  std::vector<double> aggregate_average_regret;
  std::vector<double> c_star;
  UpperBoundMode upper_bound = UpperBoundMode::kMaxScore;
  Aggregator aggregator = Aggregator::kMean;
  double max_score = 0.0;
  double pool_strength = 0.0;
  double pool_diversity = 0.0;
  int seeds_per_pair = 1;
  CrossPlayMatrix partner_matrix;
};

// Builds the regret/score curves of one (learner, partner) pair from
// seed-averaged evaluation points.
void FillRegretCurves(const std::vector<int64_t>& episodes,
                      const std::vector<double>& scores, double c_star,
                      std::vector<double>* total_regret,
                      std::vector<double>* average_regret);

}  // namespace fsc

#endif  // FSC_METRICS_H_
