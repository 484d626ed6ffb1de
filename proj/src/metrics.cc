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

#include "fsc/metrics.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fsc {

std::string ToString(UpperBoundMode mode) {
  switch (mode) {
    case UpperBoundMode::kMaxScore:
      return "max_score";
    case UpperBoundMode::kSelfPlay:
      return "self_play";
    case UpperBoundMode::kBestResponse:
      return "best_response";
  }
  return "?";
}

std::string ToString(Aggregator mode) {
  return mode == Aggregator::kMean ? "mean" : "iqm";
}

UpperBoundMode UpperBoundModeFromString(const std::string& s) {
  if (s == "max_score") return UpperBoundMode::kMaxScore;
  if (s == "self_play") return UpperBoundMode::kSelfPlay;
  if (s == "best_response") return UpperBoundMode::kBestResponse;
  throw std::invalid_argument("unknown upper bound mode: " + s);
}

Aggregator AggregatorFromString(const std::string& s) {
  if (s == "mean") return Aggregator::kMean;
  if (s == "iqm") return Aggregator::kIqm;
  throw std::invalid_argument("unknown aggregator: " + s);
}

RegretResult AdaptationRegret(const std::vector<double>& trace, double c_star,
                              int T) {
  if (trace.empty()) throw std::invalid_argument("empty trace");
  if (T < 1 || T > static_cast<int>(trace.size())) {
    throw std::invalid_argument("T out of range");
  }
  double sum = std::accumulate(trace.begin(), trace.begin() + T, 0.0);
  RegretResult r;
  r.total = static_cast<double>(T) * c_star - sum;
  r.average = r.total / static_cast<double>(T);
  return r;
}

std::vector<double> ExpandTrace(const std::vector<int64_t>& episodes,
                                const std::vector<double>& scores,
                                int64_t T) {
  if (episodes.empty() || episodes.size() != scores.size()) {
    throw std::invalid_argument("bad sample arrays");
  }
  std::vector<double> out(T);
  size_t k = 0;
  for (int64_t t = 1; t <= T; ++t) {
    // C^t holds the last evaluation taken at or before episode t-1.
    while (k + 1 < episodes.size() && episodes[k + 1] <= t - 1) ++k;
    out[t - 1] = scores[k];
  }
  return out;
}

double Diversity(const CrossPlayMatrix& matrix, double max_score) {
  int n = matrix.size();
  if (n < 2) throw std::invalid_argument("diversity needs n >= 2");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) sum += matrix.mean[i][j] / max_score;
    }
  }
  return 1.0 - sum / static_cast<double>(n * n - n);
}

StrengthResult Strength(const std::vector<double>& c_stars,
                        double max_score) {
  if (c_stars.empty()) throw std::invalid_argument("empty c_star list");
  StrengthResult r;
  r.per_partner.reserve(c_stars.size());
  for (double c : c_stars) r.per_partner.push_back(c / max_score);
  r.pool = std::accumulate(r.per_partner.begin(), r.per_partner.end(), 0.0) /
           static_cast<double>(r.per_partner.size());
  return r;
}

double Aggregate(std::vector<double> values, Aggregator mode) {
  if (values.empty()) throw std::invalid_argument("empty values");
  if (mode == Aggregator::kIqm) {
    std::sort(values.begin(), values.end());
    size_t trim = values.size() / 4;
    values.assign(values.begin() + trim, values.end() - trim);
  }
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

std::vector<double> AggregateCurves(
    const std::vector<std::vector<double>>& curves, Aggregator mode) {
  if (curves.empty()) throw std::invalid_argument("no curves");
  size_t len = curves[0].size();
  for (const auto& c : curves) {
    if (c.size() != len) throw std::invalid_argument("ragged curves");
  }
  std::vector<double> out(len);
  std::vector<double> column(curves.size());
  for (size_t t = 0; t < len; ++t) {
    for (size_t i = 0; i < curves.size(); ++i) column[i] = curves[i][t];
    out[t] = Aggregate(column, mode);
  }
  return out;
}

double PerfectRate(const std::vector<double>& scores, double max_score) {
  if (scores.empty()) throw std::invalid_argument("no games");
  int64_t perfect = std::count_if(scores.begin(), scores.end(),
                                  [&](double s) { return s == max_score; });
  return static_cast<double>(perfect) / static_cast<double>(scores.size());
}

void FillRegretCurves(const std::vector<int64_t>& episodes,
                      const std::vector<double>& scores, double c_star,
                      std::vector<double>* total_regret,
                      std::vector<double>* average_regret) {
  if (episodes.empty() || episodes.size() != scores.size()) {
    throw std::invalid_argument("bad curve arrays");
  }
  total_regret->assign(episodes.size(), 0.0);
  average_regret->assign(episodes.size(), 0.0);
  // Episodes before the first sample take the first sample's value. At T=0
  // (the zero-shot point) total regret is 0 and the average is reported as
  // the instantaneous gap c* - C^0.
  double total = static_cast<double>(episodes[0]) * (c_star - scores[0]);
  (*total_regret)[0] = total;
  (*average_regret)[0] = episodes[0] > 0
                             ? total / static_cast<double>(episodes[0])
                             : c_star - scores[0];
  for (size_t k = 1; k < episodes.size(); ++k) {
    double span = static_cast<double>(episodes[k] - episodes[k - 1]);
    if (span < 0) throw std::invalid_argument("episodes not increasing");
    total += span * (c_star - scores[k - 1]);
    (*total_regret)[k] = total;
    (*average_regret)[k] =
        episodes[k] > 0 ? total / static_cast<double>(episodes[k]) : 0.0;
  }
}

}  // namespace fsc
