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

#ifndef FSC_REPORT_H_
#define FSC_REPORT_H_

#include <string>
#include <vector>

#include "fsc/metrics.h"
#include "fsc/protocol.h"
#include "fsc/training.h"

namespace fsc {

// File-system failures (missing inputs, unwritable outputs).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void WriteTextFile(const std::string& path, const std::string& content);
std::string ReadTextFile(const std::string& path);

// CSV emission. `comment` lines (reproducibility headers) are prefixed
// with '#' above the column header.

// Two files: cell means and cell standard errors, each with an id header
// row and id-labelled rows.
void WriteMatrixCsv(const CrossPlayMatrix& m, const std::string& mean_path,
                    const std::string& stderr_path,
                    const std::string& comment = "");

// Columns: episode,score,perfect_rate.
void WriteTraceCsv(const AdaptationTrace& trace, const std::string& path,
                   const std::string& comment = "");

// Columns: step,loss,eval_score.
void WriteTrainLogCsv(const std::vector<TrainLogRow>& log,
                      const std::string& path,
                      const std::string& comment = "");

// Standalone SVG renderers.
struct Series {
  std::string label;
  std::vector<double> ys;
};
std::string RenderLineChart(const std::string& title,
                            const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<double>& xs,
                            const std::vector<Series>& series);
std::string RenderBarChart(const std::string& title, const std::string& ylabel,
                           const std::vector<std::string>& labels,
                           const std::vector<double>& values);
std::string RenderHeatmap(const std::string& title, const CrossPlayMatrix& m,
                          double max_score);

// Renders every chart and CSV for one benchmark report into dir (created
// if missing) and returns the written paths.
std::vector<std::string> EmitReportArtifacts(const AdaptationReport& report,
                                             const std::string& dir,
                                             const std::string& comment = "");

// Per-hyperparameter panels (average regret and perfect rate) plus a
// summary CSV.
std::vector<std::string> EmitSweepArtifacts(const SweepReport& sweep,
                                            const std::string& dir,
                                            const std::string& comment = "");

}  // namespace fsc

#endif  // FSC_REPORT_H_
