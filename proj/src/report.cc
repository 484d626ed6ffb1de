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

#include "fsc/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fsc {

namespace {

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string FmtShort(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string EscapeXml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void AppendComment(std::ostream& os, const std::string& comment) {
  if (comment.empty()) return;
  std::istringstream in(comment);
  std::string line;
  while (std::getline(in, line)) os << "# " << line << "\n";
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

struct AxisScale {
  double lo = 0.0, hi = 1.0;
  double px0 = 0.0, px1 = 1.0;
  double Map(double v) const {
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

void PadRange(double* lo, double* hi) {
  if (*hi > *lo) return;
  double pad = std::max(1.0, std::abs(*lo) * 0.1);
  *lo -= pad;
  *hi += pad;
}

void DrawAxes(std::ostringstream& svg, const AxisScale& x, const AxisScale& y,
              const std::string& title, const std::string& xlabel,
              const std::string& ylabel, int width, int height) {
  svg << "<rect width='" << width << "' height='" << height
      << "' fill='white'/>\n";
  svg << "<text x='" << (x.px0 + x.px1) / 2
      << "' y='22' text-anchor='middle' font-size='15' "
         "font-family='sans-serif'>"
      << EscapeXml(title) << "</text>\n";
  svg << "<line x1='" << x.px0 << "' y1='" << y.px1 << "' x2='" << x.px1
      << "' y2='" << y.px1 << "' stroke='black'/>\n";
  svg << "<line x1='" << x.px0 << "' y1='" << y.px0 << "' x2='" << x.px0
      << "' y2='" << y.px1 << "' stroke='black'/>\n";
  for (int t = 0; t <= 4; ++t) {
    double fx = x.lo + (x.hi - x.lo) * t / 4.0;
    double fy = y.lo + (y.hi - y.lo) * t / 4.0;
    double px = x.Map(fx);
    // Screen y grows downward: lo sits at the bottom edge (px1).
    double py = y.px1 - (fy - y.lo) / (y.hi - y.lo) * (y.px1 - y.px0);
    svg << "<line x1='" << px << "' y1='" << y.px1 << "' x2='" << px
        << "' y2='" << y.px1 + 4 << "' stroke='black'/>\n";
    svg << "<text x='" << px << "' y='" << y.px1 + 18
        << "' text-anchor='middle' font-size='11' "
           "font-family='sans-serif'>"
        << FmtShort(fx) << "</text>\n";
    svg << "<line x1='" << x.px0 - 4 << "' y1='" << py << "' x2='" << x.px0
        << "' y2='" << py << "' stroke='black'/>\n";
    svg << "<text x='" << x.px0 - 7 << "' y='" << py + 4
        << "' text-anchor='end' font-size='11' font-family='sans-serif'>"
        << FmtShort(fy) << "</text>\n";
  }
  svg << "<text x='" << (x.px0 + x.px1) / 2 << "' y='" << y.px1 + 38
      << "' text-anchor='middle' font-size='13' font-family='sans-serif'>"
      << EscapeXml(xlabel) << "</text>\n";
  svg << "<text x='16' y='" << (y.px0 + y.px1) / 2
      << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
         "transform='rotate(-90 16 "
      << (y.px0 + y.px1) / 2 << ")'>" << EscapeXml(ylabel) << "</text>\n";
}

}  // namespace

void WriteTextFile(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteMatrixCsv(const CrossPlayMatrix& m, const std::string& mean_path,
                    const std::string& stderr_path,
                    const std::string& comment) {
  auto write = [&](const std::string& path,
                   const std::vector<std::vector<double>>& cells) {
    std::ostringstream os;
    AppendComment(os, comment);
    os << "id";
    for (const std::string& id : m.ids) os << "," << id;
    os << "\n";
    for (int i = 0; i < m.size(); ++i) {
      os << m.ids[i];
      for (int j = 0; j < m.size(); ++j) os << "," << Fmt(cells[i][j]);
      os << "\n";
    }
    WriteTextFile(path, os.str());
  };
  write(mean_path, m.mean);
  write(stderr_path, m.stderr_);
}

void WriteTraceCsv(const AdaptationTrace& trace, const std::string& path,
                   const std::string& comment) {
  std::ostringstream os;
  AppendComment(os, comment);
  os << "episode,score,perfect_rate\n";
  for (const EvalPoint& p : trace.points) {
    os << p.episode << "," << Fmt(p.score) << "," << Fmt(p.perfect_rate)
       << "\n";
  }
  WriteTextFile(path, os.str());
}

void WriteTrainLogCsv(const std::vector<TrainLogRow>& log,
                      const std::string& path, const std::string& comment) {
  std::ostringstream os;
  AppendComment(os, comment);
  os << "step,loss,eval_score\n";
  for (const TrainLogRow& r : log) {
    os << r.step << "," << Fmt(r.loss) << "," << Fmt(r.eval_score) << "\n";
  }
  WriteTextFile(path, os.str());
}

std::string RenderLineChart(const std::string& title,
                            const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<double>& xs,
                            const std::vector<Series>& series) {
  const int kW = 680, kH = 420;
  AxisScale x, y;
  x.px0 = 70;
  x.px1 = 500;
  y.px0 = 40;   // top
  y.px1 = 370;  // bottom
  x.lo = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
  x.hi = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
  y.lo = 0.0;
  y.hi = 1.0;
  bool first = true;
  for (const Series& s : series) {
    for (double v : s.ys) {
      if (first) {
        y.lo = y.hi = v;
        first = false;
      }
      y.lo = std::min(y.lo, v);
      y.hi = std::max(y.hi, v);
    }
  }
  PadRange(&x.lo, &x.hi);
  PadRange(&y.lo, &y.hi);

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW
      << "' height='" << kH << "' viewBox='0 0 " << kW << " " << kH
      << "'>\n";
  // y grows downward in SVG; flip the pixel range.
  AxisScale yf = y;
  yf.px0 = y.px1;
  yf.px1 = y.px0;
  AxisScale yaxes = y;  // for DrawAxes tick placement
  DrawAxes(svg, x, yaxes, title, xlabel, ylabel, kW, kH);

  for (size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % 10];
    if (s.ys.size() >= 2) {
      svg << "<polyline fill='none' stroke='" << color
          << "' stroke-width='1.8' points='";
      for (size_t i = 0; i < s.ys.size() && i < xs.size(); ++i) {
        svg << x.Map(xs[i]) << "," << yf.Map(s.ys[i]) << " ";
      }
      svg << "'/>\n";
    }
    for (size_t i = 0; i < s.ys.size() && i < xs.size(); ++i) {
      svg << "<circle cx='" << x.Map(xs[i]) << "' cy='" << yf.Map(s.ys[i])
          << "' r='2.6' fill='" << color << "'/>\n";
    }
    double ly = 50 + 18.0 * si;
    svg << "<rect x='512' y='" << ly - 9 << "' width='12' height='12' fill='"
        << color << "'/>\n";
    svg << "<text x='528' y='" << ly + 2
        << "' font-size='11' font-family='sans-serif'>" << EscapeXml(s.label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// DrawAxes expects y in screen coordinates with px1 = bottom; the tick
// values it prints run lo..hi bottom-up, so flip values instead.
std::string RenderBarChart(const std::string& title, const std::string& ylabel,
                           const std::vector<std::string>& labels,
                           const std::vector<double>& values) {
  const int kW = 680, kH = 420;
  double lo = 0.0, hi = 1.0;
  if (!values.empty()) {
    lo = std::min(0.0, *std::min_element(values.begin(), values.end()));
    hi = *std::max_element(values.begin(), values.end());
  }
  PadRange(&lo, &hi);
  double px0 = 70, px1 = 620, py0 = 40, py1 = 350;
  auto ymap = [&](double v) { return py1 - (v - lo) / (hi - lo) * (py1 - py0); };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW
      << "' height='" << kH << "' viewBox='0 0 " << kW << " " << kH
      << "'>\n";
  svg << "<rect width='" << kW << "' height='" << kH << "' fill='white'/>\n";
  svg << "<text x='" << (px0 + px1) / 2
      << "' y='22' text-anchor='middle' font-size='15' "
         "font-family='sans-serif'>"
      << EscapeXml(title) << "</text>\n";
  svg << "<line x1='" << px0 << "' y1='" << py1 << "' x2='" << px1 << "' y2='"
      << py1 << "' stroke='black'/>\n";
  svg << "<line x1='" << px0 << "' y1='" << py0 << "' x2='" << px0 << "' y2='"
      << py1 << "' stroke='black'/>\n";
  for (int t = 0; t <= 4; ++t) {
    double v = lo + (hi - lo) * t / 4.0;
    svg << "<text x='" << px0 - 7 << "' y='" << ymap(v) + 4
        << "' text-anchor='end' font-size='11' font-family='sans-serif'>"
        << FmtShort(v) << "</text>\n";
  }
  svg << "<text x='16' y='" << (py0 + py1) / 2
      << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
         "transform='rotate(-90 16 "
      << (py0 + py1) / 2 << ")'>" << EscapeXml(ylabel) << "</text>\n";

  int n = static_cast<int>(values.size());
  double band = (px1 - px0) / std::max(1, n);
  for (int i = 0; i < n; ++i) {
    double bx = px0 + band * i + band * 0.15;
    double bw = band * 0.7;
    double top = ymap(std::max(values[i], 0.0));
    double bot = ymap(std::min(values[i], 0.0));
    svg << "<rect x='" << bx << "' y='" << top << "' width='" << bw
        << "' height='" << std::max(0.5, bot - top) << "' fill='"
        << kPalette[i % 10] << "'/>\n";
    svg << "<text x='" << bx + bw / 2 << "' y='" << py1 + 16
        << "' text-anchor='middle' font-size='10' font-family='sans-serif'>"
        << EscapeXml(i < static_cast<int>(labels.size()) ? labels[i] : "")
        << "</text>\n";
    svg << "<text x='" << bx + bw / 2 << "' y='" << top - 4
        << "' text-anchor='middle' font-size='10' font-family='sans-serif'>"
        << FmtShort(values[i]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string RenderHeatmap(const std::string& title, const CrossPlayMatrix& m,
                          double max_score) {
  int n = m.size();
  double cell = std::min(64.0, 420.0 / std::max(1, n));
  double ox = 120, oy = 80;
  int kW = static_cast<int>(ox + cell * n + 40);
  int kH = static_cast<int>(oy + cell * n + 40);

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW
      << "' height='" << kH << "' viewBox='0 0 " << kW << " " << kH
      << "'>\n";
  svg << "<rect width='" << kW << "' height='" << kH << "' fill='white'/>\n";
  svg << "<text x='" << ox + cell * n / 2
      << "' y='24' text-anchor='middle' font-size='15' "
         "font-family='sans-serif'>"
      << EscapeXml(title) << "</text>\n";
  for (int i = 0; i < n; ++i) {
    svg << "<text x='" << ox - 6 << "' y='" << oy + cell * i + cell / 2 + 4
        << "' text-anchor='end' font-size='10' font-family='sans-serif'>"
        << EscapeXml(m.ids[i]) << "</text>\n";
    svg << "<text x='" << ox + cell * i + cell / 2 << "' y='" << oy - 6
        << "' text-anchor='middle' font-size='10' font-family='sans-serif'>"
        << EscapeXml(m.ids[i]) << "</text>\n";
    for (int j = 0; j < n; ++j) {
      double f = max_score > 0.0
                     ? std::clamp(m.mean[i][j] / max_score, 0.0, 1.0)
                     : 0.0;
      int r = static_cast<int>(255 + f * (31 - 255));
      int g = static_cast<int>(255 + f * (119 - 255));
      int b = static_cast<int>(255 + f * (180 - 255));
      svg << "<rect x='" << ox + cell * j << "' y='" << oy + cell * i
          << "' width='" << cell << "' height='" << cell << "' fill='rgb(" << r
          << "," << g << "," << b << ")' stroke='#999'/>\n";
      svg << "<text x='" << ox + cell * j + cell / 2 << "' y='"
          << oy + cell * i + cell / 2 + 4
          << "' text-anchor='middle' font-size='10' font-family='sans-serif'"
          << (f > 0.6 ? " fill='white'" : "") << ">" << FmtShort(m.mean[i][j])
          << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

std::vector<Series> CurveFamily(const AdaptationReport& r,
                                const std::vector<std::vector<double>>& per,
                                const std::vector<double>& agg) {
  std::vector<Series> out;
  for (size_t p = 0; p < r.partner_ids.size(); ++p) {
    out.push_back({r.partner_ids[p], per[p]});
  }
  out.push_back({"aggregate", agg});
  return out;
}

void WriteCurveCsv(const std::string& path, const AdaptationReport& r,
                   const std::vector<std::vector<double>>& per,
                   const std::vector<double>& agg,
                   const std::string& comment) {
  std::ostringstream os;
  AppendComment(os, comment);
  os << "episode";
  for (const std::string& id : r.partner_ids) os << "," << id;
  os << ",aggregate\n";
  for (size_t t = 0; t < r.episodes.size(); ++t) {
    os << r.episodes[t];
    for (size_t p = 0; p < per.size(); ++p) os << "," << Fmt(per[p][t]);
    os << "," << Fmt(agg[t]) << "\n";
  }
  WriteTextFile(path, os.str());
}

}  // namespace

std::vector<std::string> EmitReportArtifacts(const AdaptationReport& r,
                                             const std::string& dir,
                                             const std::string& comment) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto path = [&](const std::string& name) { return dir + "/" + name; };
  auto put = [&](const std::string& name, const std::string& content) {
    WriteTextFile(path(name), content);
    written.push_back(path(name));
  };

  std::vector<double> xs(r.episodes.begin(), r.episodes.end());
  put("crossplay_heatmap.svg",
      RenderHeatmap("Partner cross-play (mean score)", r.partner_matrix,
                    r.max_score));
  put("total_regret.svg",
      RenderLineChart("Total adaptation regret", "episodes", "regret", xs,
                      CurveFamily(r, r.total_regret_curves,
                                  r.aggregate_total_regret)));
  put("average_regret.svg",
      RenderLineChart("Average adaptation regret", "episodes",
                      "regret / episode", xs,
                      CurveFamily(r, r.average_regret_curves,
                                  r.aggregate_average_regret)));
  put("score_curves.svg",
      RenderLineChart("Evaluated score", "episodes", "score", xs,
                      CurveFamily(r, r.score_curves, r.aggregate_score)));
  put("perfect_rate.svg",
      RenderLineChart("Perfect-score rate", "episodes", "rate", xs,
                      CurveFamily(r, r.perfect_rate_curves,
                                  r.aggregate_perfect_rate)));

  std::vector<double> finals;
  for (const auto& c : r.score_curves) finals.push_back(c.back());
  put("final_scores.svg",
      RenderBarChart("Final evaluated score per partner", "score",
                     r.partner_ids, finals));

  WriteCurveCsv(path("score_curves.csv"), r, r.score_curves,
                r.aggregate_score, comment);
  written.push_back(path("score_curves.csv"));
  WriteCurveCsv(path("total_regret.csv"), r, r.total_regret_curves,
                r.aggregate_total_regret, comment);
  written.push_back(path("total_regret.csv"));
  WriteCurveCsv(path("average_regret.csv"), r, r.average_regret_curves,
                r.aggregate_average_regret, comment);
  written.push_back(path("average_regret.csv"));
  WriteCurveCsv(path("perfect_rate.csv"), r, r.perfect_rate_curves,
                r.aggregate_perfect_rate, comment);
  written.push_back(path("perfect_rate.csv"));
  WriteMatrixCsv(r.partner_matrix, path("partner_matrix_mean.csv"),
                 path("partner_matrix_stderr.csv"), comment);
  written.push_back(path("partner_matrix_mean.csv"));
  written.push_back(path("partner_matrix_stderr.csv"));
  return written;
}

std::vector<std::string> EmitSweepArtifacts(const SweepReport& sweep,
                                            const std::string& dir,
                                            const std::string& comment) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& content) {
    WriteTextFile(dir + "/" + name, content);
    written.push_back(dir + "/" + name);
  };

  // Group points by hyperparameter name; one panel pair per group.
  std::map<std::string, std::vector<const SweepPoint*>> groups;
  for (const SweepPoint& p : sweep.points) groups[p.hp_name].push_back(&p);

  for (const auto& [name, pts] : groups) {
    std::vector<double> xs(pts[0]->report.episodes.begin(),
                           pts[0]->report.episodes.end());
    std::vector<Series> regret, perfect;
    for (const SweepPoint* p : pts) {
      regret.push_back(
          {name + "=" + p->hp_value, p->report.aggregate_average_regret});
      perfect.push_back(
          {name + "=" + p->hp_value, p->report.aggregate_perfect_rate});
    }
    put("sweep_" + name + "_average_regret.svg",
        RenderLineChart("Average adaptation regret vs " + name, "episodes",
                        "regret / episode", xs, regret));
    put("sweep_" + name + "_perfect_rate.svg",
        RenderLineChart("Perfect-score rate vs " + name, "episodes", "rate",
                        xs, perfect));
  }

  std::ostringstream os;
  AppendComment(os, comment);
  os << "hp_name,hp_value,final_average_regret,final_perfect_rate\n";
  for (const SweepPoint& p : sweep.points) {
    os << p.hp_name << "," << p.hp_value << ","
       << Fmt(p.final_average_regret) << "," << Fmt(p.final_perfect_rate)
       << "\n";
  }
  WriteTextFile(dir + "/sweep_summary.csv", os.str());
  written.push_back(dir + "/sweep_summary.csv");
  return written;
}

}  // namespace fsc
