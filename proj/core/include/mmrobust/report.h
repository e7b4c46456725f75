//
// Copyright 2026 The mmrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef MMROBUST_REPORT_H_
#define MMROBUST_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmrobust/perturbation.h"

namespace mmrobust {

using MetricValues = std::map<std::string, double>;

struct ReportRow {
  std::string method;
  int severity = 1;
  MetricValues metrics;
  std::size_t dropped = 0;
  // Clean scores over the samples that survived the fidelity gate; only set
  // when some were dropped.
  std::optional<MetricValues> clean_matched;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct MethodAverage {
  std::string method;
  double value = 0;  // primary metric averaged over severities

  friend bool operator==(const MethodAverage&, const MethodAverage&) = default;
};

struct RunMetadata {
  std::uint64_t seed = 0;
  double alpha0 = 0;
  int n_max = 0;
  std::vector<double> thresholds;
  std::size_t dropped = 0;
  std::size_t corpus_size = 0;
  bool stochastic = false;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct BenchmarkReport {
  std::string dataset;
  std::string adapter;
  Modality modality = Modality::kImage;
  std::string primary_metric;
  MetricValues clean;
  std::vector<ReportRow> rows;
  std::vector<MethodAverage> method_averages;
  double average = 0;
  double mmi = 0;  // fraction; positive is a drop
  RunMetadata metadata;
  // Reserved for feature-based image metrics.
  std::optional<double> fid;
  std::optional<double> clip_fid;

  // Averages severities within each method (in row order), then methods,
  // and derives MMI against the clean primary score.
  void finalize();

  std::string to_json() const;
  static BenchmarkReport from_json(std::string_view json);

  friend bool operator==(const BenchmarkReport&, const BenchmarkReport&) = default;
};

enum class ReportFormat { kCsv, kJson, kMarkdown };
std::optional<ReportFormat> parse_report_format(std::string_view text);

// method,severity,metric,value with the clean baseline as method "clean",
// severity 0.
std::string render_csv(const BenchmarkReport& report);
// Bar-chart input: method,value of the severity-averaged primary metric.
std::string render_plot_csv(const BenchmarkReport& report);
// Summary row shaped like the benchmark tables (clean, per-method averages,
// ave, MMI) with the lowest method in bold and the highest underlined,
// followed by a severity breakdown.
std::string render_markdown(const BenchmarkReport& report);

// Writes `path` in the requested format; CSV output also writes the plot
// table next to it as <stem>.plot.csv. Throws Error(kIoError).
void emit_report(const BenchmarkReport& report, ReportFormat format,
                 const std::filesystem::path& path);

// Shared formatting helpers.
std::string format_fixed(double value, int decimals);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mmrobust

#endif  // MMROBUST_REPORT_H_
