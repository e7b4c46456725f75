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

#include "mmrobust/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mmrobust/error.h"

namespace mmrobust {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int decimals_for(std::string_view metric) {
  static constexpr std::string_view kPercentScale[] = {"rsum", "tr1", "tr5", "tr10", "ir1",
                                                       "ir5",  "ir10", "accuracy", "mor"};
  return std::find(std::begin(kPercentScale), std::end(kPercentScale), metric) !=
                 std::end(kPercentScale)
             ? 1
             : 3;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string out = buf;
  if (out.find_first_not_of("-0.") == std::string::npos) out = out.substr(out[0] == '-');
  return out;
}

void write_text_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

void BenchmarkReport::finalize() {
  method_averages.clear();
  for (const auto& row : rows) {
    const auto it = row.metrics.find(primary_metric);
    if (it == row.metrics.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + row.method + " lacks metric " + primary_metric);
    }
    if (method_averages.empty() || method_averages.back().method != row.method) {
      method_averages.push_back({row.method, 0.0});
    }
  }
  for (auto& avg : method_averages) {
    double sum = 0.0;
    int n = 0;
    for (const auto& row : rows) {
      if (row.method != avg.method) continue;
      sum += row.metrics.at(primary_metric);
      ++n;
    }
    avg.value = sum / n;
  }
  if (method_averages.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "report has no perturbed rows");
  }
  average = 0.0;
  for (const auto& avg : method_averages) average += avg.value;
  average /= static_cast<double>(method_averages.size());

  const auto clean_it = clean.find(primary_metric);
  if (clean_it == clean.end()) {
    throw Error(ErrorCode::kInvalidArgument, "clean baseline lacks " + primary_metric);
  }
  if (clean_it->second == 0.0) throw Error(ErrorCode::kZeroCleanScore, "clean score is zero");
  mmi = (clean_it->second - average) / clean_it->second;
}

std::string BenchmarkReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"method", r.method},
                         {"severity", r.severity},
                         {"metrics", r.metrics},
                         {"dropped", r.dropped},
                         {"clean_matched", r.clean_matched ? json(*r.clean_matched) : json()}});
  }
  json averages = json::array();
  for (const auto& a : method_averages) {
    averages.push_back({{"method", a.method}, {"value", a.value}});
  }
  json doc = {
      {"dataset", dataset},
      {"adapter", adapter},
      {"modality", name(modality)},
      {"primary_metric", primary_metric},
      {"clean", clean},
      {"rows", rows_json},
      {"method_averages", averages},
      {"average", average},
      {"mmi", mmi},
      {"metadata",
       {{"seed", metadata.seed},
        {"alpha0", metadata.alpha0},
        {"n_max", metadata.n_max},
        {"thresholds", metadata.thresholds},
        {"dropped", metadata.dropped},
        {"corpus_size", metadata.corpus_size},
        {"stochastic", metadata.stochastic}}},
      {"fid", optional_number(fid)},
      {"clip_fid", optional_number(clip_fid)},
  };
  return doc.dump(2) + "\n";
}

BenchmarkReport BenchmarkReport::from_json(std::string_view text) {
  BenchmarkReport r;
  try {
    const json doc = json::parse(text);
    r.dataset = doc.at("dataset").get<std::string>();
    r.adapter = doc.at("adapter").get<std::string>();
    const auto modality = parse_modality(doc.at("modality").get<std::string>());
    if (!modality) throw Error(ErrorCode::kInvalidArgument, "report: bad modality");
    r.modality = *modality;
    r.primary_metric = doc.at("primary_metric").get<std::string>();
    r.clean = doc.at("clean").get<MetricValues>();
    for (const auto& row : doc.at("rows")) {
      ReportRow out;
      out.method = row.at("method").get<std::string>();
      out.severity = row.at("severity").get<int>();
      out.metrics = row.at("metrics").get<MetricValues>();
      out.dropped = row.at("dropped").get<std::size_t>();
      if (!row.at("clean_matched").is_null()) {
        out.clean_matched = row.at("clean_matched").get<MetricValues>();
      }
      r.rows.push_back(std::move(out));
    }
    for (const auto& a : doc.at("method_averages")) {
      r.method_averages.push_back({a.at("method").get<std::string>(), a.at("value").get<double>()});
    }
    r.average = doc.at("average").get<double>();
    r.mmi = doc.at("mmi").get<double>();
    const auto& m = doc.at("metadata");
    r.metadata.seed = m.at("seed").get<std::uint64_t>();
    r.metadata.alpha0 = m.at("alpha0").get<double>();
    r.metadata.n_max = m.at("n_max").get<int>();
    r.metadata.thresholds = m.at("thresholds").get<std::vector<double>>();
    r.metadata.dropped = m.at("dropped").get<std::size_t>();
    r.metadata.corpus_size = m.at("corpus_size").get<std::size_t>();
    r.metadata.stochastic = m.at("stochastic").get<bool>();
    r.fid = read_optional(doc, "fid");
    r.clip_fid = read_optional(doc, "clip_fid");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("report: ") + e.what());
  }
  return r;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string render_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "method,severity,metric,value\n";
  for (const auto& [metric, value] : report.clean) {
    out << "clean,0," << metric << ',' << format_fixed(value, 6) << '\n';
  }
  for (const auto& row : report.rows) {
    for (const auto& [metric, value] : row.metrics) {
      out << row.method << ',' << row.severity << ',' << metric << ','
          << format_fixed(value, 6) << '\n';
    }
  }
  return out.str();
}

std::string render_plot_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "method,value\n";
  out << "clean," << format_fixed(report.clean.at(report.primary_metric), 6) << '\n';
  for (const auto& a : report.method_averages) {
    out << a.method << ',' << format_fixed(a.value, 6) << '\n';
  }
  return out.str();
}

std::string render_markdown(const BenchmarkReport& report) {
  const int dp = decimals_for(report.primary_metric);
  std::ostringstream out;
  out << "# " << report.dataset << " / " << report.adapter << " (" << name(report.modality)
      << ", " << report.primary_metric << ")\n\n";

  out << "| Model | Clean |";
  for (const auto& a : report.method_averages) out << ' ' << a.method << " |";
  out << " Ave | MMI |\n|---|---|";
  for (std::size_t i = 0; i < report.method_averages.size(); ++i) out << "---|";
  out << "---|---|\n";

  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 1; i < report.method_averages.size(); ++i) {
    if (report.method_averages[i].value < report.method_averages[lo].value) lo = i;
    if (report.method_averages[i].value > report.method_averages[hi].value) hi = i;
  }
  out << "| " << report.adapter << " | "
      << format_fixed(report.clean.at(report.primary_metric), dp) << " |";
  for (std::size_t i = 0; i < report.method_averages.size(); ++i) {
    std::string cell = format_fixed(report.method_averages[i].value, dp);
    if (i == lo) cell = "**" + cell + "**";
    if (i == hi) cell = "<u>" + cell + "</u>";
    out << ' ' << cell << " |";
  }
  const double pct = report.mmi * 100.0;
  out << ' ' << format_fixed(report.average, dp) << " | "
      << (pct >= 0 ? "↓ " : "↑ ") << format_fixed(std::abs(pct), 1) << "% |\n\n";

  int max_severity = 1;
  for (const auto& row : report.rows) max_severity = std::max(max_severity, row.severity);
  out << "| Method |";
  for (int s = 1; s <= max_severity; ++s) out << " s" << s << " |";
  out << " Ave | Dropped |\n|---|";
  for (int s = 0; s <= max_severity + 1; ++s) out << "---|";
  out << '\n';
  for (const auto& a : report.method_averages) {
    out << "| " << a.method << " |";
    std::size_t dropped = 0;
    for (int s = 1; s <= max_severity; ++s) {
      const auto it = std::find_if(report.rows.begin(), report.rows.end(), [&](const auto& r) {
        return r.method == a.method && r.severity == s;
      });
      if (it == report.rows.end()) {
        out << " - |";
      } else {
        out << ' ' << format_fixed(it->metrics.at(report.primary_metric), dp) << " |";
        dropped += it->dropped;
      }
    }
    out << ' ' << format_fixed(a.value, dp) << " | " << dropped << " |\n";
  }
  return out.str();
}

void emit_report(const BenchmarkReport& report, ReportFormat format, const fs::path& path) {
  switch (format) {
    case ReportFormat::kJson:
      write_text_file(path, report.to_json());
      break;
    case ReportFormat::kMarkdown:
      write_text_file(path, render_markdown(report));
      break;
    case ReportFormat::kCsv: {
      write_text_file(path, render_csv(report));
      fs::path plot = path;
      plot.replace_filename(path.stem().string() + ".plot.csv");
      write_text_file(plot, render_plot_csv(report));
      break;
    }
  }
}

}  // namespace mmrobust
