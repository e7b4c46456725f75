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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "mmrobust/error.h"
#include "mmrobust/harness.h"
#include "mmrobust/image_io.h"
#include "mmrobust/metrics.h"

namespace mmrobust::harness {
namespace fs = std::filesystem;
using nlohmann::json;

MorTable mor_pipeline(const fs::path& gt_dir,
                      const std::vector<std::pair<std::string, fs::path>>& perturbed,
                      const std::map<std::string, std::vector<std::string>>& labels,
                      services::DetectionClient& detector, const std::vector<double>& thresholds,
                      int workers) {
  if (thresholds.empty()) throw Error(ErrorCode::kInvalidArgument, "no thresholds");
  for (double t : thresholds) {
    if (!(t > 0.0 && t < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "thresholds must be in (0, 1)");
    }
  }
  const auto gt = list_images(gt_dir);
  if (gt.empty()) throw Error(ErrorCode::kEmptyInput, "no images in " + gt_dir.string());
  for (const auto& [id, path] : gt) {
    const auto it = labels.find(id);
    if (it == labels.end() || it->second.empty()) {
      throw Error(ErrorCode::kMissingLabels, "no object labels for image '" + id + "'");
    }
  }

  MorTable table;
  table.thresholds = thresholds;
  table.columns.push_back("GT");
  for (const auto& [name, dir] : perturbed) table.columns.push_back(name);

  std::vector<std::string> ids;
  for (const auto& [id, path] : gt) ids.push_back(id);
  const double floor = *std::min_element(thresholds.begin(), thresholds.end());
  const std::size_t n = ids.size();
  // counts[column * T + threshold]
  std::vector<std::atomic<long long>> counts(table.columns.size() * thresholds.size());

  parallel_for(table.columns.size() * n, workers, [&](std::size_t item) {
    const std::size_t column = item / n;
    const std::string& id = ids[item % n];
    fs::path path = gt.at(id);
    if (column > 0) {
      path = find_image(perturbed[column - 1].second, id);
      if (path.empty()) {
        throw Error(ErrorCode::kMissingImage, "no image '" + id + "' in " +
                                                  perturbed[column - 1].second.string());
      }
    }
    const auto detections =
        detector.detect_objects(read_image(path), services::join_prompt(labels.at(id)), floor);
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      const auto hits = std::count_if(detections.begin(), detections.end(),
                                      [&](const auto& d) { return d.score >= thresholds[t]; });
      counts[column * thresholds.size() + t] += hits;
    }
  });

  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    std::vector<long long> row_counts;
    std::vector<double> row_mor;
    const long long n_gt = counts[t].load();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const long long n_p = counts[c * thresholds.size() + t].load();
      row_counts.push_back(n_p);
      row_mor.push_back(metrics::mor(n_gt, n_p));
    }
    table.counts.push_back(std::move(row_counts));
    table.mor.push_back(std::move(row_mor));
  }
  return table;
}

std::string MorTable::to_markdown() const {
  std::ostringstream out;
  out << "| Threshold |";
  for (const auto& c : columns) out << ' ' << c << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
  out << '\n';
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    out << "| " << format_fixed(thresholds[t], 1) << " |";
    for (double v : mor[t]) out << ' ' << format_fixed(v, 2) << " |";
    out << '\n';
  }
  return out.str();
}

std::string MorTable::to_csv() const {
  std::ostringstream out;
  out << "threshold,column,count,mor\n";
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << format_fixed(thresholds[t], 2) << ',' << columns[c] << ',' << counts[t][c] << ','
          << format_fixed(mor[t][c], 6) << '\n';
    }
  }
  return out.str();
}

std::string MorTable::to_json() const {
  return json{{"thresholds", thresholds}, {"columns", columns}, {"counts", counts}, {"mor", mor}}
             .dump(2) +
         "\n";
}

double SsimAudit::at(const std::string& method, int severity) const {
  const auto it = mean.find({method, severity});
  return it == mean.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

std::string SsimAudit::to_markdown() const {
  std::ostringstream out;
  out << "| Severity |";
  for (const auto& m : methods) out << ' ' << m << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < methods.size(); ++i) out << "---|";
  out << '\n';
  for (int s = 1; s <= max_severity; ++s) {
    out << "| " << s << " |";
    for (const auto& m : methods) {
      const double v = at(m, s);
      out << ' ' << (std::isnan(v) ? std::string("-") : format_fixed(v, 2)) << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::string SsimAudit::to_csv() const {
  std::ostringstream out;
  out << "method,severity,ssim,pairs\n";
  for (const auto& m : methods) {
    for (int s = 1; s <= max_severity; ++s) {
      const auto it = mean.find({m, s});
      if (it == mean.end()) continue;
      out << m << ',' << s << ',' << format_fixed(it->second, 6) << ',' << pairs.at({m, s})
          << '\n';
    }
  }
  return out.str();
}

std::string SsimAudit::to_json() const {
  json cells = json::array();
  for (const auto& m : methods) {
    for (int s = 1; s <= max_severity; ++s) {
      const auto it = mean.find({m, s});
      if (it == mean.end()) continue;
      cells.push_back({{"method", m}, {"severity", s}, {"ssim", it->second},
                       {"pairs", pairs.at({m, s})}});
    }
  }
  return json{{"cells", cells}, {"skipped", skipped}}.dump(2) + "\n";
}

SsimAudit audit_ssim(const std::map<std::string, fs::path>& originals,
                     const fs::path& perturbed_tree, int workers) {
  const auto manifest = BenchmarkManifest::load(perturbed_tree / "manifest.json");
  manifest.validate_entries();
  if (manifest.modality() != Modality::kImage) {
    throw Error(ErrorCode::kInvalidArgument, "SSIM audit needs an image benchmark tree");
  }
  if (originals.empty()) throw Error(ErrorCode::kEmptyInput, "no original images");

  std::vector<std::string> ids;
  std::vector<Rgb8Image> clean;
  for (const auto& [id, path] : originals) {
    ids.push_back(id);
    clean.push_back(read_image(path));
  }

  SsimAudit audit;
  for (const auto& spec : manifest.entries) {
    const std::string m(spec.method_name());
    if (std::find(audit.methods.begin(), audit.methods.end(), m) == audit.methods.end()) {
      audit.methods.push_back(m);
    }
    audit.max_severity = std::max(audit.max_severity, spec.severity);
  }

  const std::size_t n = ids.size();
  std::vector<double> values(manifest.entries.size() * n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(values.size(), workers, [&](std::size_t item) {
    const auto& spec = manifest.entries[item / n];
    const std::size_t i = item % n;
    const fs::path p = perturbed_tree / "images" / perturbed_image_name(ids[i], spec);
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) {
      throw Error(ErrorCode::kMissingImage, "missing perturbed image " + p.string());
    }
    try {
      values[item] = metrics::ssim(clean[i], read_image(p));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDimensionMismatch) throw;
    }
  });

  for (std::size_t e = 0; e < manifest.entries.size(); ++e) {
    const auto& spec = manifest.entries[e];
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = values[e * n + i];
      if (std::isnan(v)) {
        ++audit.skipped;
      } else {
        sum += v;
        ++count;
      }
    }
    const std::pair<std::string, int> key{std::string(spec.method_name()), spec.severity};
    audit.pairs[key] = count;
    if (count > 0) audit.mean[key] = sum / static_cast<double>(count);
  }
  return audit;
}

}  // namespace mmrobust::harness
