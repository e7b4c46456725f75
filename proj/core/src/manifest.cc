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

#include "mmrobust/manifest.h"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "mmrobust/error.h"

namespace mmrobust {

using nlohmann::json;

Modality BenchmarkManifest::modality() const {
  if (entries.empty()) {
    throw Error(ErrorCode::kMalformedManifest, "manifest has no entries");
  }
  return entries.front().modality();
}

void BenchmarkManifest::validate_entries() const {
  const Modality m = modality();
  std::set<std::pair<std::string_view, int>> seen;
  for (const auto& e : entries) {
    if (e.modality() != m) {
      throw Error(ErrorCode::kMalformedManifest, "mixed modalities");
    }
    e.validate();
    if (!seen.emplace(e.method_name(), e.severity).second) {
      throw Error(ErrorCode::kMalformedManifest,
                  "duplicate entry " + std::string(e.method_name()) + "/s" +
                      std::to_string(e.severity));
    }
  }
}

void BenchmarkManifest::validate() const {
  validate_entries();
  const Modality m = modality();
  const std::size_t expected =
      m == Modality::kImage ? kImageManifestSize : kTextManifestSize;
  if (entries.size() != expected) {
    throw Error(ErrorCode::kMalformedManifest,
                std::string(name(m)) + " manifest needs " +
                    std::to_string(expected) + " entries, got " +
                    std::to_string(entries.size()));
  }
}

std::string BenchmarkManifest::to_json() const {
  json doc;
  doc["dataset_id"] = dataset_id;
  doc["global_seed"] = global_seed;
  json list = json::array();
  for (const auto& e : entries) {
    list.push_back({{"modality", name(e.modality())},
                    {"method", e.method_name()},
                    {"severity", e.severity}});
  }
  doc["entries"] = std::move(list);
  return doc.dump(2) + "\n";
}

BenchmarkManifest BenchmarkManifest::from_json(std::string_view text) {
  BenchmarkManifest out;
  try {
    const json doc = json::parse(text);
    out.dataset_id = doc.at("dataset_id").get<std::string>();
    out.global_seed = doc.at("global_seed").get<std::uint64_t>();
    for (const auto& e : doc.at("entries")) {
      const auto modality = parse_modality(e.at("modality").get<std::string>());
      if (!modality) {
        throw Error(ErrorCode::kMalformedManifest,
                    "bad modality " + e.at("modality").dump());
      }
      out.entries.push_back(PerturbationSpec::parse(
          *modality, e.at("method").get<std::string>(),
          e.at("severity").get<int>()));
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kMalformedManifest, ex.what());
  }
  return out;
}

void BenchmarkManifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  out << to_json();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

BenchmarkManifest BenchmarkManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

BenchmarkManifest build_manifest(Modality modality, std::uint64_t global_seed,
                                 std::string dataset_id) {
  BenchmarkManifest out;
  out.dataset_id = std::move(dataset_id);
  out.global_seed = global_seed;
  if (modality == Modality::kImage) {
    for (ImageMethod m : all_image_methods()) {
      for (int s = 1; s <= severity_levels(m); ++s) {
        out.entries.push_back(PerturbationSpec::image(m, s));
      }
    }
  } else {
    for (TextMethod m : all_text_methods()) {
      for (int s = 1; s <= severity_levels(m); ++s) {
        out.entries.push_back(PerturbationSpec::text(m, s));
      }
    }
  }
  return out;
}

}  // namespace mmrobust
