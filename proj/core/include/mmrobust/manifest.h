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

#ifndef MMROBUST_MANIFEST_H_
#define MMROBUST_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mmrobust/perturbation.h"

namespace mmrobust {

inline constexpr std::size_t kImageManifestSize = 85;
inline constexpr std::size_t kTextManifestSize = 60;

struct BenchmarkManifest {
  std::string dataset_id;
  std::uint64_t global_seed = 0;
  std::vector<PerturbationSpec> entries;

  Modality modality() const;

  // Checks the full-benchmark invariants: one modality, exact cardinality,
  // valid severities, no duplicate (method, severity).
  void validate() const;
  // The same checks minus cardinality, for subset runs.
  void validate_entries() const;

  std::string to_json() const;
  static BenchmarkManifest from_json(std::string_view json);

  void save(const std::filesystem::path& path) const;
  static BenchmarkManifest load(const std::filesystem::path& path);

  friend bool operator==(const BenchmarkManifest&,
                         const BenchmarkManifest&) = default;
};

// Full methods x severities cross product in table order, severity
// ascending. The entry list does not depend on the seed.
BenchmarkManifest build_manifest(Modality modality, std::uint64_t global_seed,
                                 std::string dataset_id = {});

}  // namespace mmrobust

#endif  // MMROBUST_MANIFEST_H_
