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

#ifndef MMROBUST_TESTS_SUPPORT_FIXTURES_H_
#define MMROBUST_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "mmrobust/dataset.h"
#include "mmrobust/image.h"

namespace mmrobust::testing {

// Procedural photo-like scenes: gradient sky, flat shapes and multi-octave
// texture of varying strength. Deterministic per index.
Rgb8Image fixture_image(int index, int size = 128);
std::vector<Rgb8Image> fixture_images(int count = 20, int size = 128);

// Five captions per image for the two-image end-to-end fixture.
std::vector<CaptionRecord> fixture_captions();

// Writes fixture_image(0..n-1) as img<i>.png plus captions.jsonl under
// `dir` and returns the loaded dataset.
CaptionDataset write_fixture_dataset(const std::filesystem::path& dir, int images = 2,
                                     int size = 64);

// Published retrieval rows: six recalls and the printed RSUM. ViLT
// fine-tuned on Flickr30K (1K test) and MSCOCO (5K test), image
// perturbations, severities averaged.
struct RecallRow {
  std::string label;
  double tr1, tr5, tr10, ir1, ir5, ir10;
  double printed_rsum;
};
std::vector<RecallRow> published_recall_rows();

// Published Flickr30K image-retrieval summaries: clean RSUM, RSUM averaged
// over the 17 image perturbations, and the printed MMI in percent.
struct MmiRow {
  std::string model;
  double clean;
  double average;
  double printed_mmi_pct;
};
std::vector<MmiRow> published_mmi_rows();

// Published per-method RSUM columns (17 image perturbations in the usual
// order) for Flickr30K models whose printed average is the column mean.
struct MethodColumnsRow {
  std::string model;
  double clean;
  std::vector<double> columns;
  double printed_average;
  double printed_mmi_pct;
};
std::vector<MethodColumnsRow> published_method_columns();

// Fresh empty directory below the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "mmrobust");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace mmrobust::testing

#endif  // MMROBUST_TESTS_SUPPORT_FIXTURES_H_
