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

#ifndef MMROBUST_DATASET_H_
#define MMROBUST_DATASET_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mmrobust {

struct CaptionRecord {
  std::string image_id;
  int caption_index = 0;
  std::string text;

  // "<image_id>#<caption_index>"
  std::string key() const;

  friend bool operator==(const CaptionRecord&, const CaptionRecord&) = default;
};

struct CaptionDataset {
  std::vector<CaptionRecord> records;  // sorted by (image_id, caption_index)
  std::map<std::string, std::filesystem::path> images;

  std::vector<std::string> image_ids() const;
  std::vector<const CaptionRecord*> captions_of(const std::string& image_id) const;

  friend bool operator==(const CaptionDataset&, const CaptionDataset&) = default;
};

// JSON lines of {"image_id","caption_index","text"}. Throws
// Error(kMalformedCaptions) with the offending line number.
std::vector<CaptionRecord> read_captions(const std::filesystem::path& path);
void write_captions(const std::filesystem::path& path, std::vector<CaptionRecord> records);

// `<id>.png`, `<id>.jpg` or `<id>.jpeg` inside `dir`; empty when absent.
std::filesystem::path find_image(const std::filesystem::path& dir, const std::string& id);

// Throws Error(kMissingImage) when a captioned image has no file.
CaptionDataset load_caption_dataset(const std::filesystem::path& images_dir,
                                    const std::filesystem::path& captions_file);
// Copies the images into `images_dir` and writes the captions file.
void save_caption_dataset(const CaptionDataset& dataset, const std::filesystem::path& images_dir,
                          const std::filesystem::path& captions_file);

// COCO captions annotations ({"images":[...],"annotations":[...]}). Image
// ids become file-name stems; caption indices follow annotation id order.
std::vector<CaptionRecord> import_coco_captions(const std::filesystem::path& annotations);

// {"<image_id>": ["dog", "cake"], ...}. Throws Error(kMissingLabels).
std::map<std::string, std::vector<std::string>> load_object_labels(
    const std::filesystem::path& path);

}  // namespace mmrobust

#endif  // MMROBUST_DATASET_H_
