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

#include "mmrobust/dataset.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <tuple>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "mmrobust/error.h"

namespace mmrobust {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& path, ErrorCode missing) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(missing, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void sort_records(std::vector<CaptionRecord>& records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.image_id, a.caption_index) < std::tie(b.image_id, b.caption_index);
  });
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.find('/') == std::string::npos &&
         id.find('\\') == std::string::npos && id.find("__") == std::string::npos &&
         id != "." && id != "..";
}

}  // namespace

std::string CaptionRecord::key() const { return image_id + "#" + std::to_string(caption_index); }

std::vector<std::string> CaptionDataset::image_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, path] : images) out.push_back(id);
  return out;
}

std::vector<const CaptionRecord*> CaptionDataset::captions_of(const std::string& image_id) const {
  std::vector<const CaptionRecord*> out;
  for (const auto& r : records) {
    if (r.image_id == image_id) out.push_back(&r);
  }
  return out;
}

std::vector<CaptionRecord> read_captions(const fs::path& path) {
  std::istringstream in(slurp(path, ErrorCode::kMalformedCaptions));
  std::vector<CaptionRecord> out;
  std::set<std::pair<std::string, int>> seen;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
    CaptionRecord r;
    try {
      const json j = json::parse(line);
      r.image_id = j.at("image_id").get<std::string>();
      r.caption_index = j.at("caption_index").get<int>();
      r.text = j.at("text").get<std::string>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedCaptions, where + e.what());
    }
    if (!valid_id(r.image_id)) {
      throw Error(ErrorCode::kMalformedCaptions, where + "unusable image_id '" + r.image_id + "'");
    }
    if (r.caption_index < 0) {
      throw Error(ErrorCode::kMalformedCaptions, where + "negative caption_index");
    }
    if (!seen.emplace(r.image_id, r.caption_index).second) {
      throw Error(ErrorCode::kMalformedCaptions, where + "duplicate caption " + r.key());
    }
    out.push_back(std::move(r));
  }
  sort_records(out);
  return out;
}

void write_captions(const fs::path& path, std::vector<CaptionRecord> records) {
  sort_records(records);
  std::ofstream out(path, std::ios::binary);
  for (const auto& r : records) {
    out << json{{"image_id", r.image_id}, {"caption_index", r.caption_index}, {"text", r.text}}
               .dump()
        << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

fs::path find_image(const fs::path& dir, const std::string& id) {
  for (const char* ext : {".png", ".jpg", ".jpeg"}) {
    fs::path p = dir / (id + ext);
    std::error_code ec;
    if (fs::is_regular_file(p, ec)) return p;
  }
  return {};
}

CaptionDataset load_caption_dataset(const fs::path& images_dir, const fs::path& captions_file) {
  CaptionDataset ds;
  ds.records = read_captions(captions_file);
  for (const auto& r : ds.records) {
    if (ds.images.count(r.image_id)) continue;
    fs::path p = find_image(images_dir, r.image_id);
    if (p.empty()) {
      throw Error(ErrorCode::kMissingImage,
                  "no image file for '" + r.image_id + "' in " + images_dir.string());
    }
    ds.images.emplace(r.image_id, std::move(p));
  }
  return ds;
}

void save_caption_dataset(const CaptionDataset& dataset, const fs::path& images_dir,
                          const fs::path& captions_file) {
  std::error_code ec;
  fs::create_directories(images_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + images_dir.string());
  for (const auto& [id, src] : dataset.images) {
    fs::copy_file(src, images_dir / (id + src.extension().string()),
                  fs::copy_options::overwrite_existing, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot copy " + src.string() + ": " + ec.message());
  }
  write_captions(captions_file, dataset.records);
}

std::vector<CaptionRecord> import_coco_captions(const fs::path& annotations) {
  std::vector<CaptionRecord> out;
  try {
    const json doc = json::parse(slurp(annotations, ErrorCode::kMalformedCaptions));
    std::map<long long, std::string> names;
    for (const auto& img : doc.at("images")) {
      names[img.at("id").get<long long>()] =
          fs::path(img.at("file_name").get<std::string>()).stem().string();
    }
    struct Ann {
      long long id;
      long long image;
      std::string caption;
    };
    std::vector<Ann> anns;
    for (const auto& a : doc.at("annotations")) {
      anns.push_back({a.at("id").get<long long>(), a.at("image_id").get<long long>(),
                      a.at("caption").get<std::string>()});
    }
    std::sort(anns.begin(), anns.end(), [](const Ann& a, const Ann& b) { return a.id < b.id; });
    std::map<std::string, int> next_index;
    for (const auto& a : anns) {
      const auto it = names.find(a.image);
      if (it == names.end()) {
        throw Error(ErrorCode::kMalformedCaptions,
                    "annotation " + std::to_string(a.id) + " references unknown image");
      }
      std::string text = a.caption;
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
      out.push_back({it->second, next_index[it->second]++, std::move(text)});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedCaptions, annotations.string() + ": " + e.what());
  }
  sort_records(out);
  return out;
}

std::map<std::string, std::vector<std::string>> load_object_labels(const fs::path& path) {
  try {
    const json doc = json::parse(slurp(path, ErrorCode::kMissingLabels));
    auto labels = doc.get<std::map<std::string, std::vector<std::string>>>();
    for (const auto& [id, names] : labels) {
      if (names.empty()) {
        throw Error(ErrorCode::kMissingLabels, "image '" + id + "' has no object labels");
      }
    }
    return labels;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMissingLabels, path.string() + ": " + e.what());
  }
}

}  // namespace mmrobust
