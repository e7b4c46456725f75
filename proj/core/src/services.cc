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
#include <cctype>
#include <cmath>
#include <iterator>

#include "mmrobust/error.h"
#include "mmrobust/seed.h"
#include "mmrobust/services.h"
#include "mmrobust/stub_services.h"

namespace mmrobust::services {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

bool is_known_style(std::string_view style) {
  return std::find(std::begin(kStyles), std::end(kStyles), style) != std::end(kStyles);
}

std::string join_prompt(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ". ";
    out += n;
  }
  return out;
}

std::vector<std::string> split_prompt(std::string_view prompt) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    std::string t = trim(current);
    if (!t.empty()) out.push_back(std::move(t));
    current.clear();
  };
  for (char c : prompt) {
    if (c == '.' || c == ',') {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return out;
}

void validate_embed_request(const std::vector<std::string>& texts) {
  for (const auto& t : texts) {
    if (t.empty()) throw Error(ErrorCode::kInvalidArgument, "embed: empty text");
  }
}

void validate_detect_request(std::string_view prompt, double threshold) {
  if (split_prompt(prompt).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "detect: empty prompt");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "detect: threshold must be in (0, 1)");
  }
}

void validate_transform_request(std::string_view text, std::string_view style) {
  if (text.empty()) throw Error(ErrorCode::kInvalidArgument, "transform: empty text");
  if (!is_known_style(style)) {
    throw Error(ErrorCode::kInvalidArgument,
                "transform: unknown style '" + std::string(style) + "'");
  }
}

void validate_stylize_request(int severity) {
  if (severity < 1 || severity > 5) {
    throw Error(ErrorCode::kInvalidArgument, "stylize: severity must be in 1..5");
  }
}

// ---------------------------------------------------------------------------

HashedBagOfWordsEmbedder::HashedBagOfWordsEmbedder(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "embedding dim must be >= 1");
}

Embedding HashedBagOfWordsEmbedder::embed(std::string_view text) const {
  Embedding v(static_cast<std::size_t>(dim_), 0.0f);
  std::string token;
  bool any = false;
  auto flush = [&] {
    if (token.empty()) return;
    v[fnv1a64(token) % static_cast<std::uint64_t>(dim_)] += 1.0f;
    any = true;
    token.clear();
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      flush();
    }
  }
  flush();
  if (!any) v[fnv1a64(text) % static_cast<std::uint64_t>(dim_)] = 1.0f;
  double norm = 0.0;
  for (float x : v) norm += static_cast<double>(x) * x;
  norm = std::sqrt(norm);
  for (float& x : v) x = static_cast<float>(x / norm);
  return v;
}

std::vector<Embedding> HashedBagOfWordsEmbedder::embed_texts(
    const std::vector<std::string>& texts) {
  validate_embed_request(texts);
  {
    std::lock_guard lock(mu_);
    ++calls_;
  }
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed(t));
  return out;
}

std::size_t HashedBagOfWordsEmbedder::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

ConstantEmbedder::ConstantEmbedder(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "embedding dim must be >= 1");
}

std::vector<Embedding> ConstantEmbedder::embed_texts(const std::vector<std::string>& texts) {
  validate_embed_request(texts);
  Embedding unit(static_cast<std::size_t>(dim_), 0.0f);
  unit[0] = 1.0f;
  return std::vector<Embedding>(texts.size(), unit);
}

void ScriptedDetector::script(const Rgb8Image& image, std::vector<Detection> detections) {
  script(content_hash(image), std::move(detections));
}

void ScriptedDetector::script(std::uint64_t image_hash, std::vector<Detection> detections) {
  std::lock_guard lock(mu_);
  scripts_[image_hash] = std::move(detections);
}

std::vector<Detection> ScriptedDetector::detect_objects(const Rgb8Image& image,
                                                        std::string_view prompt,
                                                        double threshold) {
  validate_detect_request(prompt, threshold);
  std::vector<std::string> vocab;
  for (auto& n : split_prompt(prompt)) vocab.push_back(lower(std::move(n)));

  std::vector<Detection> out;
  std::lock_guard lock(mu_);
  const auto it = scripts_.find(content_hash(image));
  if (it == scripts_.end()) return out;
  for (const auto& d : it->second) {
    if (d.score < threshold) continue;
    if (std::find(vocab.begin(), vocab.end(), lower(d.label)) == vocab.end()) continue;
    out.push_back(d);
  }
  return out;
}

std::string IdentityTransformStub::transform_text(std::string_view text, std::string_view style) {
  validate_transform_request(text, style);
  return std::string(text);
}

FixtureTransformStub::FixtureTransformStub(
    std::map<std::pair<std::string, std::string>, std::string> table)
    : table_(std::move(table)) {}

FixtureTransformStub FixtureTransformStub::example_table() {
  const std::string clean = "An orange metal bowl strainer filled with apples.";
  FixtureTransformStub stub;
  stub.add(clean, "formal", "An orange metal bowl strainer contains apples.");
  stub.add(clean, "casual", "An orange metal bowl is filled with apples.");
  stub.add(clean, "passive", "Some apples are in an orange metal bowl strainer.");
  stub.add(clean, "active", "There are apples in an orange metal bowl strainer.");
  stub.add(clean, "back_translate", "Apples are placed in an orange metal bowl strainer.");
  return stub;
}

void FixtureTransformStub::add(std::string text, std::string style, std::string output) {
  table_[{std::move(text), std::move(style)}] = std::move(output);
}

std::string FixtureTransformStub::transform_text(std::string_view text, std::string_view style) {
  validate_transform_request(text, style);
  const auto it = table_.find({std::string(text), std::string(style)});
  return it == table_.end() ? std::string(text) : it->second;
}

Rgb8Image LutStylizeStub::stylize_image(const Rgb8Image& image, int severity) {
  validate_stylize_request(severity);
  Rgb8Image out(image.width(), image.height());
  const auto src = image.pixels();
  auto dst = out.pixels();
  const int rot = severity % 3;
  for (std::size_t i = 0; i < src.size(); i += 3) {
    for (int c = 0; c < 3; ++c) {
      dst[i + c] = static_cast<std::uint8_t>(255 - src[i + (c + rot) % 3]);
    }
  }
  return out;
}

}  // namespace mmrobust::services
