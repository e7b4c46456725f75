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

#ifndef MMROBUST_STUB_SERVICES_H_
#define MMROBUST_STUB_SERVICES_H_

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mmrobust/services.h"

namespace mmrobust::services {

// L2-normalized hashed bag-of-words. Tokens are lowercased alphanumeric
// runs; a text without any falls back to hashing the whole string.
class HashedBagOfWordsEmbedder final : public EmbeddingClient {
 public:
  static constexpr int kDefaultDim = 256;

  explicit HashedBagOfWordsEmbedder(int dim = kDefaultDim);

  std::vector<Embedding> embed_texts(const std::vector<std::string>& texts) override;
  Embedding embed(std::string_view text) const;

  // Number of embed_texts calls served; lets tests observe batching.
  std::size_t calls() const;

 private:
  int dim_;
  mutable std::mutex mu_;
  std::size_t calls_ = 0;
};

// Every text maps to the same unit vector, so any candidate is a perfect
// match for its original.
class ConstantEmbedder final : public EmbeddingClient {
 public:
  explicit ConstantEmbedder(int dim = HashedBagOfWordsEmbedder::kDefaultDim);
  std::vector<Embedding> embed_texts(const std::vector<std::string>& texts) override;

 private:
  int dim_;
};

// Scripted detections keyed by image content. Unknown images yield nothing.
class ScriptedDetector final : public DetectionClient {
 public:
  void script(const Rgb8Image& image, std::vector<Detection> detections);
  void script(std::uint64_t image_hash, std::vector<Detection> detections);

  std::vector<Detection> detect_objects(const Rgb8Image& image, std::string_view prompt,
                                        double threshold) override;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::uint64_t, std::vector<Detection>> scripts_;
};

// Echoes its input for every known style.
class IdentityTransformStub final : public TransformClient {
 public:
  std::string transform_text(std::string_view text, std::string_view style) override;
};

// Fixed (text, style) -> output table; texts not in the table are echoed.
class FixtureTransformStub final : public TransformClient {
 public:
  FixtureTransformStub() = default;
  explicit FixtureTransformStub(std::map<std::pair<std::string, std::string>, std::string> table);

  // Rewrites of the COCO example caption "An orange metal bowl strainer
  // filled with apples." for each style.
  static FixtureTransformStub example_table();

  void add(std::string text, std::string style, std::string output);
  std::string transform_text(std::string_view text, std::string_view style) override;

 private:
  std::map<std::pair<std::string, std::string>, std::string> table_;
};

// Deterministic non-identity stand-in for AdaIN: every channel value goes
// through the inverting LUT v -> 255 - v, then channels rotate by
// severity mod 3.
class LutStylizeStub final : public StylizeClient {
 public:
  Rgb8Image stylize_image(const Rgb8Image& image, int severity) override;
};

}  // namespace mmrobust::services

#endif  // MMROBUST_STUB_SERVICES_H_
