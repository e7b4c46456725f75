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

#ifndef MMROBUST_SERVICES_H_
#define MMROBUST_SERVICES_H_

#include <string>
#include <string_view>
#include <vector>

#include "mmrobust/image.h"

namespace mmrobust::services {

using Embedding = std::vector<float>;

struct BoundingBox {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Detection {
  std::string label;
  double score = 0;  // confidence in [0, 1]
  BoundingBox bbox;

  friend bool operator==(const Detection&, const Detection&) = default;
};

// The four neural capabilities the pipeline consumes. Implementations must
// be safe for concurrent calls.

class EmbeddingClient {
 public:
  virtual ~EmbeddingClient() = default;
  // One vector per input, equal dimension. Inputs must be nonempty.
  virtual std::vector<Embedding> embed_texts(const std::vector<std::string>& texts) = 0;
};

class DetectionClient {
 public:
  virtual ~DetectionClient() = default;
  // Returns only detections scoring >= threshold whose label belongs to the
  // prompt vocabulary.
  virtual std::vector<Detection> detect_objects(const Rgb8Image& image,
                                                std::string_view prompt,
                                                double threshold) = 0;
};

class TransformClient {
 public:
  virtual ~TransformClient() = default;
  virtual std::string transform_text(std::string_view text, std::string_view style) = 0;
};

class StylizeClient {
 public:
  virtual ~StylizeClient() = default;
  virtual Rgb8Image stylize_image(const Rgb8Image& image, int severity) = 0;
};

// Styles accepted by /v1/transform.
inline constexpr std::string_view kStyles[] = {"formal", "casual", "passive",
                                               "active", "back_translate"};
bool is_known_style(std::string_view style);

// "dog. cake. broccoli" from {"dog", "cake", "broccoli"}.
std::string join_prompt(const std::vector<std::string>& names);
// Accepts both ". " and "," separators; trims whitespace, drops empties.
std::vector<std::string> split_prompt(std::string_view prompt);

// Shared request validation; throws Error(kInvalidArgument).
void validate_embed_request(const std::vector<std::string>& texts);
void validate_detect_request(std::string_view prompt, double threshold);
void validate_transform_request(std::string_view text, std::string_view style);
void validate_stylize_request(int severity);

}  // namespace mmrobust::services

#endif  // MMROBUST_SERVICES_H_
