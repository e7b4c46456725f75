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

#ifndef MMROBUST_WIRE_H_
#define MMROBUST_WIRE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmrobust/image.h"
#include "mmrobust/services.h"

// JSON bodies of the model-service protocol. All endpoints are POST with
// UTF-8 JSON; images travel as base64-encoded PNG.
//
//   /v1/embed      {"texts":[s,...]}                 -> {"dim":n,"vectors":[[f,...],...]}
//   /v1/detect     {"image_png_b64":s,"prompt":s,"threshold":f}
//                                                     -> {"detections":[{"label","score","bbox":[x,y,w,h]}]}
//   /v1/transform  {"text":s,"style":s}              -> {"text":s}
//   /v1/stylize    {"image_png_b64":s,"severity":n}  -> {"image_png_b64":s}
//   errors         4xx/5xx with {"error":s}
//
// Request decoders throw Error(kInvalidArgument); response decoders throw
// Error(kMalformedResponse).
namespace mmrobust::services::wire {

inline constexpr std::string_view kEmbedPath = "/v1/embed";
inline constexpr std::string_view kDetectPath = "/v1/detect";
inline constexpr std::string_view kTransformPath = "/v1/transform";
inline constexpr std::string_view kStylizePath = "/v1/stylize";

std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(std::string_view text);

std::string encode_embed_request(const std::vector<std::string>& texts);
std::vector<std::string> decode_embed_request(std::string_view body);
std::string encode_embed_response(const std::vector<Embedding>& vectors);
std::vector<Embedding> decode_embed_response(std::string_view body);

struct DetectRequest {
  Rgb8Image image;
  std::string prompt;
  double threshold;
};
std::string encode_detect_request(const Rgb8Image& image, std::string_view prompt,
                                  double threshold);
DetectRequest decode_detect_request(std::string_view body);
std::string encode_detect_response(const std::vector<Detection>& detections);
std::vector<Detection> decode_detect_response(std::string_view body);

struct TransformRequest {
  std::string text;
  std::string style;
};
std::string encode_transform_request(std::string_view text, std::string_view style);
TransformRequest decode_transform_request(std::string_view body);
std::string encode_transform_response(std::string_view text);
std::string decode_transform_response(std::string_view body);

struct StylizeRequest {
  Rgb8Image image;
  int severity;
};
std::string encode_stylize_request(const Rgb8Image& image, int severity);
StylizeRequest decode_stylize_request(std::string_view body);
std::string encode_stylize_response(const Rgb8Image& image);
Rgb8Image decode_stylize_response(std::string_view body);

std::string encode_error(std::string_view message);
// Best effort: the "error" member, or the raw body when it is not JSON.
std::string decode_error(std::string_view body);

}  // namespace mmrobust::services::wire

#endif  // MMROBUST_WIRE_H_
