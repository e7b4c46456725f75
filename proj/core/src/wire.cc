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

#include "mmrobust/wire.h"

#include <sodium.h>

#include "json.hpp"

#include "mmrobust/error.h"
#include "mmrobust/image_io.h"

namespace mmrobust::services::wire {
namespace {

using nlohmann::json;

json parse(std::string_view body, ErrorCode code) {
  json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw Error(code, "body is not a JSON object");
  return j;
}

template <typename T>
T field(const json& j, const char* key, ErrorCode code) {
  const auto it = j.find(key);
  if (it == j.end()) throw Error(code, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(code, std::string("field '") + key + "' has the wrong type");
  }
}

Rgb8Image image_field(const json& j, const char* key, ErrorCode code) {
  const auto b64 = field<std::string>(j, key, code);
  try {
    return decode_png(base64_decode(b64));
  } catch (const Error& e) {
    throw Error(code, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> data) {
  const std::size_t len = sodium_base64_ENCODED_LEN(data.size(), sodium_base64_VARIANT_ORIGINAL);
  std::string out(len, '\0');
  sodium_bin2base64(out.data(), len, data.data(), data.size(), sodium_base64_VARIANT_ORIGINAL);
  out.resize(len - 1);
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
  std::size_t written = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), "\r\n", &written,
                        &end, sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::kCodecError, "invalid base64");
  }
  out.resize(written);
  return out;
}

std::string encode_embed_request(const std::vector<std::string>& texts) {
  return json{{"texts", texts}}.dump();
}

std::vector<std::string> decode_embed_request(std::string_view body) {
  const auto j = parse(body, ErrorCode::kInvalidArgument);
  auto texts = field<std::vector<std::string>>(j, "texts", ErrorCode::kInvalidArgument);
  validate_embed_request(texts);
  return texts;
}

std::string encode_embed_response(const std::vector<Embedding>& vectors) {
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().size();
  return json{{"dim", dim}, {"vectors", vectors}}.dump();
}

std::vector<Embedding> decode_embed_response(std::string_view body) {
  constexpr auto kCode = ErrorCode::kMalformedResponse;
  const auto j = parse(body, kCode);
  const auto dim = field<std::size_t>(j, "dim", kCode);
  auto vectors = field<std::vector<Embedding>>(j, "vectors", kCode);
  for (const auto& v : vectors) {
    if (v.size() != dim) throw Error(kCode, "embedding length differs from dim");
  }
  return vectors;
}

std::string encode_detect_request(const Rgb8Image& image, std::string_view prompt,
                                  double threshold) {
  return json{{"image_png_b64", base64_encode(encode_png(image))},
              {"prompt", prompt},
              {"threshold", threshold}}
      .dump();
}

DetectRequest decode_detect_request(std::string_view body) {
  constexpr auto kCode = ErrorCode::kInvalidArgument;
  const auto j = parse(body, kCode);
  DetectRequest req{image_field(j, "image_png_b64", kCode),
                    field<std::string>(j, "prompt", kCode),
                    field<double>(j, "threshold", kCode)};
  validate_detect_request(req.prompt, req.threshold);
  return req;
}

std::string encode_detect_response(const std::vector<Detection>& detections) {
  json arr = json::array();
  for (const auto& d : detections) {
    arr.push_back({{"label", d.label},
                   {"score", d.score},
                   {"bbox", {d.bbox.x, d.bbox.y, d.bbox.w, d.bbox.h}}});
  }
  return json{{"detections", arr}}.dump();
}

std::vector<Detection> decode_detect_response(std::string_view body) {
  constexpr auto kCode = ErrorCode::kMalformedResponse;
  const auto j = parse(body, kCode);
  const auto arr = field<json>(j, "detections", kCode);
  if (!arr.is_array()) throw Error(kCode, "'detections' is not an array");
  std::vector<Detection> out;
  for (const auto& d : arr) {
    if (!d.is_object()) throw Error(kCode, "detection is not an object");
    const auto box = field<std::vector<double>>(d, "bbox", kCode);
    if (box.size() != 4) throw Error(kCode, "bbox must have 4 numbers");
    out.push_back({field<std::string>(d, "label", kCode), field<double>(d, "score", kCode),
                   {box[0], box[1], box[2], box[3]}});
  }
  return out;
}

std::string encode_transform_request(std::string_view text, std::string_view style) {
  return json{{"text", text}, {"style", style}}.dump();
}

TransformRequest decode_transform_request(std::string_view body) {
  constexpr auto kCode = ErrorCode::kInvalidArgument;
  const auto j = parse(body, kCode);
  TransformRequest req{field<std::string>(j, "text", kCode),
                       field<std::string>(j, "style", kCode)};
  validate_transform_request(req.text, req.style);
  return req;
}

std::string encode_transform_response(std::string_view text) {
  return json{{"text", text}}.dump();
}

std::string decode_transform_response(std::string_view body) {
  return field<std::string>(parse(body, ErrorCode::kMalformedResponse), "text",
                            ErrorCode::kMalformedResponse);
}

std::string encode_stylize_request(const Rgb8Image& image, int severity) {
  return json{{"image_png_b64", base64_encode(encode_png(image))}, {"severity", severity}}
      .dump();
}

StylizeRequest decode_stylize_request(std::string_view body) {
  constexpr auto kCode = ErrorCode::kInvalidArgument;
  const auto j = parse(body, kCode);
  StylizeRequest req{image_field(j, "image_png_b64", kCode), field<int>(j, "severity", kCode)};
  validate_stylize_request(req.severity);
  return req;
}

std::string encode_stylize_response(const Rgb8Image& image) {
  return json{{"image_png_b64", base64_encode(encode_png(image))}}.dump();
}

Rgb8Image decode_stylize_response(std::string_view body) {
  constexpr auto kCode = ErrorCode::kMalformedResponse;
  return image_field(parse(body, kCode), "image_png_b64", kCode);
}

std::string encode_error(std::string_view message) {
  return json{{"error", message}}.dump();
}

std::string decode_error(std::string_view body) {
  const json j = json::parse(body, nullptr, false);
  if (!j.is_discarded() && j.is_object()) {
    const auto it = j.find("error");
    if (it != j.end() && it->is_string()) return it->get<std::string>();
  }
  return std::string(body);
}

}  // namespace mmrobust::services::wire
