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

#include "mmrobust/image.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmrobust/error.h"
#include "mmrobust/seed.h"

namespace mmrobust {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

Rgb8Image::Rgb8Image(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height * kChannels, 0);
}

Rgb8Image::Rgb8Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height * kChannels) {
    throw Error(ErrorCode::kInvalidArgument,
                "pixel buffer length " + std::to_string(pixels_.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

Rgb8Image Rgb8Image::filled(int width, int height, std::uint8_t r,
                            std::uint8_t g, std::uint8_t b) {
  Rgb8Image out(width, height);
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); i += kChannels) {
    px[i] = r;
    px[i + 1] = g;
    px[i + 2] = b;
  }
  return out;
}

FloatImage::FloatImage(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(static_cast<std::size_t>(width) * height * kChannels, 0.0f);
}

FloatImage FloatImage::from_rgb8(const Rgb8Image& image) {
  FloatImage out(image.width(), image.height());
  const auto src = image.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) out.values_[i] = src[i] / 255.0f;
  return out;
}

Rgb8Image FloatImage::to_rgb8() const {
  std::vector<std::uint8_t> px(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    float v = values_[i];
    // NaN compares false everywhere and lands on 0.
    v = v > 0.0f ? std::min(v, 1.0f) : 0.0f;
    px[i] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
  }
  return Rgb8Image(width_, height_, std::move(px));
}

void FloatImage::clamp01() {
  for (float& v : values_) v = v > 0.0f ? std::min(v, 1.0f) : 0.0f;
}

std::vector<double> luma(const Rgb8Image& image) {
  const auto px = image.pixels();
  std::vector<double> out(px.size() / 3);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 0.299 * px[3 * i] + 0.587 * px[3 * i + 1] + 0.114 * px[3 * i + 2];
  }
  return out;
}

std::uint64_t content_hash(const Rgb8Image& image) {
  return Fnv1a64{}
      .u32(static_cast<std::uint32_t>(image.width()))
      .u32(static_cast<std::uint32_t>(image.height()))
      .bytes(image.pixels())
      .digest();
}

}  // namespace mmrobust
