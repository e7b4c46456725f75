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

#ifndef MMROBUST_IMAGE_H_
#define MMROBUST_IMAGE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace mmrobust {

// 8-bit interleaved RGB raster, row-major. The interchange format for
// files, the wire protocol and the public perturbation API.
class Rgb8Image {
 public:
  static constexpr int kChannels = 3;

  // Black image. Throws Error(kInvalidArgument) for non-positive sizes.
  Rgb8Image(int width, int height);
  // Takes ownership of a buffer of exactly 3 * width * height bytes.
  Rgb8Image(int width, int height, std::vector<std::uint8_t> pixels);

  static Rgb8Image filled(int width, int height, std::uint8_t r,
                          std::uint8_t g, std::uint8_t b);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  std::uint8_t at(int x, int y, int c) const {
    return pixels_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c) { return pixels_[index(x, y, c)]; }

  friend bool operator==(const Rgb8Image&, const Rgb8Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

// Normalized float raster used for all perturbation arithmetic. Values are
// nominally in [0, 1]; to_rgb8() clamps before quantizing.
class FloatImage {
 public:
  static constexpr int kChannels = 3;

  FloatImage(int width, int height);

  static FloatImage from_rgb8(const Rgb8Image& image);
  Rgb8Image to_rgb8() const;

  int width() const { return width_; }
  int height() const { return height_; }

  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

  float at(int x, int y, int c) const { return values_[index(x, y, c)]; }
  float& at(int x, int y, int c) { return values_[index(x, y, c)]; }

  void clamp01();

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int width_;
  int height_;
  std::vector<float> values_;
};

// ITU-R BT.601 luma in [0, 255] per pixel.
std::vector<double> luma(const Rgb8Image& image);

// Stable content digest over dimensions and pixel bytes.
std::uint64_t content_hash(const Rgb8Image& image);

}  // namespace mmrobust

#endif  // MMROBUST_IMAGE_H_
