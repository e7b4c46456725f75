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

// Internal raster helpers shared by the corruption implementations.

#ifndef MMROBUST_SRC_RASTER_H_
#define MMROBUST_SRC_RASTER_H_

#include <vector>

#include "mmrobust/image.h"

namespace mmrobust::image::detail {

// Mirror index without repeating the edge sample (OpenCV BORDER_REFLECT_101).
inline int reflect101(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

// Single-channel float raster.
struct Plane {
  Plane(int w, int h, float fill = 0.0f)
      : width(w), height(h), v(static_cast<std::size_t>(w) * h, fill) {}

  float at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }

  int width;
  int height;
  std::vector<float> v;
};

Plane channel(const FloatImage& img, int c);
void set_channel(FloatImage& img, int c, const Plane& p);

// Normalized 1-D Gaussian taps over [-ceil(truncate*sigma), +...].
std::vector<float> gaussian_kernel(double sigma, double truncate);

void gaussian_blur(Plane& p, double sigma, double truncate = 4.0);
void gaussian_blur(FloatImage& img, double sigma, double truncate = 4.0);

// Dense 2-D correlation with a centered odd-sized kernel, reflect borders.
FloatImage convolve(const FloatImage& img, const Plane& kernel);

float bilinear(const Plane& p, double x, double y);
float bilinear(const FloatImage& img, double x, double y, int c);

// One-sided line kernel: taps 0..radius along the angle, weighted
// exp(-i^2 / 2 sigma^2), bilinear taps with reflect borders.
Plane motion_blur(const Plane& p, int radius, double sigma, double angle_rad);

// Center crop by 1/zoom and rescale back to the original size (bilinear).
Plane clipped_zoom(const Plane& p, double zoom);

}  // namespace mmrobust::image::detail

#endif  // MMROBUST_SRC_RASTER_H_
