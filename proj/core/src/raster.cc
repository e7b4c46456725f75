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

#include "raster.h"

#include <cmath>

namespace mmrobust::image::detail {

Plane channel(const FloatImage& img, int c) {
  Plane p(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) p.at(x, y) = img.at(x, y, c);
  }
  return p;
}

void set_channel(FloatImage& img, int c, const Plane& p) {
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) img.at(x, y, c) = p.at(x, y);
  }
}

std::vector<float> gaussian_kernel(double sigma, double truncate) {
  const int radius = std::max(1, static_cast<int>(std::ceil(truncate * sigma)));
  std::vector<float> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[i + radius] = static_cast<float>(w);
    sum += w;
  }
  for (float& w : k) w = static_cast<float>(w / sum);
  return k;
}

void gaussian_blur(Plane& p, double sigma, double truncate) {
  if (sigma <= 0.0) return;
  const auto k = gaussian_kernel(sigma, truncate);
  const int r = static_cast<int>(k.size() / 2);
  std::vector<float> line;

  line.resize(p.width);
  std::vector<int> xi(p.width + 2 * r);
  for (int i = 0; i < static_cast<int>(xi.size()); ++i) xi[i] = reflect101(i - r, p.width);
  for (int y = 0; y < p.height; ++y) {
    const float* row = &p.v[static_cast<std::size_t>(y) * p.width];
    for (int x = 0; x < p.width; ++x) {
      float acc = 0.0f;
      for (int t = 0; t <= 2 * r; ++t) acc += k[t] * row[xi[x + t]];
      line[x] = acc;
    }
    std::copy(line.begin(), line.end(), p.v.begin() + static_cast<std::ptrdiff_t>(y) * p.width);
  }

  std::vector<int> yi(p.height + 2 * r);
  for (int i = 0; i < static_cast<int>(yi.size()); ++i) yi[i] = reflect101(i - r, p.height);
  Plane tmp(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    float* out = &tmp.v[static_cast<std::size_t>(y) * p.width];
    for (int t = 0; t <= 2 * r; ++t) {
      const float w = k[t];
      const float* src = &p.v[static_cast<std::size_t>(yi[y + t]) * p.width];
      for (int x = 0; x < p.width; ++x) out[x] += w * src[x];
    }
  }
  p.v.swap(tmp.v);
}

void gaussian_blur(FloatImage& img, double sigma, double truncate) {
  for (int c = 0; c < 3; ++c) {
    Plane p = channel(img, c);
    gaussian_blur(p, sigma, truncate);
    set_channel(img, c, p);
  }
}

FloatImage convolve(const FloatImage& img, const Plane& kernel) {
  const int rx = kernel.width / 2;
  const int ry = kernel.height / 2;
  const int w = img.width();
  const int h = img.height();
  std::vector<int> xi(w + 2 * rx);
  for (int i = 0; i < static_cast<int>(xi.size()); ++i) xi[i] = reflect101(i - rx, w);
  std::vector<int> yi(h + 2 * ry);
  for (int i = 0; i < static_cast<int>(yi.size()); ++i) yi[i] = reflect101(i - ry, h);

  FloatImage out(w, h);
  const auto src = img.values();
  auto dst = out.values();
  for (int y = 0; y < h; ++y) {
    for (int ky = 0; ky < kernel.height; ++ky) {
      const std::size_t row = static_cast<std::size_t>(yi[y + ky]) * w;
      for (int kx = 0; kx < kernel.width; ++kx) {
        const float wgt = kernel.at(kx, ky);
        if (wgt == 0.0f) continue;
        for (int x = 0; x < w; ++x) {
          const std::size_t s = (row + xi[x + kx]) * 3;
          const std::size_t d = (static_cast<std::size_t>(y) * w + x) * 3;
          dst[d] += wgt * src[s];
          dst[d + 1] += wgt * src[s + 1];
          dst[d + 2] += wgt * src[s + 2];
        }
      }
    }
  }
  return out;
}

float bilinear(const Plane& p, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const float ax = static_cast<float>(x - fx);
  const float ay = static_cast<float>(y - fy);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const int xa = reflect101(x0, p.width);
  const int xb = reflect101(x0 + 1, p.width);
  const int ya = reflect101(y0, p.height);
  const int yb = reflect101(y0 + 1, p.height);
  const float top = p.at(xa, ya) + ax * (p.at(xb, ya) - p.at(xa, ya));
  const float bot = p.at(xa, yb) + ax * (p.at(xb, yb) - p.at(xa, yb));
  return top + ay * (bot - top);
}

float bilinear(const FloatImage& img, double x, double y, int c) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const float ax = static_cast<float>(x - fx);
  const float ay = static_cast<float>(y - fy);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const int xa = reflect101(x0, img.width());
  const int xb = reflect101(x0 + 1, img.width());
  const int ya = reflect101(y0, img.height());
  const int yb = reflect101(y0 + 1, img.height());
  const float top = img.at(xa, ya, c) + ax * (img.at(xb, ya, c) - img.at(xa, ya, c));
  const float bot = img.at(xa, yb, c) + ax * (img.at(xb, yb, c) - img.at(xa, yb, c));
  return top + ay * (bot - top);
}

Plane motion_blur(const Plane& p, int radius, double sigma, double angle_rad) {
  std::vector<float> weights(radius + 1);
  double sum = 0.0;
  for (int i = 0; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    weights[i] = static_cast<float>(w);
    sum += w;
  }
  for (float& w : weights) w = static_cast<float>(w / sum);
  const double dx = std::cos(angle_rad);
  const double dy = std::sin(angle_rad);

  Plane out(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      float acc = 0.0f;
      for (int i = 0; i <= radius; ++i) {
        acc += weights[i] * bilinear(p, x - i * dx, y - i * dy);
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

Plane clipped_zoom(const Plane& p, double zoom) {
  const double cx = (p.width - 1) / 2.0;
  const double cy = (p.height - 1) / 2.0;
  Plane out(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      out.at(x, y) = bilinear(p, cx + (x - cx) / zoom, cy + (y - cy) / zoom);
    }
  }
  return out;
}

}  // namespace mmrobust::image::detail
