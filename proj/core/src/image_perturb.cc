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

#include "mmrobust/image_perturb.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mmrobust/error.h"
#include "mmrobust/image_io.h"
#include "mmrobust/rng.h"
#include "mmrobust/services.h"
#include "raster.h"

namespace mmrobust::image {

using detail::Plane;

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

int index_of(int severity) {
  if (severity < 1 || severity > kMaxSeverity) {
    throw Error(ErrorCode::kInvalidArgument,
                "severity must be in 1..5, got " + std::to_string(severity));
  }
  return severity - 1;
}

void require_size(const Rgb8Image& img, int min_side, const char* what) {
  if (img.width() < min_side || img.height() < min_side) {
    throw Error(ErrorCode::kInputTooSmall,
                std::string(what) + " needs at least " + std::to_string(min_side) +
                    "x" + std::to_string(min_side) + " pixels, got " +
                    std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
}

FloatImage gaussian_noise(FloatImage x, double sigma, Rng& rng) {
  for (float& v : x.values()) v += static_cast<float>(sigma * rng.normal());
  x.clamp01();
  return x;
}

FloatImage speckle_noise(FloatImage x, double sigma, Rng& rng) {
  for (float& v : x.values()) v += v * static_cast<float>(sigma * rng.normal());
  x.clamp01();
  return x;
}

// Whole pixels become white or black with probability `amount`.
FloatImage shot_noise(FloatImage x, double amount, Rng& rng) {
  auto v = x.values();
  for (std::size_t i = 0; i < v.size(); i += 3) {
    if (!rng.bernoulli(amount)) continue;
    const float fill = rng.bernoulli(0.5) ? 1.0f : 0.0f;
    v[i] = v[i + 1] = v[i + 2] = fill;
  }
  return x;
}

// Each channel value independently becomes 0 or 1 with probability `amount`.
FloatImage impulse_noise(FloatImage x, double amount, Rng& rng) {
  for (float& v : x.values()) {
    if (rng.bernoulli(amount)) v = rng.bernoulli(0.5) ? 1.0f : 0.0f;
  }
  return x;
}

Plane disk_kernel(int radius, double alias_sigma) {
  const int pad = radius <= 8 ? 1 : 2;
  const int half = radius + pad;
  const int side = 2 * half + 1;
  Plane disk(side, side);
  double sum = 0.0;
  for (int y = -half; y <= half; ++y) {
    for (int x = -half; x <= half; ++x) {
      if (x * x + y * y <= radius * radius) {
        disk.at(x + half, y + half) = 1.0f;
        sum += 1.0;
      }
    }
  }
  for (float& v : disk.v) v = static_cast<float>(v / sum);
  // Alias blur with a small (3x3 or 5x5) Gaussian, as the reference
  // implementation does.
  const auto g = detail::gaussian_kernel(alias_sigma, static_cast<double>(pad) / alias_sigma);
  const int gr = static_cast<int>(g.size() / 2);
  Plane out(side, side);
  double total = 0.0;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      double acc = 0.0;
      for (int j = -gr; j <= gr; ++j) {
        for (int i = -gr; i <= gr; ++i) {
          const int sx = x + i;
          const int sy = y + j;
          if (sx < 0 || sy < 0 || sx >= side || sy >= side) continue;
          acc += g[i + gr] * g[j + gr] * disk.at(sx, sy);
        }
      }
      out.at(x, y) = static_cast<float>(acc);
      total += acc;
    }
  }
  for (float& v : out.v) v = static_cast<float>(v / total);
  return out;
}

FloatImage defocus(const FloatImage& x, const DefocusParams& p) {
  FloatImage out = detail::convolve(x, disk_kernel(p.radius, p.alias_sigma));
  out.clamp01();
  return out;
}

FloatImage glass(const FloatImage& x, const GlassParams& p, Rng& rng) {
  FloatImage blurred = x;
  detail::gaussian_blur(blurred, p.sigma);
  // Intermediate quantization to 8 bits, then local pixel shuffling.
  Rgb8Image q = blurred.to_rgb8();
  const int w = q.width();
  const int h = q.height();
  const int d = p.max_delta;
  for (int it = 0; it < p.iterations; ++it) {
    for (int y = h - 1 - d; y >= d; --y) {
      for (int xx = w - 1 - d; xx >= d; --xx) {
        const int dx = rng.between(-d, d);
        const int dy = rng.between(-d, d);
        for (int c = 0; c < 3; ++c) std::swap(q.at(xx, y, c), q.at(xx + dx, y + dy, c));
      }
    }
  }
  FloatImage out = FloatImage::from_rgb8(q);
  detail::gaussian_blur(out, p.sigma);
  out.clamp01();
  return out;
}

FloatImage motion(const FloatImage& x, const MotionParams& p, Rng& rng) {
  const double angle = rng.uniform(-45.0, 45.0) * kDegree;
  FloatImage out(x.width(), x.height());
  for (int c = 0; c < 3; ++c) {
    detail::set_channel(out, c,
                        detail::motion_blur(detail::channel(x, c), p.radius, p.sigma, angle));
  }
  out.clamp01();
  return out;
}

FloatImage brightness(FloatImage x, double shift) {
  // HSV value shift with hue and saturation held: scale RGB by v'/v.
  auto v = x.values();
  for (std::size_t i = 0; i < v.size(); i += 3) {
    const float value = std::max({v[i], v[i + 1], v[i + 2]});
    const float shifted = std::min(1.0f, value + static_cast<float>(shift));
    if (value <= 0.0f) {
      v[i] = v[i + 1] = v[i + 2] = shifted;
    } else {
      const float scale = shifted / value;
      for (int c = 0; c < 3; ++c) v[i + c] *= scale;
    }
  }
  x.clamp01();
  return x;
}

FloatImage fog(FloatImage x, const FogParams& p, std::uint64_t seed) {
  const int side_needed = std::max(x.width(), x.height());
  int exp = 1;
  while ((1 << exp) + 1 < side_needed) ++exp;
  const Heightmap plasma = diamond_square(exp, p.wibble_decay, seed).normalized();
  // Airlight blend toward white; the haze weight at a pixel is
  // c * plasma / (1 + c).
  const float k = static_cast<float>(p.intensity / (1.0 + p.intensity));
  for (int y = 0; y < x.height(); ++y) {
    for (int xx = 0; xx < x.width(); ++xx) {
      const float t = k * static_cast<float>(plasma.at(xx, y));
      for (int c = 0; c < 3; ++c) {
        float& v = x.at(xx, y, c);
        v += (1.0f - v) * t;
      }
    }
  }
  x.clamp01();
  return x;
}

FloatImage frost(FloatImage x, const FrostParams& p, const FrostTextures& set,
                 Rng& rng) {
  const FloatImage& tex = set[rng.below(set.size())];
  const int ox = static_cast<int>(rng.below(static_cast<std::uint64_t>(tex.width())));
  const int oy = static_cast<int>(rng.below(static_cast<std::uint64_t>(tex.height())));
  const float wi = static_cast<float>(p.image_weight);
  const float wf = static_cast<float>(p.frost_weight);
  for (int y = 0; y < x.height(); ++y) {
    const int ty = (y + oy) % tex.height();
    for (int xx = 0; xx < x.width(); ++xx) {
      const int tx = (xx + ox) % tex.width();
      for (int c = 0; c < 3; ++c) {
        float& v = x.at(xx, y, c);
        v = wi * v + wf * tex.at(tx, ty, c);
      }
    }
  }
  x.clamp01();
  return x;
}

FloatImage snow(FloatImage x, const SnowParams& p, Rng& rng) {
  const int w = x.width();
  const int h = x.height();
  Plane layer(w, h);
  for (float& v : layer.v) v = static_cast<float>(rng.normal(p.layer_mean, p.layer_sigma));
  layer = detail::clipped_zoom(layer, p.zoom);
  for (float& v : layer.v) {
    if (v < p.threshold) v = 0.0f;
    v = std::clamp(v, 0.0f, 1.0f);
  }
  const double angle = rng.uniform(-135.0, -45.0) * kDegree;
  layer = detail::motion_blur(layer, p.blur_radius, p.blur_sigma, angle);

  const float keep = static_cast<float>(p.original_weight);
  for (int y = 0; y < h; ++y) {
    for (int xx = 0; xx < w; ++xx) {
      const float gray = 0.299f * x.at(xx, y, 0) + 0.587f * x.at(xx, y, 1) +
                         0.114f * x.at(xx, y, 2);
      const float flakes = layer.at(xx, y) + layer.at(w - 1 - xx, h - 1 - y);
      for (int c = 0; c < 3; ++c) {
        float& v = x.at(xx, y, c);
        const float washed = std::max(v, gray * 1.5f + 0.5f);
        v = keep * v + (1.0f - keep) * washed + flakes;
      }
    }
  }
  x.clamp01();
  return x;
}

// Per-channel image mean, so any constant image is a fixed point.
FloatImage contrast(FloatImage x, double factor) {
  auto v = x.values();
  double mean[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) mean[i % 3] += v[i];
  const double n = static_cast<double>(v.size() / 3);
  float m[3];
  for (int c = 0; c < 3; ++c) m[c] = static_cast<float>(mean[c] / n);
  const float f = static_cast<float>(factor);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] - m[i % 3]) * f + m[i % 3];
  x.clamp01();
  return x;
}

// Solves the 2x3 affine map taking three source points to three targets.
std::array<double, 6> affine_from_points(const std::array<double, 6>& src,
                                         const std::array<double, 6>& dst) {
  // Rows: [x y 1] * [a b; c d; e f] -> [x' y'] for each of the 3 points.
  const double x0 = src[0], y0 = src[1], x1 = src[2], y1 = src[3], x2 = src[4], y2 = src[5];
  const double det = x0 * (y1 - y2) - y0 * (x1 - x2) + (x1 * y2 - x2 * y1);
  auto solve = [&](double r0, double r1, double r2) {
    const double a = (r0 * (y1 - y2) - y0 * (r1 - r2) + (r1 * y2 - r2 * y1)) / det;
    const double b = (x0 * (r1 - r2) - r0 * (x1 - x2) + (x1 * r2 - x2 * r1)) / det;
    const double c = (x0 * (y1 * r2 - y2 * r1) - y0 * (x1 * r2 - x2 * r1) +
                      r0 * (x1 * y2 - x2 * y1)) / det;
    return std::array<double, 3>{a, b, c};
  };
  const auto mx = solve(dst[0], dst[2], dst[4]);
  const auto my = solve(dst[1], dst[3], dst[5]);
  return {mx[0], mx[1], mx[2], my[0], my[1], my[2]};
}

FloatImage elastic(const FloatImage& x, const ElasticParams& ref, Rng& rng) {
  const int w = x.width();
  const int h = x.height();
  const double scale = std::min(w, h) / kElasticReferenceSide;
  const double alpha = ref.alpha * scale;
  const double sigma = ref.sigma * scale;
  const double jitter = ref.affine_jitter * scale;

  // Random affine: perturb three anchor points around the center.
  const double cx = w / 2;
  const double cy = h / 2;
  const double sq = std::min(w, h) / 3;
  const std::array<double, 6> pts1 = {cx + sq, cy + sq, cx + sq, cy - sq, cx - sq, cy - sq};
  std::array<double, 6> pts2 = pts1;
  for (double& v : pts2) v += rng.uniform(-jitter, jitter);
  // Output pixels pull from the inverse map, so solve dst -> src directly.
  const auto inv = affine_from_points(pts2, pts1);

  FloatImage warped(w, h);
  for (int y = 0; y < h; ++y) {
    for (int xx = 0; xx < w; ++xx) {
      const double sx = inv[0] * xx + inv[1] * y + inv[2];
      const double sy = inv[3] * xx + inv[4] * y + inv[5];
      for (int c = 0; c < 3; ++c) warped.at(xx, y, c) = detail::bilinear(x, sx, sy, c);
    }
  }

  Plane dx(w, h);
  Plane dy(w, h);
  for (float& v : dx.v) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  for (float& v : dy.v) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  detail::gaussian_blur(dx, sigma, 3.0);
  detail::gaussian_blur(dy, sigma, 3.0);

  FloatImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int xx = 0; xx < w; ++xx) {
      const double sx = xx + alpha * dx.at(xx, y);
      const double sy = y + alpha * dy.at(xx, y);
      for (int c = 0; c < 3; ++c) out.at(xx, y, c) = detail::bilinear(warped, sx, sy, c);
    }
  }
  out.clamp01();
  return out;
}

FloatImage pixelate(const FloatImage& x, double factor) {
  const int w = x.width();
  const int h = x.height();
  const int sw = std::max(1, static_cast<int>(std::lround(w * factor)));
  const int sh = std::max(1, static_cast<int>(std::lround(h * factor)));
  // Each block is averaged and painted back over the same source pixels.
  FloatImage out(w, h);
  for (int j = 0; j < sh; ++j) {
    const int y0 = j * h / sh;
    const int y1 = std::max(y0 + 1, (j + 1) * h / sh);
    for (int i = 0; i < sw; ++i) {
      const int x0 = i * w / sw;
      const int x1 = std::max(x0 + 1, (i + 1) * w / sw);
      const float n = static_cast<float>((y1 - y0) * (x1 - x0));
      for (int c = 0; c < 3; ++c) {
        float acc = 0.0f;
        for (int y = y0; y < y1; ++y) {
          for (int xx = x0; xx < x1; ++xx) acc += x.at(xx, y, c);
        }
        const float mean = acc / n;
        for (int y = y0; y < y1; ++y) {
          for (int xx = x0; xx < x1; ++xx) out.at(xx, y, c) = mean;
        }
      }
    }
  }
  return out;
}

}  // namespace

Heightmap::Heightmap(int side, std::vector<double> values)
    : side_(side), values_(std::move(values)) {
  if (side < 2 || values_.size() != static_cast<std::size_t>(side) * side) {
    throw Error(ErrorCode::kInvalidArgument, "heightmap size mismatch");
  }
}

Heightmap Heightmap::normalized() const {
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out(values_.size(), 0.0);
  if (range > 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (values_[i] - min) / range;
  }
  return Heightmap(side_, std::move(out));
}

Heightmap diamond_square(int side_exp, double wibble_decay, std::uint64_t seed,
                         double initial_amplitude, double corner_value) {
  if (side_exp < 1 || side_exp > 14) {
    throw Error(ErrorCode::kInvalidArgument,
                "side exponent must be in 1..14, got " + std::to_string(side_exp));
  }
  if (wibble_decay <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "wibble decay must be positive");
  }
  const int side = (1 << side_exp) + 1;
  std::vector<double> m(static_cast<std::size_t>(side) * side, 0.0);
  auto at = [&](int x, int y) -> double& { return m[static_cast<std::size_t>(y) * side + x]; };
  at(0, 0) = at(side - 1, 0) = at(0, side - 1) = at(side - 1, side - 1) = corner_value;

  Rng rng(seed);
  double amplitude = initial_amplitude;
  for (int step = side - 1; step >= 2; step /= 2) {
    const int half = step / 2;
    // Square step: centers of each cell from its four corners.
    for (int y = half; y < side; y += step) {
      for (int x = half; x < side; x += step) {
        const double mean = (at(x - half, y - half) + at(x + half, y - half) +
                             at(x - half, y + half) + at(x + half, y + half)) / 4.0;
        at(x, y) = mean + amplitude * rng.uniform(-1.0, 1.0);
      }
    }
    // Diamond step: edge midpoints from the available axis neighbors.
    for (int y = 0; y < side; y += half) {
      for (int x = (y / half % 2 == 0) ? half : 0; x < side; x += step) {
        double sum = 0.0;
        int n = 0;
        if (x >= half) { sum += at(x - half, y); ++n; }
        if (x + half < side) { sum += at(x + half, y); ++n; }
        if (y >= half) { sum += at(x, y - half); ++n; }
        if (y + half < side) { sum += at(x, y + half); ++n; }
        at(x, y) = sum / n + amplitude * rng.uniform(-1.0, 1.0);
      }
    }
    amplitude /= wibble_decay;
  }
  return Heightmap(side, std::move(m));
}

FrostTextures::FrostTextures(std::vector<FloatImage> textures)
    : textures_(std::move(textures)) {
  if (textures_.empty()) {
    throw Error(ErrorCode::kMissingAsset, "frost texture set is empty");
  }
}

namespace {

FloatImage make_frost_texture(std::uint64_t seed) {
  constexpr int kSide = 256;
  constexpr int kCells = 70;
  constexpr int kStreaks = 45;
  Rng rng(seed);
  std::vector<std::pair<double, double>> sites(kCells);
  for (auto& s : sites) s = {rng.uniform(0, kSide), rng.uniform(0, kSide)};

  auto wrap = [](double d) {
    d = std::fabs(d);
    return std::min(d, kSide - d);
  };
  Plane ice(kSide, kSide);
  for (int y = 0; y < kSide; ++y) {
    for (int x = 0; x < kSide; ++x) {
      double d1 = 1e9, d2 = 1e9;
      for (const auto& [sx, sy] : sites) {
        const double dx = wrap(x - sx);
        const double dy = wrap(y - sy);
        const double d = std::sqrt(dx * dx + dy * dy);
        if (d < d1) {
          d2 = d1;
          d1 = d;
        } else if (d < d2) {
          d2 = d;
        }
      }
      // Bright ridges along cell borders, soft fill toward the edges.
      ice.at(x, y) = static_cast<float>(0.75 * std::exp(-(d2 - d1) / 1.8) +
                                        0.25 * std::min(1.0, d1 / 18.0));
    }
  }
  for (int s = 0; s < kStreaks; ++s) {
    const double x0 = rng.uniform(0, kSide);
    const double y0 = rng.uniform(0, kSide);
    const double angle = rng.uniform(0, 2 * std::numbers::pi);
    const int length = rng.between(10, 60);
    const float strength = static_cast<float>(rng.uniform(0.2, 0.5));
    for (int i = 0; i < length; ++i) {
      const int x = static_cast<int>(std::floor(x0 + i * std::cos(angle))) & (kSide - 1);
      const int y = static_cast<int>(std::floor(y0 + i * std::sin(angle))) & (kSide - 1);
      ice.at(x, y) += strength * (1.0f - static_cast<float>(i) / length);
    }
  }
  detail::gaussian_blur(ice, 0.6);

  FloatImage tex(kSide, kSide);
  constexpr float kTint[3] = {0.82f, 0.90f, 1.0f};
  for (int y = 0; y < kSide; ++y) {
    for (int x = 0; x < kSide; ++x) {
      const float v = std::clamp(ice.at(x, y), 0.0f, 1.0f);
      for (int c = 0; c < 3; ++c) tex.at(x, y, c) = v * kTint[c];
    }
  }
  return tex;
}

}  // namespace

const FrostTextures& FrostTextures::procedural() {
  static const FrostTextures set = [] {
    std::vector<FloatImage> textures;
    for (std::uint64_t i = 0; i < 5; ++i) {
      textures.push_back(make_frost_texture(0xF2057ull * 1000 + i));
    }
    return FrostTextures(std::move(textures));
  }();
  return set;
}

Rgb8Image add_noise(const Rgb8Image& img, NoiseKind kind, int severity,
                    std::uint64_t seed) {
  const int s = index_of(severity);
  Rng rng(seed);
  FloatImage x = FloatImage::from_rgb8(img);
  switch (kind) {
    case NoiseKind::kGaussian:
      return gaussian_noise(std::move(x), kSeverityTable.gaussian_sigma[s], rng).to_rgb8();
    case NoiseKind::kShot:
      return shot_noise(std::move(x), kSeverityTable.salt_pepper_amount[s], rng).to_rgb8();
    case NoiseKind::kImpulse:
      return impulse_noise(std::move(x), kSeverityTable.salt_pepper_amount[s], rng).to_rgb8();
    case NoiseKind::kSpeckle:
      return speckle_noise(std::move(x), kSeverityTable.speckle_sigma[s], rng).to_rgb8();
  }
  throw Error(ErrorCode::kUnknownMethod, "noise kind");
}

Rgb8Image blur(const Rgb8Image& img, BlurKind kind, int severity,
               std::uint64_t seed) {
  const int s = index_of(severity);
  Rng rng(seed);
  const FloatImage x = FloatImage::from_rgb8(img);
  switch (kind) {
    case BlurKind::kDefocus: {
      const auto& p = kSeverityTable.defocus[s];
      require_size(img, 2 * p.radius + 1, "defocus_blur");
      return defocus(x, p).to_rgb8();
    }
    case BlurKind::kGlass: {
      const auto& p = kSeverityTable.glass[s];
      require_size(img, 2 * p.max_delta + 1, "glass_blur");
      return glass(x, p, rng).to_rgb8();
    }
    case BlurKind::kMotion: {
      const auto& p = kSeverityTable.motion[s];
      require_size(img, p.radius + 1, "motion_blur");
      return motion(x, p, rng).to_rgb8();
    }
  }
  throw Error(ErrorCode::kUnknownMethod, "blur kind");
}

std::vector<double> zoom_factors(int severity) {
  const double max = kSeverityTable.zoom_max[index_of(severity)];
  const int steps = static_cast<int>(std::lround((max - 1.0) / 0.01));
  std::vector<double> out;
  for (int i = 0; i <= steps; ++i) out.push_back(1.0 + 0.01 * i);
  return out;
}

Rgb8Image zoom_blur(const Rgb8Image& img, int severity, std::uint64_t /*seed*/) {
  const FloatImage x = FloatImage::from_rgb8(img);
  const auto factors = zoom_factors(severity);
  FloatImage acc = x;
  for (int c = 0; c < 3; ++c) {
    const Plane src = detail::channel(x, c);
    Plane sum = src;
    for (double z : factors) {
      const Plane zoomed = detail::clipped_zoom(src, z);
      for (std::size_t i = 0; i < sum.v.size(); ++i) sum.v[i] += zoomed.v[i];
    }
    const float n = static_cast<float>(factors.size() + 1);
    for (float& v : sum.v) v /= n;
    detail::set_channel(acc, c, sum);
  }
  acc.clamp01();
  return acc.to_rgb8();
}

Rgb8Image weather(const Rgb8Image& img, WeatherKind kind, int severity,
                  std::uint64_t seed, const FrostTextures* frost_set) {
  const int s = index_of(severity);
  Rng rng(seed);
  FloatImage x = FloatImage::from_rgb8(img);
  switch (kind) {
    case WeatherKind::kSnow:
      return snow(std::move(x), kSeverityTable.snow[s], rng).to_rgb8();
    case WeatherKind::kFrost:
      if (frost_set == nullptr) {
        throw Error(ErrorCode::kMissingAsset, "frost requires a texture set");
      }
      return frost(std::move(x), kSeverityTable.frost[s], *frost_set, rng).to_rgb8();
    case WeatherKind::kFog:
      return fog(std::move(x), kSeverityTable.fog[s], rng.next()).to_rgb8();
    case WeatherKind::kBrightness:
      return brightness(std::move(x), kSeverityTable.brightness[s]).to_rgb8();
  }
  throw Error(ErrorCode::kUnknownMethod, "weather kind");
}

Rgb8Image digital(const Rgb8Image& img, DigitalKind kind, int severity,
                  std::uint64_t seed) {
  const int s = index_of(severity);
  Rng rng(seed);
  switch (kind) {
    case DigitalKind::kContrast:
      return contrast(FloatImage::from_rgb8(img), kSeverityTable.contrast[s]).to_rgb8();
    case DigitalKind::kElastic:
      return elastic(FloatImage::from_rgb8(img), kSeverityTable.elastic[s], rng).to_rgb8();
    case DigitalKind::kPixelate:
      return pixelate(FloatImage::from_rgb8(img), kSeverityTable.pixelate[s]).to_rgb8();
    case DigitalKind::kJpeg:
      return decode_jpeg(encode_jpeg(img, kSeverityTable.jpeg_quality[s]));
  }
  throw Error(ErrorCode::kUnknownMethod, "digital kind");
}

Rgb8Image apply_image_perturbation(const Rgb8Image& img,
                                   const PerturbationSpec& spec,
                                   std::uint64_t seed,
                                   const PerturbContext& context) {
  const ImageMethod* method = spec.image_method();
  if (method == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "not an image perturbation: " + std::string(spec.method_name()));
  }
  spec.validate();
  const int sev = spec.severity;
  switch (*method) {
    case ImageMethod::kGaussianNoise: return add_noise(img, NoiseKind::kGaussian, sev, seed);
    case ImageMethod::kShotNoise: return add_noise(img, NoiseKind::kShot, sev, seed);
    case ImageMethod::kImpulseNoise: return add_noise(img, NoiseKind::kImpulse, sev, seed);
    case ImageMethod::kSpeckleNoise: return add_noise(img, NoiseKind::kSpeckle, sev, seed);
    case ImageMethod::kDefocusBlur: return blur(img, BlurKind::kDefocus, sev, seed);
    case ImageMethod::kGlassBlur: return blur(img, BlurKind::kGlass, sev, seed);
    case ImageMethod::kMotionBlur: return blur(img, BlurKind::kMotion, sev, seed);
    case ImageMethod::kZoomBlur: return zoom_blur(img, sev, seed);
    case ImageMethod::kSnow: return weather(img, WeatherKind::kSnow, sev, seed);
    case ImageMethod::kFrost:
      return weather(img, WeatherKind::kFrost, sev, seed, context.frost);
    case ImageMethod::kFog: return weather(img, WeatherKind::kFog, sev, seed);
    case ImageMethod::kBrightness: return weather(img, WeatherKind::kBrightness, sev, seed);
    case ImageMethod::kContrast: return digital(img, DigitalKind::kContrast, sev, seed);
    case ImageMethod::kElasticTransform: return digital(img, DigitalKind::kElastic, sev, seed);
    case ImageMethod::kPixelate: return digital(img, DigitalKind::kPixelate, sev, seed);
    case ImageMethod::kJpegCompression: return digital(img, DigitalKind::kJpeg, sev, seed);
    case ImageMethod::kStylize: {
      if (context.stylizer == nullptr) {
        throw Error(ErrorCode::kServiceUnavailable, "no stylize client configured");
      }
      Rgb8Image out = context.stylizer->stylize_image(img, sev);
      if (out.width() != img.width() || out.height() != img.height()) {
        throw Error(ErrorCode::kMalformedResponse,
                    "stylize changed image dimensions");
      }
      return out;
    }
  }
  throw Error(ErrorCode::kUnknownMethod, std::string(spec.method_name()));
}

}  // namespace mmrobust::image
