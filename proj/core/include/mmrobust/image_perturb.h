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

#ifndef MMROBUST_IMAGE_PERTURB_H_
#define MMROBUST_IMAGE_PERTURB_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mmrobust/image.h"
#include "mmrobust/image_severity.h"
#include "mmrobust/perturbation.h"

namespace mmrobust::services {
class StylizeClient;
}

namespace mmrobust::image {

enum class NoiseKind { kGaussian, kShot, kImpulse, kSpeckle };
enum class BlurKind { kDefocus, kGlass, kMotion };
enum class WeatherKind { kSnow, kFrost, kFog, kBrightness };
enum class DigitalKind { kContrast, kElastic, kPixelate, kJpeg };

// Square fractal of side 2^k + 1 produced by midpoint displacement.
class Heightmap {
 public:
  Heightmap(int side, std::vector<double> values);

  int side() const { return side_; }
  double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * side_ + x]; }
  std::span<const double> values() const { return values_; }

  // Min/max rescaled copy; a flat map normalizes to all zeros.
  Heightmap normalized() const;

 private:
  int side_;
  std::vector<double> values_;
};

// Diamond-square on a (2^side_exp + 1)^2 grid. Corners start at
// corner_value; every refinement level draws displacements uniformly from
// [-amplitude, amplitude] and then divides the amplitude by wibble_decay.
Heightmap diamond_square(int side_exp, double wibble_decay, std::uint64_t seed,
                         double initial_amplitude = 1.0,
                         double corner_value = 0.0);

// Set of tileable RGB overlays used by the frost corruption.
class FrostTextures {
 public:
  explicit FrostTextures(std::vector<FloatImage> textures);

  // Five seeded ice-crystal textures (Voronoi ridges plus streaks).
  static const FrostTextures& procedural();

  std::size_t size() const { return textures_.size(); }
  const FloatImage& operator[](std::size_t i) const { return textures_[i]; }

 private:
  std::vector<FloatImage> textures_;
};

// Noise: gaussian x + s*N, shot whole-pixel salt/pepper, impulse
// per-channel salt/pepper, speckle x + x*s*N.
Rgb8Image add_noise(const Rgb8Image& img, NoiseKind kind, int severity,
                    std::uint64_t seed);

// Throws Error(kInputTooSmall) when the image is smaller than the kernel.
Rgb8Image blur(const Rgb8Image& img, BlurKind kind, int severity,
               std::uint64_t seed);

Rgb8Image zoom_blur(const Rgb8Image& img, int severity, std::uint64_t seed);

// Frost needs a texture set; passing nullptr throws Error(kMissingAsset).
Rgb8Image weather(const Rgb8Image& img, WeatherKind kind, int severity,
                  std::uint64_t seed, const FrostTextures* frost = nullptr);

Rgb8Image digital(const Rgb8Image& img, DigitalKind kind, int severity,
                  std::uint64_t seed);

// Zoom factors averaged by zoom_blur at a severity: 1.00 up to the ladder
// maximum, inclusive, in 0.01 steps.
std::vector<double> zoom_factors(int severity);

struct PerturbContext {
  const FrostTextures* frost = nullptr;
  services::StylizeClient* stylizer = nullptr;
};

// Dispatches a spec to the operation above. Stylize goes through the
// context's client and throws Error(kServiceUnavailable) when none is set.
Rgb8Image apply_image_perturbation(const Rgb8Image& img,
                                   const PerturbationSpec& spec,
                                   std::uint64_t seed,
                                   const PerturbContext& context);

}  // namespace mmrobust::image

#endif  // MMROBUST_IMAGE_PERTURB_H_
