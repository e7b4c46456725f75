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

#ifndef MMROBUST_IMAGE_SEVERITY_H_
#define MMROBUST_IMAGE_SEVERITY_H_

#include <array>

namespace mmrobust::image {

struct DefocusParams {
  int radius;
  double alias_sigma;
};

struct GlassParams {
  double sigma;
  int max_delta;
  int iterations;
};

struct MotionParams {
  int radius;
  double sigma;
};

struct SnowParams {
  double layer_mean;
  double layer_sigma;
  double zoom;
  double threshold;
  int blur_radius;
  double blur_sigma;
  double original_weight;
};

struct FrostParams {
  double image_weight;
  double frost_weight;
};

struct FogParams {
  double intensity;
  double wibble_decay;
};

// Elastic tuples are expressed against a 244-pixel reference side and are
// rescaled to the actual image size.
struct ElasticParams {
  double alpha;
  double sigma;
  double affine_jitter;
};

inline constexpr double kElasticReferenceSide = 244.0;

// Parameter ladders indexed by severity - 1.
struct ImageSeverityTable {
  std::array<double, 5> gaussian_sigma;
  std::array<double, 5> salt_pepper_amount;  // shot and impulse
  std::array<double, 5> speckle_sigma;
  std::array<DefocusParams, 5> defocus;
  std::array<GlassParams, 5> glass;
  std::array<MotionParams, 5> motion;
  std::array<double, 5> zoom_max;
  std::array<SnowParams, 5> snow;
  std::array<FrostParams, 5> frost;
  std::array<FogParams, 5> fog;
  std::array<double, 5> brightness;
  std::array<double, 5> contrast;
  std::array<ElasticParams, 5> elastic;
  std::array<double, 5> pixelate;
  std::array<int, 5> jpeg_quality;
};

inline constexpr double kR = kElasticReferenceSide;

inline constexpr ImageSeverityTable kSeverityTable{
    .gaussian_sigma = {0.08, 0.12, 0.18, 0.26, 0.38},
    .salt_pepper_amount = {0.03, 0.06, 0.09, 0.17, 0.27},
    // Not given in the magnitude table; ImageNet-C ladder.
    .speckle_sigma = {0.15, 0.20, 0.35, 0.45, 0.60},
    .defocus = {{{3, 0.1}, {4, 0.5}, {6, 0.5}, {8, 0.5}, {10, 0.5}}},
    .glass = {{{0.7, 1, 2}, {0.9, 2, 1}, {1.0, 2, 3}, {1.1, 3, 2}, {1.5, 4, 2}}},
    .motion = {{{10, 3}, {15, 5}, {15, 8}, {15, 12}, {20, 15}}},
    .zoom_max = {1.11, 1.16, 1.21, 1.26, 1.33},
    .snow = {{{0.1, 0.3, 3, 0.5, 10, 4, 0.8},
              {0.2, 0.3, 2, 0.5, 12, 4, 0.7},
              {0.55, 0.3, 4, 0.9, 12, 8, 0.7},
              {0.55, 0.3, 4.5, 0.85, 12, 8, 0.65},
              {0.55, 0.3, 2.5, 0.85, 12, 12, 0.55}}},
    .frost = {{{1.0, 0.4}, {0.8, 0.6}, {0.7, 0.7}, {0.65, 0.7}, {0.6, 0.75}}},
    .fog = {{{1.5, 2.0}, {2.0, 2.0}, {2.5, 1.7}, {2.5, 1.5}, {3.0, 1.4}}},
    .brightness = {0.1, 0.2, 0.3, 0.4, 0.5},
    .contrast = {0.4, 0.3, 0.2, 0.1, 0.05},
    .elastic = {{{kR * 2, kR * 0.7, kR * 0.1},
                 {kR * 2, kR * 0.08, kR * 0.2},
                 {kR * 0.05, kR * 0.01, kR * 0.02},
                 {kR * 0.07, kR * 0.01, kR * 0.02},
                 {kR * 0.12, kR * 0.01, kR * 0.02}}},
    .pixelate = {0.6, 0.5, 0.4, 0.3, 0.25},
    .jpeg_quality = {25, 18, 15, 10, 7},
};

}  // namespace mmrobust::image

#endif  // MMROBUST_IMAGE_SEVERITY_H_
