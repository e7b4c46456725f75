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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "mmrobust/error.h"
#include "mmrobust/image_perturb.h"
#include "mmrobust/stub_services.h"

namespace mmrobust::image {
namespace {

using ::mmrobust::testing::fixture_image;

PerturbContext StubContext() {
  static services::LutStylizeStub stylizer;
  return {&FrostTextures::procedural(), &stylizer};
}

int MaxAbsDiff(const Rgb8Image& a, const Rgb8Image& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(int{a.pixels()[i]} - int{b.pixels()[i]}));
  }
  return d;
}

Rgb8Image Crop(const Rgb8Image& src, int w, int h) {
  Rgb8Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = src.at(x, y, c);
    }
  }
  return out;
}

double MeanValue(const Rgb8Image& img) {
  double s = 0;
  for (auto v : img.pixels()) s += v;
  return s / static_cast<double>(img.size()) / 255.0;
}

TEST(SeverityTableTest, LaddersMatchMagnitudeTable) {
  const auto& t = kSeverityTable;
  EXPECT_EQ(t.gaussian_sigma, (std::array<double, 5>{0.08, 0.12, 0.18, 0.26, 0.38}));
  EXPECT_EQ(t.salt_pepper_amount, (std::array<double, 5>{0.03, 0.06, 0.09, 0.17, 0.27}));
  EXPECT_EQ(t.zoom_max, (std::array<double, 5>{1.11, 1.16, 1.21, 1.26, 1.33}));
  EXPECT_EQ(t.brightness, (std::array<double, 5>{0.1, 0.2, 0.3, 0.4, 0.5}));
  EXPECT_EQ(t.contrast, (std::array<double, 5>{0.4, 0.3, 0.2, 0.1, 0.05}));
  EXPECT_EQ(t.pixelate, (std::array<double, 5>{0.6, 0.5, 0.4, 0.3, 0.25}));
  EXPECT_EQ(t.jpeg_quality, (std::array<int, 5>{25, 18, 15, 10, 7}));
  EXPECT_EQ(t.defocus[0].radius, 3);
  EXPECT_DOUBLE_EQ(t.defocus[0].alias_sigma, 0.1);
  EXPECT_EQ(t.defocus[4].radius, 10);
  EXPECT_DOUBLE_EQ(t.glass[2].sigma, 1.0);
  EXPECT_EQ(t.glass[2].max_delta, 2);
  EXPECT_EQ(t.glass[2].iterations, 3);
  EXPECT_EQ(t.motion[4].radius, 20);
  EXPECT_DOUBLE_EQ(t.motion[4].sigma, 15);
  EXPECT_DOUBLE_EQ(t.snow[0].layer_mean, 0.1);
  EXPECT_DOUBLE_EQ(t.snow[4].original_weight, 0.55);
  EXPECT_DOUBLE_EQ(t.frost[1].image_weight, 0.8);
  EXPECT_DOUBLE_EQ(t.frost[1].frost_weight, 0.6);
  EXPECT_DOUBLE_EQ(t.fog[2].intensity, 2.5);
  EXPECT_DOUBLE_EQ(t.fog[2].wibble_decay, 1.7);
  EXPECT_DOUBLE_EQ(t.elastic[0].alpha, 244 * 2);
  EXPECT_DOUBLE_EQ(t.elastic[1].sigma, 244 * 0.08);
  EXPECT_DOUBLE_EQ(t.elastic[4].affine_jitter, 244 * 0.02);
}

TEST(ImagePerturbTest, AllMethodsPreserveDimensionsAndAreDeterministic) {
  const auto img = fixture_image(2, 72);
  const auto wide = Crop(fixture_image(5, 80), 80, 40);
  for (ImageMethod m : all_image_methods()) {
    for (int s = 1; s <= 5; ++s) {
      const auto spec = PerturbationSpec::image(m, s);
      const auto a = apply_image_perturbation(img, spec, 1234, StubContext());
      const auto b = apply_image_perturbation(img, spec, 1234, StubContext());
      EXPECT_EQ(a, b) << name(m) << " s" << s;
      EXPECT_EQ(a.width(), img.width());
      EXPECT_EQ(a.height(), img.height());
      const auto c = apply_image_perturbation(wide, spec, 9, StubContext());
      EXPECT_EQ(c.width(), wide.width()) << name(m);
      EXPECT_EQ(c.height(), wide.height()) << name(m);
    }
  }
}

TEST(ImagePerturbTest, SeedChangesStochasticMethods) {
  const auto img = fixture_image(4, 64);
  for (ImageMethod m : {ImageMethod::kGaussianNoise, ImageMethod::kShotNoise,
                        ImageMethod::kImpulseNoise, ImageMethod::kSpeckleNoise,
                        ImageMethod::kGlassBlur, ImageMethod::kMotionBlur, ImageMethod::kSnow,
                        ImageMethod::kFrost, ImageMethod::kFog, ImageMethod::kElasticTransform}) {
    const auto spec = PerturbationSpec::image(m, 3);
    EXPECT_NE(apply_image_perturbation(img, spec, 1, StubContext()),
              apply_image_perturbation(img, spec, 2, StubContext()))
        << name(m);
  }
}

TEST(ImagePerturbTest, ConstantImageFixedPoints) {
  const auto gray = Rgb8Image::filled(64, 48, 128, 128, 128);
  const auto tinted = Rgb8Image::filled(50, 50, 30, 200, 90);
  for (ImageMethod m : {ImageMethod::kDefocusBlur, ImageMethod::kGlassBlur,
                        ImageMethod::kMotionBlur, ImageMethod::kZoomBlur, ImageMethod::kPixelate,
                        ImageMethod::kElasticTransform, ImageMethod::kContrast}) {
    for (int s = 1; s <= 5; ++s) {
      for (const auto* img : {&gray, &tinted}) {
        const auto out =
            apply_image_perturbation(*img, PerturbationSpec::image(m, s), 77, StubContext());
        EXPECT_LE(MaxAbsDiff(out, *img), 1) << name(m) << " s" << s;
      }
    }
  }
  EXPECT_EQ(apply_image_perturbation(gray, PerturbationSpec::image(ImageMethod::kPixelate, 3), 0,
                                     StubContext()),
            gray);
  EXPECT_EQ(apply_image_perturbation(gray, PerturbationSpec::image(ImageMethod::kMotionBlur, 5),
                                     0, StubContext()),
            gray);
}

// Monte-Carlo oracle for clamp(sigma * N(0,1)) on black, using the standard
// library generator rather than the project's RNG.
TEST(NoiseTest, GaussianOnBlackMatchesHalfNormalOracle) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal(0.0, 0.08);
  double oracle = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    oracle += std::round(std::clamp(normal(gen), 0.0, 1.0) * 255.0) / 255.0;
  }
  oracle /= n;
  EXPECT_NEAR(oracle, 0.08 * std::sqrt(2.0 / M_PI) / 2.0, 0.001);

  const auto black = Rgb8Image::filled(200, 200, 0, 0, 0);
  const double mean = MeanValue(add_noise(black, NoiseKind::kGaussian, 1, 5));
  EXPECT_GE(mean, 0.028);
  EXPECT_LE(mean, 0.036);
  EXPECT_NEAR(mean, oracle, 0.0015);
}

TEST(NoiseTest, GaussianOnBlackHalfNormalMeanBand) {
  // Mean of the positive half only: E[sigma*|Z|] = sigma*sqrt(2/pi).
  const auto black = Rgb8Image::filled(500, 500, 0, 0, 0);
  const auto out = add_noise(black, NoiseKind::kGaussian, 1, 11);
  double sum = 0;
  std::size_t positive = 0;
  for (auto v : out.pixels()) {
    if (v > 0) {
      sum += v / 255.0;
      ++positive;
    }
  }
  const double half_normal = sum / static_cast<double>(positive);
  EXPECT_GE(half_normal, 0.028 * 2.0 - 0.004);
  EXPECT_LE(half_normal, 0.036 * 2.0);
  EXPECT_NEAR(static_cast<double>(positive) / static_cast<double>(out.size()), 0.5, 0.02);
}

TEST(NoiseTest, GaussianSigmaLadder) {
  const auto gray = Rgb8Image::filled(1000, 1000, 128, 128, 128);
  const double base = 128.0 / 255.0;
  std::mt19937_64 gen(99);
  for (int s = 1; s <= 5; ++s) {
    const double sigma = kSeverityTable.gaussian_sigma[static_cast<std::size_t>(s - 1)];
    // Expected spread after clamping and 8-bit rounding.
    std::normal_distribution<double> normal(0.0, sigma);
    double osum = 0, osq = 0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
      const double v = std::round(std::clamp(base + normal(gen), 0.0, 1.0) * 255.0) / 255.0;
      osum += v;
      osq += v * v;
    }
    const double expected = std::sqrt(osq / n - (osum / n) * (osum / n));
    if (s == 1) {
      EXPECT_NEAR(expected / sigma, 1.0, 0.01);
    }

    const auto out = add_noise(gray, NoiseKind::kGaussian, s, 1000 + s);
    double sum = 0, sq = 0;
    for (auto v : out.pixels()) {
      const double x = v / 255.0;
      sum += x;
      sq += x * x;
    }
    const double n_px = static_cast<double>(out.size());
    const double measured = std::sqrt(sq / n_px - (sum / n_px) * (sum / n_px));
    EXPECT_NEAR(measured / expected, 1.0, 0.05) << "severity " << s;
  }
}

TEST(NoiseTest, ShotReplacesWholePixelsAtLadderRate) {
  const auto gray = Rgb8Image::filled(1000, 1000, 128, 128, 128);
  for (int s = 1; s <= 5; ++s) {
    const auto out = add_noise(gray, NoiseKind::kShot, s, 300 + s);
    std::size_t replaced = 0;
    for (int y = 0; y < 1000; ++y) {
      for (int x = 0; x < 1000; ++x) {
        const int r = out.at(x, y, 0);
        if (r == 128) continue;
        ++replaced;
        ASSERT_TRUE(r == 0 || r == 255);
        ASSERT_EQ(out.at(x, y, 1), r);
        ASSERT_EQ(out.at(x, y, 2), r);
      }
    }
    EXPECT_NEAR(replaced / 1e6, kSeverityTable.salt_pepper_amount[static_cast<std::size_t>(s - 1)],
                0.01)
        << "severity " << s;
  }
}

TEST(NoiseTest, ImpulseReplacesChannelsAtLadderRate) {
  const auto gray = Rgb8Image::filled(1000, 1000, 128, 128, 128);
  for (int s = 1; s <= 5; ++s) {
    const auto out = add_noise(gray, NoiseKind::kImpulse, s, 500 + s);
    std::size_t replaced = 0;
    std::size_t mixed = 0;
    for (std::size_t i = 0; i < out.size(); i += 3) {
      int changed = 0;
      for (int c = 0; c < 3; ++c) {
        const int v = out.pixels()[i + static_cast<std::size_t>(c)];
        if (v != 128) {
          ASSERT_TRUE(v == 0 || v == 255);
          ++changed;
        }
      }
      replaced += static_cast<std::size_t>(changed);
      if (changed == 1 || changed == 2) ++mixed;
    }
    EXPECT_NEAR(replaced / 3e6,
                kSeverityTable.salt_pepper_amount[static_cast<std::size_t>(s - 1)], 0.01);
    EXPECT_GT(mixed, 0u);
  }
}

TEST(NoiseTest, SpeckleKeepsBlack) {
  const auto black = Rgb8Image::filled(64, 64, 0, 0, 0);
  for (int s = 1; s <= 5; ++s) EXPECT_EQ(add_noise(black, NoiseKind::kSpeckle, s, 3), black);
}

TEST(BlurTest, DefocusSpreadsImpulseOverDisk) {
  // A bright 3x3 block keeps 8-bit rounding error well under 1%.
  Rgb8Image img(41, 41);
  for (int y = 19; y <= 21; ++y) {
    for (int x = 19; x <= 21; ++x) {
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = 255;
    }
  }
  const auto out = blur(img, BlurKind::kDefocus, 1, 0);
  double in_sum = 0, out_sum = 0;
  for (auto v : img.pixels()) in_sum += v;
  for (auto v : out.pixels()) out_sum += v;
  EXPECT_NEAR(out_sum / in_sum, 1.0, 0.01);
  // Lit pixels lie within the 3x3 block dilated by radius 3 plus alias pad.
  for (int y = 0; y < 41; ++y) {
    for (int x = 0; x < 41; ++x) {
      const int dx = std::max(0, std::abs(x - 20) - 1);
      const int dy = std::max(0, std::abs(y - 20) - 1);
      if (dx * dx + dy * dy > 5 * 5) {
        EXPECT_EQ(out.at(x, y, 0), 0) << x << "," << y;
      } else if (dx * dx + dy * dy <= 2 * 2) {
        EXPECT_GT(out.at(x, y, 0), 0) << x << "," << y;
      }
    }
  }
  EXPECT_LT(out.at(20, 20, 0), 255);
}

TEST(BlurTest, DefocusSinglePixelConservesEnergyApproximately) {
  Rgb8Image img(31, 31);
  for (int c = 0; c < 3; ++c) img.at(15, 15, c) = 255;
  const auto out = blur(img, BlurKind::kDefocus, 1, 0);
  double out_sum = 0;
  for (int y = 0; y < 31; ++y) {
    for (int x = 0; x < 31; ++x) out_sum += out.at(x, y, 0);
  }
  // Each of ~37 lit pixels carries at most half a level of rounding.
  EXPECT_NEAR(out_sum / 255.0, 1.0, 0.08);
  EXPECT_GT(out.at(17, 15, 0), 0);
  EXPECT_GT(out.at(15, 12, 0), 0);
}

TEST(BlurTest, GlassKeepsValuesWithinInputRange) {
  Rgb8Image img(48, 48);
  for (int y = 0; y < 48; ++y) {
    for (int x = 0; x < 48; ++x) {
      const std::uint8_t v = x < 24 ? 40 : 210;
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = v;
    }
  }
  const auto out = blur(img, BlurKind::kGlass, 2, 17);
  EXPECT_NE(out, img);
  for (auto v : out.pixels()) {
    EXPECT_GE(v, 40);
    EXPECT_LE(v, 210);
  }
}

TEST(BlurTest, TooSmallInputIsRejected) {
  const auto tiny = Rgb8Image::filled(5, 5, 10, 10, 10);
  try {
    blur(tiny, BlurKind::kDefocus, 5, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInputTooSmall);
  }
  EXPECT_THROW(blur(tiny, BlurKind::kMotion, 5, 0), Error);
  EXPECT_THROW(blur(tiny, BlurKind::kGlass, 5, 0), Error);
}

TEST(BlurTest, MotionBlurSmearsAnEdge) {
  Rgb8Image img(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 32; x < 64; ++x) {
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = 255;
    }
  }
  const auto out = blur(img, BlurKind::kMotion, 3, 4);
  int intermediate = 0;
  for (int x = 20; x < 44; ++x) {
    const int v = out.at(x, 32, 0);
    if (v > 10 && v < 245) ++intermediate;
  }
  EXPECT_GE(intermediate, 3);
}

TEST(ZoomTest, FactorLadder) {
  EXPECT_DOUBLE_EQ(zoom_factors(3).back(), 1.21);
  EXPECT_DOUBLE_EQ(zoom_factors(1).back(), 1.11);
  EXPECT_DOUBLE_EQ(zoom_factors(5).back(), 1.33);
  EXPECT_DOUBLE_EQ(zoom_factors(5).front(), 1.0);
  EXPECT_EQ(zoom_factors(5).size(), 34u);
}

// Independent zoom blur using nearest-neighbour center scaling.
std::vector<double> NearestZoomBlur(const Rgb8Image& img, int severity) {
  const int w = img.width(), h = img.height();
  const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  std::vector<double> acc(static_cast<std::size_t>(w * h), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) acc[static_cast<std::size_t>(y * w + x)] = img.at(x, y, 0);
  }
  for (double z : zoom_factors(severity)) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int sx = std::clamp(static_cast<int>(std::lround(cx + (x - cx) / z)), 0, w - 1);
        const int sy = std::clamp(static_cast<int>(std::lround(cy + (y - cy) / z)), 0, h - 1);
        acc[static_cast<std::size_t>(y * w + x)] += img.at(sx, sy, 0);
      }
    }
  }
  const double n = static_cast<double>(zoom_factors(severity).size()) + 1.0;
  for (double& v : acc) v /= n;
  return acc;
}

TEST(ZoomTest, CenteredSquareAgainstNearestNeighbourOracle) {
  Rgb8Image img(65, 65);
  for (int y = 22; y <= 42; ++y) {
    for (int x = 22; x <= 42; ++x) {
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = 255;
    }
  }
  const auto out = zoom_blur(img, 5, 0);
  EXPECT_EQ(out.at(32, 32, 0), 255);
  EXPECT_LT(out.at(0, 0, 0), out.at(45, 45, 0));
  EXPECT_LT(out.at(64, 64, 0), out.at(44, 44, 0));
  const auto oracle = NearestZoomBlur(img, 5);
  double mad = 0;
  double worst = 0;
  for (int y = 0; y < 65; ++y) {
    for (int x = 0; x < 65; ++x) {
      const double d = std::abs(out.at(x, y, 0) - oracle[static_cast<std::size_t>(y * 65 + x)]);
      mad += d;
      worst = std::max(worst, d);
    }
  }
  EXPECT_LT(mad / (65.0 * 65.0), 2.0);
  EXPECT_LT(worst, 40.0);
}

TEST(WeatherTest, BrightnessShift) {
  const auto half = Rgb8Image::filled(16, 16, 128, 128, 128);
  const auto out = weather(half, WeatherKind::kBrightness, 2, 0);
  for (auto v : out.pixels()) EXPECT_NEAR(v, (128.0 / 255.0 + 0.2) * 255.0, 1.0);
  const auto bright = Rgb8Image::filled(16, 16, 230, 230, 230);
  const auto saturated = weather(bright, WeatherKind::kBrightness, 5, 0);
  for (auto v : saturated.pixels()) EXPECT_EQ(v, 255);
}

TEST(WeatherTest, FogRaisesMeanIntensity) {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> px(0, 255);
  for (int i = 0; i < 100; ++i) {
    Rgb8Image img(33, 29);
    for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(px(gen));
    const auto out = weather(img, WeatherKind::kFog, 1, static_cast<std::uint64_t>(i));
    EXPECT_GT(MeanValue(out), MeanValue(img)) << "image " << i;
  }
}

TEST(WeatherTest, FrostNeedsTextures) {
  const auto img = fixture_image(0, 32);
  try {
    weather(img, WeatherKind::kFrost, 1, 0, nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingAsset);
  }
  EXPECT_THROW(apply_image_perturbation(img, PerturbationSpec::image(ImageMethod::kFrost, 1), 0,
                                        PerturbContext{}),
               Error);
  EXPECT_THROW(FrostTextures({}), Error);
  EXPECT_EQ(FrostTextures::procedural().size(), 5u);
}

TEST(WeatherTest, SnowBrightens) {
  const auto img = fixture_image(6, 96);
  for (int s = 1; s <= 5; ++s) {
    EXPECT_GT(MeanValue(weather(img, WeatherKind::kSnow, s, 8)), MeanValue(img));
  }
}

TEST(DiamondSquareTest, ZeroAmplitudeIsFlat) {
  const auto hm = diamond_square(5, 2.0, 42, 0.0, 0.3);
  EXPECT_EQ(hm.side(), 33);
  for (double v : hm.values()) EXPECT_DOUBLE_EQ(v, 0.3);
  const auto flat = hm.normalized();
  for (double v : flat.values()) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(DiamondSquareTest, DeterministicAndNormalized) {
  const auto a = diamond_square(6, 1.7, 9);
  const auto b = diamond_square(6, 1.7, 9);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  const auto c = diamond_square(6, 1.7, 10);
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
  const auto n = a.normalized();
  const auto [lo, hi] = std::minmax_element(n.values().begin(), n.values().end());
  EXPECT_DOUBLE_EQ(*lo, 0.0);
  EXPECT_DOUBLE_EQ(*hi, 1.0);
  for (double v : a.values()) EXPECT_TRUE(std::isfinite(v));
}

TEST(DiamondSquareTest, RougherWithSlowerDecay) {
  auto roughness = [](const Heightmap& h) {
    double s = 0;
    for (int y = 0; y < h.side(); ++y) {
      for (int x = 1; x < h.side(); ++x) s += std::abs(h.at(x, y) - h.at(x - 1, y));
    }
    return s;
  };
  double smooth = 0, rough = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    smooth += roughness(diamond_square(6, 2.0, seed).normalized());
    rough += roughness(diamond_square(6, 1.4, seed).normalized());
  }
  EXPECT_GT(rough, smooth);
}

TEST(DigitalTest, ContrastScalesAboutChannelMeans) {
  const auto img = fixture_image(7, 64);
  const auto out = digital(img, DigitalKind::kContrast, 5, 0);
  double mean[3] = {0, 0, 0};
  for (std::size_t i = 0; i < img.size(); ++i) mean[i % 3] += img.pixels()[i];
  for (double& m : mean) m /= static_cast<double>(img.size() / 3);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double expected = (img.pixels()[i] - mean[i % 3]) * 0.05 + mean[i % 3];
    EXPECT_NEAR(out.pixels()[i], expected, 0.51);
  }
}

TEST(DigitalTest, PixelateMakesBlocks) {
  const auto img = fixture_image(8, 64);
  const auto out = digital(img, DigitalKind::kPixelate, 5, 0);
  // Factor 0.25 on 64 pixels: exact 4x4 blocks.
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      EXPECT_EQ(out.at(x, y, 1), out.at(x / 4 * 4, y / 4 * 4, 1));
    }
  }
}

// Mid-gray sits on a DC quantization point; other constants can drift by up
// to half a DC step (about 7 levels at quality 7).
TEST(DigitalTest, JpegOnConstantImage) {
  const auto img = Rgb8Image::filled(50, 30, 128, 128, 128);
  const auto out = digital(img, DigitalKind::kJpeg, 5, 0);
  EXPECT_EQ(out.width(), 50);
  EXPECT_EQ(out.height(), 30);
  EXPECT_LE(MaxAbsDiff(out, img), 2);
}

TEST(DigitalTest, JpegLosesDetailWithSeverity) {
  const auto img = fixture_image(9, 96);
  EXPECT_GT(MaxAbsDiff(digital(img, DigitalKind::kJpeg, 5, 0), img), 2);
}

TEST(StylizeTest, RoutesThroughClient) {
  const auto img = fixture_image(1, 32);
  try {
    apply_image_perturbation(img, PerturbationSpec::image(ImageMethod::kStylize, 2), 0, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kServiceUnavailable);
  }
  services::LutStylizeStub stub;
  const auto out = apply_image_perturbation(img, PerturbationSpec::image(ImageMethod::kStylize, 2),
                                            0, {nullptr, &stub});
  EXPECT_EQ(out, stub.stylize_image(img, 2));
  EXPECT_NE(out, img);
}

TEST(ImagePerturbTest, RejectsTextSpecs) {
  const auto img = fixture_image(0, 32);
  EXPECT_THROW(apply_image_perturbation(img, PerturbationSpec::text(TextMethod::kOcr, 1), 0, {}),
               Error);
}

}  // namespace
}  // namespace mmrobust::image
