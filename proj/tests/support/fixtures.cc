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

#include "fixtures.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <unistd.h>

#include "mmrobust/image_io.h"
#include "mmrobust/rng.h"

namespace mmrobust::testing {
namespace fs = std::filesystem;

namespace {

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

// Value noise on a lattice of `cell` pixels, in [0, 1].
class ValueNoise {
 public:
  ValueNoise(int size, int cell, Rng& rng) : cell_(cell), n_(size / cell + 2) {
    values_.resize(static_cast<std::size_t>(n_) * n_);
    for (double& v : values_) v = rng.uniform();
  }

  double at(int x, int y) const {
    const double fx = static_cast<double>(x) / cell_;
    const double fy = static_cast<double>(y) / cell_;
    const int x0 = static_cast<int>(fx);
    const int y0 = static_cast<int>(fy);
    const double tx = smooth(fx - x0);
    const double ty = smooth(fy - y0);
    const double a = v(x0, y0) + (v(x0 + 1, y0) - v(x0, y0)) * tx;
    const double b = v(x0, y0 + 1) + (v(x0 + 1, y0 + 1) - v(x0, y0 + 1)) * tx;
    return a + (b - a) * ty;
  }

 private:
  double v(int x, int y) const { return values_[static_cast<std::size_t>(y) * n_ + x]; }

  int cell_;
  int n_;
  std::vector<double> values_;
};

}  // namespace

Rgb8Image fixture_image(int index, int size) {
  Rng rng(0x5eed0000ull + static_cast<std::uint64_t>(index) * 7919);
  double top[3], bottom[3];
  for (int c = 0; c < 3; ++c) {
    top[c] = rng.uniform(0.35, 0.95);
    bottom[c] = rng.uniform(0.05, 0.6);
  }

  struct Shape {
    bool circle;
    double cx, cy, r;
    double color[3];
  };
  std::vector<Shape> shapes(3 + rng.below(4));
  for (auto& s : shapes) {
    s.circle = rng.bernoulli(0.5);
    s.cx = rng.uniform(0.1, 0.9) * size;
    s.cy = rng.uniform(0.1, 0.9) * size;
    s.r = rng.uniform(0.08, 0.25) * size;
    for (double& c : s.color) c = rng.uniform(0.0, 1.0);
  }

  std::vector<ValueNoise> octaves;
  for (int cell : {2, 4, 8, 16}) octaves.emplace_back(size, cell, rng);
  ValueNoise mask(size, std::max(4, size / 4), rng);
  const double amplitude = rng.uniform(0.6, 1.0);
  const double tint = rng.uniform(0.3, 1.0);

  Rgb8Image img(size, size);
  for (int y = 0; y < size; ++y) {
    const double t = static_cast<double>(y) / (size - 1);
    for (int x = 0; x < size; ++x) {
      double rgb[3];
      for (int c = 0; c < 3; ++c) rgb[c] = top[c] + (bottom[c] - top[c]) * t;
      for (const auto& s : shapes) {
        const double dx = x - s.cx;
        const double dy = y - s.cy;
        const bool inside =
            s.circle ? dx * dx + dy * dy <= s.r * s.r : std::abs(dx) <= s.r && std::abs(dy) <= s.r;
        if (inside) std::copy(std::begin(s.color), std::end(s.color), rgb);
      }
      double tex = 0.0;
      double w = 0.5;
      for (const auto& o : octaves) {
        tex += w * (o.at(x, y) - 0.5);
        w *= 0.75;
      }
      const double m = smooth(std::clamp((mask.at(x, y) - 0.15) * 2.5, 0.0, 1.0));
      for (int c = 0; c < 3; ++c) {
        const double k = c == 0 ? 1.0 : tint;
        const double v = rgb[c] + amplitude * m * k * tex;
        img.at(x, y, c) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
      }
    }
  }
  return img;
}

std::vector<Rgb8Image> fixture_images(int count, int size) {
  std::vector<Rgb8Image> out;
  for (int i = 0; i < count; ++i) out.push_back(fixture_image(i, size));
  return out;
}

std::vector<CaptionRecord> fixture_captions() {
  return {
      {"img0", 0, "An orange metal bowl strainer filled with fresh red apples."},
      {"img0", 1, "A kitchen counter holds a large bowl of ripe apples."},
      {"img0", 2, "Fresh apples sit inside a metal colander on the table."},
      {"img0", 3, "A bright orange strainer full of shiny red fruit."},
      {"img0", 4, "Several apples rest in a metal bowl near the window."},
      {"img1", 0, "A brown dog runs across a wide green field."},
      {"img1", 1, "The happy puppy chases a red ball on the grass."},
      {"img1", 2, "A small dog plays outside in the sunny park."},
      {"img1", 3, "A young dog sprints over the lawn toward its owner."},
      {"img1", 4, "One brown puppy jumps through tall grass near trees."},
  };
}

CaptionDataset write_fixture_dataset(const fs::path& dir, int images, int size) {
  fs::create_directories(dir / "images");
  std::vector<CaptionRecord> records;
  const auto base = fixture_captions();
  for (int i = 0; i < images; ++i) {
    const std::string id = "img" + std::to_string(i);
    write_image(dir / "images" / (id + ".png"), fixture_image(i, size));
    for (int k = 0; k < 5; ++k) {
      const auto& src = base[static_cast<std::size_t>((i % 2) * 5 + k)];
      records.push_back({id, k, src.text});
    }
  }
  write_captions(dir / "captions.jsonl", records);
  return load_caption_dataset(dir / "images", dir / "captions.jsonl");
}

std::vector<RecallRow> published_recall_rows() {
  return {
      {"flickr/gaussian", 57.7, 79.0, 84.5, 43.3, 70.0, 78.6, 413.0},
      {"flickr/shot", 58.9, 80.4, 85.7, 43.9, 70.9, 79.7, 419.6},
      {"flickr/impulse", 54.3, 76.0, 82.3, 40.6, 67.4, 76.3, 396.9},
      {"flickr/speckle", 67.9, 89.0, 93.5, 49.4, 77.8, 85.6, 463.2},
      {"flickr/defocus", 58.0, 80.3, 86.9, 43.0, 70.3, 79.2, 417.6},
      {"flickr/zoom", 24.6, 42.2, 50.4, 22.7, 43.5, 53.0, 236.3},
      {"flickr/snow", 39.8, 61.3, 70.2, 33.8, 59.0, 68.6, 332.7},
      {"flickr/pixelate", 33.2, 52.1, 59.7, 27.2, 48.2, 57.0, 277.4},
      {"coco/gaussian", 47.7, 73.8, 82.5, 33.5, 61.7, 73.1, 372.2},
      {"coco/zoom", 17.6, 35.2, 44.0, 16.4, 35.3, 45.2, 193.8},
      {"coco/contrast", 41.7, 64.2, 72.1, 29.6, 54.7, 64.9, 327.1},
      {"coco/jpeg", 58.4, 84.2, 91.1, 40.7, 70.4, 81.1, 425.8},
  };
}

std::vector<MmiRow> published_mmi_rows() {
  return {
      {"ViLT FT", 522.0, 408.7, 21.7},
      {"CLIP ZS", 533.7, 499.2, 6.5},
      {"BLIP FT", 580.9, 527.2, 9.2},
  };
}

std::vector<MethodColumnsRow> published_method_columns() {
  return {
      {"CLIP ZS", 533.7,
       {501.7, 504.2, 481.2, 515.5, 502.1, 530.1, 509.7, 457.8, 470.7, 495.6, 519.7, 530.1, 515.4,
        510.4, 469.5, 524.6, 447.6},
       499.2, 6.5},
      {"CLIP FT", 544.3,
       {500.1, 503.8, 479.1, 522.1, 493.3, 536.9, 513.3, 444.4, 464.4, 503.2, 529.7, 543.5, 521.5,
        513.9, 453.9, 528.6, 436.9},
       499.3, 8.3},
      {"TCL ZS", 563.8,
       {464.9, 467.0, 458.4, 498.0, 429.8, 506.6, 388.5, 251.3, 407.3, 449.5, 434.2, 509.1, 473.2,
        434.4, 247.2, 502.2, 343.4},
       427.4, 24.2},
      {"ALBEF FT", 577.7,
       {533.8, 538.3, 532.0, 557.8, 528.8, 569.2, 516.0, 416.1, 532.0, 558.1, 560.4, 572.0, 550.6,
        538.7, 435.9, 559.8, 464.1},
       527.3, 8.7},
  };
}

TempDir::TempDir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace mmrobust::testing
