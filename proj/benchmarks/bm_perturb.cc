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

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "mmrobust/fidelity.h"
#include "mmrobust/image_perturb.h"
#include "mmrobust/seed.h"
#include "mmrobust/stub_services.h"
#include "mmrobust/text_perturb.h"

namespace mmrobust {
namespace {

constexpr char kCaption[] = "An orange metal bowl strainer filled with apples.";

Rgb8Image Scene(int side) {
  Rgb8Image img(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const double t = std::sin(x * 0.11) * std::cos(y * 0.07);
      img.at(x, y, 0) = static_cast<std::uint8_t>(120 + 100 * t);
      img.at(x, y, 1) = static_cast<std::uint8_t>(255 * y / side);
      img.at(x, y, 2) = static_cast<std::uint8_t>((x ^ y) & 0xff);
    }
  }
  return img;
}

// range(0): method index, range(1): severity.
void BM_ImagePerturbation(benchmark::State& state) {
  static const Rgb8Image img = Scene(224);
  static services::LutStylizeStub stylizer;
  const image::PerturbContext ctx{&image::FrostTextures::procedural(), &stylizer};
  const auto method = all_image_methods()[static_cast<std::size_t>(state.range(0))];
  const auto spec = PerturbationSpec::image(method, static_cast<int>(state.range(1)));
  state.SetLabel(std::string(name(method)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(image::apply_image_perturbation(img, spec, seed++, ctx));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ImagePerturbation)
    ->ArgsProduct({benchmark::CreateDenseRange(0, 16, 1), {1, 5}})
    ->Unit(benchmark::kMillisecond);

void BM_DiamondSquare(benchmark::State& state) {
  const int exp = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(image::diamond_square(exp, 2.0, 7));
  }
}
BENCHMARK(BM_DiamondSquare)->DenseRange(6, 9, 1);

void BM_TextPerturbation(benchmark::State& state) {
  const text::TextResources res;
  const auto method = all_text_methods()[static_cast<std::size_t>(state.range(0))];
  const auto spec = PerturbationSpec::text(method, 3);
  state.SetLabel(std::string(name(method)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(text::apply_text_perturbation(kCaption, spec, seed++, res, nullptr));
  }
}
BENCHMARK(BM_TextPerturbation)->DenseRange(0, 10, 1);

void BM_FidelityGate(benchmark::State& state) {
  const text::TextResources res;
  services::HashedBagOfWordsEmbedder embedder;
  const auto spec = PerturbationSpec::text(TextMethod::kSynonymReplacement, 3);
  const fidelity::FidelityConfig config{0.75, 100};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const std::uint64_t base = seed++;
    auto gen = [&](int attempt) {
      auto r = text::apply_text_perturbation(kCaption, spec, attempt_seed(base, attempt), res, nullptr);
      return fidelity::Candidate{std::move(r.text), r.flagged};
    };
    benchmark::DoNotOptimize(fidelity::fidelity_gate(kCaption, gen, embedder, config));
  }
}
BENCHMARK(BM_FidelityGate);

}  // namespace
}  // namespace mmrobust
