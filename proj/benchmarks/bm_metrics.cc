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

#include <string>
#include <vector>

#include "mmrobust/image_perturb.h"
#include "mmrobust/metrics.h"
#include "mmrobust/rng.h"

namespace mmrobust {
namespace {

metrics::Tokens Sentence(Rng& rng, int len) {
  metrics::Tokens t;
  for (int i = 0; i < len; ++i) t.push_back("w" + std::to_string(rng.below(400)));
  return t;
}

// range(0): corpus size; five references per item as in COCO.
std::vector<metrics::CaptionEvalInput> Corpus(int items) {
  Rng rng(3);
  std::vector<metrics::CaptionEvalInput> corpus(static_cast<std::size_t>(items));
  for (auto& in : corpus) {
    in.hypothesis = Sentence(rng, 10);
    for (int r = 0; r < 5; ++r) in.references.push_back(Sentence(rng, 8 + static_cast<int>(rng.below(6))));
  }
  return corpus;
}

void BM_Ssim(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  Rgb8Image a(side, side);
  Rng rng(1);
  for (auto& v : a.pixels()) v = static_cast<std::uint8_t>(rng.below(256));
  const auto b = image::add_noise(a, image::NoiseKind::kGaussian, 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::ssim(a, b));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Ssim)->Arg(64)->Arg(224)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_CiderD(benchmark::State& state) {
  const auto corpus = Corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(metrics::cider_d(corpus));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CiderD)->RangeMultiplier(10)->Range(10, 5000)->Unit(benchmark::kMillisecond);

void BM_ScoreCaptions(benchmark::State& state) {
  const auto corpus = Corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(metrics::score_captions(corpus));
}
BENCHMARK(BM_ScoreCaptions)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mmrobust
