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

#ifndef MMROBUST_METRICS_H_
#define MMROBUST_METRICS_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mmrobust/image.h"

namespace mmrobust::metrics {

// ---- Retrieval ----------------------------------------------------------

struct RankedQuery {
  std::vector<std::string> ranked;  // candidate ids, best first
  std::set<std::string> relevant;   // ground-truth ids
};
using RetrievalRanking = std::vector<RankedQuery>;

// Percentage of queries with a relevant id in the top k. Throws
// Error(kEmptyQuerySet) for no queries, Error(kInvalidArgument) for k < 1 or
// a malformed ranking.
double recall_at_k(const RetrievalRanking& ranking, int k);

struct RetrievalScores {
  double tr1 = 0, tr5 = 0, tr10 = 0;  // text retrieval (image query)
  double ir1 = 0, ir5 = 0, ir10 = 0;  // image retrieval (text query)
};

double rsum(double tr1, double tr5, double tr10, double ir1, double ir5, double ir10);
double rsum(const RetrievalScores& s);

// ---- Robustness scores --------------------------------------------------

// (clean - perturbed) / clean; positive means a drop.
double mmi(double clean, double perturbed);
// 100 (n_p - n_gt) / n_gt.
double mor(long long n_gt, long long n_p);
// Percentage of equal entries.
double accuracy(const std::vector<std::string>& predictions,
                const std::vector<std::string>& labels);

// ---- Caption metrics ----------------------------------------------------

using Tokens = std::vector<std::string>;

struct CaptionEvalInput {
  Tokens hypothesis;
  std::vector<Tokens> references;
};

// Lowercased alphanumeric runs ("A dog's toy." -> a, dog, s, toy).
Tokens caption_tokens(std::string_view caption);

// Clipped n-gram precision, uniform weights over the orders the hypothesis
// is long enough to have, brevity penalty against the closest reference
// length. A zero clipped count at order n is replaced by 1 / (2 L) over the
// L - n + 1 hypothesis n-grams.
double bleu(const CaptionEvalInput& input, int n_max = 4);

// LCS F-measure with beta = 1.2, best over references.
double rouge_l(const CaptionEvalInput& input, double beta = 1.2);

// CIDEr-D per item: clipped TF-IDF n-gram cosine for n = 1..4 with a
// Gaussian length penalty, averaged over orders and references, scaled by
// 10. Document frequencies come from the corpus references. Throws
// Error(kCorpusTooSmall) below two items.
std::vector<double> cider_d(const std::vector<CaptionEvalInput>& corpus, double sigma = 6.0);

struct CaptionScores {
  double bleu4 = 0;
  double rouge_l = 0;
  double cider_d = 0;
  std::size_t corpus_size = 0;
};
// Corpus means of the three metrics.
CaptionScores score_captions(const std::vector<CaptionEvalInput>& corpus);

// ---- Image quality ------------------------------------------------------

// Mean SSIM over the valid region of an 11x11 Gaussian window (sigma 1.5)
// on BT.601 luma, L = 255, k1 = 0.01, k2 = 0.03. Throws
// Error(kDimensionMismatch) for unequal sizes and Error(kInputTooSmall) when
// a side is below 11.
double ssim(const Rgb8Image& a, const Rgb8Image& b);

}  // namespace mmrobust::metrics

#endif  // MMROBUST_METRICS_H_
