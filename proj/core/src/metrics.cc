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

#include "mmrobust/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <array>
#include <map>
#include <numeric>
#include <unordered_set>

#include "mmrobust/error.h"

namespace mmrobust::metrics {
namespace {

using NgramCounts = std::map<Tokens, int>;

NgramCounts ngrams(const Tokens& tokens, int n) {
  NgramCounts out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++out[Tokens(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return out;
}

void check_hypothesis(const CaptionEvalInput& input) {
  if (input.hypothesis.empty()) throw Error(ErrorCode::kEmptyHypothesis, "empty hypothesis");
  if (input.references.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one reference is required");
  }
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Valid-region separable filter of a w x h plane with a normalized kernel.
std::vector<double> filter_valid(const std::vector<double>& plane, int w, int h,
                                 const std::vector<double>& k) {
  const int r = static_cast<int>(k.size());
  const int ow = w - r + 1;
  const int oh = h - r + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    const double* row = plane.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < r; ++i) s += k[i] * row[x + i];
      tmp[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < r; ++i) s += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

}  // namespace

double recall_at_k(const RetrievalRanking& ranking, int k) {
  if (ranking.empty()) throw Error(ErrorCode::kEmptyQuerySet, "no queries");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  std::size_t hits = 0;
  for (const auto& q : ranking) {
    if (q.relevant.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "query without ground truth");
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : q.ranked) {
      if (!seen.insert(id).second) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate candidate id '" + id + "'");
      }
    }
    for (const auto& id : q.relevant) {
      if (!seen.count(id)) {
        throw Error(ErrorCode::kInvalidArgument, "ground-truth id '" + id + "' not ranked");
      }
    }
    const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(k), q.ranked.size());
    for (std::size_t i = 0; i < top; ++i) {
      if (q.relevant.count(q.ranked[i])) {
        ++hits;
        break;
      }
    }
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ranking.size());
}

double rsum(double tr1, double tr5, double tr10, double ir1, double ir5, double ir10) {
  for (double v : {tr1, tr5, tr10, ir1, ir5, ir10}) {
    if (!(v >= 0.0 && v <= 100.0)) {
      throw Error(ErrorCode::kInvalidArgument, "recall values must be in [0, 100]");
    }
  }
  return tr1 + tr5 + tr10 + ir1 + ir5 + ir10;
}

double rsum(const RetrievalScores& s) { return rsum(s.tr1, s.tr5, s.tr10, s.ir1, s.ir5, s.ir10); }

double mmi(double clean, double perturbed) {
  if (clean == 0.0) throw Error(ErrorCode::kZeroCleanScore, "clean score is zero");
  return (clean - perturbed) / clean;
}

double mor(long long n_gt, long long n_p) {
  if (n_gt < 1) throw Error(ErrorCode::kZeroBaseline, "no detections on ground-truth images");
  return 100.0 * static_cast<double>(n_p - n_gt) / static_cast<double>(n_gt);
}

double accuracy(const std::vector<std::string>& predictions,
                const std::vector<std::string>& labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(predictions.size()) +
                                                " predictions for " +
                                                std::to_string(labels.size()) + " labels");
  }
  if (labels.empty()) throw Error(ErrorCode::kEmptyInput, "no labels");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) matches += predictions[i] == labels[i];
  return 100.0 * static_cast<double>(matches) / static_cast<double>(labels.size());
}

Tokens caption_tokens(std::string_view caption) {
  Tokens out;
  std::string cur;
  for (char c : caption) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double bleu(const CaptionEvalInput& input, int n_max) {
  check_hypothesis(input);
  if (n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be >= 1");
  const auto& hyp = input.hypothesis;
  const double len = static_cast<double>(hyp.size());

  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= n_max; ++n) {
    if (static_cast<int>(hyp.size()) < n) break;
    const auto counts = ngrams(hyp, n);
    NgramCounts max_ref;
    for (const auto& ref : input.references) {
      for (const auto& [g, c] : ngrams(ref, n)) max_ref[g] = std::max(max_ref[g], c);
    }
    double clipped = 0.0;
    for (const auto& [g, c] : counts) {
      const auto it = max_ref.find(g);
      if (it != max_ref.end()) clipped += std::min(c, it->second);
    }
    const double total = len - n + 1;
    if (clipped == 0.0) clipped = 1.0 / (2.0 * len);
    log_sum += std::log(clipped / total);
    ++orders;
  }

  std::size_t closest = input.references.front().size();
  for (const auto& ref : input.references) {
    const auto d = std::abs(static_cast<long>(ref.size()) - static_cast<long>(hyp.size()));
    const auto best = std::abs(static_cast<long>(closest) - static_cast<long>(hyp.size()));
    if (d < best || (d == best && ref.size() < closest)) closest = ref.size();
  }
  const double bp =
      hyp.size() >= closest ? 1.0 : std::exp(1.0 - static_cast<double>(closest) / len);
  return bp * std::exp(log_sum / orders);
}

double rouge_l(const CaptionEvalInput& input, double beta) {
  check_hypothesis(input);
  double best = 0.0;
  for (const auto& ref : input.references) {
    if (ref.empty()) continue;
    const double lcs = static_cast<double>(lcs_length(input.hypothesis, ref));
    if (lcs == 0.0) continue;
    const double p = lcs / static_cast<double>(input.hypothesis.size());
    const double r = lcs / static_cast<double>(ref.size());
    const double b2 = beta * beta;
    best = std::max(best, (1.0 + b2) * p * r / (r + b2 * p));
  }
  return best;
}

std::vector<double> cider_d(const std::vector<CaptionEvalInput>& corpus, double sigma) {
  constexpr int kOrders = 4;
  if (corpus.size() < 2) {
    throw Error(ErrorCode::kCorpusTooSmall, "CIDEr-D needs at least two items");
  }
  for (const auto& item : corpus) check_hypothesis(item);

  std::map<Tokens, int> df;
  for (const auto& item : corpus) {
    std::set<Tokens> present;
    for (const auto& ref : item.references) {
      for (int n = 1; n <= kOrders; ++n) {
        for (auto& [g, c] : ngrams(ref, n)) present.insert(g);
      }
    }
    for (const auto& g : present) ++df[g];
  }
  const double log_n = std::log(static_cast<double>(corpus.size()));

  struct Vec {
    std::array<std::map<Tokens, double>, kOrders> v;
    std::array<double, kOrders> norm{};
    double length = 0;
  };
  auto to_vec = [&](const Tokens& tokens) {
    Vec out;
    out.length = static_cast<double>(tokens.size());
    for (int n = 1; n <= kOrders; ++n) {
      for (const auto& [g, c] : ngrams(tokens, n)) {
        const auto it = df.find(g);
        const double idf = log_n - std::log(std::max(1.0, it == df.end() ? 0.0 : it->second));
        const double w = c * idf;
        out.v[n - 1][g] = w;
        out.norm[n - 1] += w * w;
      }
      out.norm[n - 1] = std::sqrt(out.norm[n - 1]);
    }
    return out;
  };

  std::vector<double> scores;
  scores.reserve(corpus.size());
  for (const auto& item : corpus) {
    const Vec hyp = to_vec(item.hypothesis);
    double total = 0.0;
    for (const auto& ref_tokens : item.references) {
      const Vec ref = to_vec(ref_tokens);
      const double delta = hyp.length - ref.length;
      const double penalty = std::exp(-(delta * delta) / (2.0 * sigma * sigma));
      for (int n = 0; n < kOrders; ++n) {
        double val = 0.0;
        for (const auto& [g, w] : hyp.v[n]) {
          const auto it = ref.v[n].find(g);
          if (it != ref.v[n].end()) val += std::min(w, it->second) * it->second;
        }
        if (hyp.norm[n] != 0.0 && ref.norm[n] != 0.0) val /= hyp.norm[n] * ref.norm[n];
        total += val * penalty;
      }
    }
    scores.push_back(10.0 * total / kOrders / static_cast<double>(item.references.size()));
  }
  return scores;
}

CaptionScores score_captions(const std::vector<CaptionEvalInput>& corpus) {
  CaptionScores out;
  out.corpus_size = corpus.size();
  const auto cider = cider_d(corpus);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out.bleu4 += bleu(corpus[i]);
    out.rouge_l += rouge_l(corpus[i]);
    out.cider_d += cider[i];
  }
  const double n = static_cast<double>(corpus.size());
  out.bleu4 /= n;
  out.rouge_l /= n;
  out.cider_d /= n;
  return out;
}

double ssim(const Rgb8Image& a, const Rgb8Image& b) {
  constexpr int kWindow = 11;
  constexpr double kSigma = 1.5;
  constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
  constexpr double kC2 = (0.03 * 255) * (0.03 * 255);
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "SSIM needs equally sized images");
  }
  if (a.width() < kWindow || a.height() < kWindow) {
    throw Error(ErrorCode::kInputTooSmall, "SSIM needs images of at least 11x11");
  }

  std::vector<double> kernel(kWindow);
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    kernel[i] = std::exp(-d * d / (2 * kSigma * kSigma));
  }
  const double ksum = std::accumulate(kernel.begin(), kernel.end(), 0.0);
  for (double& k : kernel) k /= ksum;

  const int w = a.width();
  const int h = a.height();
  const auto x = luma(a);
  const auto y = luma(b);
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, w, h, kernel);
  const auto my = filter_valid(y, w, h, kernel);
  const auto sxx = filter_valid(xx, w, h, kernel);
  const auto syy = filter_valid(yy, w, h, kernel);
  const auto sxy = filter_valid(xy, w, h, kernel);

  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    total += ((2 * mx[i] * my[i] + kC1) * (2 * cov + kC2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + kC1) * (vx + vy + kC2));
  }
  return total / static_cast<double>(mx.size());
}

}  // namespace mmrobust::metrics
