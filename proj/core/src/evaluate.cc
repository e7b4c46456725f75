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
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mmrobust/error.h"
#include "mmrobust/harness.h"
#include "mmrobust/image_io.h"
#include "mmrobust/metrics.h"

namespace mmrobust::harness {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename Fn>
auto call_adapter(const ModelAdapter& adapter, const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (category(e.code()) == ErrorCategory::kService) throw;
    throw Error(ErrorCode::kAdapterFailure, adapter.name() + " on " + context + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kAdapterFailure, adapter.name() + " on " + context + ": " + e.what());
  }
}

std::vector<std::size_t> rank(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

struct Side {
  std::vector<Rgb8Image> images;
  std::vector<std::string> image_ids;
  std::vector<std::string> texts;
  std::vector<std::string> text_image_ids;
  std::vector<std::string> text_keys;
};

MetricValues score_retrieval(RetrievalAdapter& adapter, const Side& side,
                             const std::string& context) {
  const auto sim = call_adapter(adapter, context,
                                [&] { return adapter.similarity(side.images, side.texts); });
  if (sim.size() != side.images.size()) {
    throw Error(ErrorCode::kAdapterFailure, adapter.name() + " on " + context +
                                                ": similarity has wrong row count");
  }
  for (const auto& row : sim) {
    if (row.size() != side.texts.size()) {
      throw Error(ErrorCode::kAdapterFailure, adapter.name() + " on " + context +
                                                  ": similarity has wrong column count");
    }
  }

  metrics::RetrievalRanking tr;
  for (std::size_t i = 0; i < side.images.size(); ++i) {
    metrics::RankedQuery q;
    for (std::size_t t : rank(sim[i])) q.ranked.push_back(std::to_string(t));
    for (std::size_t t = 0; t < side.texts.size(); ++t) {
      if (side.text_image_ids[t] == side.image_ids[i]) q.relevant.insert(std::to_string(t));
    }
    if (!q.relevant.empty()) tr.push_back(std::move(q));
  }
  metrics::RetrievalRanking ir;
  for (std::size_t t = 0; t < side.texts.size(); ++t) {
    std::vector<double> column(side.images.size());
    for (std::size_t i = 0; i < side.images.size(); ++i) column[i] = sim[i][t];
    metrics::RankedQuery q;
    for (std::size_t i : rank(column)) q.ranked.push_back(side.image_ids[i]);
    q.relevant.insert(side.text_image_ids[t]);
    ir.push_back(std::move(q));
  }

  metrics::RetrievalScores s;
  s.tr1 = metrics::recall_at_k(tr, 1);
  s.tr5 = metrics::recall_at_k(tr, 5);
  s.tr10 = metrics::recall_at_k(tr, 10);
  s.ir1 = metrics::recall_at_k(ir, 1);
  s.ir5 = metrics::recall_at_k(ir, 5);
  s.ir10 = metrics::recall_at_k(ir, 10);
  return {{"tr1", s.tr1}, {"tr5", s.tr5},   {"tr10", s.tr10},          {"ir1", s.ir1},
          {"ir5", s.ir5}, {"ir10", s.ir10}, {"rsum", metrics::rsum(s)}};
}

MetricValues score_captioning(CaptioningAdapter& adapter, const Side& side,
                              const CaptionDataset& clean, const std::string& context) {
  std::vector<metrics::CaptionEvalInput> corpus;
  for (std::size_t i = 0; i < side.images.size(); ++i) {
    const std::string hyp = call_adapter(adapter, context + " image " + side.image_ids[i],
                                         [&] { return adapter.caption(side.images[i]); });
    metrics::CaptionEvalInput item;
    item.hypothesis = metrics::caption_tokens(hyp);
    if (item.hypothesis.empty()) {
      throw Error(ErrorCode::kAdapterFailure,
                  adapter.name() + " produced an empty caption for " + side.image_ids[i]);
    }
    for (const auto* r : clean.captions_of(side.image_ids[i])) {
      item.references.push_back(metrics::caption_tokens(r->text));
    }
    corpus.push_back(std::move(item));
  }
  const auto s = metrics::score_captions(corpus);
  return {{"bleu4", s.bleu4}, {"rouge_l", s.rouge_l}, {"cider_d", s.cider_d}};
}

MetricValues score_classification(ClassificationAdapter& adapter, const Side& side,
                                  const EvaluateOptions& options, const std::string& context) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < side.image_ids.size(); ++i) index[side.image_ids[i]] = i;
  std::vector<std::string> predictions;
  std::vector<std::string> labels;
  for (std::size_t t = 0; t < side.texts.size(); ++t) {
    const auto& image = side.images[index.at(side.text_image_ids[t])];
    predictions.push_back(call_adapter(adapter, context + " sample " + side.text_keys[t],
                                       [&] { return adapter.classify(image, side.texts[t]); }));
    const auto it = options.labels.find(side.text_keys[t]);
    labels.push_back(it == options.labels.end() ? "match" : it->second);
  }
  return {{"accuracy", metrics::accuracy(predictions, labels)}};
}

MetricValues score(ModelAdapter& adapter, const Side& side, const CaptionDataset& clean,
                   const EvaluateOptions& options, const std::string& context) {
  switch (adapter.capability()) {
    case Capability::kRetrieval:
      return score_retrieval(static_cast<RetrievalAdapter&>(adapter), side, context);
    case Capability::kCaptioning:
      return score_captioning(static_cast<CaptioningAdapter&>(adapter), side, clean, context);
    case Capability::kClassification:
      return score_classification(static_cast<ClassificationAdapter&>(adapter), side, options,
                                  context);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown adapter capability");
}

std::string primary_metric(Capability c) {
  switch (c) {
    case Capability::kRetrieval:
      return "rsum";
    case Capability::kCaptioning:
      return "cider_d";
    case Capability::kClassification:
      return "accuracy";
  }
  return {};
}

Side texts_of(Side side, const std::vector<CaptionRecord>& records) {
  side.texts.clear();
  side.text_image_ids.clear();
  side.text_keys.clear();
  for (const auto& r : records) {
    side.texts.push_back(r.text);
    side.text_image_ids.push_back(r.image_id);
    side.text_keys.push_back(r.key());
  }
  return side;
}

std::map<std::uint64_t, std::vector<std::string>> index_captions(const CaptionDataset& clean) {
  std::map<std::uint64_t, std::vector<std::string>> out;
  for (const auto& [id, path] : clean.images) {
    auto& list = out[content_hash(read_image(path))];
    for (const auto* r : clean.captions_of(id)) list.push_back(r->text);
  }
  return out;
}

}  // namespace

ExactMatchRetrieval::ExactMatchRetrieval(const CaptionDataset& clean)
    : captions_by_hash_(index_captions(clean)) {}

std::vector<std::vector<double>> ExactMatchRetrieval::similarity(
    const std::vector<Rgb8Image>& images, const std::vector<std::string>& texts) {
  std::vector<std::vector<double>> out(images.size(), std::vector<double>(texts.size(), 0.0));
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto it = captions_by_hash_.find(content_hash(images[i]));
    if (it == captions_by_hash_.end()) continue;
    for (std::size_t t = 0; t < texts.size(); ++t) {
      if (std::find(it->second.begin(), it->second.end(), texts[t]) != it->second.end()) {
        out[i][t] = 1.0;
      }
    }
  }
  return out;
}

ReferenceCaptioner::ReferenceCaptioner(const CaptionDataset& clean) {
  for (auto& [hash, captions] : index_captions(clean)) {
    if (!captions.empty()) first_caption_[hash] = captions.front();
  }
}

std::string ReferenceCaptioner::caption(const Rgb8Image& image) {
  const auto it = first_caption_.find(content_hash(image));
  return it == first_caption_.end() ? kUnknownCaption : it->second;
}

ExactMatchClassifier::ExactMatchClassifier(const CaptionDataset& clean)
    : captions_by_hash_(index_captions(clean)) {}

std::string ExactMatchClassifier::classify(const Rgb8Image& image, const std::string& text) {
  const auto it = captions_by_hash_.find(content_hash(image));
  if (it != captions_by_hash_.end() &&
      std::find(it->second.begin(), it->second.end(), text) != it->second.end()) {
    return "match";
  }
  return "mismatch";
}

BenchmarkReport evaluate(ModelAdapter& adapter, const CaptionDataset& clean,
                         const fs::path& perturbed_tree, const EvaluateOptions& options) {
  std::error_code ec;
  if (!fs::is_regular_file(perturbed_tree / "manifest.json", ec)) {
    throw Error(ErrorCode::kMalformedManifest,
                "no manifest.json in perturbed tree " + perturbed_tree.string());
  }
  const auto manifest = BenchmarkManifest::load(perturbed_tree / "manifest.json");
  manifest.validate_entries();
  const Modality modality = manifest.modality();
  if (modality == Modality::kText && adapter.capability() == Capability::kCaptioning) {
    throw Error(ErrorCode::kInvalidArgument,
                "captioning adapters are evaluated on image benchmarks only");
  }

  BenchmarkReport report;
  report.dataset = options.dataset_name.empty() ? manifest.dataset_id : options.dataset_name;
  report.adapter = adapter.name();
  report.modality = modality;
  report.primary_metric = primary_metric(adapter.capability());
  report.metadata.seed = manifest.global_seed;
  report.metadata.stochastic = adapter.stochastic();
  report.metadata.corpus_size = adapter.capability() == Capability::kCaptioning
                                    ? clean.images.size()
                                    : clean.records.size();
  if (fs::is_regular_file(perturbed_tree / "run.json", ec)) {
    std::ifstream in(perturbed_tree / "run.json");
    const json run = json::parse(in, nullptr, false);
    if (!run.is_discarded()) {
      report.metadata.alpha0 = run.value("alpha0", 0.0);
      report.metadata.n_max = run.value("n_max", 0);
    }
  }

  Side base;
  for (const auto& [id, path] : clean.images) {
    base.image_ids.push_back(id);
    base.images.push_back(read_image(path));
  }
  base = texts_of(std::move(base), clean.records);
  report.clean = score(adapter, base, clean, options, "clean");

  for (const auto& spec : manifest.entries) {
    const std::string context =
        std::string(spec.method_name()) + "/s" + std::to_string(spec.severity);
    ReportRow row;
    row.method = std::string(spec.method_name());
    row.severity = spec.severity;
    if (modality == Modality::kImage) {
      Side side = base;
      for (std::size_t i = 0; i < side.image_ids.size(); ++i) {
        const fs::path p =
            perturbed_tree / "images" / perturbed_image_name(side.image_ids[i], spec);
        if (!fs::is_regular_file(p, ec)) {
          throw Error(ErrorCode::kMissingImage, "missing perturbed image " + p.string());
        }
        side.images[i] = read_image(p);
      }
      row.metrics = score(adapter, side, clean, options, context);
    } else {
      const auto kept =
          read_captions(perturbed_tree / "captions" / perturbed_captions_name(spec));
      std::set<std::string> kept_keys;
      for (const auto& r : kept) kept_keys.insert(r.key());
      std::vector<CaptionRecord> clean_subset;
      for (const auto& r : clean.records) {
        if (kept_keys.count(r.key())) clean_subset.push_back(r);
      }
      if (clean_subset.size() != kept.size()) {
        throw Error(ErrorCode::kMalformedCaptions,
                    context + ": perturbed captions reference unknown samples");
      }
      row.dropped = clean.records.size() - kept.size();
      report.metadata.dropped += row.dropped;
      if (kept.empty()) {
        throw Error(ErrorCode::kEmptyInput, context + ": every sample was dropped");
      }
      row.metrics = score(adapter, texts_of(base, kept), clean, options, context);
      if (row.dropped > 0) {
        row.clean_matched = score(adapter, texts_of(base, clean_subset), clean, options,
                                  context + " (clean subset)");
      }
    }
    report.rows.push_back(std::move(row));
  }
  report.finalize();
  return report;
}

}  // namespace mmrobust::harness
