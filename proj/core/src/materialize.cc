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

#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "mmrobust/error.h"
#include "mmrobust/harness.h"
#include "mmrobust/image_io.h"
#include "mmrobust/seed.h"

namespace mmrobust::harness {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNoScore = std::numeric_limits<double>::quiet_NaN();

std::string provenance_line(const ProvenanceEntry& e) {
  json j = {{"sample", e.sample},   {"method", e.method},     {"severity", e.severity},
            {"seed", e.seed},       {"attempts", e.attempts}, {"status", e.status},
            {"output", e.output}};
  j["score"] = std::isnan(e.score) ? json(nullptr) : json(e.score);
  return j.dump();
}

// Replaces `target` with `staged`. An existing target must be empty or a
// previous benchmark tree.
void publish(const fs::path& staged, const fs::path& target) {
  std::error_code ec;
  if (fs::exists(target, ec)) {
    const bool ours = fs::exists(target / "manifest.json", ec);
    if (!ours && !fs::is_empty(target, ec)) {
      throw Error(ErrorCode::kIoError,
                  target.string() + " exists and is not a benchmark tree; refusing to replace");
    }
    fs::remove_all(target, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot remove " + target.string());
  }
  fs::rename(staged, target, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot move " + staged.string() + " to " + target.string() + ": " + ec.message());
  }
}

void materialize_images(const CaptionDataset& dataset, const BenchmarkManifest& manifest,
                        const fs::path& root, const ServiceSet& services,
                        const MaterializeOptions& options, MaterializeSummary& summary) {
  const auto ids = dataset.image_ids();
  std::vector<Rgb8Image> images(ids.size(), Rgb8Image(1, 1));
  parallel_for(ids.size(), options.workers,
               [&](std::size_t i) { images[i] = read_image(dataset.images.at(ids[i])); });

  fs::create_directories(root / "images");
  image::PerturbContext context;
  context.frost = options.frost != nullptr ? options.frost : &image::FrostTextures::procedural();
  context.stylizer = services.stylizer;

  const std::size_t n = ids.size();
  summary.provenance.resize(manifest.entries.size() * n);
  parallel_for(summary.provenance.size(), options.workers, [&](std::size_t item) {
    const auto& spec = manifest.entries[item / n];
    const std::size_t i = item % n;
    const std::uint64_t seed = derive_seed({manifest.global_seed, ids[i], spec});
    const Rgb8Image out = image::apply_image_perturbation(images[i], spec, seed, context);
    if (out.width() != images[i].width() || out.height() != images[i].height()) {
      throw Error(ErrorCode::kMalformedResponse,
                  std::string(spec.method_name()) + " changed the size of " + ids[i]);
    }
    const std::string rel = "images/" + perturbed_image_name(ids[i], spec);
    write_file(root / rel, encode_png(out));
    summary.provenance[item] = {ids[i], std::string(spec.method_name()), spec.severity, seed, 1,
                                kNoScore, "written", rel};
  });
  summary.outputs = summary.provenance.size();
}

void materialize_texts(const CaptionDataset& dataset, const BenchmarkManifest& manifest,
                       const fs::path& root, const ServiceSet& services,
                       const MaterializeOptions& options, MaterializeSummary& summary) {
  if (services.embedder == nullptr) {
    throw Error(ErrorCode::kServiceUnavailable, "text benchmarks need an embedding service");
  }
  const text::TextResources defaults;
  const text::TextResources& resources = options.text != nullptr ? *options.text : defaults;
  fidelity::EmbeddingCache cache;

  const auto& records = dataset.records;
  const std::size_t n = records.size();
  std::vector<fidelity::GateOutcome> outcomes(manifest.entries.size() * n);
  summary.provenance.resize(outcomes.size());
  parallel_for(outcomes.size(), options.workers, [&](std::size_t item) {
    const auto& spec = manifest.entries[item / n];
    const auto& record = records[item % n];
    const std::uint64_t seed =
        derive_seed({manifest.global_seed, caption_sample_key(record), spec});
    outcomes[item] =
        gate_caption(record.text, spec, seed, resources, services, options.fidelity, &cache);
    const auto& o = outcomes[item];
    const std::string status =
        !o.accepted() ? "dropped" : (o.passthrough ? "passthrough" : "accepted");
    summary.provenance[item] = {caption_sample_key(record),
                                std::string(spec.method_name()),
                                spec.severity,
                                seed,
                                o.attempts,
                                o.score,
                                status,
                                o.accepted() ? "captions/" + perturbed_captions_name(spec) : ""};
  });

  fs::create_directories(root / "captions");
  std::ofstream drops(root / "drops.jsonl", std::ios::binary);
  for (std::size_t e = 0; e < manifest.entries.size(); ++e) {
    const auto& spec = manifest.entries[e];
    std::vector<CaptionRecord> kept;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& o = outcomes[e * n + i];
      if (o.accepted()) {
        kept.push_back({records[i].image_id, records[i].caption_index, o.text});
        ++summary.outputs;
        summary.passthrough += o.passthrough ? 1 : 0;
      } else {
        drops << json{{"image_id", records[i].image_id},
                      {"caption_index", records[i].caption_index},
                      {"method", spec.method_name()},
                      {"severity", spec.severity},
                      {"attempts", o.attempts},
                      {"score", o.score}}
                     .dump()
              << '\n';
        ++summary.dropped;
      }
    }
    write_captions(root / "captions" / perturbed_captions_name(spec), std::move(kept));
  }
  if (!drops) throw Error(ErrorCode::kIoError, "cannot write drops.jsonl");
}

}  // namespace

fidelity::GateOutcome gate_caption(const std::string& caption, const PerturbationSpec& spec,
                                   std::uint64_t seed, const text::TextResources& resources,
                                   const ServiceSet& services,
                                   const fidelity::FidelityConfig& config,
                                   fidelity::EmbeddingCache* cache) {
  if (services.embedder == nullptr) {
    throw Error(ErrorCode::kServiceUnavailable, "fidelity gate needs an embedding service");
  }
  auto generator = [&](int attempt) {
    auto outcome = text::apply_text_perturbation(caption, spec, attempt_seed(seed, attempt),
                                                 resources, services.transformer);
    return fidelity::Candidate{std::move(outcome.text), outcome.flagged};
  };
  return fidelity::fidelity_gate(caption, generator, *services.embedder, config, cache);
}

MaterializeSummary materialize_benchmark(const CaptionDataset& dataset,
                                         const BenchmarkManifest& manifest, const fs::path& out_dir,
                                         const ServiceSet& services,
                                         const MaterializeOptions& options) {
  manifest.validate_entries();
  options.fidelity.validate();
  if (dataset.records.empty() || dataset.images.empty()) {
    throw Error(ErrorCode::kEmptyInput, "dataset is empty");
  }

  const fs::path target = fs::absolute(out_dir).lexically_normal();
  const fs::path staged =
      target.parent_path() / ("." + target.filename().string() + ".partial");
  std::error_code ec;
  fs::remove_all(staged, ec);
  fs::create_directories(staged, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + staged.string());

  MaterializeSummary summary;
  try {
    if (manifest.modality() == Modality::kImage) {
      materialize_images(dataset, manifest, staged, services, options, summary);
    } else {
      materialize_texts(dataset, manifest, staged, services, options, summary);
    }
    manifest.save(staged / "manifest.json");
    const json run = {{"modality", name(manifest.modality())},
                      {"dataset_id", manifest.dataset_id},
                      {"global_seed", manifest.global_seed},
                      {"alpha0", options.fidelity.alpha0},
                      {"n_max", options.fidelity.n_max},
                      {"images", dataset.images.size()},
                      {"captions", dataset.records.size()}};
    write_text_file(staged / "run.json", run.dump(2) + "\n");
    std::string log;
    for (const auto& e : summary.provenance) log += provenance_line(e) + "\n";
    write_text_file(staged / "provenance.jsonl", log);
    publish(staged, target);
  } catch (...) {
    fs::remove_all(staged, ec);
    throw;
  }
  return summary;
}

}  // namespace mmrobust::harness
