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

#ifndef MMROBUST_HARNESS_H_
#define MMROBUST_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mmrobust/dataset.h"
#include "mmrobust/fidelity.h"
#include "mmrobust/image.h"
#include "mmrobust/image_perturb.h"
#include "mmrobust/manifest.h"
#include "mmrobust/report.h"
#include "mmrobust/services.h"
#include "mmrobust/text_perturb.h"

namespace mmrobust::harness {

// Runs fn(0..n-1) on up to `workers` threads (0 = hardware concurrency).
// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

struct ServiceSet {
  services::EmbeddingClient* embedder = nullptr;
  services::TransformClient* transformer = nullptr;
  services::StylizeClient* stylizer = nullptr;
  services::DetectionClient* detector = nullptr;
};

// ---- Materialization ----------------------------------------------------
//
// Tree layout:
//   manifest.json, run.json, provenance.jsonl
//   images/<id>__<method>__s<k>.png          (image manifests)
//   captions/<method>__s<k>.jsonl, drops.jsonl  (text manifests)

std::string perturbed_image_name(const std::string& image_id, const PerturbationSpec& spec);
std::string perturbed_captions_name(const PerturbationSpec& spec);
// Seed-derivation key of a caption sample.
std::string caption_sample_key(const CaptionRecord& record);

struct MaterializeOptions {
  fidelity::FidelityConfig fidelity;
  int workers = 0;
  const image::FrostTextures* frost = nullptr;      // null: procedural set
  const text::TextResources* text = nullptr;        // null: bundled tables
};

struct ProvenanceEntry {
  std::string sample;
  std::string method;
  int severity = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
  double score = 0;
  std::string status;  // written | accepted | passthrough | dropped
  std::string output;  // relative path; empty when dropped

  friend bool operator==(const ProvenanceEntry&, const ProvenanceEntry&) = default;
};

struct MaterializeSummary {
  std::size_t outputs = 0;
  std::size_t dropped = 0;
  std::size_t passthrough = 0;
  std::vector<ProvenanceEntry> provenance;
};

// Perturbs one caption and runs it through the fidelity gate; regeneration
// k uses attempt_seed(seed, k).
fidelity::GateOutcome gate_caption(const std::string& caption, const PerturbationSpec& spec,
                                   std::uint64_t seed, const text::TextResources& resources,
                                   const ServiceSet& services,
                                   const fidelity::FidelityConfig& config,
                                   fidelity::EmbeddingCache* cache = nullptr);

// Builds the perturbed tree under `out_dir` via a sibling temporary
// directory that is renamed into place on success and removed on failure.
MaterializeSummary materialize_benchmark(const CaptionDataset& dataset,
                                         const BenchmarkManifest& manifest,
                                         const std::filesystem::path& out_dir,
                                         const ServiceSet& services,
                                         const MaterializeOptions& options = {});

// ---- Model adapters -----------------------------------------------------

enum class Capability { kRetrieval, kCaptioning, kClassification };

class ModelAdapter {
 public:
  virtual ~ModelAdapter() = default;
  virtual std::string name() const = 0;
  virtual Capability capability() const = 0;
  virtual bool stochastic() const { return false; }
};

class RetrievalAdapter : public ModelAdapter {
 public:
  Capability capability() const final { return Capability::kRetrieval; }
  // scores[i][t]: affinity of image i and text t, higher is better.
  virtual std::vector<std::vector<double>> similarity(const std::vector<Rgb8Image>& images,
                                                      const std::vector<std::string>& texts) = 0;
};

class CaptioningAdapter : public ModelAdapter {
 public:
  Capability capability() const final { return Capability::kCaptioning; }
  virtual std::string caption(const Rgb8Image& image) = 0;
};

class ClassificationAdapter : public ModelAdapter {
 public:
  Capability capability() const final { return Capability::kClassification; }
  virtual std::string classify(const Rgb8Image& image, const std::string& text) = 0;
};

// Oracle adapters over a clean dataset: images are recognized by exact
// content, texts by exact caption equality.
class ExactMatchRetrieval final : public RetrievalAdapter {
 public:
  explicit ExactMatchRetrieval(const CaptionDataset& clean);
  std::string name() const override { return "exact_match_retrieval"; }
  std::vector<std::vector<double>> similarity(const std::vector<Rgb8Image>& images,
                                              const std::vector<std::string>& texts) override;

 private:
  std::map<std::uint64_t, std::vector<std::string>> captions_by_hash_;
};

class ReferenceCaptioner final : public CaptioningAdapter {
 public:
  static constexpr const char* kUnknownCaption = "an image";
  explicit ReferenceCaptioner(const CaptionDataset& clean);
  std::string name() const override { return "reference_captioner"; }
  std::string caption(const Rgb8Image& image) override;

 private:
  std::map<std::uint64_t, std::string> first_caption_;
};

// Predicts "match" when the text is a clean caption of the image, else
// "mismatch".
class ExactMatchClassifier final : public ClassificationAdapter {
 public:
  explicit ExactMatchClassifier(const CaptionDataset& clean);
  std::string name() const override { return "exact_match_classifier"; }
  std::string classify(const Rgb8Image& image, const std::string& text) override;

 private:
  std::map<std::uint64_t, std::vector<std::string>> captions_by_hash_;
};

// ---- Evaluation ---------------------------------------------------------

struct EvaluateOptions {
  std::string dataset_name;  // defaults to the manifest's dataset id
  // Expected classification label per record key; missing keys mean "match".
  std::map<std::string, std::string> labels;
};

// Scores the clean dataset once and every manifest entry of the perturbed
// tree, then finalizes severity averages and MMI. Texts dropped by the
// fidelity gate are excluded from both sides of that entry's comparison.
BenchmarkReport evaluate(ModelAdapter& adapter, const CaptionDataset& clean,
                         const std::filesystem::path& perturbed_tree,
                         const EvaluateOptions& options = {});

// ---- Missing object rate ------------------------------------------------

struct MorTable {
  std::vector<double> thresholds;
  std::vector<std::string> columns;           // "GT" first
  std::vector<std::vector<long long>> counts;  // [threshold][column]
  std::vector<std::vector<double>> mor;        // [threshold][column], percent

  std::string to_markdown() const;
  std::string to_csv() const;
  std::string to_json() const;
};

// Every image of `gt_dir` needs an entry in `labels`; its object names form
// the detection prompt for the GT image and all its perturbed counterparts
// (same file stem in each directory).
MorTable mor_pipeline(const std::filesystem::path& gt_dir,
                      const std::vector<std::pair<std::string, std::filesystem::path>>& perturbed,
                      const std::map<std::string, std::vector<std::string>>& labels,
                      services::DetectionClient& detector,
                      const std::vector<double>& thresholds = {0.7, 0.5}, int workers = 0);

// ---- Quality audit ------------------------------------------------------

struct SsimAudit {
  std::vector<std::string> methods;  // manifest order
  int max_severity = 0;
  std::map<std::pair<std::string, int>, double> mean;
  std::map<std::pair<std::string, int>, std::size_t> pairs;
  std::size_t skipped = 0;  // pairs with mismatched dimensions

  // NaN when the cell has no pairs.
  double at(const std::string& method, int severity) const;
  std::string to_markdown() const;  // severity rows x method columns
  std::string to_csv() const;
  std::string to_json() const;
};

SsimAudit audit_ssim(const std::map<std::string, std::filesystem::path>& originals,
                     const std::filesystem::path& perturbed_tree, int workers = 0);

// id -> path for every png/jpg/jpeg directly inside `dir`.
std::map<std::string, std::filesystem::path> list_images(const std::filesystem::path& dir);

}  // namespace mmrobust::harness

#endif  // MMROBUST_HARNESS_H_
