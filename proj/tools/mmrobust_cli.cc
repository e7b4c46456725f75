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

// mmrobust: build perturbed benchmarks, gate captions, evaluate adapters and
// emit robustness reports.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 service error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmrobust/dataset.h"
#include "mmrobust/error.h"
#include "mmrobust/fidelity.h"
#include "mmrobust/harness.h"
#include "mmrobust/http_services.h"
#include "mmrobust/manifest.h"
#include "mmrobust/report.h"
#include "mmrobust/seed.h"
#include "mmrobust/stub_services.h"

namespace {

namespace fs = std::filesystem;
using namespace mmrobust;

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kUsage:
      return 1;
    case ErrorCategory::kData:
      return 2;
    case ErrorCategory::kService:
      return 3;
  }
  return 2;
}

// Clients resolved from MMR_*_URL, falling back to the deterministic stubs
// only when --stub is given.
class Services {
 public:
  explicit Services(bool stub) {
    using namespace services;
    if (auto c = ServiceEndpointConfig::from_env(kEmbedUrlEnv)) {
      embed_ = std::make_unique<HttpEmbeddingClient>(*c);
    } else if (stub) {
      embed_ = std::make_unique<HashedBagOfWordsEmbedder>();
    }
    if (auto c = ServiceEndpointConfig::from_env(kTransformUrlEnv)) {
      transform_ = std::make_unique<HttpTransformClient>(*c);
    } else if (stub) {
      transform_ = std::make_unique<IdentityTransformStub>();
    }
    if (auto c = ServiceEndpointConfig::from_env(kStylizeUrlEnv)) {
      stylize_ = std::make_unique<HttpStylizeClient>(*c);
    } else if (stub) {
      stylize_ = std::make_unique<LutStylizeStub>();
    }
    if (auto c = ServiceEndpointConfig::from_env(kDetectUrlEnv)) {
      detect_ = std::make_unique<HttpDetectionClient>(*c);
    } else if (stub) {
      detect_ = std::make_unique<ScriptedDetector>();
    }
  }

  harness::ServiceSet set() const {
    return {embed_.get(), transform_.get(), stylize_.get(), detect_.get()};
  }

 private:
  std::unique_ptr<services::EmbeddingClient> embed_;
  std::unique_ptr<services::TransformClient> transform_;
  std::unique_ptr<services::StylizeClient> stylize_;
  std::unique_ptr<services::DetectionClient> detect_;
};

Modality modality_arg(const std::string& text) {
  const auto m = parse_modality(text);
  if (!m) throw Error(ErrorCode::kInvalidArgument, "unknown modality '" + text + "'");
  return *m;
}

ReportFormat format_arg(const std::string& text) {
  const auto f = parse_report_format(text);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "unknown format '" + text + "'");
  return *f;
}

void output(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_text_file(out, content);
  }
}

fidelity::FidelityConfig fidelity_config(double alpha0, int n_max) {
  fidelity::FidelityConfig c{alpha0, n_max};
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal robustness benchmark toolkit"};
  app.require_subcommand(1);

  std::string images, captions, out, modality = "image", method, adapter = "exact-match-retrieval";
  std::string perturbed_tree, manifest_file, labels_file, format = "json", input, dataset_id;
  std::string host = "127.0.0.1";
  std::vector<std::string> perturbed_dirs;
  std::vector<double> thresholds = {0.7, 0.5};
  std::uint64_t seed = 0;
  int severity = 0;
  int workers = 0;
  int port = 8700;
  double alpha0 = 0.75;
  int n_max = 100;
  bool stub = false;

  auto* manifest_cmd = app.add_subcommand("manifest", "Write the benchmark manifest");
  manifest_cmd->add_option("--modality", modality, "image or text")->required();
  manifest_cmd->add_option("--seed", seed, "Global seed");
  manifest_cmd->add_option("--dataset-id", dataset_id, "Dataset identifier");
  manifest_cmd->add_option("--out", out, "Output file (default stdout)");

  auto* perturb_cmd = app.add_subcommand("perturb", "Materialize a perturbed benchmark tree");
  perturb_cmd->add_option("--images", images, "Clean image directory")->required();
  perturb_cmd->add_option("--captions", captions, "Captions JSONL")->required();
  perturb_cmd->add_option("--out", out, "Output tree")->required();
  perturb_cmd->add_option("--modality", modality, "image or text");
  perturb_cmd->add_option("--manifest", manifest_file, "Use this manifest instead");
  perturb_cmd->add_option("--method", method, "Restrict to one method");
  perturb_cmd->add_option("--severity", severity, "Restrict to one severity");
  perturb_cmd->add_option("--seed", seed, "Global seed");
  perturb_cmd->add_option("--alpha0", alpha0, "Fidelity threshold");
  perturb_cmd->add_option("--nmax", n_max, "Fidelity retry cap");
  perturb_cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
  perturb_cmd->add_flag("--stub", stub, "Use deterministic stubs for unset services");

  auto* gate_cmd = app.add_subcommand("gate", "Perturb and fidelity-gate a captions file");
  gate_cmd->add_option("--captions", captions, "Captions JSONL")->required();
  gate_cmd->add_option("--method", method, "Text method")->required();
  gate_cmd->add_option("--severity", severity, "Severity")->required();
  gate_cmd->add_option("--seed", seed, "Global seed");
  gate_cmd->add_option("--alpha0", alpha0, "Fidelity threshold");
  gate_cmd->add_option("--nmax", n_max, "Fidelity retry cap");
  gate_cmd->add_option("--out", out, "Accepted captions JSONL (default stdout)");
  gate_cmd->add_flag("--stub", stub, "Use deterministic stubs for unset services");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an adapter on a perturbed tree");
  eval_cmd->add_option("--images", images, "Clean image directory")->required();
  eval_cmd->add_option("--captions", captions, "Captions JSONL")->required();
  eval_cmd->add_option("--perturbed", perturbed_tree, "Perturbed tree")->required();
  eval_cmd->add_option("--adapter", adapter,
                       "exact-match-retrieval, reference-captioner or exact-match-classifier");
  eval_cmd->add_option("--format", format, "csv, json or markdown");
  eval_cmd->add_option("--dataset-id", dataset_id, "Dataset name in the report");
  eval_cmd->add_option("--out", out, "Report file (default stdout)");

  auto* mor_cmd = app.add_subcommand("mor", "Missing object rate over generated images");
  mor_cmd->add_option("--images", images, "Images generated from GT captions")->required();
  mor_cmd->add_option("--perturbed", perturbed_dirs, "name=dir, repeatable")->required();
  mor_cmd->add_option("--labels", labels_file, "Object labels JSON")->required();
  mor_cmd->add_option("--threshold", thresholds, "Detection thresholds");
  mor_cmd->add_option("--format", format, "csv, json or markdown");
  mor_cmd->add_option("--workers", workers, "Worker threads");
  mor_cmd->add_option("--out", out, "Output file (default stdout)");
  mor_cmd->add_flag("--stub", stub, "Use deterministic stubs for unset services");

  auto* audit_cmd = app.add_subcommand("audit-ssim", "Mean SSIM per method and severity");
  audit_cmd->add_option("--images", images, "Clean image directory")->required();
  audit_cmd->add_option("--perturbed", perturbed_tree, "Perturbed image tree")->required();
  audit_cmd->add_option("--format", format, "csv, json or markdown");
  audit_cmd->add_option("--workers", workers, "Worker threads");
  audit_cmd->add_option("--out", out, "Output file (default stdout)");

  auto* report_cmd = app.add_subcommand("report", "Convert a JSON report");
  report_cmd->add_option("--in", input, "Report JSON")->required();
  report_cmd->add_option("--format", format, "csv, json or markdown");
  report_cmd->add_option("--out", out, "Output file (default stdout)");

  auto* serve_cmd = app.add_subcommand("serve-stubs", "Serve the stub services over HTTP");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*manifest_cmd) {
      output(out, build_manifest(modality_arg(modality), seed, dataset_id).to_json());
    } else if (*perturb_cmd) {
      const auto dataset = load_caption_dataset(images, captions);
      BenchmarkManifest manifest;
      if (!manifest_file.empty()) {
        manifest = BenchmarkManifest::load(manifest_file);
      } else {
        manifest = build_manifest(modality_arg(modality), seed,
                                  fs::path(captions).stem().string());
      }
      if (!method.empty() || severity != 0) {
        std::vector<PerturbationSpec> subset;
        for (const auto& e : manifest.entries) {
          if ((method.empty() || e.method_name() == method) &&
              (severity == 0 || e.severity == severity)) {
            subset.push_back(e);
          }
        }
        if (subset.empty()) {
          throw Error(ErrorCode::kUnknownMethod, "no manifest entry matches the filter");
        }
        manifest.entries = std::move(subset);
      }
      Services svc(stub);
      harness::MaterializeOptions options;
      options.fidelity = fidelity_config(alpha0, n_max);
      options.workers = workers;
      const auto summary = harness::materialize_benchmark(dataset, manifest, out, svc.set(), options);
      std::cout << "wrote " << summary.outputs << " outputs to " << out << " (" << summary.dropped
                << " dropped, " << summary.passthrough << " passed through)\n";
    } else if (*gate_cmd) {
      const auto records = read_captions(captions);
      const auto spec = PerturbationSpec::parse(Modality::kText, method, severity);
      spec.validate();
      Services svc(stub);
      const auto config = fidelity_config(alpha0, n_max);
      const text::TextResources resources;
      fidelity::EmbeddingCache cache;
      std::vector<CaptionRecord> kept;
      std::size_t dropped = 0;
      for (const auto& r : records) {
        const std::uint64_t s = derive_seed({seed, harness::caption_sample_key(r), spec});
        const auto o = harness::gate_caption(r.text, spec, s, resources, svc.set(), config, &cache);
        if (o.accepted()) {
          kept.push_back({r.image_id, r.caption_index, o.text});
        } else {
          ++dropped;
        }
      }
      if (out.empty() || out == "-") {
        for (const auto& r : kept) {
          std::cout << r.image_id << '#' << r.caption_index << '\t' << r.text << '\n';
        }
      } else {
        write_captions(out, kept);
      }
      std::cerr << kept.size() << " accepted, " << dropped << " dropped\n";
    } else if (*eval_cmd) {
      const auto dataset = load_caption_dataset(images, captions);
      std::unique_ptr<harness::ModelAdapter> model;
      if (adapter == "exact-match-retrieval") {
        model = std::make_unique<harness::ExactMatchRetrieval>(dataset);
      } else if (adapter == "reference-captioner") {
        model = std::make_unique<harness::ReferenceCaptioner>(dataset);
      } else if (adapter == "exact-match-classifier") {
        model = std::make_unique<harness::ExactMatchClassifier>(dataset);
      } else {
        throw Error(ErrorCode::kInvalidArgument, "unknown adapter '" + adapter + "'");
      }
      harness::EvaluateOptions options;
      options.dataset_name = dataset_id;
      const auto report = harness::evaluate(*model, dataset, perturbed_tree, options);
      const auto f = format_arg(format);
      if (out.empty() || out == "-") {
        output("", f == ReportFormat::kJson       ? report.to_json()
                   : f == ReportFormat::kMarkdown ? render_markdown(report)
                                                  : render_csv(report));
      } else {
        emit_report(report, f, out);
      }
    } else if (*mor_cmd) {
      std::vector<std::pair<std::string, fs::path>> dirs;
      for (const auto& spec : perturbed_dirs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw Error(ErrorCode::kInvalidArgument, "--perturbed expects name=dir, got " + spec);
        }
        dirs.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
      }
      Services svc(stub);
      if (svc.set().detector == nullptr) {
        throw Error(ErrorCode::kServiceUnavailable,
                    std::string("set ") + services::kDetectUrlEnv + " or pass --stub");
      }
      const auto table = harness::mor_pipeline(images, dirs, load_object_labels(labels_file),
                                               *svc.set().detector, thresholds, workers);
      const auto f = format_arg(format);
      output(out, f == ReportFormat::kJson       ? table.to_json()
                  : f == ReportFormat::kMarkdown ? table.to_markdown()
                                                 : table.to_csv());
    } else if (*audit_cmd) {
      const auto audit = harness::audit_ssim(harness::list_images(images), perturbed_tree, workers);
      const auto f = format_arg(format);
      output(out, f == ReportFormat::kJson       ? audit.to_json()
                  : f == ReportFormat::kMarkdown ? audit.to_markdown()
                                                 : audit.to_csv());
      if (audit.skipped > 0) std::cerr << audit.skipped << " pairs skipped (size mismatch)\n";
    } else if (*report_cmd) {
      std::ifstream in(input, std::ios::binary);
      if (!in) throw Error(ErrorCode::kIoError, "cannot read " + input);
      std::stringstream buffer;
      buffer << in.rdbuf();
      const auto report = BenchmarkReport::from_json(buffer.str());
      const auto f = format_arg(format);
      if (out.empty() || out == "-") {
        output("", f == ReportFormat::kJson       ? report.to_json()
                   : f == ReportFormat::kMarkdown ? render_markdown(report)
                                                  : render_csv(report));
      } else {
        emit_report(report, f, out);
      }
    } else if (*serve_cmd) {
      services::HashedBagOfWordsEmbedder embed;
      services::ScriptedDetector detect;
      auto transform = services::FixtureTransformStub::example_table();
      services::LutStylizeStub stylize;
      services::ProtocolServer server({&embed, &detect, &transform, &stylize});
      std::cerr << "serving stubs on " << host << ':' << port << '\n';
      server.listen(host, port);
    }
  } catch (const Error& e) {
    std::cerr << "mmrobust: " << e.what() << '\n';
    return exit_code(category(e.code()));
  } catch (const std::exception& e) {
    std::cerr << "mmrobust: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
