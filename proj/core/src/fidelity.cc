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

#include "mmrobust/fidelity.h"

#include <algorithm>
#include <cmath>

#include "mmrobust/error.h"

namespace mmrobust::fidelity {

void FidelityConfig::validate() const {
  if (!(alpha0 > 0.0 && alpha0 <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha0 must be in (0, 1]");
  }
  if (n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be >= 1");
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "vectors have dimensions " +
                                                   std::to_string(a.size()) + " and " +
                                                   std::to_string(b.size()));
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::kZeroVector, "zero-norm vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::optional<services::Embedding> EmbeddingCache::get(const std::string& text) const {
  std::lock_guard lock(mu_);
  const auto it = map_.find(text);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingCache::put(const std::string& text, services::Embedding embedding) {
  std::lock_guard lock(mu_);
  map_[text] = std::move(embedding);
}

std::size_t EmbeddingCache::size() const {
  std::lock_guard lock(mu_);
  return map_.size();
}

GateOutcome fidelity_gate(const std::string& original, const CandidateGenerator& generator,
                          services::EmbeddingClient& embedder, const FidelityConfig& config,
                          EmbeddingCache* cache) {
  config.validate();
  std::optional<services::Embedding> reference;
  if (cache != nullptr) reference = cache->get(original);

  auto expect = [](const std::vector<services::Embedding>& v, std::size_t n) {
    if (v.size() != n) {
      throw Error(ErrorCode::kMalformedResponse, "embedder returned " + std::to_string(v.size()) +
                                                     " vectors for " + std::to_string(n) +
                                                     " texts");
    }
  };

  GateOutcome outcome;
  for (int attempt = 1; attempt <= config.n_max; ++attempt) {
    Candidate candidate = generator(attempt - 1);
    outcome.attempts = attempt;
    if (candidate.flagged) {
      outcome.status = GateStatus::kAccepted;
      outcome.text = original;
      outcome.score = 1.0;
      outcome.passthrough = true;
      return outcome;
    }

    services::Embedding embedded;
    if (!reference) {
      auto vectors = embedder.embed_texts({original, candidate.text});
      expect(vectors, 2);
      reference = std::move(vectors[0]);
      embedded = std::move(vectors[1]);
      if (cache != nullptr) cache->put(original, *reference);
    } else {
      auto vectors = embedder.embed_texts({candidate.text});
      expect(vectors, 1);
      embedded = std::move(vectors[0]);
    }

    outcome.score = cosine_similarity(*reference, embedded);
    if (outcome.score >= config.alpha0) {
      outcome.status = GateStatus::kAccepted;
      outcome.text = std::move(candidate.text);
      return outcome;
    }
  }
  outcome.status = GateStatus::kDropped;
  outcome.text.clear();
  return outcome;
}

}  // namespace mmrobust::fidelity
