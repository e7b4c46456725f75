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

#ifndef MMROBUST_FIDELITY_H_
#define MMROBUST_FIDELITY_H_

#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>

#include "mmrobust/services.h"

namespace mmrobust::fidelity {

struct FidelityConfig {
  double alpha0 = 0.75;  // similarity threshold
  int n_max = 100;       // attempts before a sample is dropped

  // Throws Error(kInvalidArgument) unless alpha0 in (0, 1] and n_max >= 1.
  void validate() const;
};

enum class GateStatus { kAccepted, kDropped };

struct GateOutcome {
  GateStatus status = GateStatus::kDropped;
  std::string text;  // empty when dropped
  double score = 0;  // similarity of the accepted (or last) candidate
  int attempts = 0;
  // The generator reported it cannot alter this text; accepted unchanged.
  bool passthrough = false;

  bool accepted() const { return status == GateStatus::kAccepted; }
};

// Throws Error(kDimensionMismatch) or Error(kZeroVector).
double cosine_similarity(std::span<const float> a, std::span<const float> b);

// Memoized embeddings of original captions, shared across gate calls.
class EmbeddingCache {
 public:
  std::optional<services::Embedding> get(const std::string& text) const;
  void put(const std::string& text, services::Embedding embedding);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, services::Embedding> map_;
};

struct Candidate {
  std::string text;
  bool flagged = false;  // identity marker: no edit was possible
};

// Called once per attempt; must advance its own seeded randomness.
using CandidateGenerator = std::function<Candidate(int attempt)>;

// Accepts the first candidate whose cosine similarity to `original` is at
// least alpha0, giving up after n_max attempts. The first embed call
// carries {original, candidate} unless the original is cached; later calls
// carry the candidate alone.
GateOutcome fidelity_gate(const std::string& original, const CandidateGenerator& generator,
                          services::EmbeddingClient& embedder, const FidelityConfig& config,
                          EmbeddingCache* cache = nullptr);

}  // namespace mmrobust::fidelity

#endif  // MMROBUST_FIDELITY_H_
