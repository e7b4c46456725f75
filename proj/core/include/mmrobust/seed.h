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

#ifndef MMROBUST_SEED_H_
#define MMROBUST_SEED_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "mmrobust/perturbation.h"

namespace mmrobust {

// Incremental 64-bit FNV-1a. Multi-byte integers are fed little-endian so
// the digest does not depend on host byte order.
class Fnv1a64 {
 public:
  static constexpr std::uint64_t kOffsetBasis = 14695981039346656037ull;
  static constexpr std::uint64_t kPrime = 1099511628211ull;

  Fnv1a64& bytes(std::span<const std::uint8_t> data);
  Fnv1a64& str(std::string_view s);
  Fnv1a64& u8(std::uint8_t v);
  Fnv1a64& u32(std::uint32_t v);
  Fnv1a64& u64(std::uint64_t v);
  // Length-prefixed string, so ("ab","c") and ("a","bc") differ.
  Fnv1a64& field(std::string_view s);

  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = kOffsetBasis;
};

std::uint64_t fnv1a64(std::string_view s);

struct SeedDerivation {
  std::uint64_t global_seed = 0;
  std::string sample_key;
  PerturbationSpec spec;
};

// Per-sample seed: FNV-1a over (global_seed, sample_key, modality, method
// name, severity), then a splitmix64 finalizer for avalanche.
std::uint64_t derive_seed(const SeedDerivation& d);

// Seed of the k-th regeneration of a sample; attempt 0 is the sample seed.
std::uint64_t attempt_seed(std::uint64_t seed, int attempt);

}  // namespace mmrobust

#endif  // MMROBUST_SEED_H_
