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

#include "mmrobust/seed.h"

namespace mmrobust {

Fnv1a64& Fnv1a64::bytes(std::span<const std::uint8_t> data) {
  for (std::uint8_t b : data) {
    state_ ^= b;
    state_ *= kPrime;
  }
  return *this;
}

Fnv1a64& Fnv1a64::str(std::string_view s) {
  for (char c : s) {
    state_ ^= static_cast<std::uint8_t>(c);
    state_ *= kPrime;
  }
  return *this;
}

Fnv1a64& Fnv1a64::u8(std::uint8_t v) {
  state_ ^= v;
  state_ *= kPrime;
  return *this;
}

Fnv1a64& Fnv1a64::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

Fnv1a64& Fnv1a64::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

Fnv1a64& Fnv1a64::field(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  return str(s);
}

std::uint64_t fnv1a64(std::string_view s) { return Fnv1a64{}.str(s).digest(); }

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(const SeedDerivation& d) {
  Fnv1a64 h;
  h.u64(d.global_seed)
      .field(d.sample_key)
      .u8(static_cast<std::uint8_t>(d.spec.modality()))
      .field(d.spec.method_name())
      .u32(static_cast<std::uint32_t>(d.spec.severity));
  return splitmix64(h.digest());
}

std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
  if (attempt == 0) return seed;
  return splitmix64(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt));
}

}  // namespace mmrobust
