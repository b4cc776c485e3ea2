// Copyright 2026 The ctshadow Authors
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

#pragma once

#include <cstdint>
#include <limits>

namespace ctshadow {

/// SplitMix64 (Steele, Lea, Flood). Used both as the seed splitter that derives
/// per-snapshot streams from a master seed and as the per-snapshot engine. It is
/// cheap to seed, which matters because every snapshot gets a fresh stream.
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  uint64_t below(uint64_t bound) {
    while (true) {
      __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
      auto low = static_cast<uint64_t>(m);
      if (low >= bound || low >= (-bound) % bound) {
        return static_cast<uint64_t>(m >> 64);
      }
    }
  }

  bool coin() { return ((*this)() >> 63) != 0; }

 private:
  uint64_t state_;
};

/// Deterministic seed for stream `index` under `master`. Distinct indices give
/// statistically independent SplitMix64 streams.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  SplitMix64 mix(master ^ (index * 0xD1B54A32D192ED03ULL));
  mix();
  return mix();
}

}  // namespace ctshadow
