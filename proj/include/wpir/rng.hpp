//
// Copyright 2026 The WPIR Lab Authors
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

#ifndef WPIR_RNG_HPP_
#define WPIR_RNG_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace wpir {

// SplitMix64. Fully specified here, so sequences are identical on every
// platform (unlike the standard distributions).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double NextDouble() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform on [0, bound) by rejection.
  std::uint64_t Below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SplitMix64::Below: bound 0");
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = Next();
      if (x >= limit) return x % bound;
    }
  }

  std::uint8_t Bit() { return static_cast<std::uint8_t>(Next() >> 63); }

 private:
  std::uint64_t state_;
};

// Inverse-CDF sampler for a fixed probability vector.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> probs) {
    cdf_.reserve(probs.size());
    double acc = 0.0;
    for (double p : probs) cdf_.push_back(acc += p);
    if (cdf_.empty() || !(acc > 0.0)) {
      throw std::invalid_argument("DiscreteSampler: no mass");
    }
  }

  std::uint64_t operator()(SplitMix64& rng) const {
    const double u = rng.NextDouble() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    // upper_bound never lands on a zero-mass entry.
    if (it == cdf_.end()) --it;
    return static_cast<std::uint64_t>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace wpir

#endif  // WPIR_RNG_HPP_
