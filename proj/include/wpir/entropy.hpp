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

#ifndef WPIR_ENTROPY_HPP_
#define WPIR_ENTROPY_HPP_

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpir {

// Probabilities below this are treated as exact zeros inside entropy sums.
inline constexpr double kZeroProbability = 1e-15;

// Sum entries of a probability vector must lie within this distance of 1.
inline constexpr double kPmfTolerance = 1e-9;

// Inputs within this distance of 1 are renormalized by the Pmf constructor.
inline constexpr double kPmfRenormalizeTolerance = 1e-6;

// -x log2 x with the 0 log 0 = 0 convention.
inline double EntropyTerm(double x) {
  if (x <= kZeroProbability) return 0.0;
  return -x * std::log2(x);
}

// Probability mass function over the finite support {0, ..., size()-1}.
// Support ids are opaque: schemes map an index to a concrete strategy or
// query. Immutable after construction.
class Pmf {
 public:
  Pmf() : probs_{1.0} {}

  explicit Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
      throw std::invalid_argument("Pmf: support must be non-empty");
    }
    double total = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("Pmf: entries must be finite and >= 0");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kPmfRenormalizeTolerance) {
      throw std::invalid_argument("Pmf: entries sum to " +
                                  std::to_string(total) + ", expected 1");
    }
    if (std::abs(total - 1.0) > 0.0) {
      for (double& p : probs_) p /= total;
    }
  }

  static Pmf Uniform(std::size_t k) {
    if (k == 0) throw std::invalid_argument("Pmf::Uniform: k must be >= 1");
    return Pmf(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  }

  static Pmf PointMass(std::size_t k, std::size_t index) {
    if (index >= k) throw std::invalid_argument("Pmf::PointMass: bad index");
    std::vector<double> p(k, 0.0);
    p[index] = 1.0;
    return Pmf(std::move(p));
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Shannon entropy in bits of an arbitrary nonnegative weight vector. Callers
// are responsible for normalization; used where a full Pmf is not needed.
inline double EntropyBits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h += EntropyTerm(p);
  return h;
}

inline double Entropy(const Pmf& p) { return EntropyBits(p.probs()); }

inline double BinaryEntropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("BinaryEntropy: p must lie in [0, 1]");
  }
  return EntropyTerm(p) + EntropyTerm(1.0 - p);
}

// Inverse of the binary entropy on the branch [0, 1/2], by bisection to an
// absolute tolerance of 1e-12.
inline double InvBinaryEntropy(double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::invalid_argument("InvBinaryEntropy: y must lie in [0, 1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (BinaryEntropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wpir

#endif  // WPIR_ENTROPY_HPP_
