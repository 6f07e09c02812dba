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

// Converse bounds on the rate, closed-form (2, 2) capacities and the
// epsilon-privacy baseline. Leakage arguments are in bits except for the
// epsilon-privacy functions, which take nats.

#ifndef WPIR_BOUNDS_HPP_
#define WPIR_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "wpir/core.hpp"
#include "wpir/entropy.hpp"

namespace wpir {

// A rate bound together with how it was post-processed.
struct RateBound {
  double raw = 0.0;      // formula value; may exceed 1
  double clamped = 0.0;  // min(raw, 1), or 1 when vacuous
  bool above_one = false;
  bool vacuous = false;       // denominator <= 0: no constraint at all
  bool arg_clamped = false;   // an inverse-entropy argument left [0, 1]
};

inline RateBound MakeRateBound(double denominator, bool arg_clamped) {
  RateBound b;
  b.arg_clamped = arg_clamped;
  if (denominator <= 0.0) {
    b.raw = kInfinity;
    b.clamped = 1.0;
    b.above_one = true;
    b.vacuous = true;
    return b;
  }
  b.raw = 1.0 / denominator;
  b.above_one = b.raw > 1.0;
  b.clamped = std::min(b.raw, 1.0);
  return b;
}

namespace detail {

inline double Clamp01(double x, bool* clamped) {
  const double c = std::clamp(x, 0.0, 1.0);
  if (c != x && clamped != nullptr) *clamped = true;
  return c;
}

inline void RequireRho(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("leakage must be finite and >= 0");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Total variation helpers

inline double TvDistance(std::span<const double> p, std::span<const double> q) {
  Require(p.size() == q.size(), "TvDistance: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return 0.5 * d;
}

// TV distance between query distributions implied by an MI leakage rho <= 1.
inline double TvBoundMi(double rho) {
  detail::RequireRho(rho);
  Require(rho <= 1.0, "TvBoundMi: rho must be <= 1");
  return 1.0 - 2.0 * InvBinaryEntropy(1.0 - rho);
}

inline double TvBoundMaxl(double rho) {
  detail::RequireRho(rho);
  return std::exp2(rho) - 1.0;
}

// Entropy difference of two distributions on an alphabet of the given size at
// TV distance delta.
inline double EntropyDiffBound(double delta, int alphabet_size) {
  Require(delta >= 0.0 && delta <= 1.0, "EntropyDiffBound: delta in [0, 1]");
  Require(alphabet_size >= 2, "EntropyDiffBound: alphabet size must be >= 2");
  return delta * std::log2(alphabet_size - 1.0) + BinaryEntropy(delta);
}

// ---------------------------------------------------------------------------
// Rate converses

inline RateBound RUbMi(int files, int n, double rho) {
  Require(files >= 1 && n >= 2, "RUbMi: bad (M, n)");
  detail::RequireRho(rho);
  bool clamped = false;
  const double inv = InvBinaryEntropy(detail::Clamp01(1.0 - rho, &clamped));
  double denom = std::pow(static_cast<double>(n), -(files - 1));
  for (int m = 1; m <= files - 1; ++m) {
    denom += 2.0 * std::pow(static_cast<double>(n), -(m - 1)) * inv;
  }
  return MakeRateBound(denom, clamped);
}

inline RateBound RUbMaxl(int files, int n, double rho) {
  Require(files >= 1 && n >= 2, "RUbMaxl: bad (M, n)");
  detail::RequireRho(rho);
  const double excess = std::exp2(rho) - 1.0;
  double denom = 1.0;
  for (int m = 1; m <= files - 1; ++m) {
    denom += std::pow(static_cast<double>(n), -m) -
             excess * std::pow(static_cast<double>(n), -(m - 1));
  }
  return MakeRateBound(denom, false);
}

// (2, 2) capacity under MI when only one server may leak rho.
inline RateBound Capacity22MiOneleak(double rho) {
  detail::RequireRho(rho);
  bool clamped = false;
  const double inv = InvBinaryEntropy(detail::Clamp01(1.0 - 2.0 * rho, &clamped));
  return MakeRateBound(1.0 + inv, clamped);
}

// (2, 2) capacity under MaxL: 1 / (5/2 - 2^rho), saturating at 1 beyond
// rho = log2(3/2).
inline RateBound Capacity22Maxl(double rho) {
  detail::RequireRho(rho);
  const bool beyond = rho > std::log2(1.5);
  RateBound b = MakeRateBound(2.5 - std::exp2(rho), beyond);
  if (beyond) b.clamped = 1.0;
  return b;
}

// ---------------------------------------------------------------------------
// Epsilon-privacy baseline (rho in nats)

inline double LpirRate(int files, int n, double rho) {
  Require(files >= 1 && n >= 2, "LpirRate: bad (M, n)");
  detail::RequireRho(rho);
  const double tail = std::pow(static_cast<double>(n), files - 1) - 1.0;
  return 1.0 / (1.0 + tail / ((n - 1.0) * std::exp(rho) + tail));
}

inline double LpirUb(int files, int n, double rho) {
  Require(files >= 1 && n >= 2, "LpirUb: bad (M, n)");
  detail::RequireRho(rho);
  const double x = 1.0 / (n * std::exp(rho));
  return (1.0 - x) / (1.0 - std::pow(x, files));
}

}  // namespace wpir

#endif  // WPIR_BOUNDS_HPP_
