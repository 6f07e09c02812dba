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

// Scheme families swept by the command-line tool. Closed forms are used for
// n = 2 (and for partition Scheme A at any n); other points are enumerated.

#ifndef WPIR_SWEEP_HPP_
#define WPIR_SWEEP_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wpir/core.hpp"
#include "wpir/metrics.hpp"
#include "wpir/scheme_a.hpp"
#include "wpir/scheme_b.hpp"
#include "wpir/wrappers.hpp"

namespace wpir {

enum class Family {
  kSchemeABernoulli,
  kSchemeAPartition,
  kSchemeBBernoulli,
  kSchemeBSphere,
};

inline std::optional<Family> ParseFamily(std::string_view name) {
  if (name == "scheme-a-bernoulli") return Family::kSchemeABernoulli;
  if (name == "scheme-a-partition") return Family::kSchemeAPartition;
  if (name == "scheme-b-bernoulli") return Family::kSchemeBBernoulli;
  if (name == "scheme-b-sphere") return Family::kSchemeBSphere;
  return std::nullopt;
}

inline std::string ToString(Family f) {
  switch (f) {
    case Family::kSchemeABernoulli: return "scheme-a-bernoulli";
    case Family::kSchemeAPartition: return "scheme-a-partition";
    case Family::kSchemeBBernoulli: return "scheme-b-bernoulli";
    case Family::kSchemeBSphere: return "scheme-b-sphere";
  }
  return "unknown";
}

// Integer parameters (eta, w) must be whole numbers.
inline bool IsWhole(double v) { return std::floor(v) == v; }

// Whether `param` names a member of the family at (M, n). Partition sizes
// that do not divide M, and weights beyond the mask length, are skipped by
// the sweep rather than rejected.
inline bool InFamily(Family f, int files, int n, double param) {
  switch (f) {
    case Family::kSchemeABernoulli:
    case Family::kSchemeBBernoulli:
      return param >= 0.0 && param <= 0.5;
    case Family::kSchemeAPartition:
      return IsWhole(param) && param >= 1 && param <= files - 1 &&
             files % static_cast<int>(param) == 0;
    case Family::kSchemeBSphere:
      return IsWhole(param) && param >= 0 && param <= (n - 1) * files;
  }
  return false;
}

inline TradeoffPoint EvaluateFamily(Family f, int files, int n, double param,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
  Require(InFamily(f, files, n, param), "EvaluateFamily: parameter outside family");
  const int k = static_cast<int>(param);
  switch (f) {
    case Family::kSchemeABernoulli:
      if (n == 2) return BernoulliTupleA(files, param);
      {
        // Entries i.i.d. on {0, 1} with P(1) = p, embedded in [0:n-1].
        std::vector<double> entry(n, 0.0);
        entry[0] = 1.0 - param;
        entry[1] = param;
        return EvaluateTradeoff(SchemeA(files, n, IidStrategy(files - 1, entry)), cap);
      }
    case Family::kSchemeAPartition:
      return PartitionTupleA(files, n, k);
    case Family::kSchemeBBernoulli:
      if (n == 2) return BernoulliTupleB(files, param);
      return EvaluateTradeoff(SchemeB(files, n, BernoulliStrategyB(files, n, param)),
                              cap);
    case Family::kSchemeBSphere:
      if (n == 2) return SphereTupleB(files, k);
      return EvaluateTradeoff(SchemeB(files, n, SphereStrategyB(files, n, k)), cap);
  }
  throw std::logic_error("EvaluateFamily: unknown family");
}

// Divides MI/WIL/MaxL leakage by log2 M, upload by 2(M - 1) and access by M.
// Epsilon-privacy and rate are left as they are.
inline TradeoffPoint Normalize(TradeoffPoint t, int files) {
  if (files >= 2) {
    const double bits = std::log2(static_cast<double>(files));
    t.rho_mi /= bits;
    t.rho_wil /= bits;
    t.rho_maxl /= bits;
    t.upload /= 2.0 * (files - 1);
  }
  t.access /= files;
  return t;
}

}  // namespace wpir

#endif  // WPIR_SWEEP_HPP_
