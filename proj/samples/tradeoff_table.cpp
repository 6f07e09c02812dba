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

// Prints closed-form tradeoff tuples for (M, 2) at large M next to the MI and
// MaxL converse bounds at the same leakage.
//
//   tradeoff_table [M]

#include <cstdio>
#include <cstdlib>

#include "wpir/wpir.hpp"

namespace {

void Row(const char* family, double param, const wpir::TradeoffPoint& t, int files) {
  const auto mi_bound = wpir::RUbMi(files, 2, t.rho_mi);
  const auto maxl_bound = wpir::RUbMaxl(files, 2, t.rho_maxl);
  std::printf("%-18s %6.3g  %8.5f  %8.5f  %8.5f  %8.5f  %8.5f\n", family, param,
              t.rate, t.rho_mi, t.rho_maxl, mi_bound.clamped, maxl_bound.clamped);
}

}  // namespace

int main(int argc, char** argv) {
  const int files = argc > 1 ? std::atoi(argv[1]) : 32;
  if (files < 2) {
    std::fprintf(stderr, "usage: tradeoff_table [M>=2]\n");
    return 1;
  }
  std::printf("M = %d, n = 2, capacity %.5f\n", files, wpir::PirCapacity(files, 2));
  std::printf("%-18s %6s  %8s  %8s  %8s  %8s  %8s\n", "family", "param", "rate",
              "mi", "maxl", "ub(mi)", "ub(maxl)");
  for (double p = 0.0; p <= 0.5 + 1e-12; p += 0.1) {
    Row("scheme-a-bernoulli", p, wpir::BernoulliTupleA(files, p), files);
  }
  for (double p = 0.0; p <= 0.5 + 1e-12; p += 0.1) {
    Row("scheme-b-bernoulli", p, wpir::BernoulliTupleB(files, p), files);
  }
  for (int w = 0; w <= files / 2; w += files / 8 > 0 ? files / 8 : 1) {
    Row("scheme-b-sphere", w, wpir::SphereTupleB(files, w), files);
  }
  for (int eta = 1; eta < files; ++eta) {
    if (files % eta == 0) Row("scheme-a-partition", eta, wpir::PartitionTupleA(files, 2, eta), files);
  }
  return 0;
}
