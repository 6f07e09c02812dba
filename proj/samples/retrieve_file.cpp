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

// Retrieves every file of a random database with a leaky Scheme A and prints
// what each server saw.
//
//   retrieve_file [M] [n] [p] [seed]

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <vector>

#include "wpir/wpir.hpp"

namespace {

std::vector<double> EntryLaw(int n, double p) {
  // P(entry = 0) = 1 - p, the rest split evenly.
  std::vector<double> law(n, p / (n - 1));
  law[0] = 1.0 - p;
  return law;
}

void PrintBits(const wpir::SymbolVector& v) {
  if (v.empty()) std::cout << "-";
  for (auto b : v) std::cout << static_cast<int>(b);
}

}  // namespace

int main(int argc, char** argv) {
  const int files = argc > 1 ? std::atoi(argv[1]) : 3;
  const int n = argc > 2 ? std::atoi(argv[2]) : 2;
  const double p = argc > 3 ? std::atof(argv[3]) : 0.25;
  const std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 1;
  if (files < 1 || n < 2 || p < 0.0 || p > 1.0) {
    std::cerr << "usage: retrieve_file [M>=1] [n>=2] [p in 0..1] [seed]\n";
    return 1;
  }

  const wpir::SchemeA scheme(files, n, wpir::IidStrategy(files - 1, EntryLaw(n, p)));
  wpir::SplitMix64 rng(seed);
  const auto db = wpir::RandomDatabase(files, scheme.beta(), rng);
  const wpir::DiscreteSampler sampler(scheme.strategy().probs());

  std::cout << scheme.name() << ", entries nonzero with probability " << p << "\n";
  for (int m = 1; m <= files; ++m) {
    const std::uint64_t s = sampler(rng);
    const auto tr = wpir::RunRound(scheme, db.view(), m, s, rng.Next());
    std::cout << "file " << m << " = ";
    PrintBits(db.File(m));
    std::cout << "  s=" << s << "\n";
    for (int l = 0; l < n; ++l) {
      std::cout << "  server " << l + 1 << " query " << wpir::ToString(tr.queries[l])
                << " answer ";
      PrintBits(tr.answers[l]);
      std::cout << "\n";
    }
    std::cout << "  decoded ";
    PrintBits(tr.decoded);
    std::cout << ", downloaded " << tr.downloaded_bits << " bits, uploaded "
              << tr.uploaded_bits << " bits\n";
  }

  const auto t = wpir::EvaluateTradeoff(scheme);
  std::cout << "rate " << t.rate << " (capacity " << wpir::PirCapacity(files, n)
            << "), MI leakage " << t.rho_mi << " bits, MaxL leakage " << t.rho_maxl
            << " bits\n";
  return 0;
}
