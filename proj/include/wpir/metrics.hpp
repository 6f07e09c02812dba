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

#ifndef WPIR_METRICS_HPP_
#define WPIR_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "wpir/core.hpp"

namespace wpir {

// Leakage metrics assume a uniformly distributed requested index M. MI, WIL
// and MaxL are in bits; epsilon-privacy is in nats.

inline double ServerMiLeakage(const ServerQueryDist& s) {
  const std::size_t files = s.files();
  const std::vector<double> uniform(files, 1.0 / static_cast<double>(files));
  double conditional = 0.0;
  for (const auto& row : s.rows) conditional += EntropyBits(row);
  conditional /= static_cast<double>(files);
  const double leak = EntropyBits(s.Marginal(uniform)) - conditional;
  return std::max(leak, 0.0);
}

// H(M) - min over queries with positive probability of H(M | Q_l = q).
inline double ServerWilLeakage(const ServerQueryDist& s) {
  const std::size_t files = s.files();
  double min_posterior_entropy = std::log2(static_cast<double>(files));
  std::vector<double> posterior(files);
  for (std::size_t k = 0; k < s.support.size(); ++k) {
    double total = 0.0;
    for (std::size_t m = 0; m < files; ++m) total += s.rows[m][k];
    if (total <= 0.0) continue;
    for (std::size_t m = 0; m < files; ++m) posterior[m] = s.rows[m][k] / total;
    min_posterior_entropy =
        std::min(min_posterior_entropy, EntropyBits(posterior));
  }
  return std::max(std::log2(static_cast<double>(files)) - min_posterior_entropy,
                  0.0);
}

// Linear-domain maximal leakage: sum over q of max_m P(q | m).
inline double ServerMaxlSum(const ServerQueryDist& s) {
  double sum = 0.0;
  for (std::size_t k = 0; k < s.support.size(); ++k) {
    double best = 0.0;
    for (const auto& row : s.rows) best = std::max(best, row[k]);
    sum += best;
  }
  return sum;
}

inline double ServerMaxlLeakage(const ServerQueryDist& s) {
  return std::max(std::log2(ServerMaxlSum(s)), 0.0);
}

// ln max_q max_{m,m'} P(q|m)/P(q|m'); +infinity when some query is possible
// under one file and impossible under another.
inline double ServerEpspLeakage(const ServerQueryDist& s) {
  double worst = 0.0;
  for (std::size_t k = 0; k < s.support.size(); ++k) {
    double hi = 0.0;
    double lo = kInfinity;
    for (const auto& row : s.rows) {
      hi = std::max(hi, row[k]);
      lo = std::min(lo, row[k]);
    }
    if (hi <= 0.0) continue;
    if (lo <= 0.0) return kInfinity;
    worst = std::max(worst, std::log(hi / lo));
  }
  return worst;
}

template <typename F>
std::vector<double> PerServer(const CondQueryDist& d, F metric) {
  std::vector<double> out;
  out.reserve(d.servers.size());
  for (const auto& s : d.servers) out.push_back(metric(s));
  return out;
}

inline std::vector<double> MiLeakagePerServer(const CondQueryDist& d) {
  return PerServer(d, ServerMiLeakage);
}

inline double MiLeakage(const CondQueryDist& d) {
  const auto per = MiLeakagePerServer(d);
  double sum = 0.0;
  for (double v : per) sum += v;
  return sum / static_cast<double>(per.size());
}

inline double WilLeakage(const CondQueryDist& d) {
  const auto per = PerServer(d, ServerWilLeakage);
  return *std::max_element(per.begin(), per.end());
}

inline double MaxlLeakage(const CondQueryDist& d) {
  const auto per = PerServer(d, ServerMaxlLeakage);
  return *std::max_element(per.begin(), per.end());
}

inline double EpspLeakage(const CondQueryDist& d) {
  const auto per = PerServer(d, ServerEpspLeakage);
  return *std::max_element(per.begin(), per.end());
}

// Sum over servers of H(Q_l), with Q_l marginal under uniform M.
inline double UploadCost(const CondQueryDist& d) {
  double total = 0.0;
  for (const auto& s : d.servers) {
    const std::vector<double> uniform(s.files(),
                                      1.0 / static_cast<double>(s.files()));
    total += EntropyBits(s.Marginal(uniform));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Exact evaluation by enumerating the strategy support.

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

// Everything an exhaustive pass over (m, s) yields.
struct SchemeProfile {
  CondQueryDist dist;
  double download = 0.0;  // expected downloaded bits (|A| = 2)
  double access = 0.0;    // expected accessed symbols
  int beta = 0;
};

inline void CheckEnumerationCap(const Scheme& scheme, std::uint64_t cap) {
  const auto probs = scheme.strategy().probs();
  std::uint64_t positive = 0;
  for (double p : probs) positive += p > 0.0 ? 1 : 0;
  if (positive * static_cast<std::uint64_t>(scheme.files()) > cap) {
    throw CapacityError("strategy support of " + std::to_string(positive) +
                        " states times M exceeds the enumeration cap of " +
                        std::to_string(cap));
  }
}

inline SchemeProfile ProfileScheme(const Scheme& scheme,
                                   std::uint64_t cap = kDefaultEnumerationCap) {
  CheckEnumerationCap(scheme, cap);
  const int files = scheme.files();
  const int n = scheme.servers();
  const auto probs = scheme.strategy().probs();
  const double file_weight = 1.0 / files;

  std::vector<std::map<Query, std::vector<double>>> acc(n);
  SchemeProfile out;
  out.beta = scheme.beta();
  for (int m = 1; m <= files; ++m) {
    for (std::uint64_t s = 0; s < probs.size(); ++s) {
      const double ps = probs[s];
      if (ps <= 0.0) continue;
      const auto queries = scheme.Queries(m, s);
      for (int l = 0; l < n; ++l) {
        auto [it, inserted] = acc[l].try_emplace(queries[l]);
        if (inserted) it->second.assign(files, 0.0);
        it->second[m - 1] += ps;
        out.download += file_weight * ps * scheme.AnswerLength(queries[l]);
        out.access += file_weight * ps * scheme.AccessCount(queries[l]);
      }
    }
  }

  out.dist.files = files;
  out.dist.servers.resize(n);
  for (int l = 0; l < n; ++l) {
    auto& server = out.dist.servers[l];
    server.rows.assign(files, {});
    for (auto& row : server.rows) row.reserve(acc[l].size());
    for (auto& [q, per_file] : acc[l]) {
      server.support.push_back(q);
      for (int m = 0; m < files; ++m) server.rows[m].push_back(per_file[m]);
    }
  }
  return out;
}

inline CondQueryDist BuildCondQueryDist(
    const Scheme& scheme, std::uint64_t cap = kDefaultEnumerationCap) {
  return ProfileScheme(scheme, cap).dist;
}

inline double DownloadCost(const Scheme& scheme,
                           std::uint64_t cap = kDefaultEnumerationCap) {
  return ProfileScheme(scheme, cap).download;
}

inline double Rate(const Scheme& scheme,
                   std::uint64_t cap = kDefaultEnumerationCap) {
  return scheme.beta() / DownloadCost(scheme, cap);
}

inline double AccessComplexity(const Scheme& scheme,
                               std::uint64_t cap = kDefaultEnumerationCap) {
  return ProfileScheme(scheme, cap).access;
}

inline TradeoffPoint TradeoffFromProfile(const SchemeProfile& p) {
  TradeoffPoint t;
  t.rate = p.beta / p.download;
  t.upload = UploadCost(p.dist);
  t.access = p.access;
  t.rho_mi = MiLeakage(p.dist);
  t.rho_wil = WilLeakage(p.dist);
  t.rho_maxl = MaxlLeakage(p.dist);
  t.rho_epsp = EpspLeakage(p.dist);
  return t;
}

inline TradeoffPoint EvaluateTradeoff(
    const Scheme& scheme, std::uint64_t cap = kDefaultEnumerationCap) {
  return TradeoffFromProfile(ProfileScheme(scheme, cap));
}

}  // namespace wpir

#endif  // WPIR_METRICS_HPP_
