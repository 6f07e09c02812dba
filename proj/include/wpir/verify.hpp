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

// Self-check harness behind `wpir verify`: exhaustive retrievability over
// every scheme and wrapper up to (M, n), closed forms against enumeration,
// and the metric module against a direct joint-distribution computation.

#ifndef WPIR_VERIFY_HPP_
#define WPIR_VERIFY_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "wpir/core.hpp"
#include "wpir/metrics.hpp"
#include "wpir/protocol_sim.hpp"
#include "wpir/scheme_a.hpp"
#include "wpir/scheme_b.hpp"
#include "wpir/wrappers.hpp"

namespace wpir {

struct VerifyOptions {
  int max_files = 4;
  int max_servers = 3;
  std::uint64_t seed = 42;
  int db_samples = 20;
  double tolerance = 1e-9;
  std::vector<SchemePtr> extra_schemes;  // also checked for retrievability
};

struct SuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::vector<std::string> counterexamples;
  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const {
    for (const auto& s : suites) {
      if (!s.passed()) return false;
    }
    return true;
  }
};

// Every scheme and wrapper combination with M <= max_files, n <= max_servers.
inline std::vector<SchemePtr> StandardSchemes(int max_files, int max_servers) {
  std::vector<SchemePtr> out;
  for (int M = 1; M <= max_files; ++M) {
    for (int n = 2; n <= max_servers; ++n) {
      SchemePtr a = std::make_shared<SchemeA>(M, n, UniformStrategyA(M, n));
      SchemePtr b = std::make_shared<SchemeB>(M, n, UniformStrategyB(M, n));
      out.push_back(a);
      out.push_back(b);
      out.push_back(TimeshareWrap(a));
      out.push_back(TimeshareWrap(b));
      for (int eta = 2; eta <= M; ++eta) {
        if (M % eta != 0) continue;
        const int g = M / eta;
        auto pa = PartitionWrap(
            std::make_shared<SchemeA>(g, n, UniformStrategyA(g, n)), eta);
        out.push_back(pa);
        out.push_back(PartitionWrap(
            std::make_shared<SchemeB>(g, n, UniformStrategyB(g, n)), eta));
        out.push_back(TimeshareWrap(pa));
      }
      for (int eta = 1; eta <= M - 1; ++eta) {
        if (M % eta != 0) continue;
        SchemePtr p = std::make_shared<PartitionSchemeA>(M, n, eta);
        out.push_back(p);
        out.push_back(TimeshareWrap(p));
      }
    }
  }
  return out;
}

namespace detail {

inline std::string Bits(const SymbolVector& v) {
  std::string s;
  for (auto b : v) s += static_cast<char>('0' + b);
  return s;
}

inline void Check(SuiteResult& r, bool ok, const std::string& what) {
  ++r.checks;
  if (!ok) {
    ++r.failures;
    if (r.counterexamples.size() < kMaxCounterexamples) {
      r.counterexamples.push_back(what);
    }
  }
}

inline bool Near(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

inline std::string Describe(const TradeoffPoint& t) {
  std::ostringstream os;
  os.precision(12);
  os << "(R=" << t.rate << ", U=" << t.upload << ", D=" << t.access
     << ", mi=" << t.rho_mi << ", wil=" << t.rho_wil << ", maxl=" << t.rho_maxl
     << ", eps=" << t.rho_epsp << ")";
  return os.str();
}

inline bool SameTuple(const TradeoffPoint& a, const TradeoffPoint& b, double tol) {
  return Near(a.rate, b.rate, tol) && Near(a.upload, b.upload, tol) &&
         Near(a.access, b.access, tol) && Near(a.rho_mi, b.rho_mi, tol) &&
         Near(a.rho_wil, b.rho_wil, tol) && Near(a.rho_maxl, b.rho_maxl, tol) &&
         Near(a.rho_epsp, b.rho_epsp, tol);
}

// I(M; Q_l) from the joint table P(m, q) = P_S-weighted counts / M.
inline double JointMutualInformation(const Scheme& scheme, int server) {
  const int M = scheme.files();
  const auto probs = scheme.strategy().probs();
  std::map<std::vector<std::uint16_t>, std::vector<double>> joint;
  for (int m = 1; m <= M; ++m) {
    for (std::uint64_t s = 0; s < probs.size(); ++s) {
      if (probs[s] <= 0.0) continue;
      const Query q = scheme.Queries(m, s)[server];
      auto key = q.entries;
      if (q.partition) key.push_back(static_cast<std::uint16_t>(0x8000 | *q.partition));
      auto& row = joint[key];
      row.resize(M, 0.0);
      row[m - 1] += probs[s] / M;
    }
  }
  double mi = 0.0;
  for (const auto& [key, row] : joint) {
    double pq = 0.0;
    for (double v : row) pq += v;
    for (double v : row) {
      if (v > 0.0) mi += v * std::log2(v / (pq / M));
    }
  }
  return mi;
}

}  // namespace detail

inline SuiteResult VerifyRetrievability(const std::vector<SchemePtr>& schemes,
                                        const VerifyOptions& opt) {
  SuiteResult r;
  r.name = "retrievability";
  std::uint64_t salt = 0;
  for (const auto& scheme : schemes) {
    const auto rep = RunExhaustive(*scheme, opt.db_samples, opt.seed + salt++);
    r.checks += rep.rounds;
    r.failures += rep.failures;
    for (const auto& c : rep.counterexamples) {
      if (r.counterexamples.size() >= kMaxCounterexamples) break;
      r.counterexamples.push_back(scheme->name() + " m=" + std::to_string(c.m) +
                                  " s=" + std::to_string(c.s) +
                                  " db=" + detail::Bits(c.db) + ": " + c.what);
    }
  }
  return r;
}

inline SuiteResult VerifyClosedForms(const VerifyOptions& opt) {
  SuiteResult r;
  r.name = "closed-form-vs-enumeration";
  const int max_m = std::min(opt.max_files + 2, 6);
  const double grid[] = {0.0, 0.1, 0.25, 0.4, 0.5};
  for (int M = 2; M <= max_m; ++M) {
    for (double p : grid) {
      const auto a = EvaluateTradeoff(SchemeA(M, 2, BernoulliStrategyA(M, p)));
      const auto ca = BernoulliTupleA(M, p);
      detail::Check(r, detail::SameTuple(a, ca, opt.tolerance),
                    "bernoulli A M=" + std::to_string(M) + " p=" + std::to_string(p) +
                        " enum " + detail::Describe(a) + " closed " +
                        detail::Describe(ca));
      const auto b = EvaluateTradeoff(SchemeB(M, 2, BernoulliStrategyB(M, 2, p)));
      const auto cb = BernoulliTupleB(M, p);
      detail::Check(r, detail::SameTuple(b, cb, opt.tolerance),
                    "bernoulli B M=" + std::to_string(M) + " p=" + std::to_string(p) +
                        " enum " + detail::Describe(b) + " closed " +
                        detail::Describe(cb));
    }
    for (int w = 0; w <= M; ++w) {
      const auto b = EvaluateTradeoff(SchemeB(M, 2, SphereStrategyB(M, w)));
      const auto cb = SphereTupleB(M, w);
      detail::Check(r, detail::SameTuple(b, cb, opt.tolerance),
                    "sphere B M=" + std::to_string(M) + " w=" + std::to_string(w) +
                        " enum " + detail::Describe(b) + " closed " +
                        detail::Describe(cb));
    }
    for (int n = 2; n <= std::max(3, opt.max_servers); ++n) {
      if (IntPow(n, M) > 4096) continue;
      for (int eta = 1; eta <= M - 1; ++eta) {
        if (M % eta != 0) continue;
        const auto e = EvaluateTradeoff(PartitionSchemeA(M, n, eta));
        const auto c = PartitionTupleA(M, n, eta);
        detail::Check(r, detail::SameTuple(e, c, opt.tolerance),
                      "partition A M=" + std::to_string(M) + " n=" +
                          std::to_string(n) + " eta=" + std::to_string(eta) +
                          " enum " + detail::Describe(e) + " closed " +
                          detail::Describe(c));
      }
    }
  }
  return r;
}

inline SuiteResult VerifyMetricOracle(const std::vector<SchemePtr>& schemes,
                                      const VerifyOptions& opt) {
  SuiteResult r;
  r.name = "mi-vs-joint-distribution";
  for (const auto& scheme : schemes) {
    const auto per = MiLeakagePerServer(BuildCondQueryDist(*scheme));
    for (int l = 0; l < scheme->servers(); ++l) {
      const double direct = detail::JointMutualInformation(*scheme, l);
      detail::Check(r, detail::Near(per[l], std::max(direct, 0.0), opt.tolerance),
                    scheme->name() + " server " + std::to_string(l + 1) +
                        ": metrics " + std::to_string(per[l]) + " vs joint " +
                        std::to_string(direct));
    }
  }
  return r;
}

inline VerifyReport RunVerification(const VerifyOptions& opt) {
  Require(opt.max_files >= 1 && opt.max_servers >= 2,
          "RunVerification: need M >= 1 and n >= 2");
  auto schemes = StandardSchemes(opt.max_files, opt.max_servers);
  VerifyReport rep;
  auto all = schemes;
  all.insert(all.end(), opt.extra_schemes.begin(), opt.extra_schemes.end());
  rep.suites.push_back(VerifyRetrievability(all, opt));
  rep.suites.push_back(VerifyClosedForms(opt));
  rep.suites.push_back(VerifyMetricOracle(schemes, opt));
  return rep;
}

}  // namespace wpir

#endif  // WPIR_VERIFY_HPP_
