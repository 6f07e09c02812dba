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

// Scheme B: a binary mask S of length beta*M is sent to server n; server l < n
// receives S with bit (m-1)*beta + l flipped. Every server returns the inner
// product of its query with the flattened database, so the rate is 1 - 1/n
// whatever the mask distribution.

#ifndef WPIR_SCHEME_B_HPP_
#define WPIR_SCHEME_B_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpir/core.hpp"
#include "wpir/scheme_a.hpp"

namespace wpir {

inline std::vector<Query> QueriesB(int files, int n, int m,
                                   std::span<const std::uint16_t> s) {
  Require(files >= 1 && n >= 2, "QueriesB: need M >= 1 and n >= 2");
  Require(m >= 1 && m <= files, "QueriesB: m out of range");
  const int beta = n - 1;
  Require(static_cast<int>(s.size()) == beta * files,
          "QueriesB: strategy must have beta*M bits");
  for (auto v : s) Require(v <= 1, "QueriesB: strategy bits must be 0/1");

  std::vector<Query> out(n);
  for (int l = 1; l <= n; ++l) {
    Query& q = out[l - 1];
    q.alphabet = 2;
    q.entries.assign(s.begin(), s.end());
    if (l < n) q.entries[(m - 1) * beta + (l - 1)] ^= 1;
  }
  return out;
}

// <q, (X^(1)_1, ..., X^(M)_beta)> over GF(2); always one symbol.
inline SymbolVector AnswerB(const Query& q, DatabaseView db) {
  const auto flat = db.flat();
  Require(q.entries.size() == flat.size(),
          "AnswerB: query length must equal beta*M");
  Symbol acc = 0;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (q.entries[i]) acc ^= flat[i];
  }
  return {acc};
}

// The unmodified mask is the query that differs from every other query by a
// single bit inside block m; each other query reveals X^(m)_l = A_l + A_n.
inline SymbolVector DecodeB(int m, std::span<const Query> queries,
                            std::span<const SymbolVector> answers) {
  if (queries.size() != answers.size() || queries.size() < 2) {
    throw ProtocolError("DecodeB: need one answer per query, n >= 2");
  }
  const int n = static_cast<int>(queries.size());
  const int beta = n - 1;
  const std::size_t length = queries[0].entries.size();
  if (m < 1 || static_cast<std::size_t>(m) * beta > length) {
    throw ProtocolError("DecodeB: file index outside query");
  }
  for (const auto& a : answers) {
    if (a.size() != 1) throw ProtocolError("DecodeB: answers carry one bit");
  }

  // Position of the single differing bit, or -1.
  auto unit_difference = [&](const Query& a, const Query& b) -> int {
    if (a.entries.size() != b.entries.size()) return -1;
    int pos = -1;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      if (a.entries[i] != b.entries[i]) {
        if (pos >= 0) return -1;
        pos = static_cast<int>(i);
      }
    }
    return pos;
  };

  for (int r = 0; r < n; ++r) {
    SymbolVector file(beta, 0);
    std::vector<bool> seen(beta, false);
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      if (k == r) continue;
      const int pos = unit_difference(queries[k], queries[r]);
      const int symbol = pos - (m - 1) * beta;
      if (pos < 0 || symbol < 0 || symbol >= beta || seen[symbol]) {
        ok = false;
        break;
      }
      seen[symbol] = true;
      file[symbol] = answers[k][0] ^ answers[r][0];
    }
    if (ok) return file;
  }
  throw ProtocolError("DecodeB: queries are not a mask plus unit vectors");
}

// ---------------------------------------------------------------------------
// Strategies over {0,1}^{beta*M}; index bit i is mask position i.

inline Pmf BernoulliStrategyB(int files, int n, double p) {
  Require(p >= 0.0 && p <= 1.0, "BernoulliStrategyB: p must lie in [0, 1]");
  return IidStrategy((n - 1) * files, {1.0 - p, p});
}

inline Pmf UniformStrategyB(int files, int n) {
  return Pmf::Uniform(IntPow(2, (n - 1) * files));
}

// Mask drawn uniformly from the weight-w vectors of length beta*M.
inline Pmf SphereStrategyB(int files, int n, int w) {
  const int length = (n - 1) * files;
  Require(w >= 0 && w <= length, "SphereStrategyB: need 0 <= w <= beta*M");
  const std::uint64_t size = IntPow(2, length);
  std::vector<double> probs(size, 0.0);
  const double mass = 1.0 / detail::Binomial(length, w);
  for (std::uint64_t i = 0; i < size; ++i) {
    if (std::popcount(i) == w) probs[i] = mass;
  }
  return Pmf(std::move(probs));
}

inline Pmf SphereStrategyB(int files, int w) { return SphereStrategyB(files, 2, w); }

class SchemeB final : public Scheme {
 public:
  SchemeB(int files, int n, Pmf strategy)
      : files_(files), n_(n), strategy_(std::move(strategy)) {
    Require(files >= 1, "SchemeB: need M >= 1");
    Require(n >= 2, "SchemeB: need n >= 2");
    Require((n - 1) * files < 63, "SchemeB: mask too long to index");
    Require(strategy_.size() == IntPow(2, (n - 1) * files),
            "SchemeB: strategy must cover {0,1}^{beta*M}");
  }

  int files() const override { return files_; }
  int servers() const override { return n_; }
  int beta() const override { return n_ - 1; }
  const Pmf& strategy() const override { return strategy_; }
  SchemeKind kind() const override { return SchemeKind::kSchemeB; }
  PayloadCoding coding() const override { return PayloadCoding::kPackedBits; }
  std::string name() const override {
    return "scheme-b(" + std::to_string(files_) + "," + std::to_string(n_) + ")";
  }

  std::vector<std::uint16_t> StrategyVector(std::uint64_t s) const {
    return DecodeRadix(s, 2, (n_ - 1) * files_);
  }

  std::vector<Query> Queries(int m, std::uint64_t s) const override {
    Require(s < strategy_.size(), "SchemeB: strategy index out of range");
    return QueriesB(files_, n_, m, StrategyVector(s));
  }
  SymbolVector Answer(const Query& q, DatabaseView db) const override {
    return AnswerB(q, db);
  }
  int AnswerLength(const Query&) const override { return 1; }
  int AccessCount(const Query& q) const override { return q.Weight(); }
  SymbolVector Decode(int m, std::span<const Query> queries,
                      std::span<const SymbolVector> answers) const override {
    return DecodeB(m, queries, answers);
  }

 private:
  int files_;
  int n_;
  Pmf strategy_;
};

// Closed-form tuple of the (M, 2) Scheme B with S_j i.i.d. Bernoulli(p),
// 0 <= p <= 1/2.
inline TradeoffPoint BernoulliTupleB(int files, double p) {
  Require(files >= 1, "BernoulliTupleB: need M >= 1");
  Require(p >= 0.0 && p <= 0.5, "BernoulliTupleB: p must lie in [0, 1/2]");
  const int M = files;
  const double q = 1.0 - p;
  using detail::Binomial;
  using detail::Monomial;

  // Server 1 sees S + e_m: a weight-w query comes from a zero of S at m (the
  // mask had weight w - 1) or from a one (weight w + 1).
  auto from_zero = [&](int w) { return Monomial(w, q, M - w + 1, p, w - 1); };
  auto from_one = [&](int w) { return Monomial(M - w, q, M - w - 1, p, w + 1); };
  auto g = [&](int w) { return (from_zero(w) + from_one(w)) / M; };
  auto h = [&](int w) { return Monomial(1.0, q, M - w, p, w); };

  TradeoffPoint t;
  t.rate = 0.5;
  double min_h = std::log2(static_cast<double>(M));
  double server1_upload = 0.0;
  for (int w = 0; w <= M; ++w) {
    const double gw = g(w);
    server1_upload += Binomial(M, w) * EntropyTerm(gw);
    t.access += w * Binomial(M, w) * (gw + h(w));
    if (gw > 0.0) {
      const double a =
          w < M ? Monomial(1.0, q, M - w - 1, p, w + 1) / (M * gw) : 0.0;
      const double b = w > 0 ? Monomial(1.0, q, M - w + 1, p, w - 1) / (M * gw)
                             : 0.0;
      min_h = std::min(min_h, (M - w) * EntropyTerm(a) + w * EntropyTerm(b));
    }
  }
  t.upload = server1_upload + M * BinaryEntropy(p);
  t.rho_mi = std::max(t.upload / 2.0 - M * BinaryEntropy(p), 0.0);
  t.rho_wil = std::max(std::log2(static_cast<double>(M)) - min_h, 0.0);
  double maxl = Monomial(1.0, q, M - 1, p, 1);
  for (int w = 1; w <= M; ++w) {
    maxl += Monomial(Binomial(M, w), q, M - (w - 1), p, w - 1);
  }
  t.rho_maxl = std::log2(maxl);
  if (M < 2) {
    t.rho_epsp = 0.0;
  } else {
    t.rho_epsp = p == 0.0 ? kInfinity : 2.0 * std::log(q / p);
  }
  return t;
}

// Closed-form tuple of the (M, 2) Scheme B with S uniform over the weight-w
// vectors of length M.
inline TradeoffPoint SphereTupleB(int files, int w) {
  Require(files >= 1, "SphereTupleB: need M >= 1");
  Require(w >= 0 && w <= files, "SphereTupleB: need 0 <= w <= M");
  const double M = files;
  const double log_binom = std::log2(detail::Binomial(files, w));
  const double y = log_binom + std::log2(M) - (M - w) * std::log2(w + 1.0) / M -
                   w * std::log2(M - w + 1.0) / M;
  TradeoffPoint t;
  t.rate = 0.5;
  t.upload = log_binom + y;
  t.access = 1.0 + 2.0 * w * (1.0 - 1.0 / M);
  t.rho_mi = std::max((y - log_binom) / 2.0, 0.0);
  t.rho_wil = std::max(
      std::log2(M) - std::min(std::log2(w + 1.0), std::log2(M - w + 1.0)), 0.0);
  t.rho_maxl = std::log2((M - w) / (w + 1.0) + w / (M - w + 1.0));
  // Server 1 sees weight w - 1 or w + 1 depending on S_m. Unless both
  // reachable weights are 0 or M, some query is impossible under some file.
  const bool low_ok = w == 0 || w - 1 == 0;
  const bool high_ok = w == files || w + 1 == files;
  t.rho_epsp = low_ok && high_ok ? 0.0 : kInfinity;
  return t;
}

}  // namespace wpir

#endif  // WPIR_SCHEME_B_HPP_
