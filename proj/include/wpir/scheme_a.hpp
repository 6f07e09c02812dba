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

// Scheme A: each server receives a length-M vector over [0:n-1] whose entries
// sum to (l-1) mod n. All entries except the requested one are copied from
// the strategy; the server returns the GF(2) sum of the selected symbols, or
// nothing for the all-zero query. Files hold beta = n-1 bits.

#ifndef WPIR_SCHEME_A_HPP_
#define WPIR_SCHEME_A_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpir/core.hpp"

namespace wpir {

namespace detail {

// coef * a^ea * b^eb, with a zero coefficient short-circuiting negative
// exponents of zero bases and 0^0 = 1.
inline double Monomial(double coef, double a, int ea, double b, int eb) {
  if (coef == 0.0) return 0.0;
  return coef * std::pow(a, ea) * std::pow(b, eb);
}

inline double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace detail

// q_l = (s_1, ..., s_{m-1}, q_{l,m}, s_m, ..., s_{M-1}) with
// q_{l,m} = (l - 1 - sum s) mod n, for l = 1..n.
inline std::vector<Query> QueriesA(int files, int n, int m,
                                   std::span<const std::uint16_t> s) {
  Require(files >= 1 && n >= 2, "QueriesA: need M >= 1 and n >= 2");
  Require(m >= 1 && m <= files, "QueriesA: m out of range");
  Require(static_cast<int>(s.size()) == files - 1,
          "QueriesA: strategy must have M-1 entries");
  int sum = 0;
  for (auto v : s) {
    Require(v < n, "QueriesA: strategy entry out of range");
    sum += v;
  }
  std::vector<Query> out(n);
  for (int l = 1; l <= n; ++l) {
    Query& q = out[l - 1];
    q.alphabet = static_cast<std::uint16_t>(n);
    q.entries.reserve(files);
    q.entries.insert(q.entries.end(), s.begin(), s.begin() + (m - 1));
    const int own = (((l - 1 - sum) % n) + n) % n;
    q.entries.push_back(static_cast<std::uint16_t>(own));
    q.entries.insert(q.entries.end(), s.begin() + (m - 1), s.end());
  }
  return out;
}

// Answer-length function: nothing for the all-zero query, one bit otherwise.
inline int AnswerLengthA(const Query& q) { return q.IsZero() ? 0 : 1; }

// X^(1)_{q_1} + ... + X^(M)_{q_M} over GF(2) with X^(m)_0 = 0.
inline SymbolVector AnswerA(const Query& q, DatabaseView db) {
  Require(static_cast<int>(q.entries.size()) == db.files(),
          "AnswerA: query length must equal M");
  if (q.IsZero()) return {};
  Symbol acc = 0;
  for (int m = 1; m <= db.files(); ++m) {
    const int k = q.entries[m - 1];
    if (k == 0) continue;
    Require(k <= db.beta(), "AnswerA: query entry exceeds file length");
    acc ^= db.at(m, k);
  }
  return {acc};
}

// Finds the server whose query has a zero in position m; its answer is the
// interference Z. Every other server holds X^(m)_{q_{l,m}} + Z.
inline SymbolVector DecodeA(int m, std::span<const Query> queries,
                            std::span<const SymbolVector> answers) {
  if (queries.size() != answers.size() || queries.empty()) {
    throw ProtocolError("DecodeA: need one answer per query");
  }
  const int n = static_cast<int>(queries.size());
  const int beta = n - 1;
  int z_server = -1;
  for (int l = 0; l < n; ++l) {
    if (m < 1 || m > static_cast<int>(queries[l].entries.size())) {
      throw ProtocolError("DecodeA: file index outside query");
    }
    if (queries[l].entries[m - 1] == 0) {
      if (z_server >= 0) throw ProtocolError("DecodeA: two interference servers");
      z_server = l;
    }
  }
  if (z_server < 0) {
    throw ProtocolError("DecodeA: no server with q_{l,m} = 0");
  }
  const auto& z_answer = answers[z_server];
  if (z_answer.size() > 1) throw ProtocolError("DecodeA: malformed answer");
  const Symbol z = z_answer.empty() ? 0 : z_answer[0];

  SymbolVector file(beta, 0);
  std::vector<bool> seen(beta, false);
  for (int l = 0; l < n; ++l) {
    if (l == z_server) continue;
    const int k = queries[l].entries[m - 1];
    if (k > beta || seen[k - 1]) {
      throw ProtocolError("DecodeA: symbol positions do not cover the file");
    }
    if (answers[l].size() != 1) {
      throw ProtocolError("DecodeA: missing answer for nonzero query");
    }
    seen[k - 1] = true;
    file[k - 1] = answers[l][0] ^ z;
  }
  return file;
}

// ---------------------------------------------------------------------------
// Strategies over [0:n-1]^{M-1}; index 0 is the all-zero strategy.

inline Pmf UniformStrategyA(int files, int n) {
  return Pmf::Uniform(IntPow(n, files - 1));
}

// Entries i.i.d. over [0:n-1] with the given per-entry distribution.
inline Pmf IidStrategy(int length, const std::vector<double>& per_entry) {
  const int radix = static_cast<int>(per_entry.size());
  const std::uint64_t size = IntPow(radix, length);
  std::vector<double> probs(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    double p = 1.0;
    std::uint64_t rest = i;
    for (int j = 0; j < length; ++j) {
      p *= per_entry[rest % radix];
      rest /= radix;
    }
    probs[i] = p;
  }
  return Pmf(std::move(probs));
}

// (M, 2) strategy with S_j i.i.d. Bernoulli(p).
inline Pmf BernoulliStrategyA(int files, double p) {
  Require(p >= 0.0 && p <= 1.0, "BernoulliStrategyA: p must lie in [0, 1]");
  return IidStrategy(files - 1, {1.0 - p, p});
}

class SchemeA final : public Scheme {
 public:
  SchemeA(int files, int n, Pmf strategy)
      : files_(files), n_(n), strategy_(std::move(strategy)) {
    Require(files >= 1, "SchemeA: need M >= 1");
    Require(n >= 2, "SchemeA: need n >= 2");
    Require(n <= 256, "SchemeA: n must fit the wire format");
    Require(strategy_.size() == IntPow(n, files - 1),
            "SchemeA: strategy must cover [0:n-1]^{M-1}");
  }

  int files() const override { return files_; }
  int servers() const override { return n_; }
  int beta() const override { return n_ - 1; }
  const Pmf& strategy() const override { return strategy_; }
  SchemeKind kind() const override { return SchemeKind::kSchemeA; }
  PayloadCoding coding() const override { return PayloadCoding::kEntries; }
  std::string name() const override {
    return "scheme-a(" + std::to_string(files_) + "," + std::to_string(n_) + ")";
  }

  std::vector<std::uint16_t> StrategyVector(std::uint64_t s) const {
    return DecodeRadix(s, n_, files_ - 1);
  }

  std::vector<Query> Queries(int m, std::uint64_t s) const override {
    Require(s < strategy_.size(), "SchemeA: strategy index out of range");
    return QueriesA(files_, n_, m, StrategyVector(s));
  }
  SymbolVector Answer(const Query& q, DatabaseView db) const override {
    return AnswerA(q, db);
  }
  int AnswerLength(const Query& q) const override { return AnswerLengthA(q); }
  int AccessCount(const Query& q) const override { return q.Weight(); }
  SymbolVector Decode(int m, std::span<const Query> queries,
                      std::span<const SymbolVector> answers) const override {
    return DecodeA(m, queries, answers);
  }

 private:
  int files_;
  int n_;
  Pmf strategy_;
};

// R = (n-1) / (1 - P_{Q_1}(0) + n - 1), where P_{Q_1}(0) = P_S(0).
inline double RateA(int files, int n, const Pmf& strategy) {
  Require(strategy.size() == IntPow(n, files - 1),
          "RateA: strategy must cover [0:n-1]^{M-1}");
  return (n - 1.0) / (1.0 - strategy[0] + n - 1.0);
}

// Closed-form tuple of the (M, 2) Scheme A with S_j i.i.d. Bernoulli(p),
// 0 <= p <= 1/2.
inline TradeoffPoint BernoulliTupleA(int files, double p) {
  Require(files >= 2, "BernoulliTupleA: need M >= 2");
  Require(p >= 0.0 && p <= 0.5, "BernoulliTupleA: p must lie in [0, 1/2]");
  const int M = files;
  const double q = 1.0 - p;
  using detail::Binomial;
  using detail::Monomial;

  // Probability of one weight-w query, and its two posterior atoms.
  auto zero_side = [&](int w) { return Monomial(M - w, q, M - w - 1, p, w); };
  auto one_side = [&](int w) { return Monomial(w, q, M - w, p, w - 1); };
  auto f = [&](int w) { return (zero_side(w) + one_side(w)) / M; };

  TradeoffPoint t;
  t.rate = 1.0 / (1.0 - std::pow(q, M - 1) + 1.0);
  double min_h = std::log2(static_cast<double>(M));
  double maxl = 0.0;
  for (int w = 0; w <= M; ++w) {
    const double fw = f(w);
    t.upload += Binomial(M, w) * EntropyTerm(fw);
    t.access += w * Binomial(M, w) * fw;
    if (fw > 0.0) {
      // (M - w) atoms of the first kind and w of the second.
      const double a = w < M ? Monomial(1.0, q, M - w - 1, p, w) / (M * fw) : 0;
      const double b = w > 0 ? Monomial(1.0, q, M - w, p, w - 1) / (M * fw) : 0;
      const double h = (M - w) * EntropyTerm(a) + w * EntropyTerm(b);
      min_h = std::min(min_h, h);
    }
    if (w % 2 == 1) maxl += Monomial(Binomial(M, w), q, M - w, p, w - 1);
  }
  t.rho_mi = std::max(t.upload / 2.0 - (M - 1) * BinaryEntropy(p), 0.0);
  t.rho_wil = std::max(std::log2(static_cast<double>(M)) - min_h, 0.0);
  t.rho_maxl = std::max(std::log2(maxl), 0.0);
  t.rho_epsp = p == 0.0 ? kInfinity : std::log(q / p);
  return t;
}

// Rate of the (M, 2) Scheme A with S_j i.i.d. Bernoulli((1 + e^rho)^{-1}),
// which meets an epsilon-privacy constraint rho (nats).
inline double EpsPrivacyParameter(double rho) {
  Require(rho >= 0.0, "EpsPrivacyParameter: rho must be >= 0");
  return 1.0 / (1.0 + std::exp(rho));
}

inline double EpsPrivacyRateA(int files, double rho) {
  Require(files >= 1, "EpsPrivacyRateA: need M >= 1");
  const double p = EpsPrivacyParameter(rho);
  return 1.0 / (1.0 - std::pow(1.0 - p, files - 1) + 1.0);
}

}  // namespace wpir

#endif  // WPIR_SCHEME_A_HPP_
