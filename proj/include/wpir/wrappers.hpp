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

#ifndef WPIR_WRAPPERS_HPP_
#define WPIR_WRAPPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wpir/core.hpp"
#include "wpir/scheme_a.hpp"

namespace wpir {

// Files are split into eta contiguous groups of M/eta; group j holds files
// (j-1)M/eta + 1 .. jM/eta.
inline int PartitionOf(int m, int group_size) { return (m - 1) / group_size + 1; }

// ---------------------------------------------------------------------------
// Partition wrapper: run `sub` on the group holding m and tag every query
// with the group index.

class PartitionScheme final : public Scheme {
 public:
  PartitionScheme(SchemePtr sub, int eta) : sub_(std::move(sub)), eta_(eta) {
    Require(sub_ != nullptr, "PartitionScheme: null subscheme");
    Require(eta >= 1 && eta <= 65535, "PartitionScheme: eta out of range");
  }

  int files() const override { return sub_->files() * eta_; }
  int servers() const override { return sub_->servers(); }
  int beta() const override { return sub_->beta(); }
  const Pmf& strategy() const override { return sub_->strategy(); }
  SchemeKind kind() const override { return SchemeKind::kPartition; }
  PayloadCoding coding() const override { return sub_->coding(); }
  bool partitioned() const override { return true; }
  std::string name() const override {
    return "partition(" + sub_->name() + ",eta=" + std::to_string(eta_) + ")";
  }
  int eta() const { return eta_; }
  const Scheme& sub() const { return *sub_; }

  std::vector<Query> Queries(int m, std::uint64_t s) const override {
    Require(m >= 1 && m <= files(), "PartitionScheme: m out of range");
    const int group = sub_->files();
    const int j = PartitionOf(m, group);
    auto out = sub_->Queries(m - (j - 1) * group, s);
    for (auto& q : out) q.partition = static_cast<std::uint16_t>(j);
    return out;
  }

  SymbolVector Answer(const Query& q, DatabaseView db) const override {
    if (!q.partition || *q.partition < 1 || *q.partition > eta_) {
      throw ProtocolError("PartitionScheme: query lacks a valid partition");
    }
    const int group = sub_->files();
    return sub_->Answer(Strip(q), db.Slice((*q.partition - 1) * group + 1, group));
  }

  int AnswerLength(const Query& q) const override {
    return sub_->AnswerLength(Strip(q));
  }
  int AccessCount(const Query& q) const override {
    return sub_->AccessCount(Strip(q));
  }

  SymbolVector Decode(int m, std::span<const Query> queries,
                      std::span<const SymbolVector> answers) const override {
    const int group = sub_->files();
    const int j = PartitionOf(m, group);
    std::vector<Query> inner;
    inner.reserve(queries.size());
    for (const auto& q : queries) {
      if (q.partition != static_cast<std::uint16_t>(j)) {
        throw ProtocolError("PartitionScheme: query from another partition");
      }
      inner.push_back(Strip(q));
    }
    return sub_->Decode(m - (j - 1) * group, inner, answers);
  }

 private:
  static Query Strip(Query q) {
    q.partition.reset();
    return q;
  }

  SchemePtr sub_;
  int eta_;
};

inline SchemePtr PartitionWrap(SchemePtr sub, int eta) {
  return std::make_shared<PartitionScheme>(std::move(sub), eta);
}

// Tuple of the partition scheme built from a subscheme with tuple `sub`.
// Epsilon-privacy becomes infinite once the partition index is revealed.
inline TradeoffPoint PartitionTuple(const TradeoffPoint& sub, int n, int eta) {
  Require(eta >= 1, "PartitionTuple: eta must be >= 1");
  const double bits = std::log2(static_cast<double>(eta));
  TradeoffPoint t = sub;
  t.upload += n * bits;
  t.rho_mi += bits;
  t.rho_wil += bits;
  t.rho_maxl += bits;
  if (eta > 1) t.rho_epsp = kInfinity;
  return t;
}

// ---------------------------------------------------------------------------
// Partition Scheme A: Scheme A on the group of m, embedded in a length-M
// query that is zero outside the group. The all-zero query is shared by all
// groups and carries no partition tag.

class PartitionSchemeA final : public Scheme {
 public:
  PartitionSchemeA(int files, int n, int eta)
      : files_(files), n_(n), eta_(eta) {
    Require(files >= 2 && n >= 2 && n <= 256, "PartitionSchemeA: bad (M, n)");
    Require(eta >= 1 && eta <= files - 1, "PartitionSchemeA: need eta in [M-1]");
    Require(files % eta == 0, "PartitionSchemeA: eta must divide M");
    group_ = files / eta;
    strategy_ = UniformStrategyA(group_, n);
  }

  int files() const override { return files_; }
  int servers() const override { return n_; }
  int beta() const override { return n_ - 1; }
  const Pmf& strategy() const override { return strategy_; }
  SchemeKind kind() const override { return SchemeKind::kSchemeA; }
  PayloadCoding coding() const override { return PayloadCoding::kEntries; }
  std::string name() const override {
    return "partition-scheme-a(" + std::to_string(files_) + "," +
           std::to_string(n_) + ",eta=" + std::to_string(eta_) + ")";
  }
  int eta() const { return eta_; }

  std::vector<Query> Queries(int m, std::uint64_t s) const override {
    Require(m >= 1 && m <= files_, "PartitionSchemeA: m out of range");
    Require(s < strategy_.size(), "PartitionSchemeA: strategy index out of range");
    const int j = PartitionOf(m, group_);
    const auto local = QueriesA(group_, n_, m - (j - 1) * group_,
                                DecodeRadix(s, n_, group_ - 1));
    std::vector<Query> out(n_);
    for (int l = 0; l < n_; ++l) {
      out[l].alphabet = static_cast<std::uint16_t>(n_);
      out[l].entries.assign(files_, 0);
      std::copy(local[l].entries.begin(), local[l].entries.end(),
                out[l].entries.begin() + (j - 1) * group_);
    }
    return out;
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
  int eta_;
  int group_ = 1;
  Pmf strategy_;
};

// Closed-form tuple of the partition Scheme A. The all-zero query is shared,
// so epsilon-privacy is infinite whenever eta > 1.
inline TradeoffPoint PartitionTupleA(int files, int n, int eta) {
  Require(files >= 2 && n >= 2, "PartitionTupleA: bad (M, n)");
  Require(eta >= 1 && eta <= files - 1 && files % eta == 0,
          "PartitionTupleA: need eta in [M-1] dividing M");
  const int group = files / eta;
  const double log_eta = std::log2(static_cast<double>(eta));
  const double nn = n;
  TradeoffPoint t;
  t.rate = PirCapacity(group, n);
  t.upload = nn * ((group - 1) * std::log2(nn) + log_eta) -
             log_eta / std::pow(nn, group - 1);
  t.access = (n - 1.0) * group;
  t.rho_mi = log_eta - log_eta / std::pow(nn, group);
  t.rho_wil = log_eta;
  t.rho_maxl = log_eta;
  t.rho_epsp = eta > 1 ? kInfinity : 0.0;
  return t;
}

// ---------------------------------------------------------------------------
// Time-sharing wrapper: T uniform on [n]; server l receives the base query of
// server ((l - 1 + T - 1) mod n) + 1. Strategy index = s * n + (T - 1).

class TimeshareScheme final : public Scheme {
 public:
  explicit TimeshareScheme(SchemePtr base) : base_(std::move(base)) {
    Require(base_ != nullptr, "TimeshareScheme: null base");
    const int n = base_->servers();
    const auto probs = base_->strategy().probs();
    std::vector<double> joint(probs.size() * n);
    for (std::size_t s = 0; s < probs.size(); ++s) {
      for (int t = 0; t < n; ++t) joint[s * n + t] = probs[s] / n;
    }
    strategy_ = Pmf(std::move(joint));
  }

  int files() const override { return base_->files(); }
  int servers() const override { return base_->servers(); }
  int beta() const override { return base_->beta(); }
  const Pmf& strategy() const override { return strategy_; }
  SchemeKind kind() const override { return SchemeKind::kTimeshare; }
  PayloadCoding coding() const override { return base_->coding(); }
  bool partitioned() const override { return base_->partitioned(); }
  std::string name() const override { return "timeshare(" + base_->name() + ")"; }
  const Scheme& base() const { return *base_; }

  // 1-based shift T of strategy index `index`.
  int Shift(std::uint64_t index) const {
    return static_cast<int>(index % servers()) + 1;
  }

  std::vector<Query> Queries(int m, std::uint64_t index) const override {
    Require(index < strategy_.size(), "TimeshareScheme: strategy index out of range");
    const int n = servers();
    const auto base_queries = base_->Queries(m, index / n);
    const int t = Shift(index);
    std::vector<Query> out(n);
    for (int l = 1; l <= n; ++l) {
      out[l - 1] = base_queries[(l - 1 + t - 1) % n];
    }
    return out;
  }

  SymbolVector Answer(const Query& q, DatabaseView db) const override {
    return base_->Answer(q, db);
  }
  int AnswerLength(const Query& q) const override { return base_->AnswerLength(q); }
  int AccessCount(const Query& q) const override { return base_->AccessCount(q); }
  SymbolVector Decode(int m, std::span<const Query> queries,
                      std::span<const SymbolVector> answers) const override {
    return base_->Decode(m, queries, answers);
  }

 private:
  SchemePtr base_;
  Pmf strategy_;
};

inline SchemePtr TimeshareWrap(SchemePtr base) {
  return std::make_shared<TimeshareScheme>(std::move(base));
}

// Per-server conditional distribution of time-shared Scheme A with strategy
// pmf z over [0:n-1]^{M-1}: support [0:n-1]^M and P(q | m) = z_{q without
// position m} / n. Every server sees the same table.
inline ServerQueryDist TimeshareServerDistA(int files, int n, const Pmf& z) {
  Require(files >= 1 && n >= 2, "TimeshareDistA: bad (M, n)");
  Require(z.size() == IntPow(n, files - 1),
          "TimeshareDistA: z must cover [0:n-1]^{M-1}");
  const std::uint64_t size = IntPow(n, files);
  ServerQueryDist out;
  out.support.resize(size);
  out.rows.assign(files, std::vector<double>(size, 0.0));
  std::vector<std::uint16_t> rest(files - 1);
  for (std::uint64_t k = 0; k < size; ++k) {
    // Lexicographic order with entry 1 most significant matches Query's <=>.
    Query& q = out.support[k];
    q.alphabet = static_cast<std::uint16_t>(n);
    q.entries.resize(files);
    std::uint64_t v = k;
    for (int i = files - 1; i >= 0; --i) {
      q.entries[i] = static_cast<std::uint16_t>(v % n);
      v /= n;
    }
    for (int m = 1; m <= files; ++m) {
      std::copy(q.entries.begin(), q.entries.begin() + (m - 1), rest.begin());
      std::copy(q.entries.begin() + m, q.entries.end(), rest.begin() + (m - 1));
      out.rows[m - 1][k] = z[EncodeRadix(rest, n)] / n;
    }
  }
  return out;
}

inline CondQueryDist TimeshareDistA(int files, int n, const Pmf& z) {
  CondQueryDist d;
  d.files = files;
  d.servers.assign(n, TimeshareServerDistA(files, n, z));
  return d;
}

}  // namespace wpir

#endif  // WPIR_WRAPPERS_HPP_
