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

#ifndef WPIR_CORE_HPP_
#define WPIR_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpir/entropy.hpp"

namespace wpir {

// ---------------------------------------------------------------------------
// Errors

// A retrieval round could not be decoded or is internally inconsistent.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured state cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Symbols and databases

using Symbol = std::uint8_t;  // an element of GF(2)
using SymbolVector = std::vector<Symbol>;

// Read-only view of `files` consecutive files of `beta` bits each.
class DatabaseView {
 public:
  DatabaseView(int files, int beta, std::span<const Symbol> bits)
      : files_(files), beta_(beta), bits_(bits) {}

  int files() const { return files_; }
  int beta() const { return beta_; }

  // Symbol `k` (1-based, 1..beta) of file `m` (1-based).
  Symbol at(int m, int k) const {
    return bits_[static_cast<std::size_t>(m - 1) * beta_ + (k - 1)];
  }

  std::span<const Symbol> file(int m) const {
    return bits_.subspan(static_cast<std::size_t>(m - 1) * beta_, beta_);
  }

  // All bits in the order (X^(1)_1, ..., X^(1)_beta, X^(2)_1, ...).
  std::span<const Symbol> flat() const { return bits_; }

  // Files first, ..., first + count - 1 (1-based) as a new view.
  DatabaseView Slice(int first, int count) const {
    if (first < 1 || count < 0 || first - 1 + count > files_) {
      throw std::out_of_range("DatabaseView::Slice: range outside database");
    }
    return DatabaseView(
        count, beta_,
        bits_.subspan(static_cast<std::size_t>(first - 1) * beta_,
                      static_cast<std::size_t>(count) * beta_));
  }

 private:
  int files_;
  int beta_;
  std::span<const Symbol> bits_;
};

// M files of beta symbols over GF(2), stored row-major.
class Database {
 public:
  Database(int files, int beta) : files_(files), beta_(beta) {
    if (files < 1 || beta < 1) {
      throw std::invalid_argument("Database: need files >= 1 and beta >= 1");
    }
    bits_.assign(static_cast<std::size_t>(files) * beta, 0);
  }

  Database(int files, int beta, SymbolVector bits) : Database(files, beta) {
    if (bits.size() != bits_.size()) {
      throw std::invalid_argument("Database: expected M*beta symbols");
    }
    for (Symbol b : bits) {
      if (b > 1) throw std::invalid_argument("Database: symbols must be 0/1");
    }
    bits_ = std::move(bits);
  }

  int files() const { return files_; }
  int beta() const { return beta_; }
  Symbol at(int m, int k) const { return view().at(m, k); }
  DatabaseView view() const { return DatabaseView(files_, beta_, bits_); }
  operator DatabaseView() const { return view(); }  // NOLINT

  SymbolVector File(int m) const {
    auto f = view().file(m);
    return SymbolVector(f.begin(), f.end());
  }

 private:
  int files_;
  int beta_;
  SymbolVector bits_;
};

// ---------------------------------------------------------------------------
// Queries

// A query sent to one server. Entries lie in [0, alphabet - 1]. Partition
// wrappers attach the revealed partition index. Ordered lexicographically so
// query supports are canonical.
struct Query {
  std::vector<std::uint16_t> entries;
  std::uint16_t alphabet = 2;
  std::optional<std::uint16_t> partition;

  auto operator<=>(const Query&) const = default;
  bool operator==(const Query&) const = default;

  bool IsZero() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](std::uint16_t e) { return e == 0; });
  }

  int Weight() const {
    return static_cast<int>(std::count_if(
        entries.begin(), entries.end(), [](std::uint16_t e) { return e != 0; }));
  }
};

inline std::string ToString(const Query& q) {
  std::string out = "(";
  for (std::size_t i = 0; i < q.entries.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(q.entries[i]);
  }
  out += ")";
  if (q.partition) out += "@" + std::to_string(*q.partition);
  return out;
}

// ---------------------------------------------------------------------------
// Mixed-radix helpers for strategy alphabets [0:radix-1]^length.

inline std::uint64_t IntPow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw CapacityError("IntPow: overflow");
    }
    r *= base;
  }
  return r;
}

// Digit j (0-based) is the coefficient of radix^j.
inline std::vector<std::uint16_t> DecodeRadix(std::uint64_t index, int radix,
                                              int length) {
  std::vector<std::uint16_t> digits(static_cast<std::size_t>(length));
  for (int j = 0; j < length; ++j) {
    digits[j] = static_cast<std::uint16_t>(index % radix);
    index /= radix;
  }
  return digits;
}

inline std::uint64_t EncodeRadix(std::span<const std::uint16_t> digits,
                                 int radix) {
  std::uint64_t index = 0;
  for (std::size_t j = digits.size(); j-- > 0;) {
    index = index * radix + digits[j];
  }
  return index;
}

// PIR capacity (1 + 1/n + ... + 1/n^{M-1})^{-1}.
inline double PirCapacity(int files, int servers) {
  double denom = 0.0;
  double term = 1.0;
  for (int m = 0; m < files; ++m) {
    denom += term;
    term /= servers;
  }
  return 1.0 / denom;
}

// ---------------------------------------------------------------------------
// Conditional query distributions

// P(Q_l = q | M = m) for one server: rows[m-1][k] is the probability of
// support[k] given file m.
struct ServerQueryDist {
  std::vector<Query> support;
  std::vector<std::vector<double>> rows;

  std::size_t files() const { return rows.size(); }

  // Marginal P(Q_l = q) under the file distribution `file_probs`.
  std::vector<double> Marginal(std::span<const double> file_probs) const {
    if (file_probs.size() != rows.size()) {
      throw std::invalid_argument("Marginal: file distribution size mismatch");
    }
    std::vector<double> out(support.size(), 0.0);
    for (std::size_t m = 0; m < rows.size(); ++m) {
      for (std::size_t k = 0; k < support.size(); ++k) {
        out[k] += file_probs[m] * rows[m][k];
      }
    }
    return out;
  }
};

// Per-server conditional query distributions of an (M, n) scheme.
struct CondQueryDist {
  int files = 0;
  std::vector<ServerQueryDist> servers;

  int server_count() const { return static_cast<int>(servers.size()); }

  // Throws std::invalid_argument if a row is not a probability vector or the
  // support contains duplicates.
  void Validate() const {
    for (const auto& s : servers) {
      if (static_cast<int>(s.rows.size()) != files) {
        throw std::invalid_argument("CondQueryDist: expected M rows");
      }
      for (const auto& row : s.rows) {
        if (row.size() != s.support.size()) {
          throw std::invalid_argument("CondQueryDist: ragged row");
        }
        double total = 0.0;
        for (double p : row) {
          if (!(p >= 0.0)) {
            throw std::invalid_argument("CondQueryDist: negative probability");
          }
          total += p;
        }
        if (std::abs(total - 1.0) > kPmfTolerance) {
          throw std::invalid_argument("CondQueryDist: row does not sum to 1");
        }
      }
      for (std::size_t k = 1; k < s.support.size(); ++k) {
        if (!(s.support[k - 1] < s.support[k])) {
          throw std::invalid_argument(
              "CondQueryDist: support must be strictly increasing");
        }
      }
    }
  }
};

// Marginal query distribution at every server under P_M = `file_pmf`.
inline std::vector<Pmf> MarginalQueryDist(const CondQueryDist& d,
                                          const Pmf& file_pmf) {
  if (static_cast<int>(file_pmf.size()) != d.files) {
    throw std::invalid_argument("MarginalQueryDist: P_M must have M entries");
  }
  std::vector<Pmf> out;
  out.reserve(d.servers.size());
  for (const auto& s : d.servers) out.emplace_back(s.Marginal(file_pmf.probs()));
  return out;
}

// ---------------------------------------------------------------------------
// Achievable tuples

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Rate, upload cost (bits), access complexity (symbols) and the four leakage
// metrics. rho_epsp is in nats and may be +infinity.
struct TradeoffPoint {
  double rate = 0.0;
  double upload = 0.0;
  double access = 0.0;
  double rho_mi = 0.0;
  double rho_wil = 0.0;
  double rho_maxl = 0.0;
  double rho_epsp = 0.0;
};

// ---------------------------------------------------------------------------
// Scheme contract

enum class SchemeKind : std::uint8_t {
  kSchemeA = 1,
  kSchemeB = 2,
  kPartition = 3,
  kTimeshare = 4,
};

// How a query's entries are laid out on the wire.
enum class PayloadCoding : std::uint8_t { kEntries, kPackedBits };

// An (M, n) information retrieval scheme: a strategy distribution plus the
// query, answer, length, access and decoding functions. Implementations are
// immutable and thread-safe.
//
// Retrievability: Decode(m, Queries(m, s), answers) returns file m for every
// m, every s with positive probability and every database. Queries never
// depend on the database.
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual int files() const = 0;
  virtual int servers() const = 0;
  virtual int beta() const = 0;
  virtual const Pmf& strategy() const = 0;
  virtual SchemeKind kind() const = 0;
  virtual PayloadCoding coding() const = 0;
  // True when queries carry a partition index on the wire.
  virtual bool partitioned() const { return false; }
  virtual std::string name() const = 0;

  // Queries for file m (1-based) under strategy index s; one per server.
  virtual std::vector<Query> Queries(int m, std::uint64_t s) const = 0;

  // Answer of a server to query q. Depends only on (q, db).
  virtual SymbolVector Answer(const Query& q, DatabaseView db) const = 0;

  virtual int AnswerLength(const Query& q) const = 0;
  virtual int AccessCount(const Query& q) const = 0;

  // Recovers file m from one round. Throws ProtocolError on an inconsistent
  // transcript. Implementations must not rely on server order, so the
  // time-sharing wrapper can reuse them on permuted rounds.
  virtual SymbolVector Decode(int m, std::span<const Query> queries,
                              std::span<const SymbolVector> answers) const = 0;
};

using SchemePtr = std::shared_ptr<const Scheme>;

// ---------------------------------------------------------------------------
// Small validation helpers shared by the scheme headers.

inline void Require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace wpir

#endif  // WPIR_CORE_HPP_
