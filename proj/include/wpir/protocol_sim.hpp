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

#ifndef WPIR_PROTOCOL_SIM_HPP_
#define WPIR_PROTOCOL_SIM_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "wpir/core.hpp"
#include "wpir/metrics.hpp"
#include "wpir/rng.hpp"
#include "wpir/wire.hpp"
#include "wpir/wrappers.hpp"

namespace wpir {

struct Transcript {
  int m = 0;
  std::uint64_t s = 0;
  std::optional<int> t;  // time-share shift, 1-based
  std::vector<Query> queries;
  std::vector<SymbolVector> answers;
  SymbolVector decoded;
  std::int64_t downloaded_bits = 0;
  std::int64_t accessed_symbols = 0;
  std::int64_t uploaded_bits = 0;  // wire size of all query messages
};

// A failed round; carries everything seen so far.
class RoundError : public ProtocolError {
 public:
  RoundError(const std::string& what, Transcript transcript)
      : ProtocolError(what), transcript_(std::move(transcript)) {}
  const Transcript& transcript() const { return transcript_; }

 private:
  Transcript transcript_;
};

// A server: decodes a query message, answers from (query, database) alone and
// encodes the reply. Holds no mutable state.
class ServerHandler {
 public:
  ServerHandler(const Scheme& scheme, DatabaseView db, int index)
      : scheme_(scheme), db_(db), index_(index) {}

  Bytes Handle(std::span<const std::uint8_t> request) const {
    const auto msg = DecodeQuery(request, ContextOf(scheme_));
    if (msg.server != index_ || msg.scheme != scheme_.kind() ||
        msg.files != scheme_.files() || msg.servers != scheme_.servers()) {
      throw WireError("query header does not match this server");
    }
    const Query q = FromMessage(msg, scheme_.coding());
    return EncodeAnswer({scheme_.Answer(q, db_)});
  }

 private:
  const Scheme& scheme_;
  DatabaseView db_;
  int index_;
};

// One retrieval round. `seed` fixes the order in which servers are served;
// the transcript does not depend on it. With `verify`, a decoded file that
// differs from the database throws RoundError.
inline Transcript RunRound(const Scheme& scheme, DatabaseView db, int m,
                           std::uint64_t s, std::uint64_t seed = 0,
                           bool verify = true) {
  Require(db.files() == scheme.files() && db.beta() == scheme.beta(),
          "RunRound: database shape does not match the scheme");
  const int n = scheme.servers();
  Transcript tr;
  tr.m = m;
  tr.s = s;
  if (const auto* ts = dynamic_cast<const TimeshareScheme*>(&scheme)) {
    tr.t = ts->Shift(s);
  }
  tr.queries = scheme.Queries(m, s);
  tr.answers.assign(n, {});

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.Below(static_cast<std::uint64_t>(i) + 1)]);
  }

  const WireContext ctx = ContextOf(scheme);
  try {
    for (int l : order) {
      const Bytes request = EncodeQuery(ToMessage(scheme, l + 1, tr.queries[l]), ctx);
      tr.uploaded_bits += static_cast<std::int64_t>(request.size()) * 8;
      const Bytes reply = ServerHandler(scheme, db, l + 1).Handle(request);
      tr.answers[l] = DecodeAnswer(reply).payload;
      tr.downloaded_bits += static_cast<std::int64_t>(tr.answers[l].size());
      tr.accessed_symbols += scheme.AccessCount(tr.queries[l]);
    }
    tr.decoded = scheme.Decode(m, tr.queries, tr.answers);
  } catch (const RoundError&) {
    throw;
  } catch (const std::exception& e) {
    throw RoundError(e.what(), tr);
  }
  if (verify) {
    const auto file = db.file(m);
    if (!std::equal(file.begin(), file.end(), tr.decoded.begin(), tr.decoded.end())) {
      throw RoundError("decoded file differs from the database", tr);
    }
  }
  return tr;
}

inline Database RandomDatabase(int files, int beta, SplitMix64& rng) {
  SymbolVector bits(static_cast<std::size_t>(files) * beta);
  for (auto& b : bits) b = rng.Bit();
  return Database(files, beta, std::move(bits));
}

struct Counterexample {
  int m = 0;
  std::uint64_t s = 0;
  SymbolVector db;
  std::string what;
};

struct ExhaustiveReport {
  std::int64_t rounds = 0;
  std::int64_t failures = 0;
  std::vector<Counterexample> counterexamples;  // first few only
  double expected_download = 0.0;  // exact, weighted by P_S and uniform M
  double expected_access = 0.0;
  double rate = 0.0;
};

inline constexpr std::size_t kMaxCounterexamples = 8;

// Runs every (m, s) with P_S(s) > 0 against `db_samples` random databases.
inline ExhaustiveReport RunExhaustive(const Scheme& scheme, int db_samples,
                                      std::uint64_t seed,
                                      std::uint64_t cap = kDefaultEnumerationCap) {
  Require(db_samples >= 1, "RunExhaustive: need at least one database");
  const auto probs = scheme.strategy().probs();
  std::uint64_t positive = 0;
  for (double p : probs) positive += p > 0.0 ? 1 : 0;
  if (positive * scheme.files() * static_cast<std::uint64_t>(db_samples) > cap) {
    throw CapacityError("RunExhaustive: rounds exceed the enumeration cap");
  }

  SplitMix64 rng(seed);
  std::vector<Database> dbs;
  dbs.reserve(db_samples);
  for (int i = 0; i < db_samples; ++i) {
    dbs.push_back(RandomDatabase(scheme.files(), scheme.beta(), rng));
  }

  ExhaustiveReport rep;
  const double file_weight = 1.0 / scheme.files();
  for (int m = 1; m <= scheme.files(); ++m) {
    for (std::uint64_t s = 0; s < probs.size(); ++s) {
      if (probs[s] <= 0.0) continue;
      bool costed = false;
      for (const auto& db : dbs) {
        ++rep.rounds;
        try {
          const auto tr = RunRound(scheme, db, m, s, rng.Next());
          if (!costed) {
            rep.expected_download += file_weight * probs[s] * tr.downloaded_bits;
            rep.expected_access += file_weight * probs[s] * tr.accessed_symbols;
            costed = true;
          }
        } catch (const ProtocolError& e) {
          ++rep.failures;
          if (rep.counterexamples.size() < kMaxCounterexamples) {
            const auto flat = db.view().flat();
            rep.counterexamples.push_back(
                {m, s, SymbolVector(flat.begin(), flat.end()), e.what()});
          }
        }
      }
    }
  }
  rep.rate = scheme.beta() / rep.expected_download;
  return rep;
}

struct MonteCarloReport {
  std::int64_t trials = 0;
  double download_mean = 0.0;
  double download_stderr = 0.0;
  double access_mean = 0.0;
  double access_stderr = 0.0;
  TradeoffPoint estimate;  // plug-in leakages from empirical frequencies
};

// Samples (m, s) and accumulates answer lengths, access counts and query
// frequencies. Answers are not computed, so no database is needed.
inline MonteCarloReport RunMonteCarlo(const Scheme& scheme, std::int64_t trials,
                                      std::uint64_t seed) {
  Require(trials >= 1, "RunMonteCarlo: trials must be >= 1");
  const int M = scheme.files();
  const int n = scheme.servers();
  SplitMix64 rng(seed);
  const DiscreteSampler sampler(scheme.strategy().probs());

  std::vector<std::map<Query, std::vector<double>>> counts(n);
  std::vector<double> per_file(M, 0.0);
  double dl_sum = 0.0, dl_sq = 0.0, ac_sum = 0.0, ac_sq = 0.0;
  for (std::int64_t i = 0; i < trials; ++i) {
    const int m = static_cast<int>(rng.Below(M)) + 1;
    const std::uint64_t s = sampler(rng);
    const auto queries = scheme.Queries(m, s);
    double dl = 0.0, ac = 0.0;
    for (int l = 0; l < n; ++l) {
      dl += scheme.AnswerLength(queries[l]);
      ac += scheme.AccessCount(queries[l]);
      auto [it, inserted] = counts[l].try_emplace(queries[l]);
      if (inserted) it->second.assign(M, 0.0);
      it->second[m - 1] += 1.0;
    }
    per_file[m - 1] += 1.0;
    dl_sum += dl;
    dl_sq += dl * dl;
    ac_sum += ac;
    ac_sq += ac * ac;
  }

  MonteCarloReport rep;
  rep.trials = trials;
  const double T = static_cast<double>(trials);
  auto stderr_of = [&](double sum, double sq) {
    if (trials < 2) return 0.0;
    const double var = std::max(sq / T - (sum / T) * (sum / T), 0.0) * T / (T - 1);
    return std::sqrt(var / T);
  };
  rep.download_mean = dl_sum / T;
  rep.download_stderr = stderr_of(dl_sum, dl_sq);
  rep.access_mean = ac_sum / T;
  rep.access_stderr = stderr_of(ac_sum, ac_sq);

  // Rows of files never sampled stay zero and are dropped from the estimate.
  CondQueryDist d;
  d.files = M;
  d.servers.resize(n);
  for (int l = 0; l < n; ++l) {
    auto& server = d.servers[l];
    server.rows.assign(M, {});
    for (const auto& [q, c] : counts[l]) {
      server.support.push_back(q);
      for (int m = 0; m < M; ++m) {
        server.rows[m].push_back(per_file[m] > 0 ? c[m] / per_file[m] : 0.0);
      }
    }
  }
  rep.estimate.rate = scheme.beta() / rep.download_mean;
  rep.estimate.upload = UploadCost(d);
  rep.estimate.access = rep.access_mean;
  rep.estimate.rho_mi = MiLeakage(d);
  rep.estimate.rho_wil = WilLeakage(d);
  rep.estimate.rho_maxl = MaxlLeakage(d);
  rep.estimate.rho_epsp = EpspLeakage(d);
  return rep;
}

}  // namespace wpir

#endif  // WPIR_PROTOCOL_SIM_HPP_
