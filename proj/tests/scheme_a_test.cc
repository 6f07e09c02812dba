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

#include "wpir/scheme_a.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "wpir/metrics.hpp"
#include "wpir/rng.hpp"

namespace wpir {
namespace {

using Entries = std::vector<std::uint16_t>;

TEST(QueriesATest, TwoFilesTwoServers) {
  // s = (1): file 1 gets (1, 1) at server 1 and (0, 1) at server 2.
  const Entries s{1};
  auto q = QueriesA(2, 2, 1, s);
  EXPECT_EQ(q[0].entries, (Entries{1, 1}));
  EXPECT_EQ(q[1].entries, (Entries{0, 1}));
  q = QueriesA(2, 2, 2, s);
  EXPECT_EQ(q[0].entries, (Entries{1, 1}));
  EXPECT_EQ(q[1].entries, (Entries{1, 0}));
}

TEST(QueriesATest, AllZeroStrategyGivesOneEmptyQuery) {
  const Entries s{0, 0};
  const auto q = QueriesA(3, 3, 2, s);
  int zeros = 0;
  for (const auto& x : q) zeros += x.IsZero() ? 1 : 0;
  EXPECT_EQ(zeros, 1);
  EXPECT_EQ(AnswerLengthA(q[0]), 0);
  EXPECT_EQ(AnswerLengthA(q[1]), 1);
}

TEST(QueriesATest, InterferenceIsSharedAcrossServers) {
  // Entries outside position m are the same at every server.
  const Entries s{2, 1, 0};
  const auto q = QueriesA(4, 3, 3, s);
  for (const auto& x : q) {
    EXPECT_EQ(x.entries[0], 2);
    EXPECT_EQ(x.entries[1], 1);
    EXPECT_EQ(x.entries[3], 0);
  }
  EXPECT_NE(q[0].entries[2], q[1].entries[2]);
  EXPECT_NE(q[1].entries[2], q[2].entries[2]);
}

TEST(QueriesATest, RejectsBadInput) {
  EXPECT_THROW(QueriesA(2, 2, 3, Entries{0}), std::invalid_argument);
  EXPECT_THROW(QueriesA(2, 2, 1, Entries{0, 0}), std::invalid_argument);
  EXPECT_THROW(QueriesA(2, 2, 1, Entries{2}), std::invalid_argument);
}

TEST(SchemeATest, DecodesEveryFileForEveryStrategy) {
  SplitMix64 rng(7);
  for (int M = 1; M <= 4; ++M) {
    for (int n = 2; n <= 3; ++n) {
      const SchemeA scheme(M, n, UniformStrategyA(M, n));
      for (int trial = 0; trial < 5; ++trial) {
        SymbolVector bits(static_cast<std::size_t>(M) * (n - 1));
        for (auto& b : bits) b = rng.Bit();
        const Database db(M, n - 1, bits);
        for (int m = 1; m <= M; ++m) {
          for (std::uint64_t s = 0; s < scheme.strategy().size(); ++s) {
            const auto qs = scheme.Queries(m, s);
            std::vector<SymbolVector> answers;
            for (const auto& q : qs) answers.push_back(scheme.Answer(q, db.view()));
            EXPECT_EQ(scheme.Decode(m, qs, answers), db.File(m))
                << scheme.name() << " m=" << m << " s=" << s;
          }
        }
      }
    }
  }
}

TEST(SchemeATest, DecodeRejectsInconsistentRound) {
  const SchemeA scheme(2, 2, UniformStrategyA(2, 2));
  const auto qs = scheme.Queries(1, 1);
  std::vector<SymbolVector> answers = {{0}};
  EXPECT_THROW(scheme.Decode(1, qs, answers), ProtocolError);
}

TEST(SchemeATest, UniformStrategyReachesCapacityWithoutLeakage) {
  for (int M = 2; M <= 4; ++M) {
    for (int n = 2; n <= 3; ++n) {
      const auto t = EvaluateTradeoff(SchemeA(M, n, UniformStrategyA(M, n)));
      EXPECT_NEAR(t.rate, PirCapacity(M, n), 1e-12);
      EXPECT_NEAR(t.rho_mi, 0.0, 1e-12);
      EXPECT_NEAR(t.rho_wil, 0.0, 1e-12);
      EXPECT_NEAR(t.rho_maxl, 0.0, 1e-12);
      EXPECT_NEAR(t.rho_epsp, 0.0, 1e-12);
    }
  }
}

TEST(SchemeATest, ThreeServerReferenceTuples) {
  auto t = EvaluateTradeoff(SchemeA(3, 3, UniformStrategyA(3, 3)));
  EXPECT_NEAR(t.rate, 9.0 / 13.0, 1e-12);
  EXPECT_NEAR(t.upload, 9.50977500433, 1e-9);
  EXPECT_NEAR(t.access, 6.0, 1e-12);

  t = EvaluateTradeoff(SchemeA(3, 3, IidStrategy(2, {0.7, 0.3, 0.0})));
  EXPECT_NEAR(t.rate, 0.796812749004, 1e-11);
  EXPECT_NEAR(t.upload, 7.03437230902, 1e-9);
  EXPECT_NEAR(t.access, 3.8, 1e-12);
  EXPECT_NEAR(t.rho_mi, 0.582208971213, 1e-11);
  EXPECT_NEAR(t.rho_wil, 1.58496250072, 1e-10);
  EXPECT_NEAR(t.rho_maxl, 1.07038932789, 1e-10);
  EXPECT_TRUE(std::isinf(t.rho_epsp));
}

TEST(RateATest, MatchesEnumeration) {
  for (double p : {0.0, 0.2, 0.5}) {
    const auto strategy = BernoulliStrategyA(4, p);
    EXPECT_NEAR(RateA(4, 2, strategy), Rate(SchemeA(4, 2, strategy)), 1e-12);
  }
}

TEST(BernoulliTupleATest, TwoFileCurve) {
  for (double p = 0.0; p <= 0.5; p += 0.05) {
    const auto t = BernoulliTupleA(2, p);
    EXPECT_NEAR(t.rate, 1.0 / (1.0 + p), 1e-12);
    EXPECT_NEAR(t.rho_mi, (1.0 - BinaryEntropy(p)) / 2.0, 1e-12);
    EXPECT_NEAR(t.rho_wil, 1.0 - BinaryEntropy(p), 1e-12);
    EXPECT_NEAR(t.rho_maxl, std::log2(2.0 * (1.0 - p)), 1e-12);
  }
}

TEST(BernoulliTupleATest, ReferenceValues) {
  const auto t = BernoulliTupleA(4, 0.1);
  EXPECT_NEAR(t.rate, 0.786782061369, 1e-11);
  EXPECT_NEAR(t.upload, 3.73461856384, 1e-9);
  EXPECT_NEAR(t.access, 1.6, 1e-12);
  EXPECT_NEAR(t.rho_mi, 0.460322501151, 1e-11);
  EXPECT_NEAR(t.rho_wil, 0.792481250361, 1e-11);
  EXPECT_NEAR(t.rho_maxl, 1.5616927214, 1e-9);
  EXPECT_NEAR(t.rho_epsp, 2.19722457734, 1e-10);
}

TEST(BernoulliTupleATest, MatchesOracleUpToSixFiles) {
  for (int M = 2; M <= 6; ++M) {
    for (double p : {0.0, 0.05, 0.25, 0.4, 0.5}) {
      const auto t = BernoulliTupleA(M, p);
      const auto o = oracle::BruteForce(SchemeA(M, 2, BernoulliStrategyA(M, p)));
      EXPECT_NEAR(t.rate, o.rate, 1e-9) << M << " " << p;
      EXPECT_NEAR(t.upload, o.upload, 1e-9) << M << " " << p;
      EXPECT_NEAR(t.access, o.access, 1e-9) << M << " " << p;
      EXPECT_NEAR(t.rho_mi, o.mi, 1e-9) << M << " " << p;
      EXPECT_NEAR(t.rho_wil, o.wil, 1e-9) << M << " " << p;
      EXPECT_NEAR(t.rho_maxl, o.maxl, 1e-9) << M << " " << p;
      EXPECT_TRUE(oracle::Close(t.rho_epsp, o.epsp, 1e-9)) << M << " " << p;
    }
  }
}

TEST(BernoulliTupleATest, LargeFileCountIsFinite) {
  const auto t = BernoulliTupleA(32, 0.2);
  EXPECT_GT(t.rate, 0.5);
  EXPECT_LE(t.rate, 1.0);
  EXPECT_LE(t.rho_mi, t.rho_wil + 1e-12);
  EXPECT_LE(t.rho_wil, 5.0 + 1e-12);
  EXPECT_TRUE(std::isfinite(t.upload));
}

TEST(BernoulliTupleATest, RejectsBadParameters) {
  EXPECT_THROW(BernoulliTupleA(1, 0.2), std::invalid_argument);
  EXPECT_THROW(BernoulliTupleA(3, 0.6), std::invalid_argument);
}

TEST(EpsPrivacyTest, RateMeetsConstraint) {
  for (double rho : {0.0, 0.5, 1.0, 3.0}) {
    const double p = EpsPrivacyParameter(rho);
    const auto t = EvaluateTradeoff(SchemeA(3, 2, BernoulliStrategyA(3, p)));
    EXPECT_NEAR(EpsPrivacyRateA(3, rho), t.rate, 1e-12);
    EXPECT_LE(t.rho_epsp, rho + 1e-12);
  }
  EXPECT_NEAR(EpsPrivacyRateA(3, std::log(3.0)), 16.0 / 23.0, 1e-12);
}

}  // namespace
}  // namespace wpir
