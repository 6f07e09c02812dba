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

#include "wpir/wrappers.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "wpir/metrics.hpp"
#include "wpir/rng.hpp"
#include "wpir/scheme_a.hpp"
#include "wpir/scheme_b.hpp"

namespace wpir {
namespace {

void ExpectTupleNear(const TradeoffPoint& a, const TradeoffPoint& b, double tol) {
  EXPECT_NEAR(a.rate, b.rate, tol);
  EXPECT_NEAR(a.upload, b.upload, tol);
  EXPECT_NEAR(a.access, b.access, tol);
  EXPECT_NEAR(a.rho_mi, b.rho_mi, tol);
  EXPECT_NEAR(a.rho_wil, b.rho_wil, tol);
  EXPECT_NEAR(a.rho_maxl, b.rho_maxl, tol);
  EXPECT_TRUE(oracle::Close(a.rho_epsp, b.rho_epsp, tol))
      << a.rho_epsp << " vs " << b.rho_epsp;
}

Pmf RandomPmf(std::size_t size, SplitMix64& rng) {
  std::vector<double> v(size);
  double total = 0.0;
  for (auto& x : v) total += x = rng.NextDouble() + 1e-3;
  for (auto& x : v) x /= total;
  return Pmf(v);
}

TEST(PartitionOfTest, GroupsAreContiguous) {
  EXPECT_EQ(PartitionOf(1, 3), 1);
  EXPECT_EQ(PartitionOf(3, 3), 1);
  EXPECT_EQ(PartitionOf(4, 3), 2);
  EXPECT_EQ(PartitionOf(9, 3), 3);
}

TEST(PartitionWrapTest, TagsQueriesWithGroup) {
  const auto wrapped =
      PartitionWrap(std::make_shared<SchemeA>(2, 2, UniformStrategyA(2, 2)), 3);
  EXPECT_EQ(wrapped->files(), 6);
  EXPECT_TRUE(wrapped->partitioned());
  for (const auto& q : wrapped->Queries(5, 1)) {
    ASSERT_TRUE(q.partition.has_value());
    EXPECT_EQ(*q.partition, 3);
    EXPECT_EQ(q.entries.size(), 2u);
  }
}

TEST(PartitionWrapTest, AnswersFromTheTaggedSlice) {
  const auto wrapped =
      PartitionWrap(std::make_shared<SchemeA>(2, 2, UniformStrategyA(2, 2)), 2);
  const Database db(4, 1, {0, 0, 1, 0});
  Query q{{1, 0}, 2, std::nullopt};
  EXPECT_THROW(wrapped->Answer(q, db.view()), ProtocolError);
  q.partition = 2;
  EXPECT_EQ(wrapped->Answer(q, db.view()), (SymbolVector{1}));
  q.partition = 1;
  EXPECT_EQ(wrapped->Answer(q, db.view()), (SymbolVector{0}));
  q.partition = 3;
  EXPECT_THROW(wrapped->Answer(q, db.view()), ProtocolError);
}

TEST(PartitionWrapTest, DecodeRejectsMixedPartitions) {
  const auto wrapped =
      PartitionWrap(std::make_shared<SchemeA>(2, 2, UniformStrategyA(2, 2)), 2);
  auto qs = wrapped->Queries(1, 1);
  std::vector<SymbolVector> answers = {{0}, {1}};
  qs[1].partition = 2;
  EXPECT_THROW(wrapped->Decode(1, qs, answers), ProtocolError);
}

TEST(PartitionWrapTest, DecodesEveryFile) {
  SplitMix64 rng(3);
  const auto wrapped =
      PartitionWrap(std::make_shared<SchemeB>(2, 3, UniformStrategyB(2, 3)), 2);
  SymbolVector bits(8);
  for (auto& b : bits) b = rng.Bit();
  const Database db(4, 2, bits);
  for (int m = 1; m <= 4; ++m) {
    for (std::uint64_t s = 0; s < wrapped->strategy().size(); ++s) {
      const auto qs = wrapped->Queries(m, s);
      std::vector<SymbolVector> answers;
      for (const auto& q : qs) answers.push_back(wrapped->Answer(q, db.view()));
      EXPECT_EQ(wrapped->Decode(m, qs, answers), db.File(m));
    }
  }
}

TEST(PartitionTupleTest, IdentitiesHoldForSchemeAAndB) {
  SplitMix64 rng(5);
  std::vector<SchemePtr> subs = {
      std::make_shared<SchemeA>(2, 2, BernoulliStrategyA(2, 0.3)),
      std::make_shared<SchemeA>(3, 2, BernoulliStrategyA(3, 0.1)),
      std::make_shared<SchemeA>(2, 3, RandomPmf(3, rng)),
      std::make_shared<SchemeB>(2, 2, BernoulliStrategyB(2, 2, 0.2)),
      std::make_shared<SchemeB>(1, 3, RandomPmf(4, rng)),
  };
  for (const auto& sub : subs) {
    const auto base = EvaluateTradeoff(*sub);
    for (int eta : {1, 2, 3}) {
      const auto wrapped = EvaluateTradeoff(*PartitionWrap(sub, eta));
      ExpectTupleNear(wrapped, PartitionTuple(base, sub->servers(), eta), 1e-9);
      const double shift = std::log2(static_cast<double>(eta));
      EXPECT_NEAR(wrapped.upload - base.upload, sub->servers() * shift, 1e-9);
      EXPECT_NEAR(wrapped.rho_mi - base.rho_mi, shift, 1e-9);
      EXPECT_NEAR(wrapped.rho_wil - base.rho_wil, shift, 1e-9);
      EXPECT_NEAR(wrapped.rho_maxl - base.rho_maxl, shift, 1e-9);
      EXPECT_NEAR(wrapped.rate, base.rate, 1e-12);
      EXPECT_NEAR(wrapped.access, base.access, 1e-12);
    }
  }
}

TEST(PartitionSchemeATest, EmbedsGroupQueryWithoutTag) {
  const PartitionSchemeA scheme(4, 2, 2);
  const auto qs = scheme.Queries(3, 1);
  for (const auto& q : qs) {
    EXPECT_FALSE(q.partition.has_value());
    EXPECT_EQ(q.entries.size(), 4u);
    EXPECT_EQ(q.entries[0], 0);
    EXPECT_EQ(q.entries[1], 0);
  }
  EXPECT_THROW(PartitionSchemeA(4, 2, 3), std::invalid_argument);
  EXPECT_THROW(PartitionSchemeA(4, 2, 4), std::invalid_argument);
}

TEST(PartitionTupleATest, ReferenceValues) {
  auto t = PartitionTupleA(4, 2, 2);
  EXPECT_NEAR(t.rate, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.upload, 3.5, 1e-12);
  EXPECT_NEAR(t.access, 2.0, 1e-12);
  EXPECT_NEAR(t.rho_mi, 0.75, 1e-12);
  EXPECT_NEAR(t.rho_wil, 1.0, 1e-12);
  EXPECT_NEAR(t.rho_maxl, 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(t.rho_epsp));

  t = PartitionTupleA(6, 3, 2);
  EXPECT_NEAR(t.rate, 0.692307692308, 1e-11);
  EXPECT_NEAR(t.upload, 12.3986638932, 1e-9);
  EXPECT_NEAR(t.access, 6.0, 1e-12);
  EXPECT_NEAR(t.rho_mi, 0.962962962963, 1e-11);

  t = PartitionTupleA(6, 2, 3);
  EXPECT_NEAR(t.upload, 4.37744375108, 1e-9);
  EXPECT_NEAR(t.rho_mi, 1.18872187554, 1e-10);
  EXPECT_NEAR(t.rho_maxl, 1.58496250072, 1e-10);
}

TEST(PartitionTupleATest, MatchesOracleUpToSixFiles) {
  for (int M = 2; M <= 6; ++M) {
    for (int n = 2; n <= 3; ++n) {
      for (int eta = 1; eta < M; ++eta) {
        if (M % eta != 0) continue;
        const PartitionSchemeA scheme(M, n, eta);
        const auto o = oracle::BruteForce(scheme);
        ExpectTupleNear(PartitionTupleA(M, n, eta),
                        {o.rate, o.upload, o.access, o.mi, o.wil, o.maxl, o.epsp},
                        1e-9);
      }
    }
  }
}

TEST(TimeshareTest, ShiftsServersCyclically) {
  const auto base = std::make_shared<SchemeA>(3, 3, UniformStrategyA(3, 3));
  const TimeshareScheme ts(base);
  EXPECT_EQ(ts.strategy().size(), 27u);
  const auto b = base->Queries(2, 4);
  const auto q = ts.Queries(2, 4 * 3 + 1);  // t = 2
  EXPECT_EQ(ts.Shift(4 * 3 + 1), 2);
  EXPECT_EQ(q[0], b[1]);
  EXPECT_EQ(q[1], b[2]);
  EXPECT_EQ(q[2], b[0]);
}

TEST(TimeshareTest, PerServerMiEqualsBaseAverage) {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto base = std::make_shared<SchemeA>(3, 3, RandomPmf(9, rng));
    const auto base_dist = BuildCondQueryDist(*base);
    const auto wrapped_dist = BuildCondQueryDist(*TimeshareWrap(base));
    const double average = MiLeakage(base_dist);
    for (double v : MiLeakagePerServer(wrapped_dist)) EXPECT_NEAR(v, average, 1e-12);
    EXPECT_LE(MaxlLeakage(wrapped_dist), MaxlLeakage(base_dist) + 1e-12);
    EXPECT_NEAR(DownloadCost(*TimeshareWrap(base)), DownloadCost(*base), 1e-12);
  }
}

TEST(TimeshareTest, SharedQueriesLeakBelowBaseAverage) {
  // Scheme B servers can receive the same mask, so the shift stays hidden.
  const auto base = std::make_shared<SchemeB>(2, 3, BernoulliStrategyB(2, 3, 0.1));
  const double average = MiLeakage(BuildCondQueryDist(*base));
  const auto per_server = MiLeakagePerServer(BuildCondQueryDist(*TimeshareWrap(base)));
  for (double v : per_server) {
    EXPECT_NEAR(v, per_server[0], 1e-12);
    EXPECT_LT(v, average - 0.1);
  }
}

TEST(TimeshareDistATest, AgreesWithWrappedScheme) {
  SplitMix64 rng(13);
  for (int n = 2; n <= 3; ++n) {
    const auto z = RandomPmf(IntPow(n, 2), rng);
    const auto direct = TimeshareDistA(3, n, z);
    EXPECT_NO_THROW(direct.Validate());
    const auto wrapped =
        BuildCondQueryDist(*TimeshareWrap(std::make_shared<SchemeA>(3, n, z)));
    EXPECT_NEAR(MiLeakage(direct), MiLeakage(wrapped), 1e-12);
    EXPECT_NEAR(MaxlLeakage(direct), MaxlLeakage(wrapped), 1e-12);
    EXPECT_NEAR(WilLeakage(direct), WilLeakage(wrapped), 1e-12);
    EXPECT_NEAR(UploadCost(direct), UploadCost(wrapped), 1e-12);
  }
}

}  // namespace
}  // namespace wpir
