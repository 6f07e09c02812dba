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

#include "wpir/wire.hpp"

#include <vector>

#include <gtest/gtest.h>

#include "wpir/rng.hpp"
#include "wpir/scheme_a.hpp"
#include "wpir/scheme_b.hpp"
#include "wpir/wrappers.hpp"

namespace wpir {
namespace {

constexpr WireContext kEntries{PayloadCoding::kEntries, false};
constexpr WireContext kBits{PayloadCoding::kPackedBits, false};
constexpr WireContext kTaggedBits{PayloadCoding::kPackedBits, true};

TEST(WireTest, EntriesQueryLayout) {
  QueryMessage msg;
  msg.scheme = SchemeKind::kSchemeA;
  msg.files = 2;
  msg.servers = 2;
  msg.server = 1;
  msg.payload = {0, 1};
  const Bytes expected{0x57, 0x51, 0x01, 0x01, 0x02, 0x00, 0x02, 0x00,
                       0x01, 0x00, 0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
  EXPECT_EQ(EncodeQuery(msg, kEntries), expected);
  EXPECT_EQ(DecodeQuery(expected, kEntries), msg);
}

TEST(WireTest, PackedBitsAreLsbFirstWithTrailingPartition) {
  QueryMessage msg;
  msg.scheme = SchemeKind::kPartition;
  msg.files = 6;
  msg.servers = 2;
  msg.server = 2;
  msg.payload = {1, 0, 1, 1, 0, 0, 0, 0, 1};
  msg.partition = 3;
  const Bytes bytes = EncodeQuery(msg, kTaggedBits);
  ASSERT_EQ(bytes.size(), 3u + 1 + 6 + 4 + 2 + 2);
  EXPECT_EQ(bytes[14], 0x0D);
  EXPECT_EQ(bytes[15], 0x01);
  EXPECT_EQ(bytes[16], 0x03);
  EXPECT_EQ(bytes[17], 0x00);
  EXPECT_EQ(DecodeQuery(bytes, kTaggedBits), msg);
}

TEST(WireTest, AnswerLayout) {
  const AnswerMessage a{{1}};
  const Bytes expected{0x57, 0x41, 0x01, 0x01, 0x00, 0x00, 0x00, 0x01};
  EXPECT_EQ(EncodeAnswer(a), expected);
  EXPECT_EQ(DecodeAnswer(expected), a);
  const AnswerMessage empty{};
  EXPECT_EQ(DecodeAnswer(EncodeAnswer(empty)), empty);
  EXPECT_EQ(EncodeAnswer(empty).size(), 7u);
}

TEST(WireTest, RandomRoundTrips) {
  SplitMix64 rng(2026);
  for (int i = 0; i < 10000; ++i) {
    WireContext ctx{rng.Bit() ? PayloadCoding::kPackedBits : PayloadCoding::kEntries,
                    rng.Bit() == 1};
    QueryMessage msg;
    msg.scheme = static_cast<SchemeKind>(1 + rng.Below(4));
    msg.files = static_cast<std::uint16_t>(rng.Below(65536));
    msg.servers = static_cast<std::uint16_t>(rng.Below(65536));
    msg.server = static_cast<std::uint16_t>(rng.Below(65536));
    msg.payload.resize(rng.Below(40));
    const std::uint64_t alphabet = ctx.coding == PayloadCoding::kEntries ? 256 : 2;
    for (auto& e : msg.payload) e = static_cast<std::uint16_t>(rng.Below(alphabet));
    if (ctx.partitioned) msg.partition = static_cast<std::uint16_t>(rng.Below(65536));
    ASSERT_EQ(DecodeQuery(EncodeQuery(msg, ctx), ctx), msg) << "message " << i;

    AnswerMessage a;
    a.payload.resize(rng.Below(20));
    for (auto& b : a.payload) b = rng.Bit();
    ASSERT_EQ(DecodeAnswer(EncodeAnswer(a)), a) << "answer " << i;
  }
}

TEST(WireTest, SchemeMessagesRoundTrip) {
  const auto a = std::make_shared<SchemeA>(3, 3, UniformStrategyA(3, 3));
  const auto b = std::make_shared<SchemeB>(3, 2, UniformStrategyB(3, 2));
  const std::vector<SchemePtr> schemes{a, b, PartitionWrap(a, 2), PartitionWrap(b, 3),
                                       TimeshareWrap(PartitionWrap(b, 2))};
  for (const auto& scheme : schemes) {
    const auto ctx = ContextOf(*scheme);
    const auto qs = scheme->Queries(scheme->files(), scheme->strategy().size() - 1);
    for (int l = 0; l < scheme->servers(); ++l) {
      const auto msg = ToMessage(*scheme, l + 1, qs[l]);
      const auto back = DecodeQuery(EncodeQuery(msg, ctx), ctx);
      EXPECT_EQ(back, msg);
      EXPECT_EQ(FromMessage(back, scheme->coding()), qs[l]) << scheme->name();
    }
  }
}

TEST(WireTest, RejectsMalformedQueries) {
  QueryMessage msg;
  msg.files = 3;
  msg.servers = 2;
  msg.server = 1;
  msg.payload = {1, 0, 1};
  const Bytes good = EncodeQuery(msg, kBits);
  ASSERT_NO_THROW(DecodeQuery(good, kBits));

  auto corrupt = [&](std::size_t at, std::uint8_t value) {
    Bytes b = good;
    b[at] = value;
    return b;
  };
  EXPECT_THROW(DecodeQuery(corrupt(0, 0x58), kBits), WireError);  // magic
  EXPECT_THROW(DecodeQuery(corrupt(1, 0x41), kBits), WireError);  // answer magic
  EXPECT_THROW(DecodeQuery(corrupt(2, 0x02), kBits), WireError);  // version
  EXPECT_THROW(DecodeQuery(corrupt(3, 0x00), kBits), WireError);  // scheme id
  EXPECT_THROW(DecodeQuery(corrupt(3, 0x05), kBits), WireError);
  EXPECT_THROW(DecodeQuery(corrupt(14, 0x0D), kBits), WireError);  // padding

  Bytes truncated(good.begin(), good.end() - 1);
  EXPECT_THROW(DecodeQuery(truncated, kBits), WireError);
  Bytes trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(DecodeQuery(trailing, kBits), WireError);
  EXPECT_THROW(DecodeQuery(good, kTaggedBits), WireError);  // missing partition
  EXPECT_THROW(DecodeQuery(Bytes{}, kBits), WireError);

  Bytes huge_len = good;
  huge_len[10] = 0xFF;
  huge_len[11] = 0xFF;
  huge_len[12] = 0xFF;
  huge_len[13] = 0xFF;
  EXPECT_THROW(DecodeQuery(huge_len, kBits), WireError);
  EXPECT_THROW(DecodeQuery(huge_len, kEntries), WireError);
}

TEST(WireTest, RejectsUnencodableMessages) {
  QueryMessage msg;
  msg.payload = {300};
  EXPECT_THROW(EncodeQuery(msg, kEntries), WireError);
  msg.payload = {2};
  EXPECT_THROW(EncodeQuery(msg, kBits), WireError);
  msg.payload = {1};
  msg.partition = 1;
  EXPECT_THROW(EncodeQuery(msg, kBits), WireError);
  AnswerMessage a{{2}};
  EXPECT_THROW(EncodeAnswer(a), WireError);
}

TEST(WireTest, RejectsMalformedAnswers) {
  const Bytes good = EncodeAnswer({{1, 0, 1}});
  Bytes padded = good;
  padded.back() |= 0x80;
  EXPECT_THROW(DecodeAnswer(padded), WireError);
  Bytes trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(DecodeAnswer(trailing), WireError);
  Bytes truncated(good.begin(), good.end() - 1);
  EXPECT_THROW(DecodeAnswer(truncated), WireError);
}

}  // namespace
}  // namespace wpir
