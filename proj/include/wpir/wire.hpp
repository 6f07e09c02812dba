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

// Byte-level messages between client and servers. All integers are
// little-endian.
//
//   QUERY   'W' 'Q' u8 version u8 scheme_id u16 M u16 n u16 server
//           u32 payload_len payload [u16 partition]
//   ANSWER  'W' 'A' u8 version u32 payload_len payload
//
// payload_len counts symbols. Entry-coded payloads use one byte per entry;
// bit-coded payloads pack ceil(len / 8) bytes LSB-first with zero padding.
// Whether a query carries the trailing partition index is part of the
// scheme the server runs, as is the payload coding.

#ifndef WPIR_WIRE_HPP_
#define WPIR_WIRE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wpir/core.hpp"

namespace wpir {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::uint8_t kWireVersion = 1;

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What a server knows about its scheme before reading any message.
struct WireContext {
  PayloadCoding coding = PayloadCoding::kEntries;
  bool partitioned = false;
};

inline WireContext ContextOf(const Scheme& scheme) {
  return {scheme.coding(), scheme.partitioned()};
}

struct QueryMessage {
  SchemeKind scheme = SchemeKind::kSchemeA;
  std::uint16_t files = 0;
  std::uint16_t servers = 0;
  std::uint16_t server = 0;  // 1-based
  std::vector<std::uint16_t> payload;
  std::optional<std::uint16_t> partition;

  bool operator==(const QueryMessage&) const = default;
};

struct AnswerMessage {
  SymbolVector payload;

  bool operator==(const AnswerMessage&) const = default;
};

namespace detail {

class Writer {
 public:
  void U8(std::uint8_t v) { out_.push_back(v); }
  void U16(std::uint16_t v) {
    U8(static_cast<std::uint8_t>(v));
    U8(static_cast<std::uint8_t>(v >> 8));
  }
  void U32(std::uint32_t v) {
    U16(static_cast<std::uint16_t>(v));
    U16(static_cast<std::uint16_t>(v >> 16));
  }
  template <typename T>
  void Bits(const std::vector<T>& bits) {
    const std::size_t start = out_.size();
    out_.resize(start + (bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] > 1) throw WireError("bit payload entry is not 0/1");
      out_[start + i / 8] |= static_cast<std::uint8_t>(bits[i] << (i % 8));
    }
  }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t U8() {
    if (pos_ >= in_.size()) throw WireError("message truncated");
    return in_[pos_++];
  }
  std::uint16_t U16() {
    const std::uint16_t lo = U8();
    return static_cast<std::uint16_t>(lo | (U8() << 8));
  }
  std::uint32_t U32() {
    const std::uint32_t lo = U16();
    return lo | (static_cast<std::uint32_t>(U16()) << 16);
  }
  template <typename T>
  std::vector<T> Bits(std::uint32_t count) {
    const std::size_t bytes = (static_cast<std::size_t>(count) + 7) / 8;
    if (in_.size() - pos_ < bytes) throw WireError("message truncated");
    std::vector<T> out(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      out[i] = static_cast<T>((in_[pos_ + i / 8] >> (i % 8)) & 1);
    }
    if (count % 8 != 0 && (in_[pos_ + bytes - 1] >> (count % 8)) != 0) {
      throw WireError("nonzero padding bits");
    }
    pos_ += bytes;
    return out;
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  void Finish() const {
    if (pos_ != in_.size()) throw WireError("trailing bytes after message");
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

inline void Magic(Reader& r, std::uint8_t second) {
  if (r.U8() != 0x57 || r.U8() != second) throw WireError("bad magic");
  if (r.U8() != kWireVersion) throw WireError("unsupported version");
}

}  // namespace detail

inline Bytes EncodeQuery(const QueryMessage& msg, WireContext ctx) {
  if (msg.partition.has_value() != ctx.partitioned) {
    throw WireError("partition index presence does not match the scheme");
  }
  detail::Writer w;
  w.U8(0x57);
  w.U8(0x51);
  w.U8(kWireVersion);
  w.U8(static_cast<std::uint8_t>(msg.scheme));
  w.U16(msg.files);
  w.U16(msg.servers);
  w.U16(msg.server);
  w.U32(static_cast<std::uint32_t>(msg.payload.size()));
  if (ctx.coding == PayloadCoding::kEntries) {
    for (auto e : msg.payload) {
      if (e > 0xFF) throw WireError("query entry does not fit one byte");
      w.U8(static_cast<std::uint8_t>(e));
    }
  } else {
    w.Bits(msg.payload);
  }
  if (msg.partition) w.U16(*msg.partition);
  return w.Take();
}

inline QueryMessage DecodeQuery(std::span<const std::uint8_t> bytes,
                                WireContext ctx) {
  detail::Reader r(bytes);
  detail::Magic(r, 0x51);
  QueryMessage msg;
  const std::uint8_t id = r.U8();
  if (id < 1 || id > 4) throw WireError("unknown scheme id");
  msg.scheme = static_cast<SchemeKind>(id);
  msg.files = r.U16();
  msg.servers = r.U16();
  msg.server = r.U16();
  const std::uint32_t len = r.U32();
  if (ctx.coding == PayloadCoding::kEntries) {
    if (r.remaining() < len) throw WireError("message truncated");
    msg.payload.resize(len);
    for (auto& e : msg.payload) e = r.U8();
  } else {
    msg.payload = r.Bits<std::uint16_t>(len);
  }
  if (ctx.partitioned) msg.partition = r.U16();
  r.Finish();
  return msg;
}

inline Bytes EncodeAnswer(const AnswerMessage& msg) {
  detail::Writer w;
  w.U8(0x57);
  w.U8(0x41);
  w.U8(kWireVersion);
  w.U32(static_cast<std::uint32_t>(msg.payload.size()));
  w.Bits(msg.payload);
  return w.Take();
}

inline AnswerMessage DecodeAnswer(std::span<const std::uint8_t> bytes) {
  detail::Reader r(bytes);
  detail::Magic(r, 0x41);
  const std::uint32_t len = r.U32();
  AnswerMessage msg;
  msg.payload = r.Bits<Symbol>(len);
  r.Finish();
  return msg;
}

// Query <-> message for a given scheme and 1-based server index.
inline QueryMessage ToMessage(const Scheme& scheme, int server, const Query& q) {
  QueryMessage msg;
  msg.scheme = scheme.kind();
  msg.files = static_cast<std::uint16_t>(scheme.files());
  msg.servers = static_cast<std::uint16_t>(scheme.servers());
  msg.server = static_cast<std::uint16_t>(server);
  msg.payload = q.entries;
  msg.partition = q.partition;
  return msg;
}

inline Query FromMessage(const QueryMessage& msg, PayloadCoding coding) {
  Query q;
  q.entries = msg.payload;
  q.alphabet = coding == PayloadCoding::kEntries ? msg.servers : 2;
  q.partition = msg.partition;
  return q;
}

}  // namespace wpir

#endif  // WPIR_WIRE_HPP_
