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

#ifndef WPIR_TESTS_FLIPPING_SCHEME_HPP_
#define WPIR_TESTS_FLIPPING_SCHEME_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wpir/core.hpp"

namespace wpir::testing {

// Wraps a scheme and flips the first decoded bit, so every round fails.
class FlippingScheme final : public Scheme {
 public:
  explicit FlippingScheme(SchemePtr base) : base_(std::move(base)) {}
  int files() const override { return base_->files(); }
  int servers() const override { return base_->servers(); }
  int beta() const override { return base_->beta(); }
  const Pmf& strategy() const override { return base_->strategy(); }
  SchemeKind kind() const override { return base_->kind(); }
  PayloadCoding coding() const override { return base_->coding(); }
  std::string name() const override { return "flipping"; }
  std::vector<Query> Queries(int m, std::uint64_t s) const override {
    return base_->Queries(m, s);
  }
  SymbolVector Answer(const Query& q, DatabaseView db) const override {
    return base_->Answer(q, db);
  }
  int AnswerLength(const Query& q) const override { return base_->AnswerLength(q); }
  int AccessCount(const Query& q) const override { return base_->AccessCount(q); }
  SymbolVector Decode(int m, std::span<const Query> queries,
                      std::span<const SymbolVector> answers) const override {
    auto out = base_->Decode(m, queries, answers);
    out[0] ^= 1;
    return out;
  }

 private:
  SchemePtr base_;
};

}  // namespace wpir::testing

#endif  // WPIR_TESTS_FLIPPING_SCHEME_HPP_
