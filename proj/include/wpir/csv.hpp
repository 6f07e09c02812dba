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

#ifndef WPIR_CSV_HPP_
#define WPIR_CSV_HPP_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wpir {

// 9 significant digits; infinities print as "inf" / "-inf".
inline std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline double ParseNumber(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

// "start:end:step" (inclusive end) or a single value. start > end gives an
// empty grid.
inline std::vector<double> ParseGrid(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto colon = spec.find(':', pos);
    parts.push_back(spec.substr(pos, colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) return {ParseNumber(parts[0])};
  if (parts.size() != 3) {
    throw std::invalid_argument("grid must be start:end:step");
  }
  const double start = ParseNumber(parts[0]);
  const double end = ParseNumber(parts[1]);
  const double step = ParseNumber(parts[2]);
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  std::vector<double> out;
  if (start > end) return out;
  const auto count = static_cast<long>(std::floor((end - start) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header)
      : out_(out), columns_(header.size()) {
    Row(header);
  }

  void Row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
      throw std::logic_error("CsvWriter: wrong number of cells");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace wpir

#endif  // WPIR_CSV_HPP_
