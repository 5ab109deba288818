// Copyright 2026 The simpeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simpeval/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "simpeval/error.hpp"

namespace simpeval::csv {

std::vector<Row> read(std::istream& in) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false, any = false;
  int c;
  auto end_row = [&] {
    if (any || !field.empty() || !row.empty()) {
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
    }
    row.clear();
    field.clear();
    any = false;
  };
  while ((c = in.get()) != EOF) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field.push_back(static_cast<char>(c));
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", rows.size() + 1);
  end_row();
  return rows;
}

void write_row(std::ostream& out, const Row& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    const auto& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out << f;
      continue;
    }
    out.put('"');
    for (char ch : f) {
      if (ch == '"') out.put('"');
      out.put(ch);
    }
    out.put('"');
  }
  out.put('\n');
}

std::vector<std::size_t> locate(const Row& header, const std::vector<std::string_view>& names) {
  std::vector<std::size_t> pos;
  for (auto name : names) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("missing CSV column '" + std::string(name) + "'", 1);
    pos.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return pos;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.9g}", v);
}

double parse_number(std::string_view s, std::size_t line) {
  if (s == "nan" || s == "NaN") return std::nan("");
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected a number, got '" + std::string(s) + "'", line);
  }
  return v;
}

}  // namespace simpeval::csv
