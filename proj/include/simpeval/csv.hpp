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

#ifndef SIMPEVAL_CSV_HPP_
#define SIMPEVAL_CSV_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace simpeval::csv {

using Row = std::vector<std::string>;

// RFC 4180 subset: quoted fields may contain commas, quotes ("") and
// newlines. Blank lines are skipped.
std::vector<Row> read(std::istream& in);

void write_row(std::ostream& out, const Row& fields);

// Column positions of a header row; throws ParseError naming the first
// missing column.
std::vector<std::size_t> locate(const Row& header, const std::vector<std::string_view>& names);

// Shortest form with 9 significant digits.
std::string format_number(double v);

double parse_number(std::string_view s, std::size_t line);

}  // namespace simpeval::csv

#endif  // SIMPEVAL_CSV_HPP_
