// Copyright 2026 The vfix Authors.
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

#ifndef VFIX_CSV_HPP_
#define VFIX_CSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vfix::csv {

using Row = std::vector<std::string>;

// RFC-4180 parse. Accepts LF or CRLF line endings; a trailing newline does
// not produce an empty record. Throws ValidationError on an unterminated
// quoted field.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);
std::string format_row(const Row& row);

// A parsed table with a header row.
struct Table {
  Row header;
  std::vector<Row> rows;

  // Column index by name, or -1.
  int column(std::string_view name) const;
};

Table read_table(const std::filesystem::path& path);
std::string format_table(const Table& table);

// Shortest representation that round-trips the double exactly.
std::string format_number(double v);
double parse_number(std::string_view s);

}  // namespace vfix::csv

namespace vfix {

std::string read_file(const std::filesystem::path& path);

// Writes `content` to `path` unless the file already holds exactly that
// content. Returns true when the file was (re)written.
bool write_file_if_changed(const std::filesystem::path& path, std::string_view content);

}  // namespace vfix

#endif  // VFIX_CSV_HPP_
