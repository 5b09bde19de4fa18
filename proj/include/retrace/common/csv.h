// Copyright 2026 The retrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RETRACE_COMMON_CSV_H_
#define RETRACE_COMMON_CSV_H_

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace retrace::csv {

using Row = std::vector<std::string>;

// RFC 4180 table with a header row. Quoted fields may contain commas,
// quotes ("") and line breaks.
struct Table {
  Row header;
  std::vector<Row> rows;

  // Index of `name` in the header; throws ValidationError when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  const std::string& get(const Row& row, std::string_view name) const;
};

Table parse(std::string_view text);
Table read_file(const std::filesystem::path& path);

std::string escape(std::string_view field);
std::string format_row(const Row& row);

// Streams rows to a file. The header is written on construction.
class Writer {
 public:
  Writer(const std::filesystem::path& path, const Row& header);
  void write(const Row& row);

 private:
  std::ofstream out_;
  std::size_t width_;
};

void write_file(const std::filesystem::path& path, const Table& table);

// Splits a multi-valued cell ("a;b;c"), trimming blanks and dropping empties.
std::vector<std::string> split_multi(std::string_view cell, char sep = ';');
std::string join_multi(const std::vector<std::string>& values, char sep = ';');

}  // namespace retrace::csv

#endif  // RETRACE_COMMON_CSV_H_
