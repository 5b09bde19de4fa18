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

#ifndef RETRACE_COMMON_STRINGS_H_
#define RETRACE_COMMON_STRINGS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace retrace {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Collapses every run of ASCII whitespace to one space and trims the ends.
std::string collapse_whitespace(std::string_view s);

bool is_ascii_alpha(char c);
bool is_ascii_alnum(char c);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Fixed two-decimal percentage of num/den, rounded half-up in exact integer
// arithmetic ("12.59"). Returns "0.00" when den is zero.
std::string percent_half_up(long long num, long long den);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Bundled tables: $RETRACE_DATA_DIR when set, else the source tree's data/.
std::filesystem::path default_data_dir();

}  // namespace retrace

#endif  // RETRACE_COMMON_STRINGS_H_
