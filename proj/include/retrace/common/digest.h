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

#ifndef RETRACE_COMMON_DIGEST_H_
#define RETRACE_COMMON_DIGEST_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace retrace {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Digest of a file or a directory tree. Directories hash the sorted list of
// (relative path, file digest) pairs, so renames and content changes both
// show up. A missing path hashes to the empty string.
std::string sha256_path(const std::filesystem::path& path);

}  // namespace retrace

#endif  // RETRACE_COMMON_DIGEST_H_
