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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "retrace/common/csv.h"
#include "retrace/common/digest.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"

namespace retrace {
namespace {

TEST(CsvTest, ParsesQuotedFieldsWithCommasAndNewlines) {
  csv::Table t = csv::parse(
      "doi,context\n10.1/a,\"He said, \"\"no\"\".\nThen left.\"\n10.1/b,x\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.get(t.rows[0], "context"), "He said, \"no\".\nThen left.");
  EXPECT_EQ(t.get(t.rows[1], "doi"), "10.1/b");
}

TEST(CsvTest, MissingColumnThrows) {
  csv::Table t = csv::parse("a,b\n1,2\n");
  EXPECT_THROW(t.column("c"), ValidationError);
}

TEST(CsvTest, EmptyTrailingFieldIsKept) {
  csv::Table t = csv::parse("a,b\n1,\n");
  ASSERT_EQ(t.rows.size(), 1u);
  ASSERT_EQ(t.rows[0].size(), 2u);
  EXPECT_EQ(t.rows[0][1], "");
}

TEST(CsvTest, FormatThenParseIsIdentityOnRandomFields) {
  std::mt19937 rng(7);
  const std::string alphabet = "ab ,\"\n;x";
  for (int trial = 0; trial < 200; ++trial) {
    csv::Row header{"h1", "h2", "h3"};
    csv::Row row;
    for (int f = 0; f < 3; ++f) {
      std::string s;
      int len = static_cast<int>(rng() % 8);
      for (int i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
      row.push_back(s);
    }
    std::string text = csv::format_row(header) + "\n" + csv::format_row(row) + "\n";
    csv::Table t = csv::parse(text);
    ASSERT_EQ(t.rows.size(), 1u) << text;
    EXPECT_EQ(t.rows[0], row);
  }
}

TEST(StringsTest, PercentHalfUp) {
  EXPECT_EQ(percent_half_up(1, 62), "1.61");
  EXPECT_EQ(percent_half_up(20, 224), "8.93");
  EXPECT_EQ(percent_half_up(67, 532), "12.59");
  EXPECT_EQ(percent_half_up(1, 8), "12.50");
  EXPECT_EQ(percent_half_up(1, 800), "0.13");  // 0.125 rounds up
  EXPECT_EQ(percent_half_up(0, 0), "0.00");
}

TEST(StringsTest, CollapseWhitespace) {
  EXPECT_EQ(collapse_whitespace("  a \n\t b  "), "a b");
}

TEST(IdentifiersTest, DoiNormalization) {
  EXPECT_EQ(normalize_doi("  https://doi.org/10.1016/S0140-6736(97)11096-0 "),
            "10.1016/s0140-6736(97)11096-0");
  EXPECT_TRUE(is_valid_doi("10.1016/s0140-6736(97)11096-0"));
  EXPECT_FALSE(is_valid_doi("11.1/x"));
  EXPECT_FALSE(is_valid_doi("10.1016"));
}

TEST(IdentifiersTest, IssnChecksum) {
  EXPECT_TRUE(is_valid_issn("0140-6736"));
  EXPECT_TRUE(is_valid_issn("01406736"));
  EXPECT_TRUE(is_valid_issn("1474-547X"));
  EXPECT_FALSE(is_valid_issn("0140-6737"));
}

TEST(IdentifiersTest, IsbnChecksum) {
  EXPECT_TRUE(is_valid_isbn("978-0-306-40615-7"));
  EXPECT_TRUE(is_valid_isbn("0-306-40615-2"));
  EXPECT_FALSE(is_valid_isbn("978-0-306-40615-8"));
}

TEST(IdentifiersTest, ParseVenueId) {
  auto issn = parse_venue_id("issn:01406736");
  ASSERT_TRUE(issn);
  EXPECT_EQ(issn->kind, VenueIdKind::kIssn);
  EXPECT_EQ(issn->value, "0140-6736");
  auto isbn = parse_venue_id("isbn:978-0-306-40615-7");
  ASSERT_TRUE(isbn);
  EXPECT_EQ(isbn->kind, VenueIdKind::kIsbn);
  EXPECT_EQ(isbn->value, "9780306406157");
  EXPECT_FALSE(parse_venue_id("not-an-id"));
  EXPECT_FALSE(parse_venue_id("isbn:0140-6736"));
}

TEST(DigestTest, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(DigestTest, DirectoryDigestTracksContent) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "retrace_digest_test";
  fs::remove_all(dir);
  write_text_file(dir / "a.txt", "one");
  write_text_file(dir / "sub" / "b.txt", "two");
  std::string d1 = sha256_path(dir);
  EXPECT_EQ(d1, sha256_path(dir));
  write_text_file(dir / "sub" / "b.txt", "three");
  EXPECT_NE(d1, sha256_path(dir));
  EXPECT_EQ(sha256_path(dir / "missing"), "");
  fs::remove_all(dir);
}

}  // namespace
}  // namespace retrace
