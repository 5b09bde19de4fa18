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

#include <filesystem>

#include <gtest/gtest.h>

#include "retrace/classify/classify.h"
#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/strings.h"

namespace retrace::classify {
namespace {

namespace fs = std::filesystem;

class ClassifyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("classify_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_text_file(dir_ / "scimago_journals.csv",
                    "issn,areas,categories\n"
                    "0140-6736,Medicine,Medicine (miscellaneous)\n"
                    "0028-0836,Multidisciplinary,Multidisciplinary\n");
    write_text_file(dir_ / "lcc_disciplines.csv",
                    "prefix,discipline\n"
                    "R,Medicine\n"
                    "RC,Psychiatry\n"
                    "BF,Psychology\n"
                    "QA,Mathematics\n"
                    "HM,Sociology\n"
                    "Z,Bibliography\n");
    write_text_file(dir_ / "scimago_areas.csv",
                    "label,area\n"
                    "medicine,Medicine\n"
                    "psychology,Psychology\n"
                    "mathematics,Mathematics\n"
                    "mathematics,Computer Science\n");
    write_text_file(dir_ / "scimago_categories.csv",
                    "label,category,parent_area\n"
                    "psychiatry,Psychiatry and Mental Health,Medicine\n"
                    "sociology,Sociology and Political Science,Social Sciences\n");
    write_text_file(dir_ / "isbn_lcc.csv",
                    "isbn,lcc\n"
                    "978-0-306-40615-7,RC553.A88\n"
                    "9780000000019,BF173\n"
                    "9780000000026,QA76\n"
                    "9780000000033,HM1\n"
                    "9780000000040,Z699\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(ClassifyTest, IssnPath) {
  MappingTables t = MappingTables::load(dir_);
  SubjectAssignment a = classify_venue("issn:0140-6736", t);
  EXPECT_EQ(a.provenance, Provenance::kIssnScimago);
  EXPECT_EQ(a.areas, std::set<std::string>{"medicine"});
  EXPECT_EQ(a.categories, std::set<std::string>{"medicine (miscellaneous)"});
  EXPECT_TRUE(classify_venue("1474-547X", t).pending());
}

TEST_F(ClassifyTest, LccSteps) {
  MappingTables t = MappingTables::load(dir_);
  EXPECT_EQ(lcc_prefix("RC553.A88"), "RC");
  EXPECT_EQ(lcc_prefix(" qa76 "), "QA");

  SubjectAssignment area = map_lcc("9780000000019", t);
  EXPECT_EQ(area.provenance, Provenance::kIsbnLccArea);
  EXPECT_EQ(area.areas, std::set<std::string>{"psychology"});
  EXPECT_EQ(area.categories, std::set<std::string>{"psychology (miscellaneous)"});

  SubjectAssignment cat = map_lcc("0-306-40615-2", t);
  EXPECT_TRUE(cat.pending()) << "ISBN-10 is not cross-walked to ISBN-13";
  cat = map_lcc("978-0-306-40615-7", t);
  EXPECT_EQ(cat.provenance, Provenance::kIsbnLccCategory);
  EXPECT_EQ(cat.areas, std::set<std::string>{"medicine"});
  EXPECT_EQ(cat.categories, std::set<std::string>{"psychiatry and mental health"});

  SubjectAssignment tie = map_lcc("9780000000026", t);
  EXPECT_TRUE(tie.pending());
  EXPECT_NE(tie.reason.find("several areas"), std::string::npos);

  EXPECT_EQ(map_lcc("9780000000033", t).categories,
            std::set<std::string>{"sociology and political science"});
  EXPECT_TRUE(map_lcc("9780000000040", t).pending());
  EXPECT_TRUE(map_lcc("9780000000057", t).pending());
}

TEST_F(ClassifyTest, ParentClosure) {
  MappingTables t = MappingTables::load(dir_);
  for (const char* isbn : {"9780306406157", "9780000000019", "9780000000033"}) {
    SubjectAssignment a = map_lcc(isbn, t);
    ASSERT_FALSE(a.pending()) << isbn;
    for (const auto& c : a.categories) {
      std::string parent;
      for (const auto& [label, entries] : t.categories) {
        for (const auto& e : entries) {
          if (e.category == c) parent = e.parent_area;
        }
      }
      if (parent.empty()) parent = c.substr(0, c.find(" (miscellaneous)"));
      EXPECT_TRUE(a.areas.count(parent)) << c;
    }
  }
}

TEST_F(ClassifyTest, MalformedAndEmpty) {
  MappingTables t = MappingTables::load(dir_);
  EXPECT_TRUE(classify_venue("", t).pending());
  try {
    classify_venue("issn:1234-5678", t);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("1234-5678"), std::string::npos);
  }
}

TEST_F(ClassifyTest, MultipleIdentifiersMerge) {
  MappingTables t = MappingTables::load(dir_);
  SubjectAssignment a = classify_venue("issn:1474-547X; issn:0028-0836", t);
  EXPECT_FALSE(a.pending());
  EXPECT_EQ(a.areas, std::set<std::string>{"multidisciplinary"});
}

TEST_F(ClassifyTest, MissingTableIsConfigError) {
  fs::remove(dir_ / "isbn_lcc.csv");
  EXPECT_THROW(MappingTables::load(dir_), ConfigError);
}

TEST_F(ClassifyTest, FileRoundTrip) {
  write_text_file(dir_ / "manual.csv", "doi,areas,categories\n10.1/m,Arts and Humanities,History\n");
  write_text_file(dir_ / "in.csv",
                  "doi,year,title,source_id,source_title,retracted\n"
                  "10.1/a,2001,A,issn:0140-6736,Lancet,no\n"
                  "10.1/b,2002,B,isbn:9780000000026,Book,no\n"
                  "10.1/c,2003,C,,Unknown,no\n"
                  "10.1/m,2004,M,,Manual,no\n");
  ClassifyStats s = classify_file(dir_ / "in.csv", dir_, dir_ / "out" / "classified.csv");
  EXPECT_EQ(s.entities, 4);
  EXPECT_EQ(s.assigned, 2);
  EXPECT_EQ(s.pending, 2);
  csv::Table out = csv::read_file(dir_ / "out" / "classified.csv");
  ASSERT_EQ(out.header.size(), 8u);
  EXPECT_EQ(out.header[6], "area");
  EXPECT_EQ(out.header[7], "category");
  EXPECT_EQ(out.rows[0][6], "medicine");
  EXPECT_EQ(out.rows[1][6], "");
  EXPECT_EQ(out.rows[3][7], "history");
  csv::Table pending = csv::read_file(dir_ / "out" / "classified.pending.csv");
  ASSERT_EQ(pending.rows.size(), 2u);
  EXPECT_EQ(pending.rows[0][0], "10.1/b");
}

}  // namespace
}  // namespace retrace::classify
