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

#include <cmath>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/strings.h"
#include "retrace/viz/exports.h"
#include "retrace/viz/viz.h"

namespace retrace::viz {
namespace {

LdaModel model_of(int k, int v, std::vector<double> phi, std::vector<double> theta) {
  LdaModel m;
  m.k = k;
  m.vocab = v;
  m.phi = std::move(phi);
  m.theta = std::move(theta);
  m.docs = static_cast<int>(m.theta.size()) / k;
  return m;
}

LdaModel random_model(int k, int v, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> phi(std::size_t(k) * v), theta(std::size_t(d) * k);
  for (int t = 0; t < k; ++t) {
    double s = 0;
    for (int w = 0; w < v; ++w) s += phi[t * v + w] = u(rng);
    for (int w = 0; w < v; ++w) phi[t * v + w] /= s;
  }
  for (int i = 0; i < d; ++i) {
    double s = 0;
    for (int t = 0; t < k; ++t) s += theta[i * k + t] = u(rng);
    for (int t = 0; t < k; ++t) theta[i * k + t] /= s;
  }
  return model_of(k, v, phi, theta);
}

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

TEST(JsdTest, MatrixProperties) {
  LdaModel m = random_model(6, 40, 10, 1);
  auto j = jsd_matrix(m);
  for (int a = 0; a < 6; ++a) {
    EXPECT_EQ(j[a * 6 + a], 0.0);
    for (int b = 0; b < 6; ++b) {
      EXPECT_EQ(j[a * 6 + b], j[b * 6 + a]);
      EXPECT_GE(j[a * 6 + b], 0.0);
      EXPECT_LE(j[a * 6 + b], std::log(2.0));
    }
  }
}

TEST(MdsTest, IdenticalTopicsCoincide) {
  LdaModel m = model_of(2, 2, {0.3, 0.7, 0.3, 0.7}, {0.5, 0.5});
  auto j = jsd_matrix(m);
  EXPECT_EQ(j[1], 0.0);
  auto p = classical_mds(j, 2);
  EXPECT_NEAR(dist(p[0], p[1]), 0.0, 1e-12);
}

TEST(MdsTest, DisjointTopicsAtHalfDistance) {
  LdaModel m = model_of(2, 4, {0.5, 0.5, 0, 0, 0, 0, 0.5, 0.5}, {0.5, 0.5});
  auto j = jsd_matrix(m);
  EXPECT_NEAR(j[1], std::log(2.0), 1e-12);
  auto p = classical_mds(j, 2);
  EXPECT_NEAR(p[0].x, std::log(2.0) / 2, 1e-9);
  EXPECT_NEAR(p[1].x, -std::log(2.0) / 2, 1e-9);
  EXPECT_NEAR(p[0].y, 0.0, 1e-9);
  EXPECT_NEAR(p[1].y, 0.0, 1e-9);
}

TEST(MdsTest, EuclideanDistancesRecovered) {
  std::vector<Point> src{{0, 0}, {3, 0}, {0, 4}, {1.5, 2.5}};
  int n = 4;
  std::vector<double> d(n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) d[i * n + k] = dist(src[i], src[k]);
  }
  auto p = classical_mds(d, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) EXPECT_NEAR(dist(p[i], p[k]), d[i * n + k], 1e-9);
  }
}

TEST(MdsTest, SingleTopicAtOrigin) {
  auto p = classical_mds(std::vector<double>{0.0}, 1);
  EXPECT_EQ(p[0].x, 0.0);
  EXPECT_EQ(p[0].y, 0.0);
}

TEST(MdsTest, CollinearPointsHaveZeroSecondAxis) {
  std::vector<double> d{0, 1, 2, 1, 0, 1, 2, 1, 0};
  auto p = classical_mds(d, 3);
  for (const auto& q : p) EXPECT_NEAR(q.y, 0.0, 1e-7);
  EXPECT_NEAR(dist(p[0], p[2]), 2.0, 1e-9);
}

TEST(MdsTest, PermutationStableDistances) {
  LdaModel m = random_model(5, 30, 4, 7);
  auto j = jsd_matrix(m);
  auto p = classical_mds(j, 5);
  std::vector<int> perm{3, 0, 4, 1, 2};
  std::vector<double> jp(25);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) jp[a * 5 + b] = j[perm[a] * 5 + perm[b]];
  }
  auto q = classical_mds(jp, 5);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      EXPECT_NEAR(dist(q[a], q[b]), dist(p[perm[a]], p[perm[b]]), 1e-9);
    }
  }
}

TEST(MdsTest, SignConvention) {
  LdaModel m = random_model(4, 20, 3, 3);
  auto p = classical_mds(jsd_matrix(m), 4);
  int px = 0, py = 0;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(p[i].x) > std::abs(p[px].x)) px = i;
    if (std::abs(p[i].y) > std::abs(p[py].y)) py = i;
  }
  EXPECT_GT(p[px].x, 0.0);
  EXPECT_GE(p[py].y, 0.0);
}

TEST(SaliencyTest, SingleTopicIsZero) {
  LdaModel m = random_model(1, 10, 3, 2);
  for (double s : saliency(m)) EXPECT_EQ(s, 0.0);
}

TEST(SaliencyTest, UndistinctiveTermIsZero) {
  // Term 0 has the same probability in both topics, so P(T|w) = P(T).
  LdaModel m = model_of(2, 3, {0.2, 0.8, 0.0, 0.2, 0.0, 0.8}, {0.7, 0.3, 0.1, 0.9});
  EXPECT_NEAR(saliency(m)[0], 0.0, 1e-15);
}

TEST(SaliencyTest, TwoByTwoClosedForm) {
  LdaModel m = model_of(2, 2, {0.9, 0.1, 0.2, 0.8}, {1.0, 0.0, 0.0, 1.0});
  // P(T) = (0.5, 0.5); P(w0) = 0.55; P(T|w0) = (0.9/1.1, 0.2/1.1).
  double a = 0.9 / 1.1, b = 0.2 / 1.1;
  double expected = 0.55 * (a * std::log(a / 0.5) + b * std::log(b / 0.5));
  EXPECT_NEAR(saliency(m)[0], expected, 1e-12);
}

TEST(RelevanceTest, LambdaOneMatchesTopTerms) {
  LdaModel m = random_model(3, 50, 6, 5);
  for (int t = 0; t < 3; ++t) {
    auto r = relevance(m, t, 1.0, 30);
    auto top = topics::top_terms(m, t, 30);
    ASSERT_EQ(r.size(), top.size());
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i].id, top[i]);
  }
}

TEST(RelevanceTest, LambdaZeroRanksByLift) {
  LdaModel m = random_model(3, 20, 5, 9);
  auto pw = term_marginal(m, topic_prevalence(m));
  auto r = relevance(m, 1, 0.0, 20);
  for (std::size_t i = 1; i < r.size(); ++i) {
    EXPECT_GE(m.phi_at(1, r[i - 1].id) / pw[r[i - 1].id], m.phi_at(1, r[i].id) / pw[r[i].id]);
  }
}

TEST(RelevanceTest, TwoTermClosedForm) {
  LdaModel m = model_of(2, 2, {0.6, 0.4, 0.1, 0.9}, {0.5, 0.5});
  double pw0 = 0.35, pw1 = 0.65;
  double r0 = 0.6 * std::log(0.6) + 0.4 * std::log(0.6 / pw0);
  double r1 = 0.6 * std::log(0.4) + 0.4 * std::log(0.4 / pw1);
  auto r = relevance(m, 0, 0.6, 30);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].id, r0 > r1 ? 0 : 1);
  EXPECT_NEAR(r[0].value, std::max(r0, r1), 1e-12);
  EXPECT_THROW(relevance(m, 0, 1.5), ValidationError);
}

TEST(RelevanceTest, ZeroProbabilityTermsExcluded) {
  LdaModel m = model_of(2, 3, {0.5, 0.5, 0.0, 0.0, 0.5, 0.5}, {0.5, 0.5});
  auto r = relevance(m, 0, 0.6);
  EXPECT_EQ(r.size(), 2u);
}

TEST(LdavisTest, PayloadShape) {
  LdaModel m = random_model(3, 40, 5, 4);
  topics::Dictionary dict;
  std::vector<std::string> toks;
  for (int i = 0; i < 40; ++i) toks.push_back("w" + std::to_string(i));
  dict.add_document(toks);
  auto j = ldavis_payload(m, dict);
  EXPECT_EQ(j["circles"].size(), 3u);
  EXPECT_EQ(j["salient"].size(), 30u);
  EXPECT_EQ(j["relevant"]["2"].size(), 30u);
  EXPECT_EQ(j["distance"], "jsd-natural-log");
  double s = 0;
  for (const auto& c : j["circles"]) s += c["share"].get<double>();
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(MtmTest, Aggregation) {
  LdaModel m = model_of(2, 1, {1.0, 1.0}, {1, 0, 0, 1, 0.2, 0.8});
  auto one = mtm_aggregate(m, {{"a"}, {"b"}, {"c"}});
  ASSERT_EQ(one.size(), 3u);
  EXPECT_EQ(one[2].dist, (std::vector<double>{0.2, 0.8}));
  auto mean = mtm_aggregate(m, {{"g"}, {"g"}, {}});
  ASSERT_EQ(mean.size(), 1u);
  EXPECT_NEAR(mean[0].dist[0], 0.5, 1e-12);
  EXPECT_EQ(mean[0].count, 2);
}

TEST(MtmTest, MultiLabelMatchesBruteForce) {
  LdaModel m = random_model(4, 5, 12, 13);
  std::vector<std::vector<std::string>> labels;
  for (int d = 0; d < 12; ++d) {
    std::vector<std::string> l{d % 3 == 0 ? "x" : "y"};
    if (d % 4 == 0) l.push_back("z");
    labels.push_back(l);
  }
  auto groups = mtm_aggregate(m, labels);
  long total = 0;
  for (const auto& g : groups) {
    total += g.count;
    std::vector<double> mean(4, 0.0);
    int n = 0;
    for (int d = 0; d < 12; ++d) {
      if (std::find(labels[d].begin(), labels[d].end(), g.label) == labels[d].end()) continue;
      ++n;
      for (int t = 0; t < 4; ++t) mean[t] += m.theta_at(d, t);
    }
    EXPECT_EQ(g.count, n);
    double s = 0;
    for (int t = 0; t < 4; ++t) {
      EXPECT_NEAR(g.dist[t], mean[t] / n, 1e-12);
      s += g.dist[t];
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  EXPECT_GE(total, 12);
}

TEST(MtmTest, FoldLongTail) {
  auto folded = fold_long_tail({{"a"}, {"a"}, {"b"}, {"c", "d"}}, 1);
  EXPECT_EQ(folded[0], std::vector<std::string>{"a"});
  EXPECT_EQ(folded[3], std::vector<std::string>{"Others"});
}

TEST(ExportsTest, LabelsResolveContextIds) {
  namespace fs = std::filesystem;
  fs::path meta = fs::temp_directory_path() / "viz_exports_meta.csv";
  write_text_file(meta,
                  "doi,year,title,source_id,source_title,retracted,area,category\n"
                  "10.1/a,2003,A,,,no,medicine;nursing,\n"
                  "10.1/b,2012,B,,,no,,\n"
                  "10.1/c,2020,C,,,no,psychology,\n");
  std::vector<std::string> ids{"10.1/a#1", "10.1/A#2", "10.1/b", "10.1/c", "10.1/zz"};
  report::PeriodConfig periods;
  auto period = mtm_labels(ids, meta, MtmGrouping::kPeriod, periods);
  EXPECT_EQ(period[0], std::vector<std::string>{"P1"});
  EXPECT_EQ(period[1], std::vector<std::string>{"P1"});
  EXPECT_EQ(period[2], std::vector<std::string>{"P3"});
  EXPECT_TRUE(period[3].empty());
  EXPECT_TRUE(period[4].empty());
  auto area = mtm_labels(ids, meta, MtmGrouping::kArea, periods);
  EXPECT_EQ(area[0], (std::vector<std::string>{"medicine", "nursing"}));
  EXPECT_TRUE(area[2].empty());
  EXPECT_EQ(mtm_labels(ids, meta, MtmGrouping::kYear, periods)[3],
            std::vector<std::string>{"2020"});
  EXPECT_THROW(parse_mtm_grouping("decade"), ValidationError);
  fs::remove(meta);
}

TEST(ExportsTest, DocsTopicsDominantTieTakesLowestIndex) {
  namespace fs = std::filesystem;
  LdaModel m = model_of(3, 2, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
                        {0.2, 0.4, 0.4, 0.1, 0.1, 0.8});
  fs::path out = fs::temp_directory_path() / "viz_docs_topics.csv";
  write_docs_topics(out, m, {"d0", "d1"});
  csv::Table t = csv::read_file(out);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], "1");
  EXPECT_EQ(t.rows[1][1], "2");
  EXPECT_EQ(t.header.size(), 5u);
  EXPECT_THROW(write_docs_topics(out, m, {"d0"}), ValidationError);
  fs::remove(out);
}

}  // namespace
}  // namespace retrace::viz
