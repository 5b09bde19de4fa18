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

#include "retrace/common/error.h"
#include "retrace/simd/kernels.h"
#include "retrace/topics/coherence.h"
#include "retrace/topics/corpus.h"
#include "retrace/topics/lda.h"
#include "retrace/topics/preprocess.h"

namespace retrace::topics {
namespace {

using Tokens = std::vector<std::string>;

TEST(PreprocessTest, Example) {
  auto stop = StopwordConfig::load_default(DocKind::kContext);
  auto lem = Lemmatizer::load_default();
  EXPECT_EQ(preprocess("The vaccines were retracted.", stop, lem),
            (Tokens{"vaccine", "retract"}));
  EXPECT_TRUE(preprocess("the of and it was", stop, lem).empty());
  EXPECT_TRUE(preprocess("", stop, lem).empty());
}

TEST(PreprocessTest, StructuralTokensDroppedFromAbstracts) {
  auto stop = StopwordConfig::load_default(DocKind::kAbstract);
  auto lem = Lemmatizer::load_default();
  auto toks = preprocess("BACKGROUND: Measles outbreaks. RESULTS: uptake fell.", stop, lem);
  EXPECT_EQ(std::count(toks.begin(), toks.end(), "background"), 0);
  EXPECT_EQ(std::count(toks.begin(), toks.end(), "result"), 0);
  EXPECT_EQ(toks, (Tokens{"measles", "outbreak", "uptake", "fell"}));
}

TEST(PreprocessTest, ReferenceTokensDroppedFromContexts) {
  auto stop = StopwordConfig::load_default(DocKind::kContext);
  auto lem = Lemmatizer::load_default();
  EXPECT_EQ(preprocess("Wakefield et al. described ileal lymphoid hyperplasia", stop, lem),
            (Tokens{"describe"}));
}

TEST(PreprocessTest, DigitsAndPunctuationSplit) {
  EXPECT_EQ(tokenize("MMR-vaccine (1998), x2y"), (Tokens{"mmr", "vaccine", "x", "y"}));
}

TEST(LemmatizerTest, Rules) {
  Lemmatizer lem = Lemmatizer::load_default();
  EXPECT_EQ(lem.lemma("studies"), "study");
  EXPECT_EQ(lem.lemma("vaccinated"), "vaccinate");
  EXPECT_EQ(lem.lemma("stopped"), "stop");
  EXPECT_EQ(lem.lemma("hoped"), "hope");
  EXPECT_EQ(lem.lemma("linked"), "link");
  EXPECT_EQ(lem.lemma("reporting"), "report");
  EXPECT_EQ(lem.lemma("processes"), "process");
  EXPECT_EQ(lem.lemma("virus"), "virus");
  EXPECT_EQ(lem.lemma("analysis"), "analysis");
  EXPECT_EQ(lem.lemma("children"), "child");
  EXPECT_EQ(lem.lemma("agreed"), "agreed");
  EXPECT_EQ(lem.lemma("measured"), "measure");
  EXPECT_EQ(lem.lemma("reduced"), "reduce");
}

Corpus make_corpus(const std::vector<Tokens>& docs) {
  Corpus c;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    c.add("d" + std::to_string(i), DocKind::kContext, docs[i]);
  }
  return c;
}

TEST(DictionaryTest, AppendOnly) {
  Corpus c = make_corpus({{"a", "b"}, {"b", "c"}});
  std::vector<std::string> before = c.dictionary.tokens();
  c.add("d2", DocKind::kContext, {"z", "a", "a"});
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_EQ(c.dictionary.token(static_cast<int>(i)), before[i]);
  }
  EXPECT_EQ(c.dictionary.df(*c.dictionary.id("a")), 2);
  EXPECT_EQ(*c.dictionary.id("z"), 3);
}

TEST(TfidfTest, HandComputed) {
  Corpus c = make_corpus({{"a", "a", "b"}, {"b", "c"}, {"c", "c", "c"}});
  auto r = vectorize_tfidf(c);
  double a = 2 * std::log2(3.0), b = std::log2(1.5);
  double norm = std::sqrt(a * a + b * b);
  ASSERT_EQ(r.docs[0].ids.size(), 2u);
  EXPECT_NEAR(r.docs[0].weights[0], a / norm, 1e-12);
  EXPECT_NEAR(r.docs[0].weights[1], b / norm, 1e-12);
  EXPECT_NEAR(a / norm, 0.983, 5e-4);
  EXPECT_NEAR(b / norm, 0.181, 5e-4);
  EXPECT_TRUE(r.zero_vectors.empty());
}

TEST(TfidfTest, UbiquitousTermsAndSingleDocument) {
  Corpus c = make_corpus({{"a", "b"}, {"a", "c"}});
  auto r = vectorize_tfidf(c);
  for (const auto& d : r.docs) {
    EXPECT_EQ(std::count(d.ids.begin(), d.ids.end(), *c.dictionary.id("a")), 0);
  }
  Corpus single = make_corpus({{"a", "b", "b"}});
  auto s = vectorize_tfidf(single);
  EXPECT_TRUE(s.docs[0].ids.empty());
  EXPECT_EQ(s.zero_vectors, std::vector<int>{0});
  EXPECT_THROW(vectorize_tfidf(Corpus{}), ValidationError);
}

// Two disjoint vocabularies, documents alternate between them.
std::vector<SparseDoc> disjoint_docs(int n, int words_per_vocab, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SparseDoc> docs;
  for (int d = 0; d < n; ++d) {
    int base = (d % 2) * words_per_vocab;
    std::map<int, double> c;
    for (int i = 0; i < 30; ++i) c[base + static_cast<int>(rng() % words_per_vocab)] += 1;
    SparseDoc s;
    for (auto [id, w] : c) {
      s.ids.push_back(id);
      s.weights.push_back(w);
    }
    docs.push_back(s);
  }
  return docs;
}

void expect_normalized(const LdaModel& m) {
  for (int t = 0; t < m.k; ++t) {
    double s = 0;
    for (int w = 0; w < m.vocab; ++w) {
      EXPECT_GE(m.phi_at(t, w), 0.0);
      s += m.phi_at(t, w);
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  for (int d = 0; d < m.docs; ++d) {
    double s = 0;
    for (int t = 0; t < m.k; ++t) s += m.theta_at(d, t);
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
}

TEST(LdaTest, SingleTopicDegeneracy) {
  std::vector<SparseDoc> docs{{{0, 1}, {2, 1}}, {{1, 2}, {3, 1}}};
  LdaParams p;
  p.k = 1;
  LdaModel m = train_lda(docs, 3, p);
  for (int d = 0; d < 2; ++d) EXPECT_DOUBLE_EQ(m.theta_at(d, 0), 1.0);
  // phi = (eta + column sums) normalised, eta = 1/K = 1.
  double col[3] = {2, 4, 1};
  for (int w = 0; w < 3; ++w) EXPECT_NEAR(m.phi_at(0, w), (1 + col[w]) / 10.0, 1e-12);
}

TEST(LdaTest, DisjointVocabulariesSeparate) {
  auto docs = disjoint_docs(40, 8, 3);
  LdaParams p;
  p.k = 2;
  p.seed = 11;
  LdaModel m = train_lda(docs, 16, p);
  expect_normalized(m);
  int topic_even = m.theta_at(0, 0) > 0.5 ? 0 : 1;
  for (int d = 0; d < 40; ++d) {
    int expected = d % 2 == 0 ? topic_even : 1 - topic_even;
    EXPECT_GE(m.theta_at(d, expected), 0.9) << d;
  }
}

TEST(LdaTest, SeedDeterminism) {
  auto docs = disjoint_docs(20, 5, 1);
  LdaParams p;
  p.k = 3;
  p.seed = 42;
  LdaModel a = train_lda(docs, 10, p);
  LdaModel b = train_lda(docs, 10, p);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.theta, b.theta);
}

TEST(LdaTest, VectorKernelsMatchScalar) {
  auto docs = disjoint_docs(30, 9, 5);
  LdaParams p;
  p.k = 7;
  p.seed = 3;
  p.passes = 50;
  p.kernels = &simd::detail::scalar_table();
  LdaModel ref = train_lda(docs, 18, p);
  for (const auto* table : {simd::detail::avx2_table(), simd::detail::neon_table()}) {
    if (!table) continue;
    p.kernels = table;
    LdaModel m = train_lda(docs, 18, p);
    for (std::size_t i = 0; i < ref.phi.size(); ++i) EXPECT_NEAR(m.phi[i], ref.phi[i], 1e-9);
    for (std::size_t i = 0; i < ref.theta.size(); ++i) {
      EXPECT_NEAR(m.theta[i], ref.theta[i], 1e-9);
    }
  }
}

TEST(LdaTest, FractionalWeightsAndWarnings) {
  std::vector<SparseDoc> docs{{{0, 2}, {0.5, 0.25}}, {{}, {}}};
  LdaParams p;
  p.k = 4;
  LdaModel m = train_lda(docs, 3, p);
  expect_normalized(m);
  EXPECT_EQ(m.warnings.size(), 1u);
}

TEST(LdaTest, BadInputs) {
  LdaParams p;
  p.k = 0;
  std::vector<SparseDoc> docs{{{0}, {1}}};
  EXPECT_THROW(train_lda(docs, 1, p), ValidationError);
  p.k = 2;
  EXPECT_THROW(train_lda({}, 1, p), ValidationError);
  std::vector<SparseDoc> bad{{{5}, {1}}};
  EXPECT_THROW(train_lda(bad, 2, p), ValidationError);
  std::vector<SparseDoc> nan{{{0}, {std::nan("")}}};
  EXPECT_THROW(train_lda(nan, 1, p), NumericalError);
}

LdaModel fixed_model(int k, int v, std::vector<double> phi) {
  LdaModel m;
  m.k = k;
  m.vocab = v;
  m.phi = std::move(phi);
  return m;
}

TEST(TopTermsTest, OrderingAndTies) {
  LdaModel uniform = fixed_model(1, 5, {0.2, 0.2, 0.2, 0.2, 0.2});
  EXPECT_EQ(top_terms(uniform, 0, 3), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(top_terms(uniform, 0, 9).size(), 5u);
  LdaModel m = fixed_model(1, 4, {0.1, 0.4, 0.2, 0.3});
  EXPECT_EQ(top_terms(m, 0, 4), (std::vector<int>{1, 3, 2, 0}));
  EXPECT_THROW(top_terms(m, 1, 2), ValidationError);
}

TEST(CoherenceTest, ClosedForms) {
  // Words 0 and 1 always together in 3 of 4 documents; word 2 alone.
  std::vector<std::vector<int>> occ{{0, 1}, {0, 1}, {0, 1}, {2}};
  CooccurrenceIndex idx(occ, 3);
  LdaModel m = fixed_model(1, 3, {0.5, 0.4, 0.1});
  EXPECT_NEAR(umass_coherence(m, idx, 2).mean, std::log(4.0 / 3.0), 1e-12);
  EXPECT_EQ(umass_coherence(m, idx, 1).mean, 0.0);
  LdaModel disjoint = fixed_model(1, 3, {0.5, 0.1, 0.4});
  EXPECT_NEAR(umass_coherence(disjoint, idx, 2).mean, std::log(1.0 / 3.0), 1e-12);
  EXPECT_THROW(umass_coherence(m, idx, 4), ValidationError);
}

CoherenceCurve curve_of(const std::vector<double>& values, int k0 = 1) {
  CoherenceCurve c;
  for (std::size_t i = 0; i < values.size(); ++i) {
    c.points.push_back({k0 + static_cast<int>(i), values[i]});
  }
  return c;
}

TEST(PlateauTest, FlatFromFive) {
  std::vector<double> v;
  for (int k = 1; k <= 12; ++k) v.push_back(k < 5 ? -10.0 + k : -5.0);
  EXPECT_EQ(select_plateau(curve_of(v)), 5);
}

TEST(PlateauTest, IncreasingLineErrors) {
  std::vector<double> v;
  for (int k = 1; k <= 40; ++k) v.push_back(0.1 * k);
  EXPECT_THROW(select_plateau(curve_of(v)), SelectionError);
}

TEST(PlateauTest, ShortCurveErrors) {
  EXPECT_THROW(select_plateau(curve_of({1, 1, 1})), SelectionError);
}

TEST(SweepTest, DeterministicCurve) {
  auto docs = disjoint_docs(16, 6, 9);
  std::vector<std::vector<int>> occ;
  for (const auto& d : docs) occ.push_back(d.ids);
  CooccurrenceIndex idx(occ, 12);
  SweepParams p;
  p.k_min = 1;
  p.k_max = 6;
  p.runs = 2;
  p.lda.passes = 60;
  p.threads = 3;
  auto a = sweep_select_k(docs, 12, idx, p);
  p.threads = 1;
  auto b = sweep_select_k(docs, 12, idx, p);
  ASSERT_EQ(a.curve.points.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(a.curve.points[i].k, static_cast<int>(i) + 1);
    EXPECT_EQ(a.curve.points[i].coherence, b.curve.points[i].coherence);
  }
  EXPECT_EQ(a.selected, b.selected);
}

TEST(ModelIoTest, RoundTrip) {
  Corpus c = make_corpus({{"measles", "vaccine"}, {"autism", "vaccine", "fear"}});
  auto counts = c.counts();
  LdaParams p;
  p.k = 2;
  LdaModel m = train_lda(counts, c.dictionary.size(), p);
  auto dir = std::filesystem::temp_directory_path() / "retrace_model_io";
  std::filesystem::remove_all(dir);
  save_model(dir, m, c.dictionary, {"d0", "d1"});
  LoadedModel l = load_model(dir);
  EXPECT_EQ(l.model.phi, m.phi);
  EXPECT_EQ(l.model.theta, m.theta);
  EXPECT_EQ(l.dictionary.tokens(), c.dictionary.tokens());
  EXPECT_EQ(l.doc_ids, (std::vector<std::string>{"d0", "d1"}));
}

}  // namespace
}  // namespace retrace::topics
