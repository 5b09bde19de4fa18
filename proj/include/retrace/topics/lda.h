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

#ifndef RETRACE_TOPICS_LDA_H_
#define RETRACE_TOPICS_LDA_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "retrace/simd/kernels.h"
#include "retrace/topics/corpus.h"

namespace retrace::topics {

struct LdaParams {
  int k = 10;
  // Symmetric priors; unset means 1/K.
  std::optional<double> alpha;
  std::optional<double> eta;
  int passes = 400;
  // Stop early once no phi entry moves by more than this between passes.
  double tolerance = 1e-10;
  int e_step_max_iter = 100;
  double e_step_tolerance = 1e-6;
  std::uint64_t seed = 1;
  // Kernel table for the inner loops; null means the active ISA.
  const simd::KernelTable* kernels = nullptr;
};

struct LdaModel {
  int k = 0;
  int vocab = 0;
  int docs = 0;
  double alpha = 0;
  double eta = 0;
  std::uint64_t seed = 0;
  int iterations = 0;    // configured passes
  int passes_run = 0;    // passes actually executed
  std::vector<double> phi;    // k x vocab, row-major
  std::vector<double> theta;  // docs x k, row-major
  std::vector<std::string> warnings;

  double phi_at(int topic, int word) const { return phi[std::size_t(topic) * vocab + word]; }
  double theta_at(int doc, int topic) const { return theta[std::size_t(doc) * k + topic]; }
};

// Batch variational Bayes LDA over weighted (possibly fractional) sparse
// documents. Deterministic for a given seed and kernel table.
// Throws ValidationError for k < 1, an empty corpus or vocab < 1, and
// NumericalError if a non-finite value appears.
LdaModel train_lda(const std::vector<SparseDoc>& docs, int vocab, const LdaParams& params);

// Term ids of one topic by descending phi, ties by id, at most n (clamped
// to the vocabulary).
std::vector<int> top_terms(const LdaModel& model, int topic, int n = 30);

// Model directory: phi.csv, theta.csv, dictionary.csv, meta.json.
void save_model(const std::filesystem::path& dir, const LdaModel& model,
                const Dictionary& dictionary, const std::vector<std::string>& doc_ids,
                const std::string& measure = "umass");

struct LoadedModel {
  LdaModel model;
  Dictionary dictionary;
  std::vector<std::string> doc_ids;
};
LoadedModel load_model(const std::filesystem::path& dir);

}  // namespace retrace::topics

#endif  // RETRACE_TOPICS_LDA_H_
