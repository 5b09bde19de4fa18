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

#include "retrace/topics/lda.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/special_functions/digamma.hpp>
#include <json.hpp>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/strings.h"

namespace retrace::topics {

namespace {

double digamma(double x) { return boost::math::digamma(x); }

// Uniform [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// exp(E[log theta]) for one document's gamma.
void exp_dirichlet_expectation(const double* gamma, double* out, int k) {
  double total = 0;
  for (int t = 0; t < k; ++t) total += gamma[t];
  double dt = digamma(total);
  for (int t = 0; t < k; ++t) out[t] = std::exp(digamma(gamma[t]) - dt);
}

}  // namespace

LdaModel train_lda(const std::vector<SparseDoc>& docs, int vocab, const LdaParams& p) {
  if (p.k < 1) throw ValidationError("number of topics must be at least 1");
  if (docs.empty()) throw ValidationError("cannot train on an empty corpus");
  if (vocab < 1) throw ValidationError("vocabulary is empty");
  const simd::KernelTable& kt = p.kernels ? *p.kernels : simd::kernels();

  const int k = p.k;
  const int n_docs = static_cast<int>(docs.size());
  const std::size_t ks = static_cast<std::size_t>(k);
  LdaModel m;
  m.k = k;
  m.vocab = vocab;
  m.docs = n_docs;
  m.alpha = p.alpha.value_or(1.0 / k);
  m.eta = p.eta.value_or(1.0 / k);
  m.seed = p.seed;
  m.iterations = p.passes;
  if (k > n_docs) {
    m.warnings.push_back("K=" + std::to_string(k) + " exceeds the number of documents (" +
                         std::to_string(n_docs) + ")");
  }
  for (const auto& d : docs) {
    for (int id : d.ids) {
      if (id < 0 || id >= vocab) throw ValidationError("term id outside the vocabulary");
    }
  }

  // lambda and expElogbeta are stored vocab x k so one word's topic weights
  // are contiguous for the vector kernels.
  std::mt19937_64 rng(p.seed);
  std::vector<double> lambda(static_cast<std::size_t>(vocab) * ks);
  for (double& v : lambda) v = 0.9 + 0.2 * uniform01(rng);

  std::vector<double> exp_elog_beta(lambda.size());
  std::vector<double> topic_totals(ks);
  auto refresh_beta = [&](int pass) {
    std::fill(topic_totals.begin(), topic_totals.end(), 0.0);
    for (int w = 0; w < vocab; ++w) {
      kt.axpy(topic_totals.data(), &lambda[w * ks], 1.0, ks);
    }
    std::vector<double> dt(ks);
    for (int t = 0; t < k; ++t) {
      if (!std::isfinite(topic_totals[t])) {
        throw NumericalError("non-finite topic-word parameter", pass);
      }
      dt[t] = digamma(topic_totals[t]);
    }
    for (int w = 0; w < vocab; ++w) {
      for (int t = 0; t < k; ++t) {
        exp_elog_beta[w * ks + t] = std::exp(digamma(lambda[w * ks + t]) - dt[t]);
      }
    }
  };
  refresh_beta(0);

  std::vector<double> gamma(static_cast<std::size_t>(n_docs) * ks, 1.0);
  std::vector<double> sstats(lambda.size());
  std::vector<double> elog_theta(ks), acc(ks), last(ks);
  std::vector<double> phi_prev, phi_cur(static_cast<std::size_t>(k) * vocab);

  auto e_step = [&](int d, bool collect, int pass) {
    const SparseDoc& doc = docs[d];
    double* g = &gamma[d * ks];
    const std::size_t nw = doc.ids.size();
    if (nw == 0) {
      std::fill(g, g + ks, m.alpha);
      return;
    }
    exp_dirichlet_expectation(g, elog_theta.data(), k);
    for (int it = 0; it < p.e_step_max_iter; ++it) {
      std::copy(g, g + ks, last.begin());
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t i = 0; i < nw; ++i) {
        const double* eb = &exp_elog_beta[doc.ids[i] * ks];
        double norm = kt.dot(elog_theta.data(), eb, ks) + 1e-100;
        kt.axpy(acc.data(), eb, doc.weights[i] / norm, ks);
      }
      kt.multiply(g, elog_theta.data(), acc.data(), ks);
      for (int t = 0; t < k; ++t) g[t] += m.alpha;
      exp_dirichlet_expectation(g, elog_theta.data(), k);
      double change = kt.l1_distance(g, last.data(), ks) / k;
      if (!std::isfinite(change)) {
        throw NumericalError("non-finite document-topic parameter", pass);
      }
      if (change < p.e_step_tolerance) break;
    }
    if (!collect) return;
    for (std::size_t i = 0; i < nw; ++i) {
      const double* eb = &exp_elog_beta[doc.ids[i] * ks];
      double norm = kt.dot(elog_theta.data(), eb, ks) + 1e-100;
      kt.scaled_product_add(&sstats[doc.ids[i] * ks], elog_theta.data(), eb,
                            doc.weights[i] / norm, ks);
    }
  };

  auto normalized_phi = [&](std::vector<double>& out) {
    for (int t = 0; t < k; ++t) {
      double total = 0;
      for (int w = 0; w < vocab; ++w) total += lambda[w * ks + t];
      for (int w = 0; w < vocab; ++w) {
        out[static_cast<std::size_t>(t) * vocab + w] = lambda[w * ks + t] / total;
      }
    }
  };

  for (int pass = 1; pass <= p.passes; ++pass) {
    std::fill(sstats.begin(), sstats.end(), 0.0);
    for (int d = 0; d < n_docs; ++d) e_step(d, true, pass);
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = m.eta + sstats[i];
    refresh_beta(pass);
    m.passes_run = pass;

    normalized_phi(phi_cur);
    if (!phi_prev.empty()) {
      double max_change = 0;
      for (std::size_t i = 0; i < phi_cur.size(); ++i) {
        max_change = std::max(max_change, std::abs(phi_cur[i] - phi_prev[i]));
      }
      if (max_change < p.tolerance) break;
    }
    phi_prev = phi_cur;
  }

  // Final document-topic estimates against the converged topics.
  for (int d = 0; d < n_docs; ++d) e_step(d, false, m.passes_run);

  m.phi = std::move(phi_cur);
  m.theta.resize(static_cast<std::size_t>(n_docs) * ks);
  for (int d = 0; d < n_docs; ++d) {
    double total = 0;
    for (int t = 0; t < k; ++t) total += gamma[d * ks + t];
    for (int t = 0; t < k; ++t) m.theta[d * ks + t] = gamma[d * ks + t] / total;
  }
  for (double v : m.phi) {
    if (!std::isfinite(v)) throw NumericalError("non-finite phi", m.passes_run);
  }
  for (double v : m.theta) {
    if (!std::isfinite(v)) throw NumericalError("non-finite theta", m.passes_run);
  }
  return m;
}

std::vector<int> top_terms(const LdaModel& model, int topic, int n) {
  if (topic < 0 || topic >= model.k) throw ValidationError("topic index out of range");
  std::vector<int> ids(model.vocab);
  std::iota(ids.begin(), ids.end(), 0);
  int take = std::clamp(n, 0, model.vocab);
  std::partial_sort(ids.begin(), ids.begin() + take, ids.end(), [&](int a, int b) {
    double pa = model.phi_at(topic, a), pb = model.phi_at(topic, b);
    return pa != pb ? pa > pb : a < b;
  });
  ids.resize(take);
  return ids;
}

void save_model(const std::filesystem::path& dir, const LdaModel& m,
                const Dictionary& dictionary, const std::vector<std::string>& doc_ids,
                const std::string& measure) {
  if (dictionary.size() != m.vocab) {
    throw ValidationError("dictionary size does not match the model vocabulary");
  }
  if (static_cast<int>(doc_ids.size()) != m.docs) {
    throw ValidationError("document ids do not match the model");
  }
  std::filesystem::create_directories(dir);
  {
    csv::Row header{"topic"};
    for (const auto& t : dictionary.tokens()) header.push_back(t);
    csv::Writer w(dir / "phi.csv", header);
    for (int t = 0; t < m.k; ++t) {
      csv::Row row{std::to_string(t)};
      for (int v = 0; v < m.vocab; ++v) row.push_back(format_double(m.phi_at(t, v)));
      w.write(row);
    }
  }
  {
    csv::Row header{"doc_id"};
    for (int t = 0; t < m.k; ++t) header.push_back("topic_" + std::to_string(t));
    csv::Writer w(dir / "theta.csv", header);
    for (int d = 0; d < m.docs; ++d) {
      csv::Row row{doc_ids[d]};
      for (int t = 0; t < m.k; ++t) row.push_back(format_double(m.theta_at(d, t)));
      w.write(row);
    }
  }
  dictionary.save(dir / "dictionary.csv");
  nlohmann::json meta{{"K", m.k},
                      {"alpha", m.alpha},
                      {"eta", m.eta},
                      {"seed", m.seed},
                      {"iterations", m.iterations},
                      {"passes_run", m.passes_run},
                      {"vocab", m.vocab},
                      {"docs", m.docs},
                      {"measure", measure}};
  write_text_file(dir / "meta.json", meta.dump(2) + "\n");
}

LoadedModel load_model(const std::filesystem::path& dir) {
  LoadedModel out;
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(read_text_file(dir / "meta.json"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad model meta.json: " + std::string(e.what()));
  }
  LdaModel& m = out.model;
  m.k = meta.at("K").get<int>();
  m.alpha = meta.at("alpha").get<double>();
  m.eta = meta.at("eta").get<double>();
  m.seed = meta.at("seed").get<std::uint64_t>();
  m.iterations = meta.at("iterations").get<int>();
  m.passes_run = meta.value("passes_run", m.iterations);
  out.dictionary = Dictionary::load(dir / "dictionary.csv");
  m.vocab = out.dictionary.size();

  csv::Table phi = csv::read_file(dir / "phi.csv");
  if (static_cast<int>(phi.rows.size()) != m.k) {
    throw DecodeError("phi.csv row count differs from K", phi.rows.size());
  }
  m.phi.reserve(static_cast<std::size_t>(m.k) * m.vocab);
  for (std::size_t r = 0; r < phi.rows.size(); ++r) {
    if (static_cast<int>(phi.rows[r].size()) != m.vocab + 1) {
      throw DecodeError("phi.csv row width differs from the vocabulary", r);
    }
    for (int v = 0; v < m.vocab; ++v) m.phi.push_back(std::stod(phi.rows[r][v + 1]));
  }
  csv::Table theta = csv::read_file(dir / "theta.csv");
  m.docs = static_cast<int>(theta.rows.size());
  for (std::size_t r = 0; r < theta.rows.size(); ++r) {
    if (static_cast<int>(theta.rows[r].size()) != m.k + 1) {
      throw DecodeError("theta.csv row width differs from K", r);
    }
    out.doc_ids.push_back(theta.rows[r][0]);
    for (int t = 0; t < m.k; ++t) m.theta.push_back(std::stod(theta.rows[r][t + 1]));
  }
  return out;
}

}  // namespace retrace::topics
