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

#include "retrace/pipeline/pipeline.h"

#include <chrono>
#include <functional>
#include <future>
#include <set>

#include "retrace/annotate/grid.h"
#include "retrace/annotate/store.h"
#include "retrace/classify/classify.h"
#include "retrace/common/csv.h"
#include "retrace/common/digest.h"
#include "retrace/common/error.h"
#include "retrace/common/strings.h"
#include "retrace/extract/extract.h"
#include "retrace/harvest/harvest.h"
#include "retrace/report/report.h"
#include "retrace/topics/workflow.h"
#include "retrace/viz/exports.h"

namespace retrace::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::kHarvest:
      return "harvest";
    case Stage::kClassify:
      return "classify";
    case Stage::kExtract:
      return "extract";
    case Stage::kAnnotateExport:
      return "annotate-export";
    case Stage::kModel:
      return "model";
    case Stage::kViz:
      return "viz";
    case Stage::kReport:
      return "report";
  }
  return "";
}

Stage parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (stage_name(s) == name) return s;
  }
  throw ValidationError("unknown stage '" + std::string(name) + "'");
}

std::vector<Stage> parse_stages(std::string_view list) {
  std::set<Stage> wanted;
  for (const auto& part : csv::split_multi(list, ',')) wanted.insert(parse_stage(part));
  if (wanted.empty()) return {std::begin(kAllStages), std::end(kAllStages)};
  return {wanted.begin(), wanted.end()};
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal();
}

const std::set<std::string> kTopKeys{"seed_doi",       "endpoint",   "retraction_db",
                                     "tables_dir",     "texts_dir",  "patterns",
                                     "annotation_store", "periods",  "model",
                                     "mtm",            "output_dir"};
const std::set<std::string> kModelKeys{"field", "k",      "k_min",  "k_max",   "runs",
                                       "seed",  "passes", "lambda", "epsilon", "window"};

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& doc, const fs::path& base) {
  if (!doc.is_object()) throw ConfigError("pipeline config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!kTopKeys.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
  }
  for (const char* key : {"seed_doi", "endpoint", "retraction_db", "tables_dir", "texts_dir",
                          "patterns", "output_dir"}) {
    if (!doc.contains(key)) throw ConfigError("config is missing '" + std::string(key) + "'");
  }
  PipelineConfig c;
  c.seed_doi = get<std::string>(doc, "seed_doi", "config");
  std::string endpoint = get<std::string>(doc, "endpoint", "config");
  c.endpoint = harvest::is_url(endpoint) ? endpoint : resolve(base, endpoint).string();
  c.retraction_db = resolve(base, get<std::string>(doc, "retraction_db", "config"));
  c.tables_dir = resolve(base, get<std::string>(doc, "tables_dir", "config"));
  c.texts_dir = resolve(base, get<std::string>(doc, "texts_dir", "config"));
  c.patterns = resolve(base, get<std::string>(doc, "patterns", "config"));
  if (doc.contains("annotation_store") && !doc["annotation_store"].is_null()) {
    c.annotation_store = resolve(base, get<std::string>(doc, "annotation_store", "config"));
  }
  c.output_dir = resolve(base, get<std::string>(doc, "output_dir", "config"));
  if (doc.contains("periods")) {
    auto p = get<std::vector<int>>(doc, "periods", "config");
    if (p.size() != 4) throw ConfigError("config.periods needs four years");
    c.periods = {p[0], p[1], p[2], p[3]};
  }
  if (doc.contains("model")) {
    const json& m = doc["model"];
    if (!m.is_object()) throw ConfigError("config.model must be an object");
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (!kModelKeys.count(it.key())) {
        throw ConfigError("unknown config key 'model." + it.key() + "'");
      }
    }
    ModelConfig& mc = c.model;
    if (m.contains("field")) mc.field = get<std::string>(m, "field", "model");
    if (m.contains("k") && !m["k"].is_null()) mc.k = get<int>(m, "k", "model");
    if (m.contains("k_min")) mc.k_min = get<int>(m, "k_min", "model");
    if (m.contains("k_max")) mc.k_max = get<int>(m, "k_max", "model");
    if (m.contains("runs")) mc.runs = get<int>(m, "runs", "model");
    if (m.contains("seed")) mc.seed = get<std::uint64_t>(m, "seed", "model");
    if (m.contains("passes")) mc.passes = get<int>(m, "passes", "model");
    if (m.contains("lambda")) mc.lambda = get<double>(m, "lambda", "model");
    if (m.contains("epsilon")) mc.epsilon = get<double>(m, "epsilon", "model");
    if (m.contains("window")) mc.window = get<int>(m, "window", "model");
  }
  if (doc.contains("mtm")) {
    const json& m = doc["mtm"];
    if (m.contains("groupings")) c.mtm_groupings = get<std::vector<std::string>>(m, "groupings", "mtm");
    if (m.contains("area_top_n")) c.mtm_area_top_n = get<std::size_t>(m, "area_top_n", "mtm");
  }
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(doc, path.parent_path());
}

void PipelineConfig::validate() const {
  periods.validate();
  if (seed_doi.empty()) throw ConfigError("config.seed_doi is empty");
  std::vector<fs::path> must_exist{retraction_db, tables_dir, texts_dir, patterns};
  if (!harvest::is_url(endpoint)) must_exist.push_back(endpoint);
  if (annotation_store) must_exist.push_back(*annotation_store);
  for (const auto& p : must_exist) {
    if (!fs::exists(p)) throw ConfigError("config path does not exist: " + p.string());
  }
  if (model.field != "abstract" && model.field != "context") {
    throw ConfigError("model.field must be abstract or context");
  }
  if (model.k && *model.k < 1) throw ConfigError("model.k must be positive");
  if (model.k_min < 1 || model.k_max < model.k_min) throw ConfigError("bad model K range");
  if (model.runs < 1 || model.passes < 1) throw ConfigError("model runs and passes must be positive");
  if (model.lambda < 0 || model.lambda > 1) throw ConfigError("model.lambda must lie in [0, 1]");
  for (const auto& g : mtm_groupings) viz::parse_mtm_grouping(g);
}

namespace {

struct StagePlan {
  Stage stage;
  std::vector<fs::path> inputs;   // absolute
  json params;
  std::vector<std::string> outputs;  // relative to output_dir
  std::function<void()> run;
};

std::string input_key(const fs::path& p, const fs::path& out_dir) {
  fs::path rel = p.lexically_relative(out_dir);
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return p.generic_string();
}

json record_json(const StageRecord& r) {
  json j{{"stage", r.stage}, {"status", r.status},   {"inputs", r.inputs},
         {"params", r.params}, {"outputs", r.outputs}, {"wall_ms", r.wall_ms}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

StageRecord record_from_json(const json& j) {
  StageRecord r;
  r.stage = j.value("stage", "");
  r.status = j.value("status", "");
  r.inputs = j.value("inputs", std::map<std::string, std::string>{});
  r.params = j.value("params", "");
  r.outputs = j.value("outputs", std::map<std::string, std::string>{});
  r.wall_ms = j.value("wall_ms", 0.0);
  r.error = j.value("error", "");
  return r;
}

std::vector<StagePlan> plan(const PipelineConfig& c) {
  const fs::path& out = c.output_dir;
  json periods = {c.periods.publication, c.periods.partial, c.periods.full, c.periods.end};
  std::vector<StagePlan> p;

  {
    StagePlan s{Stage::kHarvest, {c.retraction_db}, {{"seed_doi", c.seed_doi}}, {"harvest.csv", "harvest.misses.csv"}, {}};
    if (harvest::is_url(c.endpoint)) {
      s.params["endpoint"] = c.endpoint;
    } else {
      s.inputs.push_back(c.endpoint);
    }
    s.run = [&c, out] {
      harvest::run_harvest(c.seed_doi, c.endpoint, out / "harvest.csv", c.retraction_db);
    };
    p.push_back(std::move(s));
  }
  p.push_back({Stage::kClassify,
               {out / "harvest.csv", c.tables_dir},
               json::object(),
               {"classified.csv", "classified.pending.csv"},
               [&c, out] {
                 classify::classify_file(out / "harvest.csv", c.tables_dir, out / "classified.csv");
               }});
  p.push_back({Stage::kExtract,
               {out / "classified.csv", c.texts_dir, c.patterns},
               json::object(),
               {"citations.csv", "citations.review.csv", "citations.missing.csv", "abstracts.csv"},
               [&c, out] {
                 csv::Table entities = csv::read_file(out / "classified.csv");
                 std::vector<std::string> dois;
                 std::size_t col = entities.column("doi");
                 for (const auto& row : entities.rows) dois.push_back(row[col]);
                 auto patterns = extract::PatternSet::load(c.patterns);
                 auto result = extract::extract_all(c.texts_dir, dois, patterns);
                 extract::write_extraction(result, out / "citations.csv", out / "abstracts.csv");
               }});
  {
    StagePlan s{Stage::kAnnotateExport, {}, json::object(), {"annotated.csv"}, {}};
    s.inputs.push_back(c.annotation_store.value_or(fs::path()));
    s.inputs.push_back(default_data_dir() / "decision_grid.csv");
    s.run = [&c, out] {
      auto grid = annotate::DecisionGrid::load_default();
      annotate::AnnotationStore store(*c.annotation_store, grid);
      store.export_csv(out / "annotated.csv");
    };
    p.push_back(std::move(s));
  }
  {
    const ModelConfig& m = c.model;
    fs::path corpus = out / (m.field == "abstract" ? "abstracts.csv" : "citations.csv");
    json params{{"field", m.field}, {"seed", m.seed}, {"passes", m.passes}};
    std::vector<std::string> outputs{"model"};
    if (m.k) {
      params["k"] = *m.k;
    } else {
      params.update({{"k_min", m.k_min}, {"k_max", m.k_max}, {"runs", m.runs},
                     {"epsilon", m.epsilon}, {"window", m.window}});
      outputs.push_back("curve.csv");
      outputs.push_back("curve.csv.json");
    }
    StagePlan s{Stage::kModel, {corpus}, params, outputs, {}};
    s.run = [&c, out, corpus] {
      const ModelConfig& m = c.model;
      auto prepared = topics::prepare_corpus(
          corpus, m.field == "abstract" ? topics::DocKind::kAbstract : topics::DocKind::kContext);
      topics::LdaParams lda;
      lda.seed = m.seed;
      lda.passes = m.passes;
      int k;
      if (m.k) {
        k = *m.k;
      } else {
        topics::SweepParams sp;
        sp.k_min = m.k_min;
        sp.k_max = m.k_max;
        sp.runs = m.runs;
        sp.seed = m.seed;
        sp.lda = lda;
        auto r = topics::sweep_corpus(prepared, sp, {m.epsilon, m.window}, out / "curve.csv");
        if (!r.selected) throw SelectionError(r.selection_error);
        k = *r.selected;
      }
      lda.k = k;
      fs::remove_all(out / "model");
      topics::train_corpus(prepared, lda, out / "model");
    };
    p.push_back(std::move(s));
  }
  {
    std::vector<std::string> outputs{"ldavis.json", "terms_topics.csv", "docs_topics.csv"};
    for (const auto& g : c.mtm_groupings) outputs.push_back("mtm_" + g + ".json");
    StagePlan s{Stage::kViz,
                {out / "model", out / "classified.csv"},
                {{"lambda", c.model.lambda}, {"periods", periods}, {"groupings", c.mtm_groupings},
                 {"area_top_n", c.mtm_area_top_n}},
                outputs,
                {}};
    s.run = [&c, out] {
      topics::LoadedModel lm = topics::load_model(out / "model");
      std::vector<std::future<void>> branches;
      branches.push_back(std::async(std::launch::async, [&] {
        viz::write_ldavis(out / "ldavis.json", lm.model, lm.dictionary, c.model.lambda);
      }));
      branches.push_back(std::async(std::launch::async, [&] {
        viz::write_terms_topics(out / "terms_topics.csv", lm.model, lm.dictionary);
      }));
      branches.push_back(std::async(std::launch::async, [&] {
        viz::write_docs_topics(out / "docs_topics.csv", lm.model, lm.doc_ids);
      }));
      for (const auto& g : c.mtm_groupings) {
        branches.push_back(std::async(std::launch::async, [&, g] {
          viz::MtmGrouping grouping = viz::parse_mtm_grouping(g);
          viz::write_mtm(out / ("mtm_" + g + ".json"), lm.model, lm.doc_ids, out / "classified.csv",
                         grouping, c.periods,
                         grouping == viz::MtmGrouping::kArea ? c.mtm_area_top_n : 0);
        }));
      }
      for (auto& b : branches) b.get();
    };
    p.push_back(std::move(s));
  }
  p.push_back({Stage::kReport,
               {out / "classified.csv", out / "annotated.csv", out / "citations.csv"},
               {{"periods", periods}},
               {"report"},
               [&c, out] {
                 auto entities = report::load_entities(out / "classified.csv");
                 auto citations = report::load_annotations(out / "annotated.csv", out / "citations.csv");
                 fs::remove_all(out / "report");
                 report::write_report(out / "report", entities, citations, c.periods);
               }});
  return p;
}

void write_manifest(const fs::path& path, const std::map<std::string, StageRecord>& records) {
  json stages = json::array();
  for (Stage s : kAllStages) {
    auto it = records.find(std::string(stage_name(s)));
    if (it != records.end()) stages.push_back(record_json(it->second));
  }
  write_text_file(path, json{{"stages", stages}}.dump(2) + "\n");
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages) {
  config.validate();
  const fs::path& out = config.output_dir;
  fs::create_directories(out);
  fs::path manifest_path = out / "manifest.json";

  std::map<std::string, StageRecord> manifest;
  if (fs::exists(manifest_path)) {
    try {
      json m = json::parse(read_text_file(manifest_path));
      for (const auto& j : m.at("stages")) {
        StageRecord r = record_from_json(j);
        manifest[r.stage] = r;
      }
    } catch (const json::exception&) {
      manifest.clear();  // unreadable manifest: rerun everything
    }
  }

  std::vector<StagePlan> plans = plan(config);
  std::map<std::string, std::string> producer;
  for (const auto& p : plans) {
    for (const auto& o : p.outputs) producer[o] = std::string(stage_name(p.stage));
  }
  std::set<Stage> wanted(stages.begin(), stages.end());

  RunResult result;
  for (auto& p : plans) {
    if (!wanted.count(p.stage)) continue;
    std::string name(stage_name(p.stage));
    StageRecord rec;
    rec.stage = name;
    for (const auto& in : p.inputs) {
      if (in.empty() || !fs::exists(in)) {
        std::string key = in.empty() ? "annotation_store" : input_key(in, out);
        std::string msg = "stage '" + name + "' is missing its input " + key;
        if (auto it = producer.find(key); it != producer.end()) {
          msg += " (run stage '" + it->second + "' first)";
        }
        write_manifest(manifest_path, manifest);
        throw DependencyError(msg);
      }
      rec.inputs[input_key(in, out)] = sha256_path(in);
    }
    rec.params = sha256_hex(p.params.dump());

    auto prior = manifest.find(name);
    bool up_to_date = prior != manifest.end() && prior->second.status != "failed" &&
                      prior->second.inputs == rec.inputs && prior->second.params == rec.params;
    if (up_to_date) {
      for (const auto& o : p.outputs) {
        auto it = prior->second.outputs.find(o);
        if (it == prior->second.outputs.end() || it->second != sha256_path(out / o)) {
          up_to_date = false;
          break;
        }
      }
    }
    if (up_to_date) {
      rec.outputs = prior->second.outputs;
      rec.status = "skipped";
      ++result.skipped;
    } else {
      auto t0 = std::chrono::steady_clock::now();
      try {
        p.run();
      } catch (const std::exception& e) {
        rec.status = "failed";
        rec.error = e.what();
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        manifest[name] = rec;
        result.records.push_back(rec);
        write_manifest(manifest_path, manifest);
        throw;
      }
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (const auto& o : p.outputs) rec.outputs[o] = sha256_path(out / o);
      rec.status = "executed";
      ++result.executed;
    }
    manifest[name] = rec;
    result.records.push_back(rec);
    write_manifest(manifest_path, manifest);
  }
  return result;
}

}  // namespace retrace::pipeline
