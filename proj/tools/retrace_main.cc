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

// retrace command-line entry point.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "retrace/annotate/grid.h"
#include "retrace/annotate/service.h"
#include "retrace/annotate/store.h"
#include "retrace/classify/classify.h"
#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/strings.h"
#include "retrace/extract/extract.h"
#include "retrace/harvest/harvest.h"
#include "retrace/pipeline/pipeline.h"
#include "retrace/report/period.h"
#include "retrace/report/report.h"
#include "retrace/topics/workflow.h"
#include "retrace/viz/exports.h"

namespace {

using namespace retrace;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return 3;
  if (dynamic_cast<const ConfigError*>(&e)) return 4;
  if (dynamic_cast<const TransportError*>(&e)) return 5;
  if (dynamic_cast<const DecodeError*>(&e)) return 6;
  if (dynamic_cast<const DependencyError*>(&e)) return 7;
  if (dynamic_cast<const SelectionError*>(&e)) return 8;
  return 1;
}

topics::DocKind field_kind(const std::string& field) { return topics::parse_doc_kind(field); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"retrace: citation analysis of a retracted article"};
  app.require_subcommand(1);

  // harvest
  struct {
    std::string doi, endpoint, out, retraction_db;
    std::string record;
    double rate = 1.0;
    int concurrency = 4;
    std::size_t page_size = 10;
  } h;
  auto* harvest_cmd = app.add_subcommand("harvest", "Fetch citations and citing-entity metadata");
  harvest_cmd->add_option("--doi", h.doi, "Seed DOI")->required();
  harvest_cmd->add_option("--endpoint", h.endpoint, "Index URL or NDJSON fixture")->required();
  harvest_cmd->add_option("--out", h.out, "Output CSV")->required();
  harvest_cmd->add_option("--retraction-db", h.retraction_db, "Retraction snapshot CSV")->required();
  harvest_cmd->add_option("--record", h.record, "Append live exchanges to this fixture");
  harvest_cmd->add_option("--rate", h.rate, "Requests per second")->capture_default_str();
  harvest_cmd->add_option("--concurrency", h.concurrency, "Parallel metadata requests")->capture_default_str();
  harvest_cmd->add_option("--page-size", h.page_size, "DOIs per metadata request")->capture_default_str();

  // classify
  std::string cl_in, cl_tables, cl_out;
  auto* classify_cmd = app.add_subcommand("classify", "Assign subject areas and categories");
  classify_cmd->add_option("--in", cl_in, "Harvest CSV")->required();
  classify_cmd->add_option("--tables", cl_tables, "Mapping table directory")->required();
  classify_cmd->add_option("--out", cl_out, "Output CSV")->required();

  // extract
  std::string ex_texts, ex_entities, ex_patterns, ex_out, ex_abstracts;
  int ex_threads = 0;
  auto* extract_cmd = app.add_subcommand("extract", "Extract in-text citations and contexts");
  extract_cmd->add_option("--texts", ex_texts, "Full-text directory")->required();
  extract_cmd->add_option("--entities", ex_entities, "Classified CSV (doi column)")->required();
  extract_cmd->add_option("--patterns", ex_patterns, "Pointer pattern CSV")->required();
  extract_cmd->add_option("--out", ex_out, "Citations CSV")->required();
  extract_cmd->add_option("--abstracts", ex_abstracts, "Also write doi,abstract here");
  extract_cmd->add_option("--threads", ex_threads, "Worker threads (0: all cores)");

  // annotate
  auto* annotate_cmd = app.add_subcommand("annotate", "Annotation service and export");
  annotate_cmd->require_subcommand(1);
  std::string an_citations, an_store, an_host = "127.0.0.1", an_ui, an_out;
  int an_port = 8080;
  auto* serve_cmd = annotate_cmd->add_subcommand("serve", "Serve the annotation JSON API");
  serve_cmd->add_option("--citations", an_citations, "Citations CSV")->required();
  serve_cmd->add_option("--store", an_store, "Annotation log")->required();
  serve_cmd->add_option("--port", an_port, "Port")->capture_default_str();
  serve_cmd->add_option("--host", an_host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--ui", an_ui, "Static UI bundle directory");
  auto* export_cmd = annotate_cmd->add_subcommand("export", "Export the current annotations");
  export_cmd->add_option("--store", an_store, "Annotation log")->required();
  export_cmd->add_option("--out", an_out, "Annotated CSV")->required();

  // model
  auto* model_cmd = app.add_subcommand("model", "Topic model sweep and training");
  model_cmd->require_subcommand(1);
  struct {
    std::string corpus, field = "abstract", out;
    int kmin = 1, kmax = 40, runs = 3, passes = 400, window = 2, k = 0, threads = 0;
    std::uint64_t seed = 1;
    double epsilon = 0.005;
  } m;
  auto* sweep_cmd = model_cmd->add_subcommand("sweep", "Coherence curve over K and plateau choice");
  sweep_cmd->add_option("--corpus", m.corpus, "Abstracts or citations CSV")->required();
  sweep_cmd->add_option("--field", m.field, "abstract | context")->capture_default_str();
  sweep_cmd->add_option("--kmin", m.kmin)->capture_default_str();
  sweep_cmd->add_option("--kmax", m.kmax)->capture_default_str();
  sweep_cmd->add_option("--runs", m.runs, "Seeds per K")->capture_default_str();
  sweep_cmd->add_option("--seed", m.seed)->capture_default_str();
  sweep_cmd->add_option("--passes", m.passes)->capture_default_str();
  sweep_cmd->add_option("--epsilon", m.epsilon, "Plateau tolerance")->capture_default_str();
  sweep_cmd->add_option("--window", m.window, "Plateau window")->capture_default_str();
  sweep_cmd->add_option("--threads", m.threads, "Parallel K values (0: all cores)");
  sweep_cmd->add_option("--out", m.out, "Curve CSV")->required();
  auto* train_cmd = model_cmd->add_subcommand("train", "Train one model and write its directory");
  train_cmd->add_option("--corpus", m.corpus, "Abstracts or citations CSV")->required();
  train_cmd->add_option("--field", m.field, "abstract | context")->capture_default_str();
  train_cmd->add_option("--k", m.k, "Number of topics")->required();
  train_cmd->add_option("--seed", m.seed)->capture_default_str();
  train_cmd->add_option("--passes", m.passes)->capture_default_str();
  train_cmd->add_option("--out", m.out, "Model directory")->required();

  // viz
  std::string vz_model, vz_meta, vz_grouping, vz_out, vz_terms, vz_docs;
  std::string vz_periods = "1998,2004,2010,2017";
  double vz_lambda = 0.6;
  std::size_t vz_top_n = 0;
  auto* viz_cmd = app.add_subcommand("viz", "LDAvis and MTMvis payloads");
  viz_cmd->add_option("--model", vz_model, "Model directory")->required();
  viz_cmd->add_option("--meta", vz_meta, "Classified CSV, required with --grouping");
  viz_cmd->add_option("--grouping", vz_grouping, "period | area | year (omit for LDAvis)");
  viz_cmd->add_option("--out", vz_out, "Output JSON")->required();
  viz_cmd->add_option("--lambda", vz_lambda, "Relevance weight")->capture_default_str();
  viz_cmd->add_option("--periods", vz_periods, "pub,partial,full,end")->capture_default_str();
  viz_cmd->add_option("--top-n", vz_top_n, "Fold labels beyond the top N into Others");
  viz_cmd->add_option("--terms", vz_terms, "Also write top-30 terms per topic CSV");
  viz_cmd->add_option("--docs", vz_docs, "Also write the document-topic CSV");

  // report
  std::string rp_entities, rp_annotations, rp_citations, rp_out, rp_grouping = "period";
  std::string rp_periods = "1998,2004,2010,2017";
  auto* report_cmd = app.add_subcommand("report", "Period-partitioned aggregate tables");
  report_cmd->add_option("--entities", rp_entities, "Classified CSV")->required();
  report_cmd->add_option("--annotations", rp_annotations, "Annotated CSV")->required();
  report_cmd->add_option("--citations", rp_citations, "Citations CSV for section kinds");
  report_cmd->add_option("--periods", rp_periods, "pub,partial,full,end")->capture_default_str();
  report_cmd->add_option("--grouping", rp_grouping, "period | year | section")->capture_default_str();
  report_cmd->add_option("--out", rp_out, "Report directory")->required();

  // run
  std::string rn_config, rn_stages;
  auto* run_cmd = app.add_subcommand("run", "Run the pipeline from a JSON config");
  run_cmd->add_option("--config", rn_config, "Pipeline config")->required();
  run_cmd->add_option("--stages", rn_stages, "Comma-separated subset");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*harvest_cmd) {
      harvest::HarvestOptions opt;
      opt.rate_per_second = h.rate;
      opt.concurrency = h.concurrency;
      opt.page_size = h.page_size;
      if (!h.record.empty()) opt.record_to = h.record;
      auto s = harvest::run_harvest(h.doi, h.endpoint, h.out, h.retraction_db, opt);
      std::cout << "citing entities: " << s.entities << ", with source_id: " << s.with_source_id
                << ", with source_title: " << s.with_source_title
                << ", retracted: " << s.retracted << ", metadata misses: " << s.misses << "\n";
    } else if (*classify_cmd) {
      auto s = classify::classify_file(cl_in, cl_tables, cl_out);
      std::cout << "entities: " << s.entities << ", assigned: " << s.assigned
                << ", manual-pending: " << s.pending << "\n";
    } else if (*extract_cmd) {
      csv::Table entities = csv::read_file(ex_entities);
      std::vector<std::string> dois;
      std::size_t col = entities.column("doi");
      for (const auto& row : entities.rows) dois.push_back(row[col]);
      auto result = extract::extract_all(ex_texts, dois, extract::PatternSet::load(ex_patterns),
                                         ex_threads);
      std::optional<std::filesystem::path> abstracts;
      if (!ex_abstracts.empty()) abstracts = ex_abstracts;
      extract::write_extraction(result, ex_out, abstracts);
      std::cout << "in-text citations: " << result.citations.size()
                << ", review: " << result.review.size() << ", missing: " << result.missing.size()
                << "\n";
    } else if (*serve_cmd) {
      auto grid = annotate::DecisionGrid::load_default();
      annotate::AnnotationStore store(an_store, grid);
      csv::Table templates = csv::read_file(default_data_dir() / "decision_macros.csv");
      annotate::AnnotationService service(annotate::load_citations(an_citations), grid, store,
                                          templates);
      std::cout << "serving on http://" << an_host << ":" << an_port << "\n" << std::flush;
      annotate::serve(service, an_host, an_port, an_ui);
    } else if (*export_cmd) {
      auto grid = annotate::DecisionGrid::load_default();
      if (!std::filesystem::exists(an_store)) throw ConfigError("no annotation log at " + an_store);
      annotate::AnnotationStore store(an_store, grid);
      store.export_csv(an_out);
    } else if (*sweep_cmd) {
      auto prepared = topics::prepare_corpus(m.corpus, field_kind(m.field));
      topics::SweepParams sp;
      sp.k_min = m.kmin;
      sp.k_max = m.kmax;
      sp.runs = m.runs;
      sp.seed = m.seed;
      sp.threads = m.threads;
      sp.lda.passes = m.passes;
      auto r = topics::sweep_corpus(prepared, sp, {m.epsilon, m.window}, m.out);
      if (!r.selected) throw SelectionError(r.selection_error);
      std::cout << "selected K: " << *r.selected << "\n";
    } else if (*train_cmd) {
      auto prepared = topics::prepare_corpus(m.corpus, field_kind(m.field));
      topics::LdaParams lp;
      lp.k = m.k;
      lp.seed = m.seed;
      lp.passes = m.passes;
      auto model = topics::train_corpus(prepared, lp, m.out);
      for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "K=" << model.k << " documents=" << model.docs << " vocabulary=" << model.vocab
                << " passes=" << model.passes_run << "\n";
    } else if (*viz_cmd) {
      auto lm = topics::load_model(vz_model);
      if (vz_grouping.empty()) {
        viz::write_ldavis(vz_out, lm.model, lm.dictionary, vz_lambda);
      } else {
        if (vz_meta.empty()) throw ValidationError("--grouping needs --meta");
        viz::write_mtm(vz_out, lm.model, lm.doc_ids, vz_meta, viz::parse_mtm_grouping(vz_grouping),
                       report::parse_periods(vz_periods), vz_top_n);
      }
      if (!vz_terms.empty()) viz::write_terms_topics(vz_terms, lm.model, lm.dictionary);
      if (!vz_docs.empty()) viz::write_docs_topics(vz_docs, lm.model, lm.doc_ids);
    } else if (*report_cmd) {
      auto entities = report::load_entities(rp_entities);
      std::optional<std::filesystem::path> citations;
      if (!rp_citations.empty()) citations = rp_citations;
      auto annotations = report::load_annotations(rp_annotations, citations);
      report::write_report(rp_out, entities, annotations, report::parse_periods(rp_periods),
                           report::parse_grouping(rp_grouping));
    } else if (*run_cmd) {
      auto config = pipeline::PipelineConfig::load(rn_config);
      auto r = pipeline::run_pipeline(config, pipeline::parse_stages(rn_stages));
      for (const auto& rec : r.records) std::cout << rec.stage << ": " << rec.status << "\n";
      std::cout << "executed " << r.executed << ", skipped " << r.skipped << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
