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

#ifndef RETRACE_PIPELINE_PIPELINE_H_
#define RETRACE_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "retrace/report/period.h"

namespace retrace::pipeline {

enum class Stage { kHarvest, kClassify, kExtract, kAnnotateExport, kModel, kViz, kReport };

inline constexpr Stage kAllStages[] = {Stage::kHarvest,        Stage::kClassify, Stage::kExtract,
                                       Stage::kAnnotateExport, Stage::kModel,    Stage::kViz,
                                       Stage::kReport};

std::string_view stage_name(Stage s);
Stage parse_stage(std::string_view name);
// "a,b,c"; empty selects every stage. Result is in execution order.
std::vector<Stage> parse_stages(std::string_view list);

struct ModelConfig {
  std::string field = "abstract";  // abstract | context
  std::optional<int> k;            // unset: sweep and take the plateau
  int k_min = 1;
  int k_max = 40;
  int runs = 3;
  std::uint64_t seed = 1;
  int passes = 400;
  double lambda = 0.6;
  double epsilon = 0.005;
  int window = 2;
};

struct PipelineConfig {
  std::string seed_doi;
  std::string endpoint;  // fixture path or URL
  std::filesystem::path retraction_db;
  std::filesystem::path tables_dir;
  std::filesystem::path texts_dir;
  std::filesystem::path patterns;
  std::optional<std::filesystem::path> annotation_store;
  report::PeriodConfig periods;
  ModelConfig model;
  std::vector<std::string> mtm_groupings{"year", "area"};
  std::size_t mtm_area_top_n = 10;
  std::filesystem::path output_dir;

  // Relative paths resolve against `base`. Throws ConfigError on unknown
  // keys, missing fields or referenced paths that do not exist, and
  // ValidationError on ill-ordered periods.
  static PipelineConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base);
  static PipelineConfig load(const std::filesystem::path& path);
  void validate() const;
};

struct StageRecord {
  std::string stage;
  std::string status;  // executed | skipped | failed
  std::map<std::string, std::string> inputs;   // path -> sha256
  std::string params;                          // sha256 of stage parameters
  std::map<std::string, std::string> outputs;  // path relative to output_dir -> sha256
  double wall_ms = 0;
  std::string error;
};

struct RunResult {
  std::vector<StageRecord> records;  // this invocation, execution order
  int executed = 0;
  int skipped = 0;
};

// Runs the requested stages in dependency order and writes
// `<output_dir>/manifest.json`, keeping entries of stages not requested.
// A stage is skipped when its input and parameter digests match the
// manifest and its outputs still hash to the recorded values. A missing
// upstream artifact throws DependencyError naming the stage; a failing stage
// is recorded as failed before the error propagates.
RunResult run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages);

}  // namespace retrace::pipeline

#endif  // RETRACE_PIPELINE_PIPELINE_H_
