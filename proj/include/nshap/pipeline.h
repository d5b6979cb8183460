/*
 * Copyright 2026 The nshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Declarative run configuration and the end-to-end drivers behind the CLI.
//
// Config documents are JSON objects; every object in the schema rejects
// unknown keys. See README.md for the schema.

#ifndef NSHAP_PIPELINE_H_
#define NSHAP_PIPELINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nshap/analysis.h"
#include "nshap/core.h"
#include "nshap/errors.h"
#include "nshap/io.h"
#include "nshap/models.h"
#include "nshap/valuefn.h"

namespace nshap {

struct ModelSpec {
  enum class Kind { kAdditive, kCheckerboard, kKnn, kExternal };
  Kind kind = Kind::kAdditive;
  ComponentMap components;        // kAdditive
  int granularity = 2;            // kCheckerboard
  std::vector<int> active;        // kCheckerboard, empty = all features
  int k = 5;                      // kKnn
  std::string command;            // kExternal
  double timeout_seconds = 60.0;  // kExternal
};

struct ValueFnSpec {
  enum class Kind { kInterventional, kObservational, kGamInduced };
  Kind kind = Kind::kInterventional;
  // "all", "begin:end" (half-open row range) or "cell-centers" (checkerboard).
  std::string background = "all";
  ComponentMap components;  // kGamInduced
};

struct PointSelection {
  enum class Kind { kAll, kList, kRange, kSample };
  Kind kind = Kind::kAll;
  std::vector<size_t> rows;  // kList
  size_t begin = 0;          // kRange
  size_t end = 0;
  size_t count = 0;          // kSample
};

struct RunConfig {
  std::string data;
  std::optional<std::string> label_column;
  ModelSpec model;
  ValueFnSpec value_fn;
  std::optional<int> order;  // nullopt = all orders
  PointSelection points;
  std::string output;
  std::string format = "json";
  uint64_t seed = 0;
  std::string plot_kind = "bars";
  int plot_feature = 0;
};

// Strict parsers. Throw ConfigError on unknown keys or bad values.
RunConfig ParseRunConfig(const nlohmann::json& doc);
RunConfig LoadRunConfig(const std::string& path);
ComponentMap ParseComponents(const nlohmann::json& doc);
ModelSpec ParseModelSpec(const nlohmann::json& doc);
ValueFnSpec ParseValueFnSpec(const nlohmann::json& doc);
PointSelection ParsePointSelection(const nlohmann::json& doc);

// Command-line shorthands. A value starting with '{' is inline JSON and one
// starting with '@' names a JSON file; otherwise:
//   model:    knn[:K] | checkerboard[:G] | external:COMMAND | additive:@FILE
//   value-fn: interventional | observational | gam:@FILE
//   points:   all | 3,5,8 | 0:10 | sample:N
nlohmann::json ModelFlagToJson(const std::string& flag);
nlohmann::json ValueFnFlagToJson(const std::string& flag);
nlohmann::json PointsFlagToJson(const std::string& flag);

// Everything needed to explain points of one configuration.
struct Session {
  Dataset data;
  std::shared_ptr<const PredictFn> model;
  std::unique_ptr<ValueFunction> value_fn;
  std::vector<size_t> rows;

  int dim() const { return data.dim(); }
};

Session OpenSession(const RunConfig& config);

// Value tables for the selected rows; errors carry the row context.
std::vector<ValueTable> BuildValueTables(const Session& session);

std::vector<ExplanationRecord> RunExplain(const RunConfig& config);
std::vector<ExplanationRecord> RunGam(const RunConfig& config);
DegreeReport RunDegree(const RunConfig& config);

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Efficiency at every order, dual-path agreement (d <= 10), the Shapley
// oracle (d <= 12), and recovery at the configured order if one is set.
std::vector<CheckResult> RunCheck(const RunConfig& config);

ordered_json DegreeReportToJson(const DegreeReport& report);
ordered_json CheckResultsToJson(const std::vector<CheckResult>& results);

// Writes the configured command output to config.output (or returns it as a
// string when output is empty). `command` is explain|gam|degree|check|plot.
std::string RunCommand(const std::string& command, const RunConfig& config);

}  // namespace nshap

#endif  // NSHAP_PIPELINE_H_
