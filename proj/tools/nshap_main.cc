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

// nshap: exact n-Shapley Values and Shapley-GAM decompositions.
//
//   nshap explain --data d.csv --model knn:5 --label y --order all --out r.json
//   nshap gam     --config run.json
//   nshap degree  --config run.json
//   nshap check   --config run.json
//   nshap plot bars --config run.json --points 3 --order 2 --out fig.svg

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nshap/pipeline.h"

namespace {

struct Flags {
  std::string config;
  std::string data;
  std::string label;
  std::string model;
  std::string value_fn;
  std::string background;
  std::string order;
  std::string points;
  std::string out;
  std::string format;
  std::optional<uint64_t> seed;
  std::optional<int> feature;
};

void AddFlags(CLI::App* app, Flags& flags) {
  app->add_option("--config", flags.config, "JSON run configuration");
  app->add_option("--data", flags.data, "CSV dataset with a header line");
  app->add_option("--label", flags.label, "Label column (kNN targets)");
  app->add_option("--model", flags.model,
                  "knn[:K] | checkerboard[:G] | external:CMD | "
                  "additive:@FILE | inline JSON | @FILE");
  app->add_option("--value-fn", flags.value_fn,
                  "interventional | observational | gam:@FILE | JSON");
  app->add_option("--background", flags.background,
                  "Background rows: all | BEGIN:END | cell-centers");
  app->add_option("--order", flags.order, "Explanation order n or 'all'");
  app->add_option("--points", flags.points,
                  "Rows to explain: all | i,j,k | BEGIN:END | sample:N");
  app->add_option("--out", flags.out, "Output path (stdout if omitted)");
  app->add_option("--format", flags.format, "json | csv | svg")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  app->add_option("--seed", flags.seed, "Seed for sampled point selection");
}

nshap::RunConfig BuildConfig(const Flags& flags,
                             const std::optional<std::string>& plot_kind) {
  nlohmann::json doc = nlohmann::json::object();
  if (!flags.config.empty()) {
    doc = nlohmann::json::parse(nshap::ReadFile(flags.config));
  }
  if (!flags.data.empty()) doc["data"] = flags.data;
  if (!flags.label.empty()) doc["label_column"] = flags.label;
  if (!flags.model.empty()) doc["model"] = nshap::ModelFlagToJson(flags.model);
  if (!flags.value_fn.empty()) {
    doc["value_function"] = nshap::ValueFnFlagToJson(flags.value_fn);
  }
  if (!flags.background.empty()) {
    if (!doc.contains("value_function")) {
      doc["value_function"] = {{"type", "interventional"}};
    }
    doc["value_function"]["background"] = flags.background;
  }
  if (!flags.order.empty()) {
    if (flags.order == "all") {
      doc["order"] = "all";
    } else {
      doc["order"] = std::stoi(flags.order);
    }
  }
  if (!flags.points.empty()) doc["points"] = nshap::PointsFlagToJson(flags.points);
  if (!flags.out.empty()) doc["output"] = flags.out;
  if (!flags.format.empty()) doc["format"] = flags.format;
  if (flags.seed) doc["seed"] = *flags.seed;
  if (plot_kind) {
    doc["plot"]["kind"] = *plot_kind;
    if (flags.feature) doc["plot"]["feature"] = *flags.feature;
  }
  if (!doc.contains("model")) throw nshap::ConfigError("no model given (--model)");
  return nshap::ParseRunConfig(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact n-Shapley Values and Shapley-GAM decompositions"};
  app.require_subcommand(1);

  Flags flags;
  std::string plot_kind = "bars";
  CLI::App* explain = app.add_subcommand("explain", "Compute n-Shapley Values");
  CLI::App* gam = app.add_subcommand("gam", "Compute the Shapley-GAM");
  CLI::App* degree =
      app.add_subcommand("degree", "Average degree of variable interaction");
  CLI::App* check = app.add_subcommand(
      "check", "Run efficiency, dual-path, oracle and recovery checks");
  CLI::App* plot = app.add_subcommand("plot", "Write figure data and SVG");
  for (CLI::App* sub : {explain, gam, degree, check, plot}) AddFlags(sub, flags);
  plot->add_option("kind", plot_kind, "bars | dependence")
      ->check(CLI::IsMember({"bars", "dependence"}));
  plot->add_option("--feature", flags.feature,
                   "Feature index (0-based) for dependence plots");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const nshap::RunConfig config = BuildConfig(
        flags, command == "plot" ? std::optional<std::string>(plot_kind)
                                 : std::nullopt);
    if (command == "check") {
      const std::vector<nshap::CheckResult> results = nshap::RunCheck(config);
      const std::string report = nshap::CheckResultsToJson(results).dump(2) + "\n";
      if (config.output.empty()) {
        std::cout << report;
      } else {
        nshap::WriteFile(config.output, report);
      }
      int status = 0;
      for (const nshap::CheckResult& r : results) {
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name
                  << " max_error=" << r.max_error << "\n";
        if (!r.passed) status = 1;
      }
      return status;
    }
    std::cout << nshap::RunCommand(command, config);
  } catch (const std::exception& e) {
    std::cerr << "nshap " << command << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
