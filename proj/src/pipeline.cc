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

#include "nshap/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "nshap/errors.h"
#include "nshap/figures.h"

namespace nshap {
namespace {

using json = nlohmann::json;

void RejectUnknownKeys(const json& doc, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T Get(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) {
    throw ConfigError("missing key '" + key + "' in " + where);
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + key + "' in " + where + ": " +
                      e.what());
  }
}

template <typename T>
T GetOr(const json& doc, const std::string& key, T fallback,
        const std::string& where) {
  return doc.contains(key) ? Get<T>(doc, key, where) : fallback;
}

json ReadJsonFile(const std::string& path) {
  try {
    return json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// '{...}' inline, '@path' from file.
std::optional<json> InlineOrFile(const std::string& flag) {
  if (!flag.empty() && flag.front() == '{') {
    try {
      return json::parse(flag);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("inline JSON does not parse: ") + e.what());
    }
  }
  if (!flag.empty() && flag.front() == '@') return ReadJsonFile(flag.substr(1));
  return std::nullopt;
}

Factor ParseFactor(const json& doc) {
  const std::string where = "factor";
  RejectUnknownKeys(doc, {"feature", "poly", "sin", "step"}, where);
  Factor factor;
  factor.feature = Get<int>(doc, "feature", where);
  const int kinds = static_cast<int>(doc.contains("poly")) +
                    static_cast<int>(doc.contains("sin")) +
                    static_cast<int>(doc.contains("step"));
  if (kinds != 1) {
    throw ConfigError("factor needs exactly one of 'poly', 'sin', 'step'");
  }
  if (doc.contains("poly")) {
    factor.kind = Factor::Kind::kPolynomial;
    factor.coefficients = Get<std::vector<double>>(doc, "poly", where);
    if (factor.coefficients.empty() || factor.coefficients.size() > 5) {
      throw ConfigError("'poly' takes 1 to 5 coefficients (degree <= 4)");
    }
  } else if (doc.contains("sin")) {
    factor.kind = Factor::Kind::kSine;
    const json& sine = doc["sin"];
    RejectUnknownKeys(sine, {"frequency", "phase"}, "sin factor");
    factor.frequency = GetOr<double>(sine, "frequency", 1.0, "sin factor");
    factor.phase = GetOr<double>(sine, "phase", 0.0, "sin factor");
  } else {
    factor.kind = Factor::Kind::kStep;
    factor.threshold = Get<double>(doc, "step", where);
  }
  return factor;
}

Component ParseComponent(const json& doc) {
  const std::string where = "component";
  RejectUnknownKeys(doc, {"support", "terms", "grid", "constant"}, where);
  Component component;
  std::vector<int> support = GetOr<std::vector<int>>(doc, "support", {}, where);
  try {
    component.support = FeatureSet::Of(support);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (doc.contains("constant")) {
    component.terms.push_back({Get<double>(doc, "constant", where), {}});
  }
  if (doc.contains("terms")) {
    for (const json& t : doc["terms"]) {
      RejectUnknownKeys(t, {"scale", "factors"}, "term");
      ProductTerm term;
      term.scale = GetOr<double>(t, "scale", 1.0, "term");
      if (t.contains("factors")) {
        for (const json& f : t["factors"]) term.factors.push_back(ParseFactor(f));
      }
      component.terms.push_back(std::move(term));
    }
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    RejectUnknownKeys(g, {"axes", "values"}, "grid");
    GridLookup grid;
    grid.features = component.support.Members();
    grid.axes = Get<std::vector<std::vector<double>>>(g, "axes", "grid");
    grid.values = Get<std::vector<double>>(g, "values", "grid");
    component.grid = std::move(grid);
  }
  return component;
}

size_t ParseIndex(const std::string& text, const std::string& what) {
  const std::optional<double> v = ParseDouble(text);
  if (!v || *v < 0 || std::floor(*v) != *v) {
    throw ConfigError("bad " + what + " '" + text + "'");
  }
  return static_cast<size_t>(*v);
}

std::pair<size_t, size_t> ParseRange(const std::string& text, size_t limit) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("expected a row range 'begin:end', got '" + text + "'");
  }
  const size_t begin = ParseIndex(text.substr(0, colon), "range start");
  const size_t end = ParseIndex(text.substr(colon + 1), "range end");
  if (begin >= end || end > limit) {
    throw ConfigError("row range '" + text + "' invalid for " +
                      std::to_string(limit) + " rows");
  }
  return {begin, end};
}

std::vector<size_t> ResolvePoints(const PointSelection& points, size_t n,
                                  uint64_t seed) {
  std::vector<size_t> rows;
  switch (points.kind) {
    case PointSelection::Kind::kAll:
      for (size_t r = 0; r < n; ++r) rows.push_back(r);
      break;
    case PointSelection::Kind::kList:
      rows = points.rows;
      break;
    case PointSelection::Kind::kRange:
      for (size_t r = points.begin; r < points.end; ++r) rows.push_back(r);
      break;
    case PointSelection::Kind::kSample: {
      if (points.count > n) {
        throw ConfigError("cannot sample " + std::to_string(points.count) +
                          " of " + std::to_string(n) + " rows");
      }
      std::vector<size_t> all(n);
      for (size_t r = 0; r < n; ++r) all[r] = r;
      std::mt19937_64 rng(seed);
      for (size_t i = 0; i < points.count; ++i) {
        std::swap(all[i], all[i + rng() % (n - i)]);
      }
      rows.assign(all.begin(), all.begin() + points.count);
      std::sort(rows.begin(), rows.end());
      break;
    }
  }
  for (size_t r : rows) {
    if (r >= n) {
      throw ConfigError("point row " + std::to_string(r) + " out of range (" +
                        std::to_string(n) + " rows)");
    }
  }
  return rows;
}

std::vector<int> Orders(const RunConfig& config, int dim) {
  std::vector<int> orders;
  if (config.order) {
    if (*config.order < 1 || *config.order > dim) {
      throw ConfigError("order " + std::to_string(*config.order) +
                        " outside [1, " + std::to_string(dim) + "]");
    }
    orders.push_back(*config.order);
  } else {
    for (int n = 1; n <= dim; ++n) orders.push_back(n);
  }
  return orders;
}

std::string Stem(const std::string& path) {
  std::filesystem::path p(path);
  return (p.parent_path() / p.stem()).string();
}

}  // namespace

ComponentMap ParseComponents(const json& doc) {
  if (!doc.is_array()) throw ConfigError("components must be a JSON array");
  ComponentMap map;
  for (const json& c : doc) map.Add(ParseComponent(c));
  return map;
}

ModelSpec ParseModelSpec(const json& doc) {
  const std::string where = "model";
  RejectUnknownKeys(doc,
                    {"type", "components", "granularity", "active", "k",
                     "command", "timeout_seconds"},
                    where);
  ModelSpec spec;
  const std::string type = Get<std::string>(doc, "type", where);
  auto only = [&](std::set<std::string> allowed) {
    allowed.insert("type");
    RejectUnknownKeys(doc, allowed, "model of type '" + type + "'");
  };
  if (type == "additive") {
    only({"components"});
    spec.kind = ModelSpec::Kind::kAdditive;
    if (!doc.contains("components")) {
      throw ConfigError("additive model needs 'components'");
    }
    spec.components = ParseComponents(doc["components"]);
  } else if (type == "checkerboard") {
    only({"granularity", "active"});
    spec.kind = ModelSpec::Kind::kCheckerboard;
    spec.granularity = GetOr<int>(doc, "granularity", 2, where);
    spec.active = GetOr<std::vector<int>>(doc, "active", {}, where);
  } else if (type == "knn") {
    only({"k"});
    spec.kind = ModelSpec::Kind::kKnn;
    spec.k = GetOr<int>(doc, "k", 5, where);
  } else if (type == "external") {
    only({"command", "timeout_seconds"});
    spec.kind = ModelSpec::Kind::kExternal;
    spec.command = Get<std::string>(doc, "command", where);
    spec.timeout_seconds = GetOr<double>(doc, "timeout_seconds", 60.0, where);
    if (!(spec.timeout_seconds > 0)) {
      throw ConfigError("timeout_seconds must be positive");
    }
  } else {
    throw ConfigError("unknown model type '" + type + "'");
  }
  return spec;
}

ValueFnSpec ParseValueFnSpec(const json& doc) {
  const std::string where = "value_function";
  RejectUnknownKeys(doc, {"type", "background", "components"}, where);
  ValueFnSpec spec;
  const std::string type = Get<std::string>(doc, "type", where);
  if (type == "interventional") {
    RejectUnknownKeys(doc, {"type", "background"}, where);
    spec.kind = ValueFnSpec::Kind::kInterventional;
    spec.background = GetOr<std::string>(doc, "background", "all", where);
  } else if (type == "observational") {
    RejectUnknownKeys(doc, {"type", "background"}, where);
    spec.kind = ValueFnSpec::Kind::kObservational;
    spec.background = GetOr<std::string>(doc, "background", "all", where);
  } else if (type == "gam") {
    RejectUnknownKeys(doc, {"type", "components"}, where);
    spec.kind = ValueFnSpec::Kind::kGamInduced;
    if (!doc.contains("components")) {
      throw ConfigError("gam value function needs 'components'");
    }
    spec.components = ParseComponents(doc["components"]);
  } else {
    throw ConfigError("unknown value function type '" + type + "'");
  }
  return spec;
}

PointSelection ParsePointSelection(const json& doc) {
  PointSelection points;
  if (doc.is_string()) {
    const std::string text = doc.get<std::string>();
    if (text == "all") return points;
    points.kind = PointSelection::Kind::kRange;
    const auto [begin, end] = ParseRange(text, SIZE_MAX);
    points.begin = begin;
    points.end = end;
    return points;
  }
  if (doc.is_array()) {
    points.kind = PointSelection::Kind::kList;
    try {
      points.rows = doc.get<std::vector<size_t>>();
    } catch (const json::exception&) {
      throw ConfigError("points list must hold row indices");
    }
    return points;
  }
  if (doc.is_object()) {
    RejectUnknownKeys(doc, {"sample"}, "points");
    points.kind = PointSelection::Kind::kSample;
    points.count = Get<size_t>(doc, "sample", "points");
    return points;
  }
  throw ConfigError("points must be \"all\", a range, a list or {\"sample\": n}");
}

RunConfig ParseRunConfig(const json& doc) {
  const std::string where = "config";
  RejectUnknownKeys(doc,
                    {"data", "label_column", "model", "value_function",
                     "order", "points", "output", "format", "seed", "plot"},
                    where);
  RunConfig config;
  config.data = GetOr<std::string>(doc, "data", "", where);
  if (doc.contains("label_column")) {
    config.label_column = Get<std::string>(doc, "label_column", where);
  }
  if (doc.contains("model")) config.model = ParseModelSpec(doc["model"]);
  if (doc.contains("value_function")) {
    config.value_fn = ParseValueFnSpec(doc["value_function"]);
  }
  if (doc.contains("order")) {
    const json& order = doc["order"];
    if (order.is_string() && order.get<std::string>() == "all") {
      config.order.reset();
    } else if (order.is_number_integer()) {
      config.order = order.get<int>();
    } else {
      throw ConfigError("order must be an integer or \"all\"");
    }
  }
  if (doc.contains("points")) config.points = ParsePointSelection(doc["points"]);
  config.output = GetOr<std::string>(doc, "output", "", where);
  config.format = GetOr<std::string>(doc, "format", "json", where);
  if (config.format != "json" && config.format != "csv" &&
      config.format != "svg") {
    throw ConfigError("format must be json, csv or svg");
  }
  config.seed = GetOr<uint64_t>(doc, "seed", 0, where);
  if (doc.contains("plot")) {
    const json& plot = doc["plot"];
    RejectUnknownKeys(plot, {"kind", "feature"}, "plot");
    config.plot_kind = GetOr<std::string>(plot, "kind", "bars", "plot");
    config.plot_feature = GetOr<int>(plot, "feature", 0, "plot");
    if (config.plot_kind != "bars" && config.plot_kind != "dependence") {
      throw ConfigError("plot kind must be bars or dependence");
    }
  }
  return config;
}

RunConfig LoadRunConfig(const std::string& path) {
  return ParseRunConfig(ReadJsonFile(path));
}

json ModelFlagToJson(const std::string& flag) {
  if (std::optional<json> doc = InlineOrFile(flag)) return *doc;
  const size_t colon = flag.find(':');
  const std::string name = flag.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : flag.substr(colon + 1);
  if (name == "knn") {
    json doc = {{"type", "knn"}};
    if (!arg.empty()) doc["k"] = ParseIndex(arg, "k");
    return doc;
  }
  if (name == "checkerboard") {
    json doc = {{"type", "checkerboard"}};
    if (!arg.empty()) doc["granularity"] = ParseIndex(arg, "granularity");
    return doc;
  }
  if (name == "external" && !arg.empty()) {
    return {{"type", "external"}, {"command", arg}};
  }
  if (name == "additive" && !arg.empty()) {
    std::optional<json> components = InlineOrFile(arg);
    if (!components) throw ConfigError("additive:@FILE expects a file");
    return {{"type", "additive"}, {"components", *components}};
  }
  throw ConfigError("unrecognized --model '" + flag + "'");
}

json ValueFnFlagToJson(const std::string& flag) {
  if (std::optional<json> doc = InlineOrFile(flag)) return *doc;
  if (flag == "interventional" || flag == "observational") {
    return {{"type", flag}};
  }
  if (flag.rfind("gam:", 0) == 0) {
    std::optional<json> components = InlineOrFile(flag.substr(4));
    if (!components) throw ConfigError("gam:@FILE expects a file");
    return {{"type", "gam"}, {"components", *components}};
  }
  throw ConfigError("unrecognized --value-fn '" + flag + "'");
}

json PointsFlagToJson(const std::string& flag) {
  if (flag == "all") return flag;
  if (flag.rfind("sample:", 0) == 0) {
    return {{"sample", ParseIndex(flag.substr(7), "sample size")}};
  }
  if (flag.find(':') != std::string::npos) return flag;
  json rows = json::array();
  size_t start = 0;
  while (start <= flag.size()) {
    const size_t comma = flag.find(',', start);
    rows.push_back(ParseIndex(flag.substr(start, comma - start), "point row"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return rows;
}

Session OpenSession(const RunConfig& config) {
  if (config.data.empty()) throw ConfigError("no dataset given (--data)");
  Session session;
  session.data = LoadCsv(config.data, config.label_column);
  const int d = session.dim();
  CheckDim(d);
  if (d < 1) throw ConfigError("dataset has no feature columns");

  const ModelSpec& m = config.model;
  std::shared_ptr<const Checkerboard> checkerboard;
  switch (m.kind) {
    case ModelSpec::Kind::kAdditive:
      session.model = std::make_shared<AdditiveModel>(d, m.components);
      break;
    case ModelSpec::Kind::kCheckerboard:
      checkerboard = std::make_shared<Checkerboard>(
          CheckerboardSpec{d, m.granularity, m.active});
      session.model = checkerboard;
      break;
    case ModelSpec::Kind::kKnn:
      if (!session.data.labels) {
        throw ConfigError("knn model needs a label column (--label)");
      }
      session.model = std::make_shared<KnnModel>(session.data.rows,
                                                 *session.data.labels, m.k);
      break;
    case ModelSpec::Kind::kExternal:
      session.model = std::make_shared<ExternalModel>(
          m.command, d,
          std::chrono::milliseconds(
              static_cast<int64_t>(m.timeout_seconds * 1000)));
      break;
  }

  const ValueFnSpec& v = config.value_fn;
  auto background_rows = [&]() -> std::vector<Point> {
    if (v.background == "all") return session.data.rows;
    if (v.background == "cell-centers") {
      if (!checkerboard) {
        throw ConfigError("background 'cell-centers' needs the checkerboard model");
      }
      return checkerboard->CellCenters();
    }
    const auto [begin, end] = ParseRange(v.background, session.data.size());
    return {session.data.rows.begin() + begin, session.data.rows.begin() + end};
  };
  switch (v.kind) {
    case ValueFnSpec::Kind::kInterventional:
      session.value_fn = std::make_unique<InterventionalValue>(
          session.model, BackgroundSet(background_rows()));
      break;
    case ValueFnSpec::Kind::kObservational:
      session.value_fn = std::make_unique<ObservationalExactMatchValue>(
          session.model, BackgroundSet(background_rows()));
      break;
    case ValueFnSpec::Kind::kGamInduced:
      session.value_fn = std::make_unique<GamInducedValue>(d, v.components);
      break;
  }
  session.rows = ResolvePoints(config.points, session.data.size(), config.seed);
  return session;
}

std::vector<ValueTable> BuildValueTables(const Session& session) {
  std::vector<ValueTable> tables;
  tables.reserve(session.rows.size());
  for (size_t row : session.rows) {
    try {
      tables.push_back(BuildValueTable(*session.value_fn, session.data.rows[row]));
    } catch (const NoMatchingRows& e) {
      throw NoMatchingRows(e.subset(), "point at row " + std::to_string(row));
    } catch (const std::exception& e) {
      throw std::runtime_error("point at row " + std::to_string(row) + ": " +
                               e.what());
    }
  }
  return tables;
}

std::vector<ExplanationRecord> RunExplain(const RunConfig& config) {
  const Session session = OpenSession(config);
  const std::vector<int> orders = Orders(config, session.dim());
  std::vector<ExplanationRecord> records;
  const std::vector<ValueTable> tables = BuildValueTables(session);
  for (size_t p = 0; p < tables.size(); ++p) {
    const ShapleyGam gam = ComputeShapleyGam(tables[p]);
    if (orders.size() > 1) {
      for (InteractionIndex& index : AllOrdersFromGam(gam)) {
        records.push_back({session.rows[p], std::move(index)});
      }
    } else {
      records.push_back({session.rows[p], NShapleyFromGam(gam, orders[0])});
    }
  }
  return records;
}

std::vector<ExplanationRecord> RunGam(const RunConfig& config) {
  const Session session = OpenSession(config);
  std::vector<ExplanationRecord> records;
  const std::vector<ValueTable> tables = BuildValueTables(session);
  for (size_t p = 0; p < tables.size(); ++p) {
    records.push_back(
        {session.rows[p], ComputeShapleyGam(tables[p]).AsIndex()});
  }
  return records;
}

DegreeReport RunDegree(const RunConfig& config) {
  const Session session = OpenSession(config);
  std::vector<ShapleyGam> gams;
  for (const ValueTable& table : BuildValueTables(session)) {
    gams.push_back(ComputeShapleyGam(table));
  }
  return InteractionDegree(gams);
}

std::vector<CheckResult> RunCheck(const RunConfig& config) {
  const Session session = OpenSession(config);
  const int d = session.dim();
  CheckResult efficiency{"efficiency", 0.0, 1e-9, true};
  CheckResult gam_sum{"shapley_gam_sums_to_prediction", 0.0, 1e-9, true};
  CheckResult recursive{"dual_path_recursive", 0.0, 1e-9, true};
  CheckResult explicit_form{"dual_path_explicit", 0.0, 1e-9, true};
  CheckResult oracle{"classic_shapley_oracle", 0.0, 1e-9, true};
  CheckResult recovery{"recovery", 0.0, 1e-9, true};

  for (const ValueTable& table : BuildValueTables(session)) {
    const ShapleyGam gam = ComputeShapleyGam(table);
    const double full = table[FeatureSet::Full(d)];
    const double scale = std::max(1.0, std::abs(full));
    gam_sum.max_error =
        std::max(gam_sum.max_error, std::abs(gam.Prediction() - full) / scale);
    const std::vector<InteractionIndex> all = AllOrdersFromGam(gam);
    for (const InteractionIndex& phi : all) {
      efficiency.max_error = std::max(
          efficiency.max_error, std::abs(EfficiencyResidual(phi, table)) / scale);
    }
    if (d <= 10) {
      for (const InteractionIndex& phi : all) {
        const InteractionIndex rec = NShapleyRecursive(table, phi.order());
        const InteractionIndex exp = NShapleyExplicit(table, phi.order());
        for (FeatureSet s : phi.Keys()) {
          recursive.max_error =
              std::max(recursive.max_error, std::abs(rec[s] - phi[s]));
          explicit_form.max_error =
              std::max(explicit_form.max_error, std::abs(exp[s] - phi[s]));
        }
      }
    }
    if (d <= 12) {
      const std::vector<double> classic = ClassicShapleyOracle(table);
      for (int i = 0; i < d; ++i) {
        oracle.max_error = std::max(
            oracle.max_error,
            std::abs(classic[i] - all[0][FeatureSet().With(i)]));
      }
    }
    if (config.order) {
      const RecoveryReport report = RecoveryCheck(gam, *config.order);
      recovery.max_error =
          std::max({recovery.max_error, report.max_higher_order,
                    report.max_index_deviation});
    }
  }
  std::vector<CheckResult> results = {efficiency, gam_sum};
  if (d <= 10) {
    results.push_back(recursive);
    results.push_back(explicit_form);
  }
  if (d <= 12) results.push_back(oracle);
  if (config.order) results.push_back(recovery);
  for (CheckResult& r : results) r.passed = r.max_error <= r.tolerance;
  return results;
}

ordered_json DegreeReportToJson(const DegreeReport& report) {
  ordered_json out;
  out["dim"] = report.dim;
  out["points"] = report.per_point.size();
  out["mean_degree"] = report.mean;
  out["pooled_degree"] = report.pooled;
  out["quantiles"] = {{"min", report.quantiles[0]},
                      {"q25", report.quantiles[1]},
                      {"median", report.quantiles[2]},
                      {"q75", report.quantiles[3]},
                      {"max", report.quantiles[4]}};
  out["mass_shares"] = report.mass_shares;
  out["per_point"] = report.per_point;
  return out;
}

ordered_json CheckResultsToJson(const std::vector<CheckResult>& results) {
  ordered_json out = ordered_json::array();
  for (const CheckResult& r : results) {
    out.push_back({{"name", r.name},
                   {"max_error", r.max_error},
                   {"tolerance", r.tolerance},
                   {"passed", r.passed}});
  }
  return out;
}

std::string RunCommand(const std::string& command, const RunConfig& config) {
  auto emit = [&](const std::string& contents) -> std::string {
    if (config.output.empty()) return contents;
    WriteFile(config.output, contents);
    return "";
  };
  auto records_out = [&](const std::vector<ExplanationRecord>& records) {
    if (config.format == "csv") return emit(RecordsToCsv(records));
    if (config.format == "svg") {
      throw ConfigError("svg output is produced by the plot command");
    }
    return emit(RecordsToJson(records).dump(2) + "\n");
  };

  if (command == "explain") return records_out(RunExplain(config));
  if (command == "gam") return records_out(RunGam(config));
  if (command == "degree") {
    return emit(DegreeReportToJson(RunDegree(config)).dump(2) + "\n");
  }
  if (command == "check") {
    return emit(CheckResultsToJson(RunCheck(config)).dump(2) + "\n");
  }
  if (command == "plot") {
    if (config.output.empty()) throw ConfigError("plot needs --out");
    const std::string stem = Stem(config.output);
    const Session session = OpenSession(config);
    const int d = session.dim();
    const int order = config.order.value_or(d);
    Orders(config, d);
    const std::vector<ValueTable> tables = BuildValueTables(session);
    if (config.plot_kind == "bars") {
      for (size_t p = 0; p < tables.size(); ++p) {
        const std::string name =
            tables.size() == 1 ? stem
                               : stem + ".row" + std::to_string(session.rows[p]);
        const StackedBarFigure figure = BuildStackedBars(
            NShapleyFromGam(ComputeShapleyGam(tables[p]), order));
        WriteFile(name + ".svg",
                  RenderStackedBarsSvg(figure, session.data.columns));
        WriteFile(name + ".json", StackedBarsToJson(figure).dump(2) + "\n");
      }
      return "";
    }
    std::vector<InteractionIndex> indices;
    for (const ValueTable& table : tables) {
      indices.push_back(NShapleyFromGam(ComputeShapleyGam(table), order));
    }
    if (config.plot_feature < 0 || config.plot_feature >= d) {
      throw ConfigError("plot feature out of range");
    }
    const DependenceSeries series =
        PartialDependence(indices, config.plot_feature);
    WriteFile(stem + ".csv", DependenceToCsv(series));
    WriteFile(stem + ".svg",
              RenderDependenceSvg(series,
                                  session.data.columns[config.plot_feature]));
    return "";
  }
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace nshap
