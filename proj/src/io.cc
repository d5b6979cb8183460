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

#include "nshap/io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "nshap/errors.h"

namespace nshap {
namespace {

std::vector<std::string> SplitLine(std::string_view line) {
  std::vector<std::string> cells;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '"')) {
      cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '"' ||
                             cell.back() == '\r')) {
      cell.remove_suffix(1);
    }
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

Dataset LoadCsv(const std::string& path,
                const std::optional<std::string>& label_column) {
  return ParseCsv(ReadFile(path), label_column, path);
}

Dataset ParseCsv(const std::string& text,
                 const std::optional<std::string>& label_column,
                 const std::string& source) {
  std::istringstream in(text);
  std::string line;
  size_t line_number = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    header = SplitLine(line);
    break;
  }
  if (header.empty()) throw ParseError(source + ": missing header line");

  int label_index = -1;
  Dataset dataset;
  for (size_t c = 0; c < header.size(); ++c) {
    if (label_column && header[c] == *label_column) {
      label_index = static_cast<int>(c);
    } else {
      dataset.columns.push_back(header[c]);
    }
  }
  if (label_column) {
    if (label_index < 0) {
      throw ParseError(source + ": label column '" + *label_column +
                       "' not in header");
    }
    dataset.label_column = *label_column;
    dataset.labels.emplace();
  }

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitLine(line);
    if (cells.size() != header.size()) {
      throw ParseError(source + ": line " + std::to_string(line_number) +
                       " has " + std::to_string(cells.size()) +
                       " cells, header has " + std::to_string(header.size()));
    }
    Point row;
    row.reserve(dataset.columns.size());
    for (size_t c = 0; c < cells.size(); ++c) {
      const std::optional<double> value = ParseDouble(cells[c]);
      if (!value || !std::isfinite(*value)) {
        throw ParseError(source + ": line " + std::to_string(line_number) +
                         ", column " + std::to_string(c + 1) + " ('" +
                         header[c] + "'): " +
                         (cells[c].empty() ? std::string("missing value")
                                           : "not a number '" + cells[c] + "'"));
      }
      if (static_cast<int>(c) == label_index) {
        dataset.labels->push_back(*value);
      } else {
        row.push_back(*value);
      }
    }
    dataset.rows.push_back(std::move(row));
  }
  if (dataset.rows.empty()) throw ParseError(source + ": no data rows");
  return dataset;
}

ordered_json IndexToJson(const InteractionIndex& index) {
  ordered_json values = ordered_json::object();
  for (FeatureSet s : index.Keys()) values[s.Key()] = index[s];
  ordered_json record;
  record["dim"] = index.dim();
  record["order"] = index.order();
  record["baseline"] = index.baseline();
  record["values"] = std::move(values);
  record["provenance"] = ProvenanceName(index.provenance());
  ordered_json point = ordered_json::array();
  for (double v : index.point()) point.push_back(v);
  record["point"] = std::move(point);
  return record;
}

InteractionIndex IndexFromJson(const nlohmann::json& record) {
  try {
    const int dim = record.at("dim").get<int>();
    const int order = record.at("order").get<int>();
    const double baseline = record.at("baseline").get<double>();
    SubsetTable values(dim);
    for (const auto& [key, value] : record.at("values").items()) {
      const FeatureSet s = FeatureSet::FromKey(key);
      if (s.empty() || s.size() > order ||
          !s.IsSubsetOf(FeatureSet::Full(dim))) {
        throw ParseError("set key '" + key + "' invalid for order " +
                         std::to_string(order));
      }
      values[s] = value.get<double>();
    }
    Point point;
    if (record.contains("point")) point = record["point"].get<Point>();
    Provenance provenance = Provenance::kDirect;
    if (record.contains("provenance") &&
        record["provenance"].get<std::string>() == "from-gam") {
      provenance = Provenance::kFromGam;
    }
    return InteractionIndex(order, baseline, std::move(point), provenance,
                            std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed result record: ") + e.what());
  }
}

ordered_json RecordsToJson(const std::vector<ExplanationRecord>& records) {
  ordered_json out = ordered_json::array();
  for (const ExplanationRecord& r : records) {
    ordered_json record;
    record["row"] = r.row;
    ordered_json index = IndexToJson(r.index);
    for (auto& [key, value] : index.items()) record[key] = std::move(value);
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<ExplanationRecord> RecordsFromJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("results are not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("results document must be an array");
  std::vector<ExplanationRecord> records;
  for (const auto& record : doc) {
    const size_t row = record.value("row", size_t{0});
    records.push_back({row, IndexFromJson(record)});
  }
  return records;
}

std::string RecordsToCsv(const std::vector<ExplanationRecord>& records) {
  std::string out = "row,order,set,value\n";
  for (const ExplanationRecord& r : records) {
    const std::string prefix =
        std::to_string(r.row) + "," + std::to_string(r.index.order()) + ",";
    out += prefix + "\"\"," + FormatDouble(r.index.baseline()) + "\n";
    for (FeatureSet s : r.index.Keys()) {
      out += prefix + "\"" + s.Key() + "\"," + FormatDouble(r.index[s]) + "\n";
    }
  }
  return out;
}

}  // namespace nshap
