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

// Dataset ingestion and the JSON results format.

#ifndef NSHAP_IO_H_
#define NSHAP_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nshap/core.h"
#include "nshap/models.h"

namespace nshap {

using ordered_json = nlohmann::ordered_json;

struct Dataset {
  std::vector<std::string> columns;  // feature columns, label excluded
  std::vector<Point> rows;
  std::optional<std::vector<double>> labels;
  std::string label_column;

  int dim() const { return static_cast<int>(columns.size()); }
  size_t size() const { return rows.size(); }
};

// Reads a comma-separated file whose first line is a header. All cells must
// parse as finite numbers (locale independent). If `label_column` is given it
// is split off into `labels`. Throws ParseError citing the line and column.
Dataset LoadCsv(const std::string& path,
                const std::optional<std::string>& label_column = std::nullopt);
Dataset ParseCsv(const std::string& text,
                 const std::optional<std::string>& label_column = std::nullopt,
                 const std::string& source = "<memory>");

// One explained point. `row` is the dataset row index.
struct ExplanationRecord {
  size_t row = 0;
  InteractionIndex index;
};

// {"row", "dim", "order", "baseline", "values": {"0,2": phi, ...},
//  "provenance"}; values keyed by comma-joined 0-based indices in increasing
// mask order. Doubles round-trip exactly.
ordered_json IndexToJson(const InteractionIndex& index);
InteractionIndex IndexFromJson(const nlohmann::json& record);

ordered_json RecordsToJson(const std::vector<ExplanationRecord>& records);
std::vector<ExplanationRecord> RecordsFromJson(const std::string& text);

// Long-format CSV: row,order,set,value with the set key quoted.
std::string RecordsToCsv(const std::vector<ExplanationRecord>& records);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace nshap

#endif  // NSHAP_IO_H_
