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

#include "nshap/valuefn.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "nshap/errors.h"

namespace nshap {
namespace {

// Upper bound on the number of composite rows per PredictBatch call.
constexpr size_t kMaxRowsPerBatch = 1 << 16;

void CheckPoint(std::span<const double> x, int dim) {
  if (static_cast<int>(x.size()) != dim) {
    throw std::invalid_argument("Point has " + std::to_string(x.size()) +
                                " coordinates, expected " +
                                std::to_string(dim));
  }
}

}  // namespace

BackgroundSet::BackgroundSet(std::vector<Point> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("Background set is empty");
  dim_ = static_cast<int>(rows_.front().size());
  for (const Point& row : rows_) {
    if (static_cast<int>(row.size()) != dim_) {
      throw std::invalid_argument("Background rows have unequal dimension");
    }
  }
}

SubsetTable ValueFunction::BatchEvaluate(std::span<const double> x) const {
  CheckPoint(x, dim());
  SubsetTable table(dim());
  const uint32_t count = 1u << dim();
  for (uint32_t mask = 0; mask < count; ++mask) {
    table.at_mask(mask) = Evaluate(x, FeatureSet(mask));
  }
  return table;
}

InterventionalValue::InterventionalValue(std::shared_ptr<const PredictFn> model,
                                         BackgroundSet background)
    : model_(std::move(model)), background_(std::move(background)) {
  if (!model_) throw std::invalid_argument("InterventionalValue needs a model");
  if (background_.dim() != model_->dim()) {
    throw std::invalid_argument("Background dimension does not match model");
  }
}

double InterventionalValue::Evaluate(std::span<const double> x,
                                     FeatureSet s) const {
  return InterventionalValueAt(*model_, background_, x, s);
}

SubsetTable InterventionalValue::BatchEvaluate(std::span<const double> x) const {
  const int d = dim();
  CheckPoint(x, d);
  CheckDim(d);
  SubsetTable table(d);
  const size_t rows = background_.size();
  const uint32_t count = 1u << d;
  const uint32_t masks_per_batch =
      static_cast<uint32_t>(std::max<size_t>(1, kMaxRowsPerBatch / rows));
  std::vector<double> buffer;
  for (uint32_t first = 0; first < count; first += masks_per_batch) {
    const uint32_t last = std::min(count, first + masks_per_batch);
    buffer.resize(static_cast<size_t>(last - first) * rows * d);
    double* out = buffer.data();
    for (uint32_t mask = first; mask < last; ++mask) {
      for (const Point& z : background_.rows()) {
        for (int j = 0; j < d; ++j) *out++ = (mask >> j) & 1u ? x[j] : z[j];
      }
    }
    const std::vector<double> predictions = model_->PredictBatch(buffer);
    size_t p = 0;
    for (uint32_t mask = first; mask < last; ++mask) {
      double sum = 0.0;
      for (size_t r = 0; r < rows; ++r) sum += predictions[p++];
      table.at_mask(mask) = sum / static_cast<double>(rows);
    }
  }
  // Every composite row equals x at the full coalition; use f(x) itself so
  // that v(x, [d]) == f(x) holds bitwise.
  table.at_mask(count - 1) = model_->Predict(x);
  return table;
}

double InterventionalValueAt(const PredictFn& model,
                             const BackgroundSet& background,
                             std::span<const double> x, FeatureSet s) {
  const int d = model.dim();
  CheckPoint(x, d);
  if (s == FeatureSet::Full(d)) return model.Predict(x);
  std::vector<double> buffer;
  buffer.reserve(background.size() * d);
  for (const Point& z : background.rows()) {
    for (int j = 0; j < d; ++j) buffer.push_back(s.contains(j) ? x[j] : z[j]);
  }
  const std::vector<double> predictions = model.PredictBatch(buffer);
  double sum = 0.0;
  for (double p : predictions) sum += p;
  return sum / static_cast<double>(background.size());
}

ObservationalExactMatchValue::ObservationalExactMatchValue(
    std::shared_ptr<const PredictFn> model, BackgroundSet data)
    : data_(std::move(data)) {
  if (!model) throw std::invalid_argument("Observational value needs a model");
  if (model->dim() != data_.dim()) {
    throw std::invalid_argument("Dataset dimension does not match model");
  }
  std::vector<double> buffer;
  buffer.reserve(data_.size() * data_.dim());
  for (const Point& row : data_.rows()) {
    buffer.insert(buffer.end(), row.begin(), row.end());
  }
  predictions_ = model->PredictBatch(buffer);
}

double ObservationalExactMatchValue::Evaluate(std::span<const double> x,
                                              FeatureSet s) const {
  CheckPoint(x, dim());
  const std::vector<int> members = s.Members();
  double sum = 0.0;
  size_t matches = 0;
  for (size_t r = 0; r < data_.size(); ++r) {
    const Point& row = data_[r];
    bool match = true;
    for (int j : members) {
      if (row[j] != x[j]) {
        match = false;
        break;
      }
    }
    if (match) {
      sum += predictions_[r];
      ++matches;
    }
  }
  if (matches == 0) throw NoMatchingRows(s);
  return sum / static_cast<double>(matches);
}

GamInducedValue::GamInducedValue(int dim, ComponentMap components)
    : dim_(dim), components_(std::move(components)) {
  components_.Validate(dim);
}

double GamInducedValue::Evaluate(std::span<const double> x,
                                 FeatureSet s) const {
  CheckPoint(x, dim_);
  double sum = 0.0;
  for (const Component& c : components_.components()) {
    if (c.support.IsSubsetOf(s)) sum += c.Evaluate(x);
  }
  return sum;
}

SubsetTable GamInducedValue::BatchEvaluate(std::span<const double> x) const {
  CheckPoint(x, dim_);
  return ZetaTransform(components_.Tabulate(x, dim_));
}

ValueTable BuildValueTable(const ValueFunction& vf, std::span<const double> x) {
  CheckDim(vf.dim());
  return ValueTable{vf.BatchEvaluate(x), Point(x.begin(), x.end())};
}

}  // namespace nshap
