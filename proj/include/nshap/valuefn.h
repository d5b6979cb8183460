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

// Value functions v(x, S) and value tables over all coalitions.

#ifndef NSHAP_VALUEFN_H_
#define NSHAP_VALUEFN_H_

#include <memory>
#include <span>
#include <vector>

#include "nshap/lattice.h"
#include "nshap/models.h"

namespace nshap {

// Nonempty list of equally weighted rows of common dimension.
class BackgroundSet {
 public:
  explicit BackgroundSet(std::vector<Point> rows);

  int dim() const { return dim_; }
  size_t size() const { return rows_.size(); }
  const std::vector<Point>& rows() const { return rows_; }
  const Point& operator[](size_t i) const { return rows_[i]; }

 private:
  int dim_;
  std::vector<Point> rows_;
};

// v(x, S) for one model. Implementations are immutable and subset-compliant:
// Evaluate(x, S) reads only x_S.
class ValueFunction {
 public:
  virtual ~ValueFunction() = default;

  virtual int dim() const = 0;
  virtual double Evaluate(std::span<const double> x, FeatureSet s) const = 0;

  // Entry mask -> v(x, mask) for all 2^d coalitions.
  virtual SubsetTable BatchEvaluate(std::span<const double> x) const;
};

struct ValueTable {
  SubsetTable table;
  Point point;

  int dim() const { return table.dim(); }
  double operator[](FeatureSet s) const { return table[s]; }
};

// v(x, S) = mean over background rows z of f(x_S, z_{-S}).
class InterventionalValue : public ValueFunction {
 public:
  InterventionalValue(std::shared_ptr<const PredictFn> model,
                      BackgroundSet background);

  int dim() const override { return model_->dim(); }
  double Evaluate(std::span<const double> x, FeatureSet s) const override;
  // Batches coalitions through PredictBatch in chunks.
  SubsetTable BatchEvaluate(std::span<const double> x) const override;

 private:
  std::shared_ptr<const PredictFn> model_;
  BackgroundSet background_;
};

// v(x, S) = mean of f(z) over data rows with z_S == x_S (exact binary64
// equality). Throws NoMatchingRows when no row matches.
class ObservationalExactMatchValue : public ValueFunction {
 public:
  ObservationalExactMatchValue(std::shared_ptr<const PredictFn> model,
                               BackgroundSet data);

  int dim() const override { return data_.dim(); }
  double Evaluate(std::span<const double> x, FeatureSet s) const override;

 private:
  BackgroundSet data_;
  std::vector<double> predictions_;
};

// v(x, S) = sum_{L subset of S} g_L(x_L) for a given decomposition g.
class GamInducedValue : public ValueFunction {
 public:
  GamInducedValue(int dim, ComponentMap components);

  int dim() const override { return dim_; }
  double Evaluate(std::span<const double> x, FeatureSet s) const override;
  SubsetTable BatchEvaluate(std::span<const double> x) const override;

 private:
  int dim_;
  ComponentMap components_;
};

// Builds the dense table of v(x, .) for one point.
ValueTable BuildValueTable(const ValueFunction& vf, std::span<const double> x);

// Convenience free functions mirroring the value function classes.
double InterventionalValueAt(const PredictFn& model,
                             const BackgroundSet& background,
                             std::span<const double> x, FeatureSet s);

}  // namespace nshap

#endif  // NSHAP_VALUEFN_H_
