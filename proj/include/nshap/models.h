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

// The functions being explained: closed-form additive models, the
// checkerboard benchmark, kNN, and external processes.

#ifndef NSHAP_MODELS_H_
#define NSHAP_MODELS_H_

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nshap/lattice.h"

namespace nshap {

using Point = std::vector<double>;

// A prediction function f: R^d -> R. Implementations are deterministic.
class PredictFn {
 public:
  virtual ~PredictFn() = default;

  virtual int dim() const = 0;
  virtual double Predict(std::span<const double> x) const = 0;

  // `rows` is row-major with rows.size() a multiple of dim(). Equivalent to
  // calling Predict on every row.
  virtual std::vector<double> PredictBatch(std::span<const double> rows) const;

  // False if calls must not overlap (e.g. a child process).
  virtual bool concurrent() const { return true; }
};

// One univariate factor of a product term.
struct Factor {
  enum class Kind { kPolynomial, kSine, kStep };

  int feature = 0;
  Kind kind = Kind::kPolynomial;
  // kPolynomial: c0 + c1 x + ... + c4 x^4.
  std::vector<double> coefficients;
  // kSine: sin(frequency * x + phase).
  double frequency = 1.0;
  double phase = 0.0;
  // kStep: 1 if x >= threshold else 0.
  double threshold = 0.0;

  double Evaluate(double x) const;
};

// scale * prod_j factor_j(x).
struct ProductTerm {
  double scale = 1.0;
  std::vector<Factor> factors;
};

// Tabulated function on a rectilinear grid, multilinearly interpolated.
// `values` is row-major with the last feature varying fastest.
struct GridLookup {
  std::vector<int> features;
  std::vector<std::vector<double>> axes;
  std::vector<double> values;

  // Out-of-range coordinates are clamped to the grid; `clamped` is set when
  // that happens.
  double Evaluate(std::span<const double> x, bool* clamped) const;
};

// A component function g_S. Either a sum of product terms or a grid.
struct Component {
  FeatureSet support;
  std::vector<ProductTerm> terms;
  std::optional<GridLookup> grid;

  double Evaluate(std::span<const double> x, bool* clamped = nullptr) const;
};

class ComponentMap {
 public:
  ComponentMap() = default;
  explicit ComponentMap(std::vector<Component> components);

  void Add(Component component);
  const std::vector<Component>& components() const { return components_; }
  bool empty() const { return components_.empty(); }

  // Largest support size, 0 for an empty map.
  int order() const;
  // Throws std::invalid_argument if any term uses a feature outside its
  // component's support or outside [0, dim).
  void Validate(int dim) const;

  // Table of S -> sum of all g_S(x_S) with support exactly S.
  SubsetTable Tabulate(std::span<const double> x, int dim,
                       bool* clamped = nullptr) const;

 private:
  std::vector<Component> components_;
};

// f(x) = sum_S g_S(x_S).
class AdditiveModel : public PredictFn {
 public:
  AdditiveModel(int dim, ComponentMap components);

  int dim() const override { return dim_; }
  double Predict(std::span<const double> x) const override;
  const ComponentMap& components() const { return components_; }

  // Number of evaluations that hit a grid boundary and were clamped.
  int64_t clamped_evaluations() const { return clamped_.load(); }

 private:
  int dim_;
  ComponentMap components_;
  mutable std::atomic<int64_t> clamped_{0};
};

struct CheckerboardSpec {
  int dim = 2;
  // Cells per axis; must be even.
  int granularity = 2;
  // Features entering the parity product; empty means all of [dim].
  std::vector<int> active;
};

// f(x) = (1 + prod_{i in active} sigma_i(x)) / 2 with sigma_i = +1 on even
// cells of axis i and -1 on odd ones. Inputs are clamped to [0, 1].
class Checkerboard : public PredictFn {
 public:
  explicit Checkerboard(CheckerboardSpec spec);

  int dim() const override { return spec_.dim; }
  double Predict(std::span<const double> x) const override;
  const CheckerboardSpec& spec() const { return spec_; }
  FeatureSet active_set() const { return FeatureSet::Of(spec_.active); }

  // Uniform grid over the cell centers of the active axes (g^|active| rows);
  // inactive coordinates are 0.5. Row-major.
  std::vector<Point> CellCenters() const;

 private:
  CheckerboardSpec spec_;
};

// Mean label of the k nearest training rows (Euclidean). Ties in distance go
// to the lower row index.
class KnnModel : public PredictFn {
 public:
  KnnModel(std::vector<Point> train, std::vector<double> labels, int k);

  int dim() const override { return dim_; }
  double Predict(std::span<const double> x) const override;

 private:
  int dim_;
  int k_;
  std::vector<Point> train_;
  std::vector<double> labels_;
};

// A child process speaking the line protocol
//   engine -> model: "NSHAP-MODEL-V1 <dim> <rows>", rows CSV lines, "END"
//   model -> engine: rows lines with one float each, "END"
// The process is started lazily and kept for the lifetime of the object.
class ExternalModel : public PredictFn {
 public:
  ExternalModel(std::string command, int dim,
                std::chrono::milliseconds timeout = std::chrono::seconds(60));
  ~ExternalModel() override;

  ExternalModel(const ExternalModel&) = delete;
  ExternalModel& operator=(const ExternalModel&) = delete;

  int dim() const override { return dim_; }
  double Predict(std::span<const double> x) const override;
  std::vector<double> PredictBatch(std::span<const double> rows) const override;
  bool concurrent() const override { return false; }

 private:
  void Start() const;
  void Stop() const;

  std::string command_;
  int dim_;
  std::chrono::milliseconds timeout_;
  mutable std::mutex mutex_;
  mutable int pid_ = -1;
  mutable int to_child_ = -1;
  mutable int from_child_ = -1;
  mutable std::string pending_;
};

// Formats a double with up to 17 significant digits so that parsing it back
// yields the same value. Locale independent.
std::string FormatDouble(double value);
// Locale-independent strict parse; returns nullopt on trailing junk.
std::optional<double> ParseDouble(std::string_view text);

}  // namespace nshap

#endif  // NSHAP_MODELS_H_
