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

// n-Shapley Values and the Shapley-GAM.
//
// The production path is value table -> Moebius transform (Shapley-GAM) ->
// linear fold with the C_{n,m} coefficients. The recursive and explicit
// definitions through Delta_S are kept as independent cross-checks; they cost
// O(4^d) and are meant for d <= ~12.

#ifndef NSHAP_CORE_H_
#define NSHAP_CORE_H_

#include <vector>

#include "nshap/exactnum.h"
#include "nshap/lattice.h"
#include "nshap/valuefn.h"

namespace nshap {

enum class Provenance { kDirect, kFromGam };

const char* ProvenanceName(Provenance provenance);

// Phi^n_S for all 1 <= |S| <= n at one point. Stored densely: the entry at the
// empty set holds the baseline v(empty), entries with |S| > n are zero.
class InteractionIndex {
 public:
  InteractionIndex(int order, double baseline, Point point,
                   Provenance provenance, SubsetTable values);

  int dim() const { return values_.dim(); }
  int order() const { return order_; }
  double baseline() const { return values_[FeatureSet()]; }
  const Point& point() const { return point_; }
  Provenance provenance() const { return provenance_; }

  // Throws std::out_of_range unless 1 <= |s| <= order.
  double at(FeatureSet s) const;
  double operator[](FeatureSet s) const { return at(s); }

  // Dense table including the baseline at the empty set.
  const SubsetTable& table() const { return values_; }
  // All valid keys, increasing mask order.
  std::vector<FeatureSet> Keys() const;
  // sum over all keys of Phi^n_S.
  double Sum() const;

 private:
  int order_;
  Point point_;
  Provenance provenance_;
  SubsetTable values_;
};

// The Shapley-GAM at one point: component f_S(x_S) for every S, f_empty being
// the baseline.
class ShapleyGam {
 public:
  ShapleyGam(SubsetTable components, Point point);

  int dim() const { return components_.dim(); }
  double baseline() const { return components_[FeatureSet()]; }
  double operator[](FeatureSet s) const { return components_[s]; }
  const SubsetTable& components() const { return components_; }
  const Point& point() const { return point_; }

  // sum_S f_S(x_S), which reproduces f(x) = v(x, [d]).
  double Prediction() const;
  // View as the order-d interaction index.
  InteractionIndex AsIndex() const;

 private:
  SubsetTable components_;
  Point point_;
};

// Delta_S from the value table by direct double subset summation, with the
// factorial weights formed exactly. Requires S nonempty.
double Delta(const ValueTable& table, FeatureSet s);

// Definition by recursion over the order, via Delta_S.
InteractionIndex NShapleyRecursive(const ValueTable& table, int order);

// Non-recursive form: Phi^n_S = sum_k B_k sum_{|K|=k} Delta_{S u K}.
InteractionIndex NShapleyExplicit(const ValueTable& table, int order);

// Moebius transform of the value table.
ShapleyGam ComputeShapleyGam(const ValueTable& table);

// Phi^n_S = f_S + sum_{K, |S|+|K| > n} C_{n-|S|,|K|} f_{S u K}.
InteractionIndex NShapleyFromGam(const ShapleyGam& gam, int order);

// All orders 1..d from one Shapley-GAM, sharing the per-size superset sums.
std::vector<InteractionIndex> AllOrdersFromGam(const ShapleyGam& gam);

// Order-m index from an order-n index (m <= n). The order-n values are read
// as the components of an order-n GAM and folded down with C_{m-|S|,|K|}.
InteractionIndex ReduceOrder(const InteractionIndex& phi, int order);

// Brute-force Shapley formula; d <= 12.
std::vector<double> ClassicShapleyOracle(const ValueTable& table);

struct RecoveryReport {
  int order = 0;
  // max |f_S| over |S| > order, and the set attaining it.
  double max_higher_order = 0.0;
  FeatureSet worst_set;
  // max |Phi^order_S - f_S| over 1 <= |S| <= order.
  double max_index_deviation = 0.0;

  bool Recovered(double tolerance = 1e-9) const {
    return max_higher_order <= tolerance && max_index_deviation <= tolerance;
  }
};

RecoveryReport RecoveryCheck(const ShapleyGam& gam, int order);

// sum_S Phi^n_S - (v([d]) - v(empty)).
double EfficiencyResidual(const InteractionIndex& phi, const ValueTable& table);

}  // namespace nshap

#endif  // NSHAP_CORE_H_
