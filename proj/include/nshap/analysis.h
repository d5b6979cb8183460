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

// Dataset-level summaries over many explained points.

#ifndef NSHAP_ANALYSIS_H_
#define NSHAP_ANALYSIS_H_

#include <utility>
#include <vector>

#include "nshap/core.h"

namespace nshap {

// Mass-weighted mean coalition size of one Shapley-GAM:
//   sum_{S != empty} |S| |f_S| / sum_{S != empty} |f_S|, or 0 if all vanish.
double InteractionDegreeAt(const ShapleyGam& gam);

struct DegreeReport {
  int dim = 0;
  std::vector<double> per_point;
  // Mean of the per-point degrees.
  double mean = 0.0;
  // Degree of the mass pooled over all points.
  double pooled = 0.0;
  // min, 25%, median, 75%, max of the per-point degrees (linear
  // interpolation between order statistics).
  std::vector<double> quantiles;
  // mass_shares[k] is the pooled fraction of |f_S| mass with |S| = k,
  // k = 0..dim (index 0 is always 0). All zero for a constant model.
  std::vector<double> mass_shares;
};

// Throws std::invalid_argument for an empty list or mixed dimensions.
DegreeReport InteractionDegree(const std::vector<ShapleyGam>& gams);

struct DependenceSeries {
  int feature = 0;
  int order = 0;
  // (x_i, Phi^n_i(x)) per explained point, in input order.
  std::vector<std::pair<double, double>> points;
};

DependenceSeries PartialDependence(const std::vector<InteractionIndex>& indices,
                                   int feature);

// Largest difference in attribution among points with bitwise-equal x_i.
double MaxVerticalSpread(const DependenceSeries& series);

}  // namespace nshap

#endif  // NSHAP_ANALYSIS_H_
