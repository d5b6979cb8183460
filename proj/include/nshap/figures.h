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

// Figure data and static SVG rendering: stacked attribution bars where each
// interaction is split evenly across its members, and partial dependence
// scatters.

#ifndef NSHAP_FIGURES_H_
#define NSHAP_FIGURES_H_

#include <string>
#include <vector>

#include "nshap/analysis.h"
#include "nshap/core.h"
#include "nshap/io.h"

namespace nshap {

struct BarSegment {
  int order = 1;      // |S|
  FeatureSet set;
  double value = 0.0;  // Phi^n_S / |S|
};

struct StackedBarFigure {
  int dim = 0;
  int order = 0;
  double baseline = 0.0;
  // features[i] holds the segments drawn on feature i, sorted by order and
  // then by set mask. Zero-valued interactions are omitted.
  std::vector<std::vector<BarSegment>> features;

  // Per-feature segment sums; these are the order-1 Shapley Values.
  std::vector<double> FeatureTotals() const;
  double Total() const;
};

StackedBarFigure BuildStackedBars(const InteractionIndex& index);

// Self-contained SVG, one color per interaction order plus a legend.
// `labels` names the features; defaults to 1-based indices.
std::string RenderStackedBarsSvg(const StackedBarFigure& figure,
                                 const std::vector<std::string>& labels = {});

ordered_json StackedBarsToJson(const StackedBarFigure& figure);

std::string DependenceToCsv(const DependenceSeries& series);
std::string RenderDependenceSvg(const DependenceSeries& series,
                                const std::string& feature_label = "");

// Fixed palette indexed by interaction order (cycled past its length).
const std::string& OrderColor(int order);

}  // namespace nshap

#endif  // NSHAP_FIGURES_H_
