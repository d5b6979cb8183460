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

#include "nshap/analysis.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace nshap {
namespace {

// Mass |f_S| per coalition size, index 0 unused.
std::vector<double> MassBySize(const ShapleyGam& gam) {
  std::vector<double> mass(gam.dim() + 1, 0.0);
  const std::span<const double> f = gam.components().values();
  for (uint32_t mask = 1; mask < f.size(); ++mask) {
    mass[std::popcount(mask)] += std::abs(f[mask]);
  }
  return mass;
}

double DegreeFromMass(const std::vector<double>& mass) {
  double weighted = 0.0;
  double total = 0.0;
  for (size_t k = 1; k < mass.size(); ++k) {
    weighted += static_cast<double>(k) * mass[k];
    total += mass[k];
  }
  return total > 0.0 ? weighted / total : 0.0;
}

double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double InteractionDegreeAt(const ShapleyGam& gam) {
  return DegreeFromMass(MassBySize(gam));
}

DegreeReport InteractionDegree(const std::vector<ShapleyGam>& gams) {
  if (gams.empty()) throw std::invalid_argument("InteractionDegree: no points");
  DegreeReport report;
  report.dim = gams.front().dim();
  std::vector<double> pooled(report.dim + 1, 0.0);
  for (const ShapleyGam& gam : gams) {
    if (gam.dim() != report.dim) {
      throw std::invalid_argument("InteractionDegree: mixed dimensions");
    }
    const std::vector<double> mass = MassBySize(gam);
    report.per_point.push_back(DegreeFromMass(mass));
    for (size_t k = 0; k < mass.size(); ++k) pooled[k] += mass[k];
  }
  double sum = 0.0;
  for (double degree : report.per_point) sum += degree;
  report.mean = sum / static_cast<double>(report.per_point.size());
  report.pooled = DegreeFromMass(pooled);

  std::vector<double> sorted = report.per_point;
  std::sort(sorted.begin(), sorted.end());
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    report.quantiles.push_back(Quantile(sorted, q));
  }

  double total = 0.0;
  for (double m : pooled) total += m;
  report.mass_shares.assign(report.dim + 1, 0.0);
  if (total > 0.0) {
    for (size_t k = 1; k < pooled.size(); ++k) {
      report.mass_shares[k] = pooled[k] / total;
    }
  }
  return report;
}

DependenceSeries PartialDependence(const std::vector<InteractionIndex>& indices,
                                   int feature) {
  DependenceSeries series;
  series.feature = feature;
  if (indices.empty()) return series;
  const int dim = indices.front().dim();
  series.order = indices.front().order();
  if (feature < 0 || feature >= dim) {
    throw std::out_of_range("Feature " + std::to_string(feature) +
                            " outside [0, " + std::to_string(dim) + ")");
  }
  const FeatureSet singleton = FeatureSet().With(feature);
  for (const InteractionIndex& phi : indices) {
    if (phi.dim() != dim || phi.order() != series.order) {
      throw std::invalid_argument(
          "PartialDependence: indices differ in dimension or order");
    }
    series.points.emplace_back(phi.point().at(feature), phi[singleton]);
  }
  return series;
}

double MaxVerticalSpread(const DependenceSeries& series) {
  std::map<double, std::pair<double, double>> range;
  for (const auto& [x, phi] : series.points) {
    auto [it, inserted] = range.try_emplace(x, phi, phi);
    if (!inserted) {
      it->second.first = std::min(it->second.first, phi);
      it->second.second = std::max(it->second.second, phi);
    }
  }
  double spread = 0.0;
  for (const auto& [x, lo_hi] : range) {
    spread = std::max(spread, lo_hi.second - lo_hi.first);
  }
  return spread;
}

}  // namespace nshap
