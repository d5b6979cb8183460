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

#include "nshap/core.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace nshap {
namespace {

void CheckOrder(int order, int dim) {
  if (order < 1 || order > dim) {
    throw std::invalid_argument("Order " + std::to_string(order) +
                                " outside [1, " + std::to_string(dim) + "]");
  }
}

// Calls fn(T) for every T with S subset of T subset of [d], T != S.
template <typename Fn>
void ForEachStrictSuperset(FeatureSet s, int dim, Fn&& fn) {
  const uint32_t complement = FeatureSet::Full(dim).Minus(s).bits();
  for (uint32_t sub = complement; sub != 0; sub = (sub - 1) & complement) {
    fn(FeatureSet(s.bits() | sub));
  }
}

// Keeps entries with 1 <= |S| <= order and the baseline; zeroes the rest.
SubsetTable Truncate(SubsetTable table, int order) {
  std::span<double> v = table.mutable_values();
  for (uint32_t mask = 1; mask < v.size(); ++mask) {
    if (std::popcount(mask) > order) v[mask] = 0.0;
  }
  return table;
}

// Folds components into n-Shapley Values for each requested order:
//   out_n[S] = comps[S] + sum_{t > n} C_{n-|S|, t-|S|} Z_t[S],
// where Z_t[S] sums comps over supersets of S of size exactly t. Entries of
// comps above `max_support` are ignored.
std::vector<SubsetTable> FoldOrders(const SubsetTable& comps, int max_support,
                                    std::span<const int> orders) {
  const int d = comps.dim();
  const CoefficientTable coefficients(d);
  std::vector<SubsetTable> out;
  out.reserve(orders.size());
  int min_order = d;
  for (int n : orders) {
    CheckOrder(n, d);
    out.push_back(Truncate(comps, n));
    min_order = std::min(min_order, n);
  }
  const size_t size = comps.size();
  std::vector<double> layer(size);
  for (int t = min_order + 1; t <= max_support; ++t) {
    for (uint32_t mask = 0; mask < size; ++mask) {
      layer[mask] = std::popcount(mask) == t ? comps.at_mask(mask) : 0.0;
    }
    for (int i = 0; i < d; ++i) {
      const uint32_t bit = 1u << i;
      for (uint32_t mask = 0; mask < size; ++mask) {
        if (!(mask & bit)) layer[mask] += layer[mask | bit];
      }
    }
    for (size_t k = 0; k < orders.size(); ++k) {
      const int n = orders[k];
      if (t <= n) continue;
      std::span<double> v = out[k].mutable_values();
      for (uint32_t mask = 1; mask < size; ++mask) {
        const int s = std::popcount(mask);
        if (s > n) continue;
        v[mask] += coefficients.c_double(n - s, t - s) * layer[mask];
      }
    }
  }
  return out;
}

// Delta_S for every S with 1 <= |S| <= max_size; other entries zero.
SubsetTable AllDeltas(const ValueTable& table, int max_size) {
  SubsetTable deltas(table.dim());
  const uint32_t count = 1u << table.dim();
  for (uint32_t mask = 1; mask < count; ++mask) {
    if (std::popcount(mask) <= max_size) {
      deltas.at_mask(mask) = Delta(table, FeatureSet(mask));
    }
  }
  return deltas;
}

}  // namespace

const char* ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kDirect:
      return "direct";
    case Provenance::kFromGam:
      return "from-gam";
  }
  return "unknown";
}

InteractionIndex::InteractionIndex(int order, double baseline, Point point,
                                   Provenance provenance, SubsetTable values)
    : order_(order),
      point_(std::move(point)),
      provenance_(provenance),
      values_(std::move(values)) {
  CheckOrder(order, values_.dim());
  values_ = Truncate(std::move(values_), order);
  values_[FeatureSet()] = baseline;
}

double InteractionIndex::at(FeatureSet s) const {
  const int size = s.size();
  if (size < 1 || size > order_ || !s.IsSubsetOf(FeatureSet::Full(dim()))) {
    throw std::out_of_range("No order-" + std::to_string(order_) +
                            " value for " + s.Display());
  }
  return values_[s];
}

std::vector<FeatureSet> InteractionIndex::Keys() const {
  std::vector<FeatureSet> keys = EnumerateSubsets(dim(), order_);
  keys.erase(keys.begin());  // the empty set
  return keys;
}

double InteractionIndex::Sum() const {
  double sum = 0.0;
  const std::span<const double> v = values_.values();
  for (uint32_t mask = 1; mask < v.size(); ++mask) sum += v[mask];
  return sum;
}

ShapleyGam::ShapleyGam(SubsetTable components, Point point)
    : components_(std::move(components)), point_(std::move(point)) {}

double ShapleyGam::Prediction() const {
  double sum = 0.0;
  for (double v : components_.values()) sum += v;
  return sum;
}

InteractionIndex ShapleyGam::AsIndex() const {
  return InteractionIndex(dim(), baseline(), point_,
                          Provenance::kFromGam, components_);
}

double Delta(const ValueTable& table, FeatureSet s) {
  const int d = table.dim();
  const int size = s.size();
  if (size == 0) throw std::invalid_argument("Delta requires a nonempty set");
  if (!s.IsSubsetOf(FeatureSet::Full(d))) {
    throw std::invalid_argument("Delta: set exceeds dimension");
  }
  // weight[t] = (d - t - |S|)! t! / (d - |S| + 1)!
  std::vector<double> weight(d - size + 1);
  const BigInt denominator = Factorial(d - size + 1);
  for (int t = 0; t <= d - size; ++t) {
    weight[t] = ToDouble(
        Rational(Factorial(d - t - size) * Factorial(t), denominator));
  }
  const std::vector<int> members = s.Members();
  const uint32_t s_bits = s.bits();
  const uint32_t complement = FeatureSet::Full(d).Minus(s).bits();
  double total = 0.0;
  uint32_t t = 0;
  do {
    // sum_{L subset of S} (-1)^{|S|-|L|} v(L u T)
    double alternating = 0.0;
    uint32_t l = s_bits;
    while (true) {
      const double v = table.table.at_mask(l | t);
      alternating += ((size - std::popcount(l)) % 2 == 0) ? v : -v;
      if (l == 0) break;
      l = (l - 1) & s_bits;
    }
    total += weight[std::popcount(t)] * alternating;
    t = (t - complement) & complement;
  } while (t != 0);
  return total;
}

InteractionIndex NShapleyRecursive(const ValueTable& table, int order) {
  const int d = table.dim();
  CheckOrder(order, d);
  const SubsetTable deltas = AllDeltas(table, order);
  std::vector<double> bernoulli(order + 1);
  for (int k = 0; k <= order; ++k) bernoulli[k] = ToDouble(Bernoulli(k));
  SubsetTable phi(d);
  const uint32_t count = 1u << d;
  for (int k = 1; k <= order; ++k) {
    for (uint32_t mask = 1; mask < count; ++mask) {
      const FeatureSet s(mask);
      const int size = s.size();
      if (size == k) {
        phi[s] = deltas[s];
      } else if (size < k) {
        double sum = 0.0;
        ForEachStrictSuperset(s, d, [&](FeatureSet t) {
          if (t.size() == k) sum += deltas[t];
        });
        phi[s] += bernoulli[k - size] * sum;
      }
    }
  }
  return InteractionIndex(order, table[FeatureSet()], table.point,
                          Provenance::kDirect, std::move(phi));
}

InteractionIndex NShapleyExplicit(const ValueTable& table, int order) {
  const int d = table.dim();
  CheckOrder(order, d);
  const SubsetTable deltas = AllDeltas(table, order);
  std::vector<double> bernoulli(order + 1);
  for (int k = 0; k <= order; ++k) bernoulli[k] = ToDouble(Bernoulli(k));
  SubsetTable phi(d);
  const uint32_t count = 1u << d;
  for (uint32_t mask = 1; mask < count; ++mask) {
    const FeatureSet s(mask);
    const int size = s.size();
    if (size > order) continue;
    double sum = deltas[s];
    ForEachStrictSuperset(s, d, [&](FeatureSet t) {
      const int k = t.size() - size;
      if (t.size() <= order) sum += bernoulli[k] * deltas[t];
    });
    phi[s] = sum;
  }
  return InteractionIndex(order, table[FeatureSet()], table.point,
                          Provenance::kDirect, std::move(phi));
}

ShapleyGam ComputeShapleyGam(const ValueTable& table) {
  return ShapleyGam(MoebiusTransform(table.table), table.point);
}

InteractionIndex NShapleyFromGam(const ShapleyGam& gam, int order) {
  const int orders[] = {order};
  std::vector<SubsetTable> folded =
      FoldOrders(gam.components(), gam.dim(), orders);
  return InteractionIndex(order, gam.baseline(), gam.point(),
                          Provenance::kFromGam, std::move(folded.front()));
}

std::vector<InteractionIndex> AllOrdersFromGam(const ShapleyGam& gam) {
  const int d = gam.dim();
  std::vector<int> orders(d);
  for (int n = 1; n <= d; ++n) orders[n - 1] = n;
  std::vector<SubsetTable> folded = FoldOrders(gam.components(), d, orders);
  std::vector<InteractionIndex> out;
  out.reserve(d);
  for (int n = 1; n <= d; ++n) {
    out.emplace_back(n, gam.baseline(), gam.point(), Provenance::kFromGam,
                     std::move(folded[n - 1]));
  }
  return out;
}

InteractionIndex ReduceOrder(const InteractionIndex& phi, int order) {
  if (order < 1 || order > phi.order()) {
    throw std::invalid_argument("ReduceOrder: target order " +
                                std::to_string(order) + " outside [1, " +
                                std::to_string(phi.order()) + "]");
  }
  if (order == phi.order()) return phi;
  const int orders[] = {order};
  std::vector<SubsetTable> folded =
      FoldOrders(phi.table(), phi.order(), orders);
  return InteractionIndex(order, phi.baseline(), phi.point(),
                          phi.provenance(), std::move(folded.front()));
}

std::vector<double> ClassicShapleyOracle(const ValueTable& table) {
  const int d = table.dim();
  if (d > 12) throw std::invalid_argument("Shapley oracle limited to d <= 12");
  std::vector<double> weight(d);
  for (int t = 0; t < d; ++t) {
    weight[t] =
        ToDouble(Rational(Factorial(t) * Factorial(d - t - 1), Factorial(d)));
  }
  std::vector<double> phi(d, 0.0);
  const uint32_t count = 1u << d;
  for (int i = 0; i < d; ++i) {
    const uint32_t bit = 1u << i;
    for (uint32_t t = 0; t < count; ++t) {
      if (t & bit) continue;
      phi[i] += weight[std::popcount(t)] *
                (table.table.at_mask(t | bit) - table.table.at_mask(t));
    }
  }
  return phi;
}

RecoveryReport RecoveryCheck(const ShapleyGam& gam, int order) {
  CheckOrder(order, gam.dim());
  RecoveryReport report;
  report.order = order;
  const std::span<const double> f = gam.components().values();
  for (uint32_t mask = 1; mask < f.size(); ++mask) {
    if (std::popcount(mask) > order && std::abs(f[mask]) > report.max_higher_order) {
      report.max_higher_order = std::abs(f[mask]);
      report.worst_set = FeatureSet(mask);
    }
  }
  const InteractionIndex phi = NShapleyFromGam(gam, order);
  for (FeatureSet s : phi.Keys()) {
    report.max_index_deviation =
        std::max(report.max_index_deviation, std::abs(phi[s] - gam[s]));
  }
  return report;
}

double EfficiencyResidual(const InteractionIndex& phi, const ValueTable& table) {
  const double total =
      table[FeatureSet::Full(table.dim())] - table[FeatureSet()];
  return phi.Sum() - total;
}

}  // namespace nshap
