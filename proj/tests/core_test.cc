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

#include <map>
#include <memory>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace nshap {
namespace {

using ::nshap::testing::BruteMoebius;
using ::nshap::testing::BruteShapley;
using ::nshap::testing::MaxAbsDiff;
using ::nshap::testing::RandomGam;
using ::nshap::testing::RandomRows;
using ::nshap::testing::RandomValueTable;

constexpr double kTol = 1e-9;

double MaxIndexDiff(const InteractionIndex& a, const InteractionIndex& b) {
  EXPECT_EQ(a.order(), b.order());
  double m = 0.0;
  for (FeatureSet s : a.Keys()) m = std::max(m, std::abs(a[s] - b[s]));
  return m;
}

// Value table whose Shapley-GAM is the given component table.
ValueTable FromComponents(const SubsetTable& components) {
  return ValueTable{ZetaTransform(components), Point(components.dim(), 0.0)};
}

ValueTable ProductTable(double a, double b) {
  return ValueTable{SubsetTable(2, {0, 0, 0, a * b}), Point{a, b}};
}

TEST(Delta, SingletonIsShapleyValue) {
  std::mt19937_64 rng(1);
  for (int d = 1; d <= 7; ++d) {
    const ValueTable t = RandomValueTable(d, rng);
    const std::vector<double> classic = BruteShapley(t.table);
    for (int i = 0; i < d; ++i) {
      EXPECT_NEAR(Delta(t, FeatureSet().With(i)), classic[i], kTol);
    }
  }
}

TEST(Delta, SingleComponentDiscount) {
  const int d = 5;
  const FeatureSet target = FeatureSet::Of({0, 2, 3});
  SubsetTable components(d);
  components[target] = 2.0;
  const ValueTable t = FromComponents(components);
  for (FeatureSet s : EnumerateSubsets(d, d)) {
    if (s.empty()) continue;
    const double expected =
        s.IsSubsetOf(target) ? 2.0 / (1 + target.Minus(s).size()) : 0.0;
    EXPECT_NEAR(Delta(t, s), expected, 1e-12) << s.Key();
  }
}

TEST(Delta, ConstantIsZero) {
  const ValueTable t{SubsetTable(4, std::vector<double>(16, 3.25)), Point(4)};
  for (FeatureSet s : EnumerateSubsets(4, 4)) {
    if (!s.empty()) EXPECT_EQ(Delta(t, s), 0.0);
  }
  EXPECT_THROW(Delta(t, FeatureSet()), std::invalid_argument);
}

TEST(NShapley, OrderOneIsShapley) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const ValueTable t = RandomValueTable(6, rng);
    const std::vector<double> classic = BruteShapley(t.table);
    const InteractionIndex rec = NShapleyRecursive(t, 1);
    const InteractionIndex gam = NShapleyFromGam(ComputeShapleyGam(t), 1);
    const std::vector<double> oracle = ClassicShapleyOracle(t);
    for (int i = 0; i < 6; ++i) {
      const FeatureSet s = FeatureSet().With(i);
      EXPECT_NEAR(rec[s], classic[i], kTol);
      EXPECT_NEAR(gam[s], classic[i], kTol);
      EXPECT_NEAR(oracle[i], classic[i], 1e-12);
    }
  }
}

TEST(NShapley, OrderDIsMoebius) {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 7; ++d) {
    const ValueTable t = RandomValueTable(d, rng);
    const std::vector<double> brute = BruteMoebius(t.table);
    const InteractionIndex rec = NShapleyRecursive(t, d);
    const ShapleyGam gam = ComputeShapleyGam(t);
    for (FeatureSet s : rec.Keys()) {
      EXPECT_NEAR(rec[s], brute[s.bits()], kTol);
      EXPECT_NEAR(gam[s], brute[s.bits()], 1e-12);
    }
    EXPECT_EQ(gam.baseline(), t[FeatureSet()]);
  }
}

TEST(NShapley, ConstantModelAllZero) {
  const ValueTable t{SubsetTable(4, std::vector<double>(16, -2.0)), Point(4)};
  for (int n = 1; n <= 4; ++n) {
    for (const InteractionIndex& phi :
         {NShapleyRecursive(t, n), NShapleyExplicit(t, n),
          NShapleyFromGam(ComputeShapleyGam(t), n)}) {
      for (FeatureSet s : phi.Keys()) EXPECT_EQ(phi[s], 0.0);
      EXPECT_EQ(phi.baseline(), -2.0);
    }
  }
}

TEST(NShapley, ProductExample) {
  const double a = 3.0, b = 4.0;
  const ValueTable t = ProductTable(a, b);
  const std::vector<double> oracle = ClassicShapleyOracle(t);
  EXPECT_DOUBLE_EQ(oracle[0], a * b / 2);
  EXPECT_DOUBLE_EQ(oracle[1], a * b / 2);
  const InteractionIndex phi = NShapleyExplicit(t, 1);
  EXPECT_DOUBLE_EQ(phi[FeatureSet::Of({0})], a * b / 2);
  const ShapleyGam gam = ComputeShapleyGam(t);
  EXPECT_EQ(gam[FeatureSet::Of({0})], 0.0);
  EXPECT_EQ(gam[FeatureSet::Of({1})], 0.0);
  EXPECT_EQ(gam[FeatureSet::Of({0, 1})], 12.0);
}

// A single order-3 component read through the recursive definition at n = 2:
// Phi^1_0 = 1/3, each pair gets Delta = 1/2, so Phi^2_0 = 1/3 - 1/2 * (1/2 +
// 1/2) = -1/6, which is the coefficient C_{1,2}.
TEST(NShapley, RecursionYieldsCoefficient) {
  SubsetTable components(3);
  components[FeatureSet::Of({0, 1, 2})] = 1.0;
  const InteractionIndex phi = NShapleyRecursive(FromComponents(components), 2);
  EXPECT_NEAR(phi[FeatureSet::Of({0})], -1.0 / 6.0, 1e-15);
  EXPECT_NEAR(phi[FeatureSet::Of({0, 1})], 0.5, 1e-15);
  EXPECT_EQ(ToDouble(CoeffC(1, 2)), -1.0 / 6.0);
  EXPECT_EQ(ToDouble(CoeffC(0, 1)), 0.5);
}

TEST(NShapley, MaxOrderTermIsDelta) {
  std::mt19937_64 rng(4);
  const ValueTable t = RandomValueTable(5, rng);
  const InteractionIndex phi = NShapleyExplicit(t, 3);
  for (FeatureSet s : phi.Keys()) {
    if (s.size() == 3) EXPECT_EQ(phi[s], Delta(t, s));
  }
}

TEST(NShapley, DualPathAgreement) {
  std::mt19937_64 rng(5);
  for (int d = 1; d <= 8; ++d) {
    for (int trial = 0; trial < 3; ++trial) {
      const ValueTable t = RandomValueTable(d, rng);
      const ShapleyGam gam = ComputeShapleyGam(t);
      const std::vector<InteractionIndex> all = AllOrdersFromGam(gam);
      for (int n = 1; n <= d; ++n) {
        const InteractionIndex rec = NShapleyRecursive(t, n);
        const InteractionIndex exp = NShapleyExplicit(t, n);
        const InteractionIndex from = NShapleyFromGam(gam, n);
        EXPECT_LE(MaxIndexDiff(rec, exp), kTol) << "d=" << d << " n=" << n;
        EXPECT_LE(MaxIndexDiff(rec, from), kTol) << "d=" << d << " n=" << n;
        EXPECT_LE(MaxIndexDiff(all[n - 1], from), 1e-12);
        EXPECT_EQ(from.provenance(), Provenance::kFromGam);
        EXPECT_EQ(rec.provenance(), Provenance::kDirect);
      }
    }
  }
}

TEST(FromGam, EvenSplitExamples) {
  SubsetTable pair(3);
  pair[FeatureSet::Of({0, 1})] = 0.8;
  const InteractionIndex phi = NShapleyFromGam(ShapleyGam(pair, Point(3)), 1);
  EXPECT_DOUBLE_EQ(phi[FeatureSet::Of({0})], 0.4);
  EXPECT_DOUBLE_EQ(phi[FeatureSet::Of({2})], 0.0);

  SubsetTable triple(3);
  triple[FeatureSet::Of({0, 1, 2})] = 0.9;
  const InteractionIndex phi3 = NShapleyFromGam(ShapleyGam(triple, Point(3)), 1);
  EXPECT_DOUBLE_EQ(phi3[FeatureSet::Of({0})], 0.3);
}

TEST(ReduceOrder, Identity) {
  std::mt19937_64 rng(6);
  const ValueTable t = RandomValueTable(5, rng);
  const InteractionIndex phi = NShapleyFromGam(ComputeShapleyGam(t), 3);
  EXPECT_EQ(MaxIndexDiff(ReduceOrder(phi, 3), phi), 0.0);
  EXPECT_THROW(ReduceOrder(phi, 4), std::invalid_argument);
  EXPECT_THROW(ReduceOrder(phi, 0), std::invalid_argument);
}

TEST(ReduceOrder, MatchesDirectComputation) {
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 8; ++d) {
    const ValueTable t = RandomValueTable(d, rng);
    const std::vector<double> classic = BruteShapley(t.table);
    const InteractionIndex full = ComputeShapleyGam(t).AsIndex();
    const InteractionIndex shapley = ReduceOrder(full, 1);
    for (int i = 0; i < d; ++i) {
      EXPECT_NEAR(shapley[FeatureSet().With(i)], classic[i], kTol);
    }
    for (int n = 1; n <= d; ++n) {
      const InteractionIndex phi_n = NShapleyRecursive(t, n);
      for (int m = 1; m <= n; ++m) {
        EXPECT_LE(MaxIndexDiff(ReduceOrder(phi_n, m), NShapleyRecursive(t, m)),
                  kTol)
            << "d=" << d << " n=" << n << " m=" << m;
      }
    }
  }
}

TEST(Properties, Efficiency) {
  std::mt19937_64 rng(8);
  for (int d = 1; d <= 10; ++d) {
    const ValueTable t = RandomValueTable(d, rng);
    const double scale = std::max(1.0, std::abs(t[FeatureSet::Full(d)]));
    for (const InteractionIndex& phi : AllOrdersFromGam(ComputeShapleyGam(t))) {
      EXPECT_LE(std::abs(EfficiencyResidual(phi, t)), 1e-9 * scale);
    }
    if (d <= 8) {
      for (int n = 1; n <= d; ++n) {
        EXPECT_LE(std::abs(EfficiencyResidual(NShapleyRecursive(t, n), t)),
                  1e-9 * scale);
      }
    }
  }
}

TEST(Properties, Additivity) {
  std::mt19937_64 rng(9);
  for (int d = 2; d <= 7; ++d) {
    const ValueTable f = RandomValueTable(d, rng);
    const ValueTable g = RandomValueTable(d, rng);
    ValueTable sum = f;
    sum.table += g.table;
    for (int n = 1; n <= d; ++n) {
      const InteractionIndex a = NShapleyFromGam(ComputeShapleyGam(f), n);
      const InteractionIndex b = NShapleyFromGam(ComputeShapleyGam(g), n);
      const InteractionIndex c = NShapleyFromGam(ComputeShapleyGam(sum), n);
      const InteractionIndex r = NShapleyRecursive(sum, n);
      for (FeatureSet s : c.Keys()) {
        EXPECT_NEAR(c[s], a[s] + b[s], 1e-10);
        EXPECT_NEAR(r[s], a[s] + b[s], 1e-10);
      }
    }
  }
}

TEST(Properties, ShapleyGamSumsToPrediction) {
  std::mt19937_64 rng(10);
  for (int d = 1; d <= 12; ++d) {
    const ValueTable t = RandomValueTable(d, rng);
    EXPECT_NEAR(ComputeShapleyGam(t).Prediction(), t[FeatureSet::Full(d)], 1e-9);
  }
}

// f_S computed after perturbing x_j, j outside S, is unchanged.
TEST(Properties, ComponentsAreLocal) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const int d = 6;
  auto model = std::make_shared<AdditiveModel>(d, RandomGam(d, 4, rng));
  const InterventionalValue vf(model, BackgroundSet(RandomRows(8, d, rng)));
  for (int trial = 0; trial < 20; ++trial) {
    Point x = RandomRows(1, d, rng).front();
    const int j = static_cast<int>(rng() % d);
    Point y = x;
    y[j] = u(rng);
    const ShapleyGam gx = ComputeShapleyGam(BuildValueTable(vf, x));
    const ShapleyGam gy = ComputeShapleyGam(BuildValueTable(vf, y));
    for (FeatureSet s : EnumerateSubsets(d, d)) {
      if (!s.contains(j)) EXPECT_NEAR(gx[s], gy[s], 1e-10) << s.Key();
    }
  }
}

TEST(ShapleyGam, ObservationalClosedForms) {
  // Three discrete features with dependence between them.
  std::vector<Point> rows;
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    const double a = static_cast<double>(rng() % 2);
    const double b = static_cast<double>((rng() % 3 + static_cast<int>(a)) % 3);
    const double c = static_cast<double>(rng() % 2);
    rows.push_back({a, b, c});
  }
  auto model = std::make_shared<AdditiveModel>(3, RandomGam(3, 3, rng));
  const ObservationalExactMatchValue vf(model, BackgroundSet(rows));
  // E[f | x_L] by direct grouping.
  auto conditional = [&](const Point& x, std::vector<int> members) {
    double sum = 0;
    int count = 0;
    for (const Point& z : rows) {
      bool match = true;
      for (int j : members) match = match && z[j] == x[j];
      if (match) {
        sum += model->Predict(z);
        ++count;
      }
    }
    return sum / count;
  };
  const Point x = rows[5];
  const ShapleyGam gam = ComputeShapleyGam(BuildValueTable(vf, x));
  const double mean = conditional(x, {});
  EXPECT_NEAR(gam.baseline(), mean, 1e-12);
  EXPECT_NEAR(gam[FeatureSet::Of({0})], conditional(x, {0}) - mean, 1e-12);
  EXPECT_NEAR(gam[FeatureSet::Of({1, 2})],
              conditional(x, {1, 2}) - conditional(x, {1}) -
                  conditional(x, {2}) + mean,
              1e-12);
  EXPECT_NEAR(gam.Prediction(), model->Predict(x), 1e-12);
}

TEST(ShapleyGam, GamInducedRoundTrip) {
  std::mt19937_64 rng(13);
  for (int d = 1; d <= 10; ++d) {
    const ComponentMap g = RandomGam(d, d, rng);
    const Point x = RandomRows(1, d, rng).front();
    const ShapleyGam gam = ComputeShapleyGam(BuildValueTable(GamInducedValue(d, g), x));
    EXPECT_LE(MaxAbsDiff(gam.components().values(), g.Tabulate(x, d).values()),
              1e-12);
  }
}

TEST(Recovery, OrderTwoGamUnderInterventional) {
  std::mt19937_64 rng(14);
  const int d = 6;
  auto model = std::make_shared<AdditiveModel>(d, RandomGam(d, 2, rng));
  const InterventionalValue vf(model, BackgroundSet(RandomRows(12, d, rng)));
  for (const Point& x : RandomRows(5, d, rng)) {
    const RecoveryReport report =
        RecoveryCheck(ComputeShapleyGam(BuildValueTable(vf, x)), 2);
    EXPECT_LE(report.max_higher_order, 1e-9);
    EXPECT_LE(report.max_index_deviation, 1e-9);
    EXPECT_TRUE(report.Recovered());
  }
}

TEST(Recovery, OrderOneCollapse) {
  std::mt19937_64 rng(15);
  const int d = 4;
  auto model = std::make_shared<AdditiveModel>(d, RandomGam(d, 1, rng));
  const InterventionalValue vf(model, BackgroundSet(RandomRows(10, d, rng)));
  // Points sharing x_0 but differing elsewhere.
  std::map<double, std::vector<double>> by_value;
  for (double x0 : {-0.5, 0.25}) {
    for (const Point& rest : RandomRows(6, d, rng)) {
      Point x = rest;
      x[0] = x0;
      const InteractionIndex phi =
          NShapleyFromGam(ComputeShapleyGam(BuildValueTable(vf, x)), 1);
      by_value[x0].push_back(phi[FeatureSet::Of({0})]);
    }
  }
  for (const auto& [x0, values] : by_value) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    EXPECT_LE(*hi - *lo, 1e-9);
  }
}

TEST(Recovery, CheckerboardNegativeControl) {
  auto board = std::make_shared<Checkerboard>(CheckerboardSpec{3, 2, {}});
  const InterventionalValue vf(board, BackgroundSet(board->CellCenters()));
  const ShapleyGam gam = ComputeShapleyGam(BuildValueTable(vf, Point{0.25, 0.75, 0.25}));
  const RecoveryReport report = RecoveryCheck(gam, 2);
  EXPECT_FALSE(report.Recovered());
  EXPECT_NEAR(report.max_higher_order, 0.5, 1e-12);
  EXPECT_EQ(report.worst_set, FeatureSet::Full(3));
  EXPECT_TRUE(RecoveryCheck(gam, 3).Recovered());
}

TEST(Degenerate, OneFeature) {
  const ValueTable t{SubsetTable(1, {0.25, 1.0}), Point{3.0}};
  const InteractionIndex phi = NShapleyRecursive(t, 1);
  EXPECT_EQ(phi[FeatureSet::Of({0})], 0.75);
  EXPECT_EQ(ComputeShapleyGam(t)[FeatureSet::Of({0})], 0.75);
  EXPECT_EQ(NShapleyFromGam(ComputeShapleyGam(t), 1)[FeatureSet::Of({0})], 0.75);
  EXPECT_THROW(NShapleyRecursive(t, 2), std::invalid_argument);
}

TEST(InteractionIndex, KeysAndAccess) {
  std::mt19937_64 rng(16);
  const InteractionIndex phi =
      NShapleyFromGam(ComputeShapleyGam(RandomValueTable(5, rng)), 2);
  EXPECT_EQ(phi.Keys().size(), 15u);
  EXPECT_THROW(phi.at(FeatureSet()), std::out_of_range);
  EXPECT_THROW(phi.at(FeatureSet::Of({0, 1, 2})), std::out_of_range);
}

}  // namespace
}  // namespace nshap
