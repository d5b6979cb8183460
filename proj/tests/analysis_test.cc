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

#include <memory>
#include <random>

#include "gtest/gtest.h"
#include "nshap/models.h"
#include "nshap/valuefn.h"
#include "test_util.h"

namespace nshap {
namespace {

using ::nshap::testing::RandomGam;
using ::nshap::testing::RandomRows;

std::vector<ShapleyGam> Explain(const ValueFunction& vf,
                                const std::vector<Point>& points) {
  std::vector<ShapleyGam> out;
  for (const Point& x : points) {
    out.push_back(ComputeShapleyGam(BuildValueTable(vf, x)));
  }
  return out;
}

TEST(Degree, HandExample) {
  SubsetTable c(3);
  c[FeatureSet::Of({0})] = 1.0;
  c[FeatureSet::Of({1, 2})] = -3.0;
  c[FeatureSet()] = 100.0;  // The constant carries no weight.
  // (1 * 1 + 2 * 3) / (1 + 3).
  EXPECT_DOUBLE_EQ(InteractionDegreeAt(ShapleyGam(c, Point(3))), 7.0 / 4.0);
}

TEST(Degree, AdditiveModelIsOne) {
  std::mt19937_64 rng(1);
  const int d = 5;
  auto model = std::make_shared<AdditiveModel>(d, RandomGam(d, 1, rng));
  const InterventionalValue vf(model, BackgroundSet(RandomRows(10, d, rng)));
  const DegreeReport report = InteractionDegree(Explain(vf, RandomRows(8, d, rng)));
  EXPECT_NEAR(report.mean, 1.0, 1e-9);
  EXPECT_NEAR(report.pooled, 1.0, 1e-9);
  EXPECT_NEAR(report.mass_shares[1], 1.0, 1e-9);
  ASSERT_EQ(report.quantiles.size(), 5u);
  EXPECT_NEAR(report.quantiles.front(), 1.0, 1e-9);
  EXPECT_NEAR(report.quantiles.back(), 1.0, 1e-9);
}

TEST(Degree, CheckerboardIsPure) {
  for (int n : {2, 3, 4}) {
    for (int g : {2, 4}) {
      auto board = std::make_shared<Checkerboard>(CheckerboardSpec{n, g, {}});
      const InterventionalValue vf(board, BackgroundSet(board->CellCenters()));
      std::mt19937_64 rng(n * 10 + g);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<Point> points;
      for (int i = 0; i < 6; ++i) {
        Point x(n);
        for (double& xi : x) xi = u(rng);
        points.push_back(x);
      }
      const DegreeReport report = InteractionDegree(Explain(vf, points));
      EXPECT_NEAR(report.mean, n, 1e-9) << "n=" << n << " g=" << g;
      EXPECT_NEAR(report.pooled, n, 1e-9);
      EXPECT_NEAR(report.mass_shares[n], 1.0, 1e-9);
    }
  }
}

TEST(Degree, ConstantModelIsZero) {
  const ShapleyGam gam(SubsetTable(4, std::vector<double>(16, 0.0)), Point(4));
  const DegreeReport report = InteractionDegree({gam, gam});
  EXPECT_EQ(report.mean, 0.0);
  EXPECT_EQ(report.pooled, 0.0);
  for (double share : report.mass_shares) EXPECT_EQ(share, 0.0);
}

TEST(Degree, ScaleInvariant) {
  std::mt19937_64 rng(2);
  const int d = 4;
  const ComponentMap gam = RandomGam(d, 3, rng);
  const Point x = RandomRows(1, d, rng).front();
  const SubsetTable c = gam.Tabulate(x, d);
  SubsetTable scaled = c;
  for (double& v : scaled.mutable_values()) v *= -7.5;
  EXPECT_NEAR(InteractionDegreeAt(ShapleyGam(c, x)),
              InteractionDegreeAt(ShapleyGam(scaled, x)), 1e-12);
}

TEST(Degree, RejectsEmptyOrMixed) {
  EXPECT_THROW(InteractionDegree({}), std::invalid_argument);
  EXPECT_THROW(InteractionDegree({ShapleyGam(SubsetTable(2), Point(2)),
                                  ShapleyGam(SubsetTable(3), Point(3))}),
               std::invalid_argument);
}

TEST(Dependence, AdditiveModelHasNoSpread) {
  std::mt19937_64 rng(3);
  const int d = 4;
  auto model = std::make_shared<AdditiveModel>(d, RandomGam(d, 1, rng));
  const InterventionalValue vf(model, BackgroundSet(RandomRows(10, d, rng)));
  std::vector<InteractionIndex> indices;
  for (Point x : RandomRows(12, d, rng)) {
    x[2] = (indices.size() % 3) * 0.5;
    indices.push_back(NShapleyFromGam(ComputeShapleyGam(BuildValueTable(vf, x)), 1));
  }
  const DependenceSeries series = PartialDependence(indices, 2);
  EXPECT_EQ(series.points.size(), 12u);
  EXPECT_LE(MaxVerticalSpread(series), 1e-9);
  EXPECT_THROW(PartialDependence(indices, 4), std::out_of_range);
}

TEST(Dependence, InteractionCreatesSpread) {
  ComponentMap g;
  g.Add(Component{FeatureSet::Of({0, 1}),
                  {ProductTerm{1.0,
                               {Factor{0, Factor::Kind::kPolynomial, {0.0, 1.0}},
                                Factor{1, Factor::Kind::kPolynomial, {0.0, 1.0}}}}}});
  auto model = std::make_shared<AdditiveModel>(2, g);
  const InterventionalValue vf(model, BackgroundSet({{0.0, 0.0}, {1.0, 1.0}}));
  std::vector<InteractionIndex> indices;
  for (double x1 : {-1.0, 2.0}) {
    indices.push_back(
        NShapleyFromGam(ComputeShapleyGam(BuildValueTable(vf, Point{1.0, x1})), 1));
  }
  EXPECT_GT(MaxVerticalSpread(PartialDependence(indices, 0)), 0.5);
}

}  // namespace
}  // namespace nshap
