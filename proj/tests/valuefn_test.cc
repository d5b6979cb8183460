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

#include <memory>
#include <random>

#include "gtest/gtest.h"
#include "nshap/errors.h"
#include "test_util.h"

namespace nshap {
namespace {

using ::nshap::testing::MaxAbsDiff;
using ::nshap::testing::RandomGam;
using ::nshap::testing::RandomRows;

// f(z) = scale * sum_j z_j, or the product of coordinates.
class SumModel : public PredictFn {
 public:
  explicit SumModel(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  double Predict(std::span<const double> x) const override {
    double s = 0;
    for (int j = 0; j < dim_; ++j) s += x[j];
    return s;
  }

 private:
  int dim_;
};

class ProductModel : public PredictFn {
 public:
  int dim() const override { return 2; }
  double Predict(std::span<const double> x) const override { return x[0] * x[1]; }
};

class ConstantModel : public PredictFn {
 public:
  ConstantModel(int dim, double c) : dim_(dim), c_(c) {}
  int dim() const override { return dim_; }
  double Predict(std::span<const double>) const override { return c_; }

 private:
  int dim_;
  double c_;
};

TEST(Interventional, SumExample) {
  auto model = std::make_shared<SumModel>(2);
  const BackgroundSet background({{0, 0}, {2, 2}});
  const InterventionalValue vf(model, background);
  const Point x = {1, 5};
  EXPECT_EQ(vf.Evaluate(x, FeatureSet()), 2.0);
  EXPECT_EQ(vf.Evaluate(x, FeatureSet::Of({0})), 2.0);
  EXPECT_EQ(vf.Evaluate(x, FeatureSet::Of({1})), 6.0);
  EXPECT_EQ(vf.Evaluate(x, FeatureSet::Of({0, 1})), 6.0);
  const ValueTable table = BuildValueTable(vf, x);
  EXPECT_EQ(std::vector<double>(table.table.values().begin(),
                                table.table.values().end()),
            (std::vector<double>{2, 2, 6, 6}));
}

TEST(Interventional, CenteredProduct) {
  auto model = std::make_shared<ProductModel>();
  const InterventionalValue vf(model,
                               BackgroundSet({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
  const double a = 3.0, b = -0.7;
  const ValueTable table = BuildValueTable(vf, Point{a, b});
  EXPECT_EQ(table[FeatureSet()], 0.0);
  EXPECT_EQ(table[FeatureSet::Of({0})], 0.0);
  EXPECT_EQ(table[FeatureSet::Of({1})], 0.0);
  EXPECT_EQ(table[FeatureSet::Of({0, 1})], a * b);
}

TEST(Interventional, FullSetIsPrediction) {
  std::mt19937_64 rng(4);
  auto model = std::make_shared<AdditiveModel>(5, RandomGam(5, 3, rng));
  const InterventionalValue vf(model, BackgroundSet(RandomRows(7, 5, rng)));
  for (const Point& x : RandomRows(5, 5, rng)) {
    EXPECT_EQ(vf.Evaluate(x, FeatureSet::Full(5)), model->Predict(x));
    EXPECT_EQ(BuildValueTable(vf, x)[FeatureSet::Full(5)], model->Predict(x));
  }
}

TEST(Interventional, BatchMatchesPointwise) {
  std::mt19937_64 rng(8);
  auto model = std::make_shared<AdditiveModel>(6, RandomGam(6, 2, rng));
  const InterventionalValue vf(model, BackgroundSet(RandomRows(9, 6, rng)));
  const Point x = RandomRows(1, 6, rng).front();
  const ValueTable table = BuildValueTable(vf, x);
  for (FeatureSet s : EnumerateSubsets(6, 6)) {
    EXPECT_EQ(table[s], vf.Evaluate(x, s)) << s.Key();
  }
}

TEST(Interventional, Errors) {
  EXPECT_THROW(BackgroundSet({}), std::invalid_argument);
  EXPECT_THROW(BackgroundSet({{1, 2}, {1}}), std::invalid_argument);
  EXPECT_THROW(InterventionalValue(std::make_shared<SumModel>(3),
                                   BackgroundSet({{1, 2}})),
               std::invalid_argument);
}

TEST(Constant, AllEntriesEqual) {
  const InterventionalValue vf(std::make_shared<ConstantModel>(3, 4.5),
                               BackgroundSet({{0, 0, 0}, {1, 1, 1}}));
  const ValueTable table = BuildValueTable(vf, Point{1, 2, 3});
  for (double v : table.table.values()) {
    EXPECT_EQ(v, 4.5);
  }
}

TEST(Observational, ExactMatchExamples) {
  auto second = std::make_shared<AdditiveModel>(
      2, ComponentMap({{FeatureSet::Of({1}),
                        {{1.0, {Factor{1, Factor::Kind::kPolynomial, {0, 1}}}}},
                        std::nullopt}}));
  const ObservationalExactMatchValue vf(second, BackgroundSet({{0, 1}, {0, 2}}));
  EXPECT_EQ(vf.Evaluate(Point{0, 7}, FeatureSet::Of({0})), 1.5);
  EXPECT_EQ(vf.Evaluate(Point{5, 7}, FeatureSet()), 1.5);
  EXPECT_THROW(vf.Evaluate(Point{1, 7}, FeatureSet::Of({0})), NoMatchingRows);
  try {
    BuildValueTable(vf, Point{0, 7});
    FAIL();
  } catch (const NoMatchingRows& e) {
    EXPECT_EQ(e.subset(), FeatureSet::Of({1}));
  }
}

TEST(GamInduced, HandExamples) {
  ComponentMap map;
  map.Add({FeatureSet(), {{1.0, {}}}, std::nullopt});
  map.Add({FeatureSet::Of({0}),
           {{1.0, {Factor{0, Factor::Kind::kPolynomial, {0, 1}}}}},
           std::nullopt});
  const GamInducedValue vf(2, map);
  EXPECT_EQ(vf.Evaluate(Point{2, 9}, FeatureSet::Of({0})), 3.0);
  EXPECT_EQ(vf.Evaluate(Point{2, 9}, FeatureSet()), 1.0);
  EXPECT_EQ(BuildValueTable(vf, Point{2, 9})[FeatureSet::Of({0, 1})], 3.0);
}

TEST(GamInduced, MoebiusRecoversComponents) {
  std::mt19937_64 rng(12);
  for (int d = 1; d <= 10; ++d) {
    const ComponentMap map = RandomGam(d, d, rng);
    const GamInducedValue vf(d, map);
    const Point x = RandomRows(1, d, rng).front();
    const SubsetTable components = map.Tabulate(x, d);
    const SubsetTable recovered = MoebiusTransform(BuildValueTable(vf, x).table);
    EXPECT_LE(MaxAbsDiff(recovered.values(), components.values()), 1e-12) << d;
  }
}

// Changing coordinates outside S never changes v(x, S).
TEST(Properties, SubsetCompliance) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 8);
    auto model = std::make_shared<AdditiveModel>(d, RandomGam(d, std::min(d, 3), rng));
    const std::vector<Point> rows = RandomRows(6, d, rng);
    const InterventionalValue interventional(model, BackgroundSet(rows));
    const ObservationalExactMatchValue observational(model, BackgroundSet(rows));
    const GamInducedValue induced(d, RandomGam(d, d, rng));
    const FeatureSet s(static_cast<uint32_t>(rng() % (1u << d)));
    // Observational needs x_S to occur in the data.
    Point x = rows[rng() % rows.size()];
    Point y = x;
    for (int j = 0; j < d; ++j) {
      if (!s.contains(j)) y[j] = u(rng);
    }
    ASSERT_EQ(interventional.Evaluate(x, s), interventional.Evaluate(y, s));
    ASSERT_EQ(observational.Evaluate(x, s), observational.Evaluate(y, s));
    ASSERT_EQ(induced.Evaluate(x, s), induced.Evaluate(y, s));
    ASSERT_EQ(induced.BatchEvaluate(x)[s], induced.BatchEvaluate(y)[s]);
    ASSERT_EQ(interventional.BatchEvaluate(x)[s],
              interventional.BatchEvaluate(y)[s]);
  }
}

TEST(Properties, LinearInModel) {
  std::mt19937_64 rng(22);
  const int d = 5;
  const ComponentMap f = RandomGam(d, 2, rng);
  const ComponentMap g = RandomGam(d, 3, rng);
  ComponentMap sum = f;
  for (const Component& c : g.components()) sum.Add(c);
  const BackgroundSet bg(RandomRows(10, d, rng));
  const Point x = RandomRows(1, d, rng).front();
  const InterventionalValue vf(std::make_shared<AdditiveModel>(d, f), bg);
  const InterventionalValue vg(std::make_shared<AdditiveModel>(d, g), bg);
  const InterventionalValue vs(std::make_shared<AdditiveModel>(d, sum), bg);
  SubsetTable expected = BuildValueTable(vf, x).table;
  expected += BuildValueTable(vg, x).table;
  EXPECT_LE(MaxAbsDiff(BuildValueTable(vs, x).table.values(), expected.values()),
            1e-12);
  SubsetTable induced = BuildValueTable(GamInducedValue(d, f), x).table;
  induced += BuildValueTable(GamInducedValue(d, g), x).table;
  EXPECT_LE(MaxAbsDiff(BuildValueTable(GamInducedValue(d, sum), x).table.values(),
                       induced.values()),
            1e-12);
}

// On a full product grid the background is a product of its marginals, so
// conditioning and intervening agree.
TEST(Properties, IndependentGridObservationalEqualsInterventional) {
  std::mt19937_64 rng(23);
  const std::vector<double> levels = {-1.0, 0.0, 0.5, 2.0};
  for (int d = 1; d <= 4; ++d) {
    std::vector<Point> grid;
    const size_t count = static_cast<size_t>(std::pow(3, d));
    for (size_t i = 0; i < count; ++i) {
      Point row(d);
      size_t rest = i;
      for (int j = 0; j < d; ++j) {
        row[j] = levels[rest % 3 + (j % 2)];
        rest /= 3;
      }
      grid.push_back(row);
    }
    auto model = std::make_shared<AdditiveModel>(d, RandomGam(d, d, rng));
    const InterventionalValue interventional(model, BackgroundSet(grid));
    const ObservationalExactMatchValue observational(model, BackgroundSet(grid));
    for (const Point& x : {grid.front(), grid[count / 2], grid.back()}) {
      const ValueTable a = BuildValueTable(interventional, x);
      const ValueTable b = BuildValueTable(observational, x);
      EXPECT_LE(MaxAbsDiff(a.table.values(), b.table.values()), 1e-12) << d;
    }
  }
}

}  // namespace
}  // namespace nshap
