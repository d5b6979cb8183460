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

// Python bindings. Value tables are flat sequences indexed by feature mask
// (bit i set means feature i is in the coalition).

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "nshap/analysis.h"
#include "nshap/core.h"
#include "nshap/exactnum.h"
#include "nshap/io.h"
#include "nshap/lattice.h"
#include "nshap/pipeline.h"
#include "nshap/valuefn.h"

namespace py = pybind11;

namespace nshap {
namespace {

int DimOfLength(size_t n) {
  int d = 0;
  while ((size_t{1} << d) < n) ++d;
  if ((size_t{1} << d) != n) {
    throw std::invalid_argument("value table length must be a power of two");
  }
  CheckDim(d);
  return d;
}

SubsetTable ToTable(const std::vector<double>& values) {
  return SubsetTable(DimOfLength(values.size()), values);
}

ValueTable ToValueTable(const std::vector<double>& values) {
  SubsetTable table = ToTable(values);
  const int d = table.dim();
  return ValueTable{std::move(table), Point(d, 0.0)};
}

std::vector<double> FromTable(const SubsetTable& table) {
  const auto values = table.values();
  return {values.begin(), values.end()};
}

py::object ToFraction(const Rational& r) {
  std::ostringstream text;
  text << r;
  return py::module_::import("fractions").attr("Fraction")(text.str());
}

FeatureSet ToSet(const py::object& key) {
  if (py::isinstance<py::str>(key)) return FeatureSet::FromKey(key.cast<std::string>());
  return FeatureSet::Of(key.cast<std::vector<int>>());
}

// Calls back into Python one batch at a time. Always invoked with the GIL
// held, from the calling thread.
class PythonModel : public PredictFn {
 public:
  PythonModel(int dim, py::function predict)
      : dim_(dim), predict_(std::move(predict)) {}

  int dim() const override { return dim_; }

  double Predict(std::span<const double> x) const override {
    return PredictBatch(x).front();
  }

  std::vector<double> PredictBatch(std::span<const double> rows) const override {
    const size_t count = rows.size() / dim_;
    py::array_t<double> batch({count, static_cast<size_t>(dim_)});
    std::copy(rows.begin(), rows.end(), batch.mutable_data());
    const auto out = py::array_t<double, py::array::c_style | py::array::forcecast>(
        predict_(batch));
    if (static_cast<size_t>(out.size()) != count) {
      throw std::runtime_error("predict returned " + std::to_string(out.size()) +
                               " values for " + std::to_string(count) + " rows");
    }
    return {out.data(), out.data() + count};
  }

  bool concurrent() const override { return false; }

 private:
  int dim_;
  py::function predict_;
};

InteractionIndex NShapley(const std::vector<double>& values, int order,
                          const std::string& method) {
  const ValueTable table = ToValueTable(values);
  if (method == "from-gam") return NShapleyFromGam(ComputeShapleyGam(table), order);
  if (method == "recursive") return NShapleyRecursive(table, order);
  if (method == "explicit") return NShapleyExplicit(table, order);
  throw std::invalid_argument("method must be from-gam, recursive or explicit");
}

std::vector<double> InterventionalTable(py::function predict,
                                        const std::vector<Point>& background,
                                        const Point& x) {
  const int d = static_cast<int>(x.size());
  auto model = std::make_shared<PythonModel>(d, std::move(predict));
  const InterventionalValue vf(model, BackgroundSet(background));
  return FromTable(BuildValueTable(vf, x).table);
}

PYBIND11_MODULE(_nshap, m) {
  m.doc() = "Exact n-Shapley Values and Shapley-GAM decompositions.";

  py::register_exception<NoMatchingRows>(m, "NoMatchingRows", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("bernoulli", [](int n) { return ToFraction(Bernoulli(n)); }, py::arg("n"),
        "Exact Bernoulli number B_n (B_1 = -1/2) as a Fraction.");
  m.def("coeff_c", [](int n, int k) { return ToFraction(CoeffC(n, k)); },
        py::arg("n"), py::arg("m"),
        "Weight of an order-(s+m) component in an order-(s+n) attribution.");

  m.def("moebius", [](const std::vector<double>& v) {
    return FromTable(MoebiusTransform(ToTable(v)));
  }, py::arg("values"));
  m.def("zeta", [](const std::vector<double>& v) {
    return FromTable(ZetaTransform(ToTable(v)));
  }, py::arg("values"));

  py::class_<InteractionIndex>(m, "InteractionIndex")
      .def_property_readonly("dim", &InteractionIndex::dim)
      .def_property_readonly("order", &InteractionIndex::order)
      .def_property_readonly("baseline", &InteractionIndex::baseline)
      .def_property_readonly("provenance", [](const InteractionIndex& index) {
        return ProvenanceName(index.provenance());
      })
      .def("__getitem__", [](const InteractionIndex& index, const py::object& key) {
        return index.at(ToSet(key));
      })
      .def("values", [](const InteractionIndex& index) {
        py::dict out;
        for (FeatureSet s : index.Keys()) out[py::str(s.Key())] = index[s];
        return out;
      }, "Dict from comma-joined 0-based feature keys to attributions.")
      .def("sum", &InteractionIndex::Sum)
      .def("to_json", [](const InteractionIndex& index) {
        return IndexToJson(index).dump();
      })
      .def("__repr__", [](const InteractionIndex& index) {
        return "<InteractionIndex dim=" + std::to_string(index.dim()) +
               " order=" + std::to_string(index.order()) + ">";
      });

  m.def("n_shapley", &NShapley, py::arg("values"), py::arg("order"),
        py::arg("method") = "from-gam",
        "n-Shapley Values of a value table; method is from-gam, recursive or "
        "explicit.");
  m.def("shapley_gam", [](const std::vector<double>& values) {
    return ComputeShapleyGam(ToValueTable(values)).AsIndex();
  }, py::arg("values"), "Shapley-GAM components as an order-d index.");
  m.def("shapley_values", [](const std::vector<double>& values) {
    return ClassicShapleyOracle(ToValueTable(values));
  }, py::arg("values"), "Textbook Shapley Values (d <= 12).");
  m.def("reduce_order", &ReduceOrder, py::arg("index"), py::arg("order"));
  m.def("interaction_degree", [](const std::vector<double>& values) {
    return InteractionDegreeAt(ComputeShapleyGam(ToValueTable(values)));
  }, py::arg("values"));

  m.def("interventional_table", &InterventionalTable, py::arg("predict"),
        py::arg("background"), py::arg("x"),
        "Value table v(x, S) of a Python model under the interventional value "
        "function. `predict` maps an (n, d) array to n outputs.");

  m.def("run", [](const std::string& command, const std::string& config) {
    return RunCommand(command, ParseRunConfig(nlohmann::json::parse(config)));
  }, py::arg("command"), py::arg("config_json"),
     "Runs a CLI command (explain, gam, degree, check, plot) on a JSON config.");
}

}  // namespace
}  // namespace nshap
