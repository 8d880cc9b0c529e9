#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "m2ma/cadlag.hpp"
#include "m2ma/config.hpp"
#include "m2ma/ma.hpp"
#include "m2ma/mc.hpp"
#include "m2ma/noise.hpp"
#include "m2ma/report.hpp"
#include "m2ma/stablelim.hpp"

namespace py = pybind11;
using namespace m2ma;

namespace {

// Rows as dicts keyed by column name.
py::list table_rows(const Table& table) {
  py::list rows;
  for (const auto& row : table.rows) {
    py::dict d;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { d[py::str(table.columns[c])] = v; }, row[c]);
    }
    rows.append(d);
  }
  return rows;
}

py::list run_experiment(const std::string& name, const std::string& config_text, unsigned jobs) {
  const auto cfg = parse_config(config_text);
  Table table;
  {
    py::gil_scoped_release release;
    if (name == "slutsky") table = to_table(slutsky_gap(cfg, jobs));
    else if (name == "truncation") table = to_table(truncation_decay(cfg, jobs));
    else if (name == "marginal") table = to_table(marginal_cf_check(cfg, jobs));
    else if (name == "functional") table = to_table(functional_convergence(cfg, jobs));
    else if (name == "identity") table = to_table(identity_fuzz(cfg));
    else throw std::invalid_argument("unknown experiment '" + name + "'");
  }
  return table_rows(table);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings for m2ma";
  m.attr("__version__") = library_version();

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<TailModel>(m, "TailModel")
      .def_property_readonly("alpha", &TailModel::alpha)
      .def_property_readonly("p", &TailModel::p)
      .def_property_readonly("r", &TailModel::r)
      .def("__repr__", [](const TailModel& t) {
        return "TailModel(alpha=" + std::to_string(t.alpha()) + ", p=" + std::to_string(t.p()) + ")";
      });
  m.def("make_tail_model", &make_tail_model, py::arg("alpha"), py::arg("p") = 0.5);
  m.def("sample_noise", &sample_noise, py::arg("model"), py::arg("count"), py::arg("start") = 1,
        py::arg("seed") = 1);
  m.def(
      "norming_constant", [](const TailModel& model, std::int64_t n) { return norming_constant(model, n).value(); },
      py::arg("model"), py::arg("n"));

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init<double>(), py::arg("value"))
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("jump_times"), py::arg("values"))
      .def_property_readonly("jump_times",
                             [](const StepFunction& x) {
                               auto s = x.jump_times();
                               return std::vector<double>(s.begin(), s.end());
                             })
      .def_property_readonly("values",
                             [](const StepFunction& x) {
                               auto s = x.values();
                               return std::vector<double>(s.begin(), s.end());
                             })
      .def("terminal", &StepFunction::terminal)
      .def("to_csv", [](const StepFunction& x) { return to_csv(x); })
      .def_static("from_csv", &from_csv, py::arg("text"));

  m.def("m2_distance", &m2_distance);
  m.def("uniform_distance", &uniform_distance);
  m.def("sampled_hausdorff", &sampled_hausdorff, py::arg("x1"), py::arg("x2"), py::arg("h"));
  m.def(
      "partial_sum_path",
      [](const std::vector<double>& y, double scale, double drift) { return partial_sum_path(y, scale, drift); },
      py::arg("y"), py::arg("scale"), py::arg("drift") = 0.0);

  py::class_<CoefficientViolation>(m, "CoefficientViolation")
      .def_readonly("s", &CoefficientViolation::s)
      .def_readonly("ratio", &CoefficientViolation::ratio)
      .def("__str__", &CoefficientViolation::describe);
  m.def(
      "validate_coefficients",
      [](const std::vector<double>& phis) { return validate_coefficients(phis); }, py::arg("phis"));

  py::class_<Coefficients>(m, "Coefficients")
      .def(py::init<std::vector<double>>(), py::arg("phis"))
      .def_property_readonly("total", &Coefficients::original_total)
      .def_property_readonly("order", &Coefficients::order)
      .def("original", &Coefficients::original);

  m.def(
      "build_paths",
      [](const TailModel& model, const Coefficients& coeffs, std::int64_t n, Seed seed) {
        auto paths = build_paths(model, coeffs, n, seed);
        return py::make_tuple(paths.vn, paths.vnz);
      },
      py::arg("model"), py::arg("coeffs"), py::arg("n"), py::arg("seed") = 1,
      "Coupled paths (V_n, V_n^Z) from one noise draw.");

  m.def(
      "lk_exponent", [](const TailModel& model, double t) { return lk_exponent(levy_triple(model), t); },
      py::arg("model"), py::arg("t"));
  m.def(
      "limit_cf",
      [](const TailModel& model, double phi_total, double t) { return limit_cf(levy_triple(model), phi_total, t); },
      py::arg("model"), py::arg("phi_total"), py::arg("t"));

  m.def("run_experiment", &run_experiment, py::arg("name"), py::arg("config"), py::arg("jobs") = 1,
        "Run an experiment from config text; returns the report rows as dicts.");
}
