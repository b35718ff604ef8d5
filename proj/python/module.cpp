#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "sibgeo/errors.hpp"
#include "sibgeo/gallery.hpp"
#include "sibgeo/run.hpp"

namespace py = pybind11;
using namespace sibgeo;

namespace {

std::string verify_json(const std::string& path_or_name) {
  return report_to_json(run(resolve_config(path_or_name)), false);
}

std::string verify_config_json(const std::string& text) {
  return report_to_json(run(parse_config(text)), false);
}

// value, gradient and Hessian of an expression at a point
py::tuple expr_jet(const std::string& source, const std::vector<std::string>& names,
                   const std::vector<double>& point) {
  if (names.size() != point.size()) throw DimensionMismatch("point has " + std::to_string(point.size()) +
                                                            " entries for " + std::to_string(names.size()) + " names");
  const Jet2 j = parse(source, names).eval_jet(point);
  const int n = static_cast<int>(names.size());
  std::vector<double> grad(point.size());
  std::vector<std::vector<double>> hess(point.size(), std::vector<double>(point.size()));
  for (int i = 0; i < n; ++i) {
    grad[static_cast<std::size_t>(i)] = j.grad(i);
    for (int k = 0; k < n; ++k) hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = j.hess(i, k);
  }
  return py::make_tuple(j.value(), grad, hess);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sibling metric verification core";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args are (kind, message)
      PyErr_SetObject(error.ptr(), py::make_tuple(e.kind(), e.what()).ptr());
    }
  });

  m.def("gallery_names", &gallery_names);
  m.def("check_names", &check_names);
  m.def("verify_json", &verify_json, py::arg("path_or_name"),
        "Run the suite for a config file or gallery name; JSON report without timing.");
  m.def("verify_config_json", &verify_config_json, py::arg("config_text"));
  m.def("gallery_config_json", [](const std::string& name) { return config_to_json(gallery_config(name)); },
        py::arg("name"));
  m.def("curvature_json",
        [](const std::string& path_or_name, const std::vector<double>& point) {
          return curvature_json(build_entry(resolve_config(path_or_name)), point);
        },
        py::arg("path_or_name"), py::arg("point"));
  m.def("expr_jet", &expr_jet, py::arg("source"), py::arg("names"), py::arg("point"));
}
