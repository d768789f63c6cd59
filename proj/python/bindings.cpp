#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "detlines/campaigns.hpp"

namespace py = pybind11;
using namespace detlines;

namespace {

Mat matrix_from_rows(const std::vector<std::vector<std::string>>& rows) {
  const size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Mat m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix");
    for (size_t j = 0; j < c; ++j) m(i, j) = Gaussian::parse(rows[i][j]);
  }
  return m;
}

std::vector<Gaussian> parse_points(const std::vector<std::string>& pts) {
  std::vector<Gaussian> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(Gaussian::parse(p));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact determinant-line computations";

  // later registrations are tried first, so the base class goes first
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<Gaussian>(m, "Gaussian")
      .def(py::init([](const std::string& text) { return Gaussian::parse(text); }))
      .def(py::init([](long v) { return Gaussian(v); }))
      .def_property_readonly("real", [](const Gaussian& g) { return g.re().get_str(); })
      .def_property_readonly("imag", [](const Gaussian& g) { return g.im().get_str(); })
      .def("inv", &Gaussian::inv)
      .def("conj", &Gaussian::conj)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__hash__", [](const Gaussian& g) { return py::hash(py::str(g.str())); })
      .def("__str__", &Gaussian::str)
      .def("__repr__", [](const Gaussian& g) { return "Gaussian('" + g.str() + "')"; });

  py::class_<RatFunc>(m, "RatFunc")
      .def(py::init([](const std::string& text) { return RatFunc::parse(text); }))
      .def_property_readonly("numerator", [](const RatFunc& f) { return f.num().str(); })
      .def_property_readonly("denominator", [](const RatFunc& f) { return f.den().str(); })
      .def("__call__", [](const RatFunc& f, const Gaussian& z) { return f.eval(z); })
      .def("__call__", [](const RatFunc& f, const std::string& z) { return f.eval(Gaussian::parse(z)); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__str__", &RatFunc::str)
      .def("__repr__", [](const RatFunc& f) { return "RatFunc('" + f.str() + "')"; });

  m.def("det", [](const std::vector<std::vector<std::string>>& rows) {
    return det(matrix_from_rows(rows)).str();
  }, "Determinant of a square matrix given as rows of scalar strings.");
  m.def("rank", [](const std::vector<std::vector<std::string>>& rows) {
    return rank(matrix_from_rows(rows));
  });
  m.def("rational_reconstruct",
        [](const std::vector<std::string>& points, const std::vector<std::string>& values,
           int num, int den) {
          if (points.size() != values.size()) throw DimensionError("points and values differ in length");
          std::vector<Sample> s;
          for (size_t k = 0; k < points.size(); ++k) {
            s.push_back({Gaussian::parse(points[k]), Gaussian::parse(values[k])});
          }
          return rational_reconstruct(s, num, den);
        },
        py::arg("points"), py::arg("values"), py::arg("num"), py::arg("den"));
  m.def("default_grid", [](size_t n) {
    std::vector<std::string> out;
    for (const auto& z : default_grid(n)) out.push_back(z.str());
    return out;
  });

  m.def("campaign_names", &campaign_names);
  m.def("compute_kinds", &compute_kinds);
  m.def("_run_campaign",
        [](const std::string& name, uint64_t seed, std::optional<size_t> trials,
           std::optional<size_t> max_dim, const std::string& field,
           std::optional<std::vector<std::string>> grid, bool corrupt_oracle) {
          CampaignConfig cfg;
          cfg.seed = seed;
          cfg.trials = trials;
          cfg.max_dim = max_dim;
          cfg.gaussian = parse_kind(field) == ScalarKind::gaussian;
          cfg.corrupt_oracle = corrupt_oracle;
          if (grid) cfg.grid = parse_points(*grid);
          Report r;
          {
            py::gil_scoped_release release;
            r = run_campaign(name, cfg);
          }
          return report_to_json(r).dump();
        });
  m.def("_compute", [](const std::string& kind, const std::string& input,
                       std::optional<std::vector<std::string>> grid) {
    std::optional<std::vector<Gaussian>> g;
    if (grid) g = parse_points(*grid);
    Json in;
    try {
      in = Json::parse(input);
    } catch (const Json::exception& e) {
      throw ParseError(e.what());
    }
    return compute(kind, in, g).dump();
  });
}
