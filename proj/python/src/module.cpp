#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "pt_horizon/identities.hpp"
#include "pt_horizon/model.hpp"
#include "pt_horizon/oracle.hpp"
#include "pt_horizon/topology.hpp"

namespace py = pybind11;
using namespace pt_horizon;

namespace {

topology::Mode mode_of(const std::string& text) {
  const auto m = topology::parse_mode(text);
  if (!m) throw py::value_error("mode must be 'strict' or 'real'");
  return *m;
}

topology::Axis axis_of(const std::string& text) {
  const auto a = topology::parse_axis(text);
  if (!a) throw py::value_error("axis must be 'a', 'b' or 'c'");
  return *a;
}

py::dict spectrum_dict(const Spectrum& s) {
  py::dict d;
  d["values"] = std::vector<Complex>(s.values.begin(), s.values.end());
  d["classification"] = std::string(to_string(s.classification));
  d["min_gap"] = s.min_gap;
  return d;
}

template <typename T>
py::array_t<T> as_square(const std::vector<T>& data, std::size_t n) {
  py::array_t<T> out({n, n});
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exceptional-point geometry of the four-site PT-symmetric lattice";

  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("hamiltonian", [](double a, double b, double c) {
    const Hamiltonian4 h = build_circular({a, b, c});
    py::array_t<double> out({4, 4});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < 4; ++i) {
      for (py::ssize_t j = 0; j < 4; ++j) v(i, j) = h(i, j);
    }
    return out;
  }, py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("discriminants", [](double a, double b, double c) {
    const auto d = eval_discriminants({a, b, c});
    py::dict out;
    out["W"] = d.w;
    out["Q"] = d.q;
    out["P"] = d.p;
    return out;
  }, py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("energies", [](double a, double b, double c) {
    return spectrum_dict(energies({a, b, c}));
  }, py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("oracle_eigenvalues", [](double a, double b, double c) {
    return spectrum_dict(oracle::eigenvalues(build_circular({a, b, c})));
  }, py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("in_domain", [](double a, double b, double c, double eta, const std::string& mode) {
    return topology::membership({a, b, c}, eta, mode_of(mode));
  }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("eta") = 0.0,
     py::arg("mode") = "strict");

  m.def("in_domain_oracle", [](double a, double b, double c) {
    return oracle::in_domain_oracle({a, b, c});
  }, py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("segment_connected",
        [](std::array<double, 3> p, std::array<double, 3> q, double eta, const std::string& mode) {
          return topology::segment_connected({p[0], p[1], p[2]}, {q[0], q[1], q[2]}, eta,
                                             mode_of(mode));
        },
        py::arg("p"), py::arg("q"), py::arg("eta") = 0.0, py::arg("mode") = "strict");

  m.def("slice",
        [](const std::string& axis, double value, std::size_t resolution, double eta,
           const std::string& mode) {
          const auto spec = topology::make_slice(axis_of(axis), value, resolution, eta,
                                                 mode_of(mode));
          topology::SliceGrid grid;
          topology::ComponentReport report;
          {
            py::gil_scoped_release release;
            grid = topology::sample_slice(spec);
            report = topology::components2d(grid);
          }
          py::dict out;
          out["count"] = report.count;
          out["inside"] = as_square(grid.membership, resolution);
          out["labels"] = as_square(report.labels, resolution);
          out["u_range"] = std::make_pair(spec.u_range.min, spec.u_range.max);
          out["v_range"] = std::make_pair(spec.v_range.min, spec.v_range.max);
          return out;
        },
        py::arg("axis"), py::arg("value"), py::arg("resolution") = 400, py::arg("eta") = 0.0,
        py::arg("mode") = "strict");

  m.def("box_components", [](std::size_t resolution, double eta, const std::string& mode) {
    topology::BoxSpec box;
    box.resolution = resolution;
    box.eta = eta;
    box.mode = mode_of(mode);
    py::gil_scoped_release release;
    return topology::components3d(box).count;
  }, py::arg("resolution") = 160, py::arg("eta") = 0.0, py::arg("mode") = "strict");

  m.def("verify_json", [] {
    return identities::report_json(identities::run_all()).dump();
  });
}
