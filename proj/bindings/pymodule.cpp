//====== python bindings ======//
//
// Thin mirror of the C++ surface: geometry, radial algebra, spherical
// functions, L^p classification, spectra. Validation errors surface as
// ValueError; the classification gate gets its own exception type.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treeharm/boundary.hpp"
#include "treeharm/jsonio.hpp"
#include "treeharm/radial.hpp"
#include "treeharm/spectra.hpp"
#include "treeharm/spherical.hpp"
#include "treeharm/tree.hpp"
#include "treeharm/verify.hpp"

namespace py = pybind11;
using namespace treeharm;

namespace {

std::vector<std::pair<real_t, real_t>> union_to_pairs(const IntervalUnion& u) {
  std::vector<std::pair<real_t, real_t>> out;
  for (const Interval& c : u.components()) out.emplace_back(c.lo, c.hi);
  return out;
}

py::dict step_to_dict(const NestingStep& step) {
  py::dict d;
  d["p_from"] = step.p_from;
  d["p_to"] = step.p_to;
  d["spectrum_from"] = union_to_pairs(step.spectrum_from);
  d["spectrum_to"] = union_to_pairs(step.spectrum_to);
  d["strict"] = step.strict;
  d["witness_eigenvalue"] = step.witness_eigenvalue;
  d["witness_parameter"] = step.witness_parameter;
  d["margin_upper"] = step.margin_upper;
  d["margin_lower"] = step.margin_lower;
  return d;
}

}  // namespace

PYBIND11_MODULE(treeharm, m) {
  m.doc() = "spherical harmonic analysis on semi-homogeneous trees";

  py::register_exception<ClassificationUnavailableError>(
      m, "ClassificationUnavailable");
  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);

  py::class_<TreeParams>(m, "TreeParams")
      .def_readonly("d0", &TreeParams::d0)
      .def_readonly("d1", &TreeParams::d1)
      .def_readonly("kappa", &TreeParams::kappa)
      .def_readonly("delta", &TreeParams::delta)
      .def("__eq__",
           [](const TreeParams& a, const TreeParams& b) { return a == b; })
      .def("__repr__", [](const TreeParams& p) {
        return "TreeParams(d0=" + std::to_string(p.d0) +
               ", d1=" + std::to_string(p.d1) +
               ", kappa=" + std::to_string(p.kappa) + ")";
      });

  py::class_<RadialFunction>(m, "RadialFunction")
      .def_readonly("params", &RadialFunction::params)
      .def_property_readonly("coeffs",
                             [](const RadialFunction& f) {
                               py::dict d;
                               for (const auto& [r, v] : f.coeffs)
                                 d[py::int_(r)] = v;
                               return d;
                             })
      .def("at", &RadialFunction::at, py::arg("r"))
      .def("max_support", &RadialFunction::max_support);

  m.def("make_tree_params", &make_tree_params, py::arg("d0"), py::arg("d1"),
        py::arg("kappa"));
  m.def("sphere_size", &sphere_size, py::arg("params"), py::arg("r"));
  m.def(
      "make_radial",
      [](const TreeParams& params, const std::map<int, complex_t>& coeffs) {
        return make_radial(params, coeffs);
      },
      py::arg("params"), py::arg("coeffs"));
  m.def("coset_indicator", &coset_indicator, py::arg("params"), py::arg("m"));
  m.def("convolve", &convolve, py::arg("f"), py::arg("g"));
  m.def("integrate", &integrate, py::arg("f"));
  m.def("adjoint", &adjoint, py::arg("f"));

  m.def("length_exponential", &length_exponential, py::arg("params"),
        py::arg("z"), py::arg("r"));
  m.def("spherical_eigenvalue", &spherical_eigenvalue, py::arg("params"),
        py::arg("z"));
  m.def("mixing_coefficient", &mixing_coefficient, py::arg("params"),
        py::arg("z"), py::arg("tol") = Tolerances{}.singular);
  m.def("spherical_eval", &spherical_eval, py::arg("params"), py::arg("z"),
        py::arg("r"));
  m.def("spherical_via_boundary", &spherical_via_boundary, py::arg("params"),
        py::arg("z"), py::arg("r"));
  m.def("eigen_residual", &eigen_residual, py::arg("params"), py::arg("z"),
        py::arg("r_max"));

  m.def(
      "lp_class",
      [](const TreeParams& params, complex_t z, real_t p, bool spherical) {
        LpVerdict v = lp_class(params, z, p,
                               spherical ? LpMode::SphericalFunction
                                         : LpMode::LengthExponential);
        py::dict d;
        d["p"] = v.p;
        d["member"] = v.member;
        d["threshold_re"] = v.threshold_re;
        d["mode"] = spherical ? "spherical_function" : "length_exponential";
        if (v.integral) {
          d["integral"] = *v.integral;
        } else {
          d["integral"] = py::none();
        }
        return d;
      },
      py::arg("params"), py::arg("z"), py::arg("p"),
      py::arg("spherical") = false);

  m.def(
      "full_spectrum",
      [](const TreeParams& params, bool tits_independence) {
        return union_to_pairs(full_spectrum(params, tits_independence));
      },
      py::arg("params"), py::arg("tits_independence") = true);
  m.def(
      "lp_spectrum",
      [](const TreeParams& params, real_t p, bool tits_independence) {
        return union_to_pairs(lp_spectrum(params, p, tits_independence));
      },
      py::arg("params"), py::arg("p"), py::arg("tits_independence") = true);
  m.def("critical_spectrum", [](const TreeParams& params) {
    return union_to_pairs(critical_spectrum(params));
  });
  m.def(
      "nesting_report",
      [](const TreeParams& params, const std::vector<real_t>& ps,
         bool tits_independence) {
        NestingReport report = nesting_report(params, ps, tits_independence);
        py::dict d;
        d["exponents"] = report.exponents;
        py::list steps;
        for (const NestingStep& step : report.steps)
          steps.append(step_to_dict(step));
        d["steps"] = steps;
        d["all_strict"] = report.all_strict;
        return d;
      },
      py::arg("params"), py::arg("ps"), py::arg("tits_independence") = true);
  m.def("find_parameter_for_eigenvalue", &find_parameter_for_eigenvalue,
        py::arg("params"), py::arg("p"), py::arg("target"),
        py::arg("tits_independence") = true);

  m.def("radial_to_json", [](const RadialFunction& f) {
    return canonical_dump(radial_to_json(f));
  });
  m.def("radial_from_json", [](const std::string& text) {
    return radial_from_json(ordered_json::parse(text));
  });

  m.def(
      "run_suite",
      [](const TreeParams& params, const std::string& suite) {
        VerifyOptions opts;
        SuiteReport report = run_suite(params, suite, opts);
        py::list checks;
        for (const CheckResult& c : report.checks) {
          py::dict row;
          row["name"] = c.name;
          row["pass"] = c.pass;
          row["measured"] = c.measured;
          row["tolerance"] = c.tolerance;
          row["detail"] = c.detail;
          checks.append(row);
        }
        py::dict d;
        d["suite"] = report.suite;
        d["checks"] = checks;
        d["all_pass"] = report.all_pass();
        return d;
      },
      py::arg("params"), py::arg("suite"));
}
