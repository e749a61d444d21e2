#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qdisk/cli.hpp"
#include "qdisk/errors.hpp"
#include "qdisk/integral_means.hpp"
#include "qdisk/maps.hpp"
#include "qdisk/motion.hpp"
#include "qdisk/nevanlinna_pick.hpp"
#include "qdisk/twisting.hpp"
#include "qdisk/verify.hpp"

namespace py = pybind11;
using namespace qdisk;

PYBIND11_MODULE(_qdisk, m) {
  m.doc() = "Integral means spectra of conformal maps with quasiconformal extensions";
  py::register_exception<Error>(m, "QdiskError", PyExc_RuntimeError);

  py::class_<ConformalMap, std::shared_ptr<ConformalMap>>(m, "ConformalMap")
      .def_property_readonly("family", &ConformalMap::family)
      .def("evaluate", &ConformalMap::evaluate, py::arg("z"))
      .def("derivative", &ConformalMap::derivative, py::arg("z"))
      .def_property_readonly("distortion", &ConformalMap::distortion)
      .def("boundary_value", &ConformalMap::boundary_value, py::arg("zeta"));
  py::class_<IdentityMap, ConformalMap, std::shared_ptr<IdentityMap>>(m, "IdentityMap").def(py::init<>());
  py::class_<HalfPlanePowerMap, ConformalMap, std::shared_ptr<HalfPlanePowerMap>>(m, "HalfPlanePowerMap")
      .def(py::init<cplx>(), py::arg("sigma"));
  py::class_<DiskPowerMap, ConformalMap, std::shared_ptr<DiskPowerMap>>(m, "DiskPowerMap")
      .def(py::init<cplx>(), py::arg("sigma"))
      .def("analytic_beta", &DiskPowerMap::analytic_beta, py::arg("t"));
  py::class_<NormalizedDiskMap, ConformalMap, std::shared_ptr<NormalizedDiskMap>>(m, "NormalizedDiskMap")
      .def(py::init([](std::shared_ptr<ConformalMap> base) { return std::make_shared<NormalizedDiskMap>(base); }),
           py::arg("base"));

  m.def("distortion_k", [](cplx sigma) { return distortion_k(PowerExponent(sigma)); }, py::arg("sigma"));
  m.def(
      "alpha_gamma",
      [](cplx sigma) {
        const ScalingRotation ag = alpha_gamma(PowerExponent(sigma));
        return py::make_tuple(ag.alpha, ag.gamma);
      },
      py::arg("sigma"));

  py::class_<SpectrumEstimate>(m, "SpectrumEstimate")
      .def_readonly("t", &SpectrumEstimate::t)
      .def_readonly("local_slopes", &SpectrumEstimate::local_slopes)
      .def_readonly("beta_limsup", &SpectrumEstimate::beta_limsup)
      .def_readonly("beta_lsq", &SpectrumEstimate::beta_lsq)
      .def_property_readonly("radii",
                             [](const SpectrumEstimate& e) {
                               std::vector<double> r;
                               for (const auto& level : e.levels) r.push_back(level.radius);
                               return r;
                             })
      .def_property_readonly("integrals", [](const SpectrumEstimate& e) {
        std::vector<double> v;
        for (const auto& level : e.levels) v.push_back(level.integral);
        return v;
      });
  m.def(
      "circle_integral",
      [](const ConformalMap& f, double r, cplx t, double tol) {
        QuadratureOptions q;
        q.tol = tol;
        return circle_integral(f, r, t, q).value;
      },
      py::arg("f"), py::arg("r"), py::arg("t"), py::arg("tol") = 1e-9);
  m.def(
      "beta_estimate",
      [](const ConformalMap& f, cplx t, int j_min, int j_max, int tail, double tol) {
        QuadratureOptions q;
        q.tol = tol;
        py::gil_scoped_release release;
        return beta_estimate(f, t, RadiusSchedule(j_min, j_max), tail, q);
      },
      py::arg("f"), py::arg("t"), py::arg("j_min") = 2, py::arg("j_max") = 14, py::arg("tail") = 4,
      py::arg("tol") = 1e-9);
  m.def(
      "reference_spectra",
      [](double k, cplx t) {
        const ReferenceSpectra r = reference_spectra(k, t);
        py::dict d;
        d["trivial_upper"] = r.trivial_upper;
        d["trivial_lower"] = r.trivial_lower;
        d["theorem_value"] = r.theorem_value;
        d["linear_zone"] = r.linear_zone;
        d["hedenmalm"] = r.hedenmalm;
        d["disproved_conjecture"] = r.disproved_conjecture;
        return d;
      },
      py::arg("k"), py::arg("t"));
  m.def(
      "integrability_region", [](double k, cplx t) { return to_string(integrability_region(k, t)); }, py::arg("k"),
      py::arg("t"));
  m.def("area_integral", &area_integral, py::arg("f"), py::arg("t"), py::arg("r_max"), py::arg("tol") = 1e-8);

  m.def("contains", py::overload_cast<cplx, double>(&contains), py::arg("w"), py::arg("k"));
  m.def("boundary_polyline", &boundary_polyline, py::arg("k"), py::arg("n") = 256);
  m.def("cone_check", &cone_check, py::arg("w"), py::arg("k"));
  m.def("two_point_segment", &two_point_segment, py::arg("k"));
  m.def(
      "psi_first", [](cplx c, cplx lambda, cplx eta) { return psi_first({InterpolantKind::First, c}, lambda, eta); },
      py::arg("c"), py::arg("lam"), py::arg("eta"));
  m.def(
      "psi_second",
      [](cplx c, cplx lambda, cplx eta) { return psi_second({InterpolantKind::Second, c}, lambda, eta); },
      py::arg("c"), py::arg("lam"), py::arg("eta"));

  m.def("sigma_of", &sigma_of, py::arg("lam"), py::arg("eta"));
  py::class_<WeldedStretch>(m, "WeldedStretch")
      .def(py::init<cplx, cplx>(), py::arg("lam"), py::arg("eta"))
      .def_property_readonly("sigma", &WeldedStretch::sigma)
      .def_property_readonly("distortion", &WeldedStretch::distortion);
  m.def("evaluate_motion", &evaluate_motion, py::arg("motion"), py::arg("z"), py::arg("origin_is_zero") = false);

  m.def(
      "spiral_exponent",
      [](const ConformalMap& f, cplx zeta, int j_max) {
        const TwistReport r = spiral_exponent(f, zeta, j_max);
        py::dict d;
        d["gamma_hat"] = r.gamma_hat;
        d["converged"] = r.converged;
        d["analytic_gamma"] = r.analytic_gamma;
        return d;
      },
      py::arg("f"), py::arg("zeta") = cplx(1.0), py::arg("j_max") = 4096);
  m.def("beurling_check", &beurling_check, py::arg("alpha"), py::arg("gamma"));
  m.def("gamma_max", &gamma_max, py::arg("k"));
  m.def("dim_bound", &dim_bound, py::arg("k"), py::arg("gamma"));
  m.def("k_of_L", &k_of_L, py::arg("L"));

  m.def(
      "run_invariant_suite",
      [](std::uint64_t seed, unsigned jobs) {
        std::vector<InvariantResult> results;
        {
          py::gil_scoped_release release;
          results = run_invariant_suite({seed, jobs});
        }
        py::list out;
        for (const auto& r : results) out.append(py::make_tuple(r.module + "." + r.name, r.passed, r.detail));
        return out;
      },
      py::arg("seed") = 1, py::arg("jobs") = 1);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
  m.attr("__version__") = "0.1.0";
}
