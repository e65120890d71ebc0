// Python bindings for the core operations: law evaluation, axiom checks,
// and representation recovery.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relkin/axioms.hpp"
#include "relkin/errors.hpp"
#include "relkin/recover.hpp"

namespace py = pybind11;
using namespace relkin;

namespace {

GridSpec make_grid(int n_lambda, int n_beta, double beta_max, double lambda_low,
                   double lambda_high, const std::string& spacing) {
  GridSpec g;
  g.n_lambda = n_lambda;
  g.n_beta = n_beta;
  g.beta_max = beta_max;
  g.lambda_low = lambda_low;
  g.lambda_high = lambda_high;
  g.spacing = spacing == "uniform" ? GridSpec::Spacing::uniform : GridSpec::Spacing::geometric;
  g.validate();
  return g;
}

py::dict report_to_dict(const CheckReport& r) {
  py::dict d;
  d["axiom"] = r.axiom;
  d["passed"] = r.passed;
  d["max_violation"] = r.max_violation;
  d["worst_tuple"] = r.worst_tuple;
  d["tolerance"] = r.tolerance;
  py::dict g;
  g["n_lambda"] = r.grid.n_lambda;
  g["n_beta"] = r.grid.n_beta;
  g["beta_max"] = r.grid.beta_max;
  g["lambda_low"] = r.grid.lambda_low;
  g["lambda_high"] = r.grid.lambda_high;
  g["spacing"] = r.grid.spacing == GridSpec::Spacing::geometric ? "geometric" : "uniform";
  d["grid"] = g;
  if (!r.detail.empty()) d["detail"] = r.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relativistic Doppler and velocity-composition laws: evaluation, "
            "grid-based axiom checks, and representation recovery.";

  py::register_exception<HomogeneityError>(m, "HomogeneityError", PyExc_RuntimeError);
  py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);
  py::register_exception<BisectionError>(m, "BisectionError", PyExc_RuntimeError);
  py::register_exception<MonotonicityError>(m, "MonotonicityError", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<MonotoneMap>(m, "MonotoneMap",
                          "Strictly increasing continuous bijection of [0, 1) onto [0, 1)")
      .def_static("from_knots",
                  [](const std::vector<double>& x, const std::vector<double>& y,
                     const std::string& kind) {
                    return MonotoneMap::from_knots(
                        x, y,
                        kind == "linear" ? MonotoneMap::Interp::linear
                                         : MonotoneMap::Interp::cubic);
                  },
                  py::arg("x"), py::arg("y"), py::arg("kind") = "cubic")
      .def_static("identity", &MonotoneMap::identity)
      .def_static("lf_bridge", &MonotoneMap::lf_bridge)
      .def("__call__", &MonotoneMap::operator())
      .def("inverse", &MonotoneMap::inverse)
      .def("hull_max", &MonotoneMap::hull_max)
      .def("is_tabulated", &MonotoneMap::is_tabulated)
      .def("knots", &MonotoneMap::knots, py::arg("n") = 33)
      .def_property_readonly("name", &MonotoneMap::name);

  py::class_<DopplerLaw>(m, "DopplerLaw", "Black-box law (lambda, beta) -> lambda'")
      .def(py::init([](std::function<double(double, double)> fn, std::string tag) {
             return DopplerLaw{std::move(fn), std::move(tag)};
           }),
           py::arg("fn"), py::arg("tag") = "custom")
      .def("__call__", &DopplerLaw::eval)
      .def_readonly("tag", &DopplerLaw::tag);

  py::class_<CompositionLaw>(m, "CompositionLaw", "Black-box law (b1, b2) -> b3")
      .def(py::init([](std::function<double(double, double)> fn, std::string tag) {
             return CompositionLaw{std::move(fn), std::move(tag)};
           }),
           py::arg("fn"), py::arg("tag") = "custom")
      .def("__call__", &CompositionLaw::eval)
      .def_readonly("tag", &CompositionLaw::tag);

  m.def("doppler_de",
        [](double lam, double b) { return doppler_de(Wavelength(lam), SpeedFraction(b)).value(); },
        py::arg("lam"), py::arg("beta"));
  m.def("velocity_add_av",
        [](double a, double b) {
          return velocity_add_av(SpeedFraction(a), SpeedFraction(b)).value();
        },
        py::arg("b1"), py::arg("b2"));
  m.def("doppler_star",
        [](double lam, double b, double xi) {
          return doppler_star(Wavelength(lam), SpeedFraction(b), Exponent(xi)).value();
        },
        py::arg("lam"), py::arg("beta"), py::arg("xi"));
  m.def("lorentz_fitzgerald",
        [](double lam, double b) {
          return lorentz_fitzgerald(Wavelength(lam), SpeedFraction(b)).value();
        },
        py::arg("lam"), py::arg("beta"));
  m.def("velocity_add_perp",
        [](double a, double b) {
          return velocity_add_perp(SpeedFraction(a), SpeedFraction(b)).value();
        },
        py::arg("b1"), py::arg("b2"));
  m.def("u_lf", [](double b) { return u_lf(SpeedFraction(b)).value(); }, py::arg("beta"));
  m.def("u_lf_inverse", [](double t) { return u_lf_inverse(SpeedFraction(t)).value(); },
        py::arg("t"));
  m.def("doppler_general",
        [](double lam, double b, const MonotoneMap& u, double xi) {
          return doppler_general(Wavelength(lam), SpeedFraction(b), u, Exponent(xi)).value();
        },
        py::arg("lam"), py::arg("beta"), py::arg("u"), py::arg("xi"));
  m.def("velocity_add_general",
        [](double a, double b, const MonotoneMap& u) {
          return velocity_add_general(SpeedFraction(a), SpeedFraction(b), u).value();
        },
        py::arg("b1"), py::arg("b2"), py::arg("u"));

  m.def("doppler_de_law", &doppler_de_law);
  m.def("lorentz_fitzgerald_law", &lorentz_fitzgerald_law);
  m.def("doppler_star_law", [](double xi) { return doppler_star_law(Exponent(xi)); },
        py::arg("xi"));
  m.def("doppler_general_law",
        [](const MonotoneMap& u, double xi) { return doppler_general_law(u, Exponent(xi)); },
        py::arg("u"), py::arg("xi"));
  m.def("velocity_add_av_law", &velocity_add_av_law);
  m.def("velocity_add_perp_law", &velocity_add_perp_law);
  m.def("velocity_add_general_law", &velocity_add_general_law, py::arg("u"));

  m.def("grid_spec", &make_grid, py::arg("n_lambda") = 5, py::arg("n_beta") = 25,
        py::arg("beta_max") = 0.99, py::arg("lambda_low") = 0.5, py::arg("lambda_high") = 8.0,
        py::arg("spacing") = "geometric", "Build a validated evaluation grid");

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init(&make_grid), py::arg("n_lambda") = 5, py::arg("n_beta") = 25,
           py::arg("beta_max") = 0.99, py::arg("lambda_low") = 0.5, py::arg("lambda_high") = 8.0,
           py::arg("spacing") = "geometric")
      .def_readonly("n_lambda", &GridSpec::n_lambda)
      .def_readonly("n_beta", &GridSpec::n_beta)
      .def_readonly("beta_max", &GridSpec::beta_max)
      .def("lambdas", &GridSpec::lambdas)
      .def("betas", &GridSpec::betas);

  m.def("check_R",
        [](const DopplerLaw& L, const CompositionLaw& op, const GridSpec& g, double tol) {
          return report_to_dict(check_R(L, op, g, tol));
        },
        py::arg("L"), py::arg("op"), py::arg("grid") = GridSpec{}, py::arg("tol") = 1e-9);
  m.def("check_M",
        [](const DopplerLaw& L, const CompositionLaw& op, const GridSpec& g) {
          return report_to_dict(check_M(L, op, g));
        },
        py::arg("L"), py::arg("op"), py::arg("grid") = GridSpec{});
  m.def("check_LOI",
        [](const DopplerLaw& L, const GridSpec& g, const std::vector<double>& scales) {
          return report_to_dict(check_LOI(L, g, scales));
        },
        py::arg("L"), py::arg("grid") = GridSpec{},
        py::arg("scales") = kDefaultLoiScales);
  m.def("check_DC",
        [](const DopplerLaw& L, const GridSpec& g) { return report_to_dict(check_DC(L, g)); },
        py::arg("L"), py::arg("grid") = GridSpec{});
  m.def("check_group_structure",
        [](const CompositionLaw& op, const GridSpec& g, double tol) {
          return report_to_dict(check_group_structure(op, g, tol));
        },
        py::arg("op"), py::arg("grid") = GridSpec{}, py::arg("tol") = 1e-9);
  m.def("witness_lf_vs_dstar", &witness_lf_vs_dstar, py::arg("x1"), py::arg("x2"));

  py::class_<FactorSamples>(m, "FactorSamples")
      .def_readonly("betas", &FactorSamples::betas)
      .def_readonly("f_values", &FactorSamples::f_values)
      .def_readonly("homogeneity_dev", &FactorSamples::homogeneity_dev);

  m.def("extract_f",
        [](const DopplerLaw& L, const std::vector<double>& betas) {
          return extract_f(L, betas);
        },
        py::arg("L"), py::arg("betas"));
  m.def("fit_power_exponent",
        [](const FactorSamples& s, double cap) {
          const ExponentFit fit = fit_power_exponent(s, cap);
          return py::make_tuple(fit.xi.value(), fit.max_residual);
        },
        py::arg("samples"), py::arg("residual_cap") = 1e-6);

  py::class_<AdditiveRep>(m, "AdditiveRep")
      .def_readonly("betas", &AdditiveRep::betas)
      .def_readonly("phi", &AdditiveRep::phi)
      .def_readonly("unit_point", &AdditiveRep::unit_point)
      .def_readonly("depth", &AdditiveRep::depth)
      .def_readonly("additivity_residual", &AdditiveRep::additivity_residual)
      .def("__call__", &AdditiveRep::operator())
      .def("beta_top", &AdditiveRep::beta_top);

  m.def("build_additive_rep", &build_additive_rep, py::arg("op"), py::arg("unit_point") = 0.5,
        py::arg("depth") = 20, py::arg("beta_max") = 0.99);
  m.def("fix_gauge", &fix_gauge, py::arg("phi"), py::arg("anchor"));
  m.def("recover_u", &recover_u, py::arg("phi"), py::arg("gauge_k"));

  py::class_<FitReport>(m, "FitReport")
      .def_property_readonly("xi", [](const FitReport& r) { return r.xi.value(); })
      .def_readonly("gauge_k", &FitReport::gauge_k)
      .def_readonly("anchor", &FitReport::anchor)
      .def_readonly("u", &FitReport::u)
      .def_readonly("phi", &FitReport::phi)
      .def_readonly("residual_max_L", &FitReport::residual_max_L)
      .def_readonly("residual_max_op", &FitReport::residual_max_op)
      .def_readonly("notes", &FitReport::notes)
      .def("to_json", [](const FitReport& r) { return r.to_json().dump(); });

  m.def("recover_representation",
        [](const DopplerLaw& L, const CompositionLaw& op, double unit_point, double anchor,
           int depth, double beta_max) {
          RecoverConfig cfg;
          cfg.unit_point = unit_point;
          cfg.anchor = anchor;
          cfg.depth = depth;
          cfg.beta_max = beta_max;
          return recover_representation(L, op, cfg);
        },
        py::arg("L"), py::arg("op"), py::arg("unit_point") = 0.5, py::arg("anchor") = 0.5,
        py::arg("depth") = 20, py::arg("beta_max") = 0.99);
}
