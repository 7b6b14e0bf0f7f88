#include <algorithm>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnls/branch.hpp"
#include "qnls/errors.hpp"
#include "qnls/io.hpp"
#include "qnls/verify.hpp"

namespace py = pybind11;
using namespace qnls;

namespace {

py::array_t<double> array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

// Keyword arguments use the config keys with '_' in place of '-'.
RunConfig config_from(const py::kwargs& kw) {
  ConfigMap m;
  for (const auto& [k, v] : kw) {
    std::string key = py::str(k);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "lambda-") key = "lambda";
    std::string value = py::isinstance<py::bool_>(v) ? (v.cast<bool>() ? "true" : "false") : std::string(py::str(v));
    m[key] = value;
  }
  RunConfig c;
  apply_config(m, c);
  c.validate();
  return c;
}

py::dict state_dict(const GroundState& gs, const EffectiveNonlinearity& eff) {
  py::dict d;
  d["lambda"] = gs.lambda;
  d["center_value"] = gs.center_value;
  d["rho"] = gs.dual_mass;
  d["norm2_sq"] = gs.norm2_sq;
  d["grad_norm2_sq"] = gs.grad_norm2_sq;
  d["sup_norm"] = gs.sup_norm;
  d["energy"] = gs.energy;
  d["pohozaev_residual"] = gs.pohozaev_residual;
  d["level_residual"] = gs.level_residual;
  d["r"] = array(gs.profile.grid);
  d["v"] = array(gs.profile.values);
  d["dv"] = array(gs.profile.dvalues);
  d["u"] = array(physical_values(gs.profile, eff));
  return d;
}

py::dict curve_dict(const MassCurve& c) {
  std::vector<double> lambda, rho, center, poh;
  for (const auto& p : c.points) {
    lambda.push_back(p.lambda);
    rho.push_back(p.rho);
    center.push_back(p.center_value);
    poh.push_back(p.pohozaev_residual);
  }
  py::dict d;
  d["case"] = to_string(c.regime);
  d["lambda"] = array(lambda);
  d["rho"] = array(rho);
  d["center_value"] = array(center);
  d["pohozaev_residual"] = array(poh);
  return d;
}

}  // namespace

PYBIND11_MODULE(_qnls, m) {
  m.doc() = "Positive radial normalized solutions of the modified quasilinear Schrodinger equation";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NoBracketError>(m, "NoBracketError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  py::class_<DualMap>(m, "DualMap")
      .def(py::init<double>(), py::arg("kappa"))
      .def_property_readonly("kappa", &DualMap::kappa)
      .def_property_readonly("t0", &DualMap::t0)
      .def("g", py::vectorize(&DualMap::g))
      .def("g_prime", py::vectorize(&DualMap::g_prime))
      .def("G", py::vectorize(&DualMap::G))
      .def("G_inv", py::vectorize(&DualMap::G_inv));

  m.def("solve", [](py::kwargs kw) {
    const RunConfig c = config_from(kw);
    const RadialProblem pr = c.problem().at(c.lambda);
    return state_dict(shoot_ground_state(pr, c.solver()), pr.eff());
  }, "Ground state at fixed lambda. Keywords as the CLI flags, e.g. solve(lambda_=0.5, p=4).");

  m.def("branch", [](py::kwargs kw) {
    const RunConfig c = config_from(kw);
    SweepOptions o = c.sweep_options();
    o.keep_states = false;
    return curve_dict(sweep(c.problem(), c.lambda_min, c.lambda_max, c.lambda_points, o));
  }, "Mass curve rho(lambda) over [lambda_min, lambda_max].");

  m.def("normalized", [](double mass, py::kwargs kw) {
    const RunConfig c = config_from(kw);
    SweepOptions o = c.sweep_options();
    o.keep_states = false;
    const MassCurve curve = sweep(c.problem(), c.lambda_min, c.lambda_max, c.lambda_points, o);
    py::list out;
    for (const auto& r : solve_normalized(curve, mass, c.normalized_options()))
      out.append(state_dict(r.state, c.problem().at(r.lambda).eff()));
    return out;
  }, py::arg("mass"), "Every normalized solution with rho = mass in the swept range.");

  m.def("limit_profiles", [](py::kwargs kw) {
    const RunConfig c = config_from(kw);
    const LimitProfiles lp = compute_limit_profiles(c.source(), c.dim, c.solver());
    py::dict d;
    d["mass_U"] = lp.mass_U;
    d["mass_V"] = lp.mass_V;
    d["c_star"] = lp.c_star;
    d["c_upper_star"] = lp.c_upper_star;
    d["U0"] = lp.U.center_value;
    d["V0"] = lp.V.center_value;
    return d;
  });

  m.def("classify_case", [](double alpha, double beta, int n) {
    const CasePrediction p = classify_case(alpha, beta, n);
    return py::make_tuple(to_string(p.tag), to_string(p.at_zero), to_string(p.at_infinity));
  }, py::arg("alpha"), py::arg("beta"), py::arg("n") = 3);

  m.def("kappa_threshold", &kappa_threshold, py::arg("C1"));
  m.def("kappa_bound_crossing", &kappa_bound_crossing, py::arg("C1"));

  m.def("verify", [](const std::string& suite) {
    py::list out;
    for (const auto& r : run_suite(suite)) out.append(py::make_tuple(r.suite, r.name, r.passed, r.detail));
    return out;
  }, py::arg("suite") = "all");
}
