#include "qnls/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "qnls/errors.hpp"
#include "qnls/limit_profiles.hpp"
#include "qnls/verify.hpp"

namespace qnls {

namespace {

std::string out_path(const RunConfig& c, const std::string& name) {
  return (std::filesystem::path(c.out) / name).string();
}

void add_problem(Summary& s, const RunConfig& c) {
  s.add("tag", c.tag);
  s.add("n", static_cast<long>(c.dim));
  s.add("kappa", c.kappa);
  s.add("semilinear", c.semilinear ? "1" : "0");
  s.add("nonlinearity", c.source().descriptor());
}

void write_summary(const RunConfig& c, const Summary& s) {
  std::ostringstream os;
  s.write(os);
  write_text_file(out_path(c, "summary.txt"), os.str());
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_double(xs[i]);
  return out;
}

// Slope over the two decades nearest an end, clipped to the swept range.
double end_slope(const MassCurve& curve, const RunConfig& c, bool low_end) {
  const double span = std::min(100.0, c.lambda_max / c.lambda_min);
  return low_end ? loglog_slope(curve, c.lambda_min, c.lambda_min * span)
                 : loglog_slope(curve, c.lambda_max / span, c.lambda_max);
}

}  // namespace

int cmd_solve(const RunConfig& c, std::ostream& out) {
  c.validate();
  const RadialProblem problem = c.problem().at(c.lambda);
  const GroundState gs = shoot_ground_state(problem, c.solver());

  std::ostringstream prof;
  write_profile(prof, gs, problem.eff());
  write_text_file(out_path(c, "profile.dat"), prof.str());

  Summary s;
  add_problem(s, c);
  s.add("lambda", gs.lambda);
  s.add("center_value", gs.center_value);
  s.add("rho", gs.dual_mass);
  s.add("norm2_sq", gs.norm2_sq);
  s.add("grad_norm2_sq", gs.grad_norm2_sq);
  s.add("sup_norm", gs.sup_norm);
  s.add("energy", gs.energy);
  s.add("dual_energy", gs.dual_energy);
  s.add("pohozaev_residual", gs.pohozaev_residual);
  s.add("level_residual", gs.level_residual);
  s.add("shots", static_cast<long>(gs.shots));
  write_summary(c, s);

  char line[256];
  std::snprintf(line, sizeof line, "lambda=%.10g center_value=%.12g rho=%.12g pohozaev=%.2e level=%.2e shots=%d\n",
                gs.lambda, gs.center_value, gs.dual_mass, gs.pohozaev_residual, gs.level_residual, gs.shots);
  out << line;
  return kExitOk;
}

int cmd_branch(const RunConfig& c, std::ostream& out) {
  c.validate();
  const ProblemSpec problem = c.problem();
  SweepOptions so = c.sweep_options();
  so.keep_states = false;
  const MassCurve curve = sweep(problem, c.lambda_min, c.lambda_max, c.lambda_points, so);
  const CasePrediction pred = classify_case(problem.source.alpha_eff(), problem.source.beta_eff(), c.dim);
  const LimitProfiles lp = compute_limit_profiles(problem.source, c.dim, c.solver());

  std::ostringstream data;
  write_curve(data, curve);
  write_text_file(out_path(c, "curve.dat"), data.str());

  std::vector<ReferenceLine> refs;
  if (pred.at_zero == Endpoint::MassU) refs.push_back({"|U|_2^2", lp.mass_U});
  if (pred.at_infinity == Endpoint::ScaledMassV) refs.push_back({"6^{-N/2}|V|_2^2", std::pow(6.0, -0.5 * c.dim) * lp.mass_V});
  std::optional<PlotMarker> marker;
  const auto top = std::max_element(curve.points.begin(), curve.points.end(),
                                    [](const BranchPoint& a, const BranchPoint& b) { return a.rho < b.rho; });
  if (pred.tag == CaseTag::Mixed1) marker = PlotMarker{"c_1", top->lambda, top->rho};
  write_text_file(out_path(c, "branch.gp"),
                  branch_plot_script("curve.dat", refs, marker, std::string(to_string(pred.tag)) + ", N=" +
                                                                     std::to_string(c.dim)));

  const double s0 = end_slope(curve, c, true), s1 = end_slope(curve, c, false);
  double max_poh = 0.0, rho_min = top->rho;
  for (const auto& p : curve.points) {
    max_poh = std::max(max_poh, p.pohozaev_residual);
    rho_min = std::min(rho_min, p.rho);
  }

  Summary s;
  add_problem(s, c);
  s.add("case", to_string(pred.tag));
  s.add("limit_at_zero", to_string(pred.at_zero));
  s.add("limit_at_infinity", to_string(pred.at_infinity));
  s.add("lambda_min", c.lambda_min);
  s.add("lambda_max", c.lambda_max);
  s.add("points", static_cast<long>(curve.points.size()));
  s.add("mass_U", lp.mass_U);
  s.add("mass_V", lp.mass_V);
  s.add("c_star", lp.c_star);
  s.add("c_upper_star", lp.c_upper_star);
  s.add("slope_low", s0);
  s.add("slope_high", s1);
  s.add("rho_min", rho_min);
  s.add("rho_max", top->rho);
  if (marker) {
    s.add("c1", top->rho);
    s.add("c1_lambda", top->lambda);
  }
  s.add("max_pohozaev_residual", max_poh);
  if (c.mass) {
    std::vector<double> roots;
    for (const auto& r : solve_normalized(curve, *c.mass, c.normalized_options())) roots.push_back(r.lambda);
    s.add("mass", *c.mass);
    s.add("roots", join(roots));
  }
  write_summary(c, s);

  out << "case=" << to_string(pred.tag) << " points=" << curve.points.size() << " rho_range=["
      << format_double(rho_min) << ", "
      << format_double(top->rho) << "] slopes=" << format_double(s0) << "," << format_double(s1) << '\n';
  return kExitOk;
}

int cmd_normalized(const RunConfig& c, std::ostream& out) {
  c.validate();
  if (!c.mass) throw ConfigError("normalized: --mass is required");
  const ProblemSpec problem = c.problem();
  const MassCurve curve = sweep(problem, c.lambda_min, c.lambda_max, c.lambda_points, c.sweep_options());
  const auto roots = solve_normalized(curve, *c.mass, c.normalized_options());
  const CasePrediction pred = classify_case(problem.source.alpha_eff(), problem.source.beta_eff(), c.dim);

  Summary s;
  add_problem(s, c);
  s.add("case", to_string(pred.tag));
  s.add("mass", *c.mass);
  s.add("lambda_min", c.lambda_min);
  s.add("lambda_max", c.lambda_max);
  s.add("root_count", static_cast<long>(roots.size()));
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    lambdas.push_back(r.lambda);
    std::ostringstream prof;
    write_profile(prof, r.state, problem.at(r.lambda).eff());
    write_text_file(out_path(c, "profile_" + std::to_string(i) + ".dat"), prof.str());
    char line[256];
    std::snprintf(line, sizeof line, "root %zu: lambda=%.12g rho=%.12g center_value=%.10g pohozaev=%.2e iterations=%d\n",
                  i, r.lambda, r.state.dual_mass, r.state.center_value, r.state.pohozaev_residual, r.iterations);
    out << line;
  }
  s.add("roots", join(lambdas));
  write_summary(c, s);
  if (roots.empty())
    out << "no root in [" << format_double(c.lambda_min) << ", " << format_double(c.lambda_max) << "]\n";
  return kExitOk;
}

int cmd_profiles(const RunConfig& c, std::ostream& out) {
  c.validate();
  const auto [alpha, beta] = c.limit_exponents();
  const Nonlinearity src = c.source();
  const GroundState U = solve_U(alpha, src.mu1_eff(), c.dim, c.solver());
  const GroundState V = alpha == beta && src.mu1_eff() == src.mu2_eff() ? U : solve_V(beta, src.mu2_eff(), c.dim, c.solver());
  const Thresholds t = mass_thresholds(U.norm2_sq, V.norm2_sq, c.dim);

  auto dump = [&](const GroundState& gs, double q, double mu, const std::string& name) {
    const EffectiveNonlinearity eff(1.0, DualMap(1.0), Nonlinearity(PurePower{mu, q}), true);
    std::ostringstream prof;
    write_profile(prof, gs, eff);
    write_text_file(out_path(c, name), prof.str());
  };
  dump(U, alpha, src.mu1_eff(), "U.dat");
  dump(V, beta, src.mu2_eff(), "V.dat");

  Summary s;
  s.add("n", static_cast<long>(c.dim));
  s.add("alpha", alpha);
  s.add("beta", beta);
  s.add("mass_U", U.norm2_sq);
  s.add("mass_V", V.norm2_sq);
  s.add("U0", U.center_value);
  s.add("V0", V.center_value);
  s.add("c_star", t.c_star);
  s.add("c_upper_star", t.c_upper_star);
  write_summary(c, s);
  s.write(out);
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  c.validate();
  const auto results = run_suite(c.suite);
  return print_results(out, results) ? kExitOk : kExitFailure;
}

int cmd_figure_k(const RunConfig& c, std::ostream& out) {
  c.validate();
  double C1 = c.c1;
  if (C1 == 0.0) {
    if (c.nonlinearity != "power") throw ConfigError("figure-k: measuring C1 needs a power nonlinearity");
    const SupnormReport rep = check_supnorm_threshold(c.dim, PurePower{c.mu, c.p}, {0.01, 0.1, 1.0},
                                                      logspace(-2, 2, 20), {}, c.solver());
    C1 = rep.C1;
  }
  const KappaBoundPlot plot = emit_kappa_bound_plot(C1, c.out);
  Summary s;
  s.add("C1", C1);
  s.add("k1", plot.k1);
  s.add("crossing", plot.crossing);
  s.add("crossing_rel_error", std::fabs(plot.crossing - plot.k1) / plot.k1);
  write_summary(c, s);
  s.write(out);
  return kExitOk;
}

int run_command(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (name == "solve") return cmd_solve(config, out);
    if (name == "branch") return cmd_branch(config, out);
    if (name == "normalized") return cmd_normalized(config, out);
    if (name == "profiles") return cmd_profiles(config, out);
    if (name == "verify") return cmd_verify(config, out);
    if (name == "figure-k") return cmd_figure_k(config, out);
    err << "unknown command '" << name << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NoBracketError& e) {
    err << "no bracket at lambda=" << format_double(e.lambda()) << ": " << e.what() << '\n';
    return kExitNoBracket;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << " (r=" << format_double(e.r()) << ")\n";
    return kExitNumeric;
  }
}

}  // namespace qnls
