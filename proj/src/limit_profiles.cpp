#include "qnls/limit_profiles.hpp"

#include <algorithm>
#include <cmath>

namespace qnls {

GroundState solve_limit_profile(double q, double mu, int dim, const SolverOptions& options) {
  // The dual map is unused in semilinear mode; kappa = 1 is a placeholder.
  RadialProblem problem(dim, EffectiveNonlinearity(1.0, DualMap(1.0), Nonlinearity(PurePower{mu, q}), true));
  return shoot_ground_state(problem, options);
}

Thresholds mass_thresholds(double mass_U, double mass_V, int dim) {
  const double scaled_V = std::pow(6.0, -0.5 * dim) * mass_V;
  return {std::min(mass_U, scaled_V), std::max(mass_U, scaled_V)};
}

LimitProfiles compute_limit_profiles(const Nonlinearity& source, int dim, const SolverOptions& options) {
  source.validate(dim);
  LimitProfiles lp;
  lp.U = solve_U(source.alpha_eff(), source.mu1_eff(), dim, options);
  if (source.beta_eff() == source.alpha_eff() && source.mu2_eff() == source.mu1_eff())
    lp.V = lp.U;
  else
    lp.V = solve_V(source.beta_eff(), source.mu2_eff(), dim, options);
  lp.mass_U = lp.U.norm2_sq;
  lp.mass_V = lp.V.norm2_sq;
  const Thresholds t = mass_thresholds(lp.mass_U, lp.mass_V, dim);
  lp.c_star = t.c_star;
  lp.c_upper_star = t.c_upper_star;
  return lp;
}

double v_star_residual(const GroundState& V, double amplitude, double beta, double mu2, int dim) {
  const double b = std::sqrt(6.0);
  const auto& p = V.profile;
  const double coeff = mu2 * std::pow(6.0, 0.5 * beta);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    const double y = p.grid[i];
    const double v = p.values[i];
    const double dv = p.dvalues[i];
    // V'' from -ΔV + V = mu2 V^{β-1}; at the origin V'' = (V - mu2 V^{β-1})/N.
    const double source = v - mu2 * std::pow(v, beta - 1.0);
    const double d2v = y > 0.0 ? -(dim - 1) / y * dv + source : source / dim;
    const double x = y / b;
    const double w = amplitude * v;
    const double dw = amplitude * b * dv;
    const double d2w = amplitude * b * b * d2v;
    const double lap = x > 0.0 ? d2w + (dim - 1) / x * dw : dim * d2w;
    const double res = -lap + 6.0 * w - coeff * std::pow(w, beta - 1.0);
    worst = std::max(worst, std::fabs(res));
  }
  const double scale = 6.0 * amplitude * p.values.front();
  return worst / scale;
}

VStar v_star(const GroundState& V, double beta, double mu2, int dim) {
  const double b = std::sqrt(6.0);
  const double amp = 1.0 / b;
  VStar out;
  RadialProfile& q = out.profile;
  const auto& p = V.profile;
  q.dim = dim;
  q.grid.resize(p.grid.size());
  q.values.resize(p.grid.size());
  q.dvalues.resize(p.grid.size());
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    q.grid[i] = p.grid[i] / b;
    q.values[i] = amp * p.values[i];
    q.dvalues[i] = amp * b * p.dvalues[i];
  }
  q.tail_rate = b * p.tail_rate;
  q.tail_amplitude = amp * p.tail_amplitude * std::pow(b, -0.5 * (dim - 1));
  q.r_max = p.r_max / b;
  out.residual = v_star_residual(V, amp, beta, mu2, dim);
  out.mass = compute_norms(q, DualMap(1.0)).norm2_sq;
  return out;
}

}  // namespace qnls
