#include "qnls/branch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qnls/errors.hpp"

namespace qnls {

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::SubcriticalBoth: return "SubcriticalBoth";
    case CaseTag::ExactlyCritical: return "ExactlyCritical";
    case CaseTag::AtMostCritical1: return "AtMostCritical-1";
    case CaseTag::AtMostCritical2: return "AtMostCritical-2";
    case CaseTag::Mixed1: return "Mixed-1";
    case CaseTag::Mixed2: return "Mixed-2";
    case CaseTag::AtLeastCritical1: return "AtLeastCritical-1";
    case CaseTag::AtLeastCritical2: return "AtLeastCritical-2";
    case CaseTag::SupercriticalBoth: return "SupercriticalBoth";
  }
  return "?";
}

const char* to_string(Endpoint e) {
  switch (e) {
    case Endpoint::Zero: return "0";
    case Endpoint::MassU: return "|U|^2";
    case Endpoint::ScaledMassV: return "6^(-N/2)|V|^2";
    case Endpoint::Infinity: return "inf";
  }
  return "?";
}

CasePrediction classify_case(double alpha, double beta, int dim) {
  using E = ExponentClass;
  const E a = classify_exponent(alpha, dim);
  const E b = classify_exponent(beta, dim);
  CasePrediction out{};
  out.at_zero = a == E::Subcritical ? Endpoint::Zero : a == E::MassCritical ? Endpoint::MassU : Endpoint::Infinity;
  out.at_infinity =
      b == E::Subcritical ? Endpoint::Infinity : b == E::MassCritical ? Endpoint::ScaledMassV : Endpoint::Zero;
  if (a == E::Subcritical && b == E::Subcritical)
    out.tag = CaseTag::SubcriticalBoth;
  else if (a == E::MassCritical && b == E::MassCritical)
    out.tag = CaseTag::ExactlyCritical;
  else if (a == E::Subcritical && b == E::MassCritical)
    out.tag = CaseTag::AtMostCritical1;
  else if (b == E::Subcritical && a == E::MassCritical)
    out.tag = CaseTag::AtMostCritical2;
  else if (a == E::Subcritical && b == E::Supercritical)
    out.tag = CaseTag::Mixed1;
  else if (b == E::Subcritical && a == E::Supercritical)
    out.tag = CaseTag::Mixed2;
  else if (a == E::MassCritical && b == E::Supercritical)
    out.tag = CaseTag::AtLeastCritical1;
  else if (b == E::MassCritical && a == E::Supercritical)
    out.tag = CaseTag::AtLeastCritical2;
  else
    out.tag = CaseTag::SupercriticalBoth;
  return out;
}

BranchPoint BranchPoint::from(const GroundState& gs, bool keep_state) {
  BranchPoint p;
  p.lambda = gs.lambda;
  p.rho = gs.dual_mass;
  p.center_value = gs.center_value;
  p.sup_norm = gs.sup_norm;
  p.grad_norm2_sq = gs.grad_norm2_sq;
  p.energy = gs.energy;
  p.pohozaev_residual = gs.pohozaev_residual;
  p.level_residual = gs.level_residual;
  if (keep_state) p.state = std::make_shared<const GroundState>(gs);
  return p;
}

std::vector<double> logspace(double lo_exp, double hi_exp, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = std::pow(10.0, n == 1 ? lo_exp : lo_exp + (hi_exp - lo_exp) * i / (n - 1));
  return out;
}

namespace {

double relative_jump(double x, double y) { return std::fabs(x - y) / std::min(std::fabs(x), std::fabs(y)); }

// Geometric interpolation of the center value between two solved points.
double interpolate_center(const BranchPoint& l, const BranchPoint& r, double lambda) {
  const double t = std::log(lambda / l.lambda) / std::log(r.lambda / l.lambda);
  return std::exp((1.0 - t) * std::log(l.center_value) + t * std::log(r.center_value));
}

GroundState solve_at(const ProblemSpec& problem, double lambda, std::optional<double> seed,
                     const SolverOptions& base) {
  SolverOptions opt = base;
  opt.seed = seed;
  return shoot_ground_state(problem.at(lambda), opt);
}

}  // namespace

MassCurve sweep(const ProblemSpec& problem, double lambda_min, double lambda_max, int n_points,
                const SweepOptions& options) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
    throw DomainError("sweep: need 0 < lambda_min < lambda_max");
  if (n_points < 2) throw DomainError("sweep: need at least two points");
  problem.source.validate(problem.dim);

  MassCurve curve;
  curve.problem = problem;
  curve.regime = classify_case(problem.source.alpha_eff(), problem.source.beta_eff(), problem.dim).tag;

  auto needs_refinement = [&](const BranchPoint& l, const BranchPoint& r) {
    return relative_jump(l.center_value, r.center_value) >= options.max_jump ||
           relative_jump(l.rho, r.rho) >= options.max_jump;
  };

  std::function<void(const BranchPoint&, const BranchPoint&, int, std::vector<BranchPoint>&)> refine =
      [&](const BranchPoint& l, const BranchPoint& r, int depth, std::vector<BranchPoint>& out) {
        if (depth >= options.max_refine_depth || !needs_refinement(l, r)) return;
        const double mid = std::sqrt(l.lambda * r.lambda);
        const GroundState gs = solve_at(problem, mid, interpolate_center(l, r, mid), options.solver);
        const BranchPoint m = BranchPoint::from(gs, options.keep_states);
        refine(l, m, depth + 1, out);
        out.push_back(m);
        refine(m, r, depth + 1, out);
      };

  const double lo = std::log(lambda_min);
  const double hi = std::log(lambda_max);
  for (int i = 0; i < n_points; ++i) {
    const double lambda = i == n_points - 1 ? lambda_max : std::exp(lo + (hi - lo) * i / (n_points - 1));
    std::optional<double> seed;
    const auto& pts = curve.points;
    if (pts.size() >= 2) {
      // Linear extrapolation of log a against log λ.
      const auto& p1 = pts[pts.size() - 2];
      const auto& p2 = pts.back();
      const double slope = std::log(p2.center_value / p1.center_value) / std::log(p2.lambda / p1.lambda);
      seed = p2.center_value * std::pow(lambda / p2.lambda, slope);
    } else if (pts.size() == 1) {
      seed = pts.back().center_value;
    }
    const BranchPoint point = BranchPoint::from(solve_at(problem, lambda, seed, options.solver), options.keep_states);
    if (!curve.points.empty()) {
      std::vector<BranchPoint> inserted;
      refine(curve.points.back(), point, 0, inserted);
      curve.points.insert(curve.points.end(), inserted.begin(), inserted.end());
    }
    curve.points.push_back(point);
  }
  return curve;
}

double loglog_slope(const MassCurve& curve, double lambda_lo, double lambda_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : curve.points) {
    if (p.lambda < lambda_lo * (1 - 1e-12) || p.lambda > lambda_hi * (1 + 1e-12)) continue;
    const double x = std::log(p.lambda), y = std::log(p.rho);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw DomainError("loglog_slope: fewer than two points in range");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<NormalizedSolution> solve_normalized(const MassCurve& curve, double c,
                                                 const NormalizedOptions& options) {
  if (!(c > 0.0)) throw DomainError("solve_normalized: mass must be positive");
  if (curve.points.empty()) throw DomainError("solve_normalized: empty curve");
  const auto& pts = curve.points;
  std::vector<NormalizedSolution> roots;

  auto finish = [&](GroundState gs, int iterations) {
    NormalizedSolution s;
    s.lambda = gs.lambda;
    s.u = physical_values(gs.profile, curve.problem.at(gs.lambda).eff());
    s.state = std::move(gs);
    s.iterations = iterations;
    roots.push_back(std::move(s));
  };
  auto state_at = [&](const BranchPoint& p) {
    if (p.state) return *p.state;
    return solve_at(curve.problem, p.lambda, p.center_value, options.solver);
  };

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double di = pts[i].rho - c;
    if (di == 0.0) {
      finish(state_at(pts[i]), 0);
      continue;
    }
    if (i + 1 == pts.size()) break;
    const double dj = pts[i + 1].rho - c;
    if (dj == 0.0 || (di > 0.0) == (dj > 0.0)) continue;

    // Illinois iteration on log ρ - log c against log λ inside the bracket.
    double xa = std::log(pts[i].lambda), xb = std::log(pts[i + 1].lambda);
    double fa = std::log(pts[i].rho / c), fb = std::log(pts[i + 1].rho / c);
    BranchPoint left = pts[i], right = pts[i + 1];
    int side = 0;
    std::optional<GroundState> best;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
      double x = (xa * fb - xb * fa) / (fb - fa);
      if (!(x > std::min(xa, xb) && x < std::max(xa, xb))) x = 0.5 * (xa + xb);
      const double lambda = std::exp(x);
      GroundState gs = solve_at(curve.problem, lambda, interpolate_center(left, right, lambda), options.solver);
      const double fx = std::log(gs.dual_mass / c);
      const bool done = std::fabs(gs.dual_mass - c) <= options.rtol * c;
      if (!best || std::fabs(gs.dual_mass - c) < std::fabs(best->dual_mass - c)) best = gs;
      if (done) break;
      const BranchPoint mid = BranchPoint::from(gs, false);
      if ((fx > 0.0) == (fb > 0.0)) {
        xb = x;
        fb = fx;
        right = mid;
        if (side == -1) fa *= 0.5;
        side = -1;
      } else {
        xa = x;
        fa = fx;
        left = mid;
        if (side == 1) fb *= 0.5;
        side = 1;
      }
      if (std::fabs(xb - xa) <= 1e-15 * std::max(1.0, std::fabs(xa))) break;
    }
    finish(std::move(*best), it + 1);
  }
  return roots;
}

namespace {

AsymptoticReport check_asymptotics(const ProblemSpec& problem, const std::vector<double>& lambdas,
                                   const RadialProfile& target, double target_mass, double q,
                                   bool small, const SolverOptions& options) {
  AsymptoticReport rep;
  const int n = problem.dim;
  rep.target_sup = target.values.front();
  rep.target_scaled_mass = target_mass;
  std::optional<GroundState> prev;
  const double area = sphere_area(n);
  for (double lambda : lambdas) {
    std::optional<double> seed;
    if (prev) seed = prev->center_value * std::pow(lambda / prev->lambda, 1.0 / (q - 2.0));
    const GroundState gs = solve_at(problem, lambda, seed, options);
    AsymptoticRow row;
    row.lambda = lambda;
    row.rho = gs.dual_mass;
    row.sup_norm = gs.sup_norm;
    const double amp = std::pow(lambda, 1.0 / (2.0 - q));
    const double sl = std::sqrt(lambda);
    double worst = 0.0;
    std::vector<double> diff2(target.grid.size());
    for (std::size_t i = 0; i < target.grid.size(); ++i) {
      const double r = target.grid[i];
      const double w = amp * gs.profile.value_at(r / sl);
      const double d = w - target.values[i];
      worst = std::max(worst, std::fabs(d));
      diff2[i] = d * d * std::pow(r, n - 1);
    }
    double l2 = 0.0;
    for (std::size_t i = 0; i + 1 < diff2.size(); ++i)
      l2 += 0.5 * (target.grid[i + 1] - target.grid[i]) * (diff2[i] + diff2[i + 1]);
    row.sup_distance = worst;
    row.sup_distance_rel = worst / rep.target_sup;
    row.l2_distance = std::sqrt(area * l2);
    row.supnorm_ratio = std::pow(gs.sup_norm, q - 2.0) / lambda;
    row.scaled_mass = gs.dual_mass * std::pow(lambda, 0.5 * n - 2.0 / (q - 2.0));
    rep.rows.push_back(row);
    prev = gs;
  }
  rep.distances_decreasing = true;
  rep.supnorm_monotone = true;
  rep.ratio_in_window = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (!(r.supnorm_ratio >= rep.window_eps && r.supnorm_ratio <= 1.0 / rep.window_eps))
      rep.ratio_in_window = false;
    if (i == 0) continue;
    const auto& p = rep.rows[i - 1];
    if (!(r.sup_distance < p.sup_distance)) rep.distances_decreasing = false;
    if (small ? !(r.sup_norm < p.sup_norm) : !(r.sup_norm > p.sup_norm)) rep.supnorm_monotone = false;
  }
  return rep;
}

}  // namespace

AsymptoticReport check_small_lambda_asymptotics(const ProblemSpec& problem, const std::vector<double>& lambdas,
                                                const GroundState& U, const SolverOptions& options) {
  return check_asymptotics(problem, lambdas, U.profile, U.norm2_sq, problem.source.alpha_eff(), true, options);
}

AsymptoticReport check_large_lambda_asymptotics(const ProblemSpec& problem, const std::vector<double>& lambdas,
                                                const GroundState& V, const SolverOptions& options) {
  const double beta = problem.source.beta_eff();
  // Semilinear branches rescale onto V itself; quasilinear ones onto V*.
  if (problem.semilinear) return check_asymptotics(problem, lambdas, V.profile, V.norm2_sq, beta, false, options);
  const VStar vs = v_star(V, beta, problem.source.mu2_eff(), problem.dim);
  return check_asymptotics(problem, lambdas, vs.profile, 6.0 * vs.mass, beta, false, options);
}

double kappa_threshold(double C1) { return 1.0 / (18.0 * C1 * C1); }

SupnormReport check_supnorm_threshold(int dim, PurePower power, const std::vector<double>& kappas,
                                      const std::vector<double>& lambdas,
                                      const std::vector<double>& probe_fractions,
                                      const SolverOptions& options) {
  SupnormReport rep;
  const Nonlinearity source(power);
  auto measure = [&](double kappa, bool probe) {
    SupnormRow row;
    row.kappa = kappa;
    row.probe = probe;
    ProblemSpec spec{dim, kappa, source, false};
    std::optional<double> seed;
    double prev_lambda = 0.0;
    for (double lambda : lambdas) {
      if (seed) *seed *= std::pow(lambda / prev_lambda, 1.0 / (power.p - 2.0));
      const GroundState gs = solve_at(spec, lambda, seed, options);
      row.max_sup_norm = std::max(row.max_sup_norm, gs.sup_norm);
      row.max_physical_sup_norm = std::max(row.max_physical_sup_norm, DualMap(kappa).G_inv(gs.sup_norm));
      seed = gs.center_value;
      prev_lambda = lambda;
    }
    return row;
  };

  double lo = 0.0;
  for (double kappa : kappas) {
    rep.rows.push_back(measure(kappa, false));
    rep.C1 = std::max(rep.C1, rep.rows.back().max_sup_norm);
    lo = lo == 0.0 ? rep.rows.back().max_sup_norm : std::min(lo, rep.rows.back().max_sup_norm);
  }
  rep.k1 = kappa_threshold(rep.C1);
  rep.variation = rep.C1 > 0.0 ? (rep.C1 - lo) / rep.C1 : 0.0;
  for (double f : probe_fractions) rep.rows.push_back(measure(f * rep.k1, true));

  rep.all_pass = true;
  const double sqrt6 = std::sqrt(6.0);
  for (auto& row : rep.rows) {
    row.checked = row.kappa < rep.k1;
    if (!row.checked) continue;
    const double bound = sqrt6 * row.max_sup_norm;
    row.passes = row.max_physical_sup_norm <= bound * (1.0 + 1e-14) &&
                 bound < std::sqrt(1.0 / (3.0 * row.kappa));
    rep.all_pass = rep.all_pass && row.passes;
  }
  return rep;
}

}  // namespace qnls
