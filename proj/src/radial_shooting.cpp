#include "qnls/radial_shooting.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "qnls/errors.hpp"

namespace qnls {

namespace {

constexpr double kStartRadius = 1e-6;

// Composite Simpson on an arbitrary ascending grid; a trailing odd interval
// is closed with the quadratic through the last three nodes.
template <class Fn>
double simpson(const std::vector<double>& x, Fn&& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * (x[1] - x[0]) * (y(0) + y(1));
  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    sum += hs / 6.0 *
           ((2.0 - h1 / h0) * y(i) + hs * hs / (h0 * h1) * y(i + 1) + (2.0 - h0 / h1) * y(i + 2));
  }
  if (i + 1 < n) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    sum += h1 * (y(i + 1) * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1)) +
                 y(i) * (h1 + 3.0 * h0) / (6.0 * h0) - y(i - 1) * h1 * h1 / (6.0 * h0 * (h0 + h1)));
  }
  return sum;
}

// ∫_{r_cut}^∞ fn(w(r), w'(r)) r^{N-1} dr over the matched tail, with
// r = r_cut + t / rate and t in [0, 40].
template <class Fn>
double tail_integral(const RadialProfile& p, Fn&& fn) {
  if (p.tail_amplitude == 0.0 || p.grid.empty()) return 0.0;
  const double rc = p.r_cut();
  const double s = p.tail_rate;
  const int n = p.dim;
  double acc = 0.0;
  const int panels = 10;
  const double width = 40.0 / panels;
  for (int k = 0; k < panels; ++k) {
    acc += boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double t) {
          const double r = rc + t / s;
          return fn(p.tail_value(r), p.tail_derivative(r)) * std::pow(r, n - 1);
        },
        k * width, (k + 1) * width);
  }
  return acc / s;
}

struct Series {
  double a, reaction;
  int dim;
  OdeState<2> at(double r) const {
    return {a - reaction * r * r / (2.0 * dim), -reaction * r / dim};
  }
};

}  // namespace

RadialProblem::RadialProblem(int dim, EffectiveNonlinearity eff) : dim_(dim), eff_(std::move(eff)) {
  eff_.source().validate(dim);
}

double RadialProblem::default_r_max() const { return std::max(30.0, 20.0 / std::sqrt(lambda())); }

double RadialProfile::tail_value(double r) const {
  return tail_amplitude * std::pow(r, -0.5 * (dim - 1)) * std::exp(-tail_rate * r);
}

double RadialProfile::tail_derivative(double r) const {
  return -tail_value(r) * (tail_rate + 0.5 * (dim - 1) / r);
}

namespace {

std::size_t bracket_index(const std::vector<double>& grid, double r) {
  auto it = std::upper_bound(grid.begin(), grid.end(), r);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i == 0) return 0;
  return std::min(i - 1, grid.size() - 2);
}

}  // namespace

double RadialProfile::value_at(double r) const {
  if (grid.size() < 2) return grid.empty() ? 0.0 : values.front();
  if (r > r_cut()) return tail_amplitude == 0.0 ? 0.0 : tail_value(r);
  r = std::max(r, 0.0);
  const std::size_t i = bracket_index(grid, r);
  const double h = grid[i + 1] - grid[i];
  const double t = (r - grid[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * values[i] + (t3 - 2 * t2 + t) * h * dvalues[i] +
         (-2 * t3 + 3 * t2) * values[i + 1] + (t3 - t2) * h * dvalues[i + 1];
}

double RadialProfile::derivative_at(double r) const {
  if (grid.size() < 2) return 0.0;
  if (r > r_cut()) return tail_amplitude == 0.0 ? 0.0 : tail_derivative(r);
  r = std::max(r, 0.0);
  const std::size_t i = bracket_index(grid, r);
  const double h = grid[i + 1] - grid[i];
  const double t = (r - grid[i]) / h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * values[i] + (3 * t2 - 4 * t + 1) * h * dvalues[i] +
          (-6 * t2 + 6 * t) * values[i + 1] + (3 * t2 - 2 * t) * h * dvalues[i + 1]) /
         h;
}

const char* to_string(ShotClass c) {
  switch (c) {
    case ShotClass::Crossed: return "Crossed";
    case ShotClass::TurnedUp: return "TurnedUp";
    case ShotClass::Decayed: return "Decayed";
  }
  return "?";
}

Shot integrate_from_center(const RadialProblem& problem, double a, double r_max,
                           const SolverOptions& options, DenseSolution<2>* dense) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("integrate_from_center: a must be positive");
  if (!(r_max > 0.0)) throw DomainError("integrate_from_center: r_max must be positive");
  const auto& eff = problem.eff();
  const int n = problem.dim();
  const double lambda = eff.lambda();
  const double reaction = eff.reaction(a);  // h(a) - λ a
  if (dense) dense->clear();
  // v'' = -R(a) at the center: R <= 0 means v starts increasing.
  if (reaction <= 0.0) return {ShotClass::TurnedUp, 0.0, a, 0.0, 0};

  const double scale = 1.0 / std::sqrt(lambda);
  const double r0 = std::min(kStartRadius, 1e-3 * scale);
  const Series series{a, reaction, n};
  auto rhs = [&](double r, const OdeState<2>& y) -> OdeState<2> {
    return {y[1], -(n - 1) / r * y[1] - eff.reaction(y[0])};
  };
  // v reaching 0 (crossing) or v' reaching 0 (turning up).
  auto events = [](double, const OdeState<2>& y) { return std::array<double, 2>{y[0], -y[1]}; };
  const OdeState<2> atol{1e-14 * a, 1e-14 * a * std::sqrt(lambda)};
  Dopri5Options opt;
  opt.rtol = options.rtol;
  opt.h_init = 1e-3 * scale;
  const auto res = dopri5<2>(rhs, r0, series.at(r0), r_max, atol, opt, events, dense);
  if (res.status == Dopri5Status::StepFailure)
    throw NumericError("integrate_from_center: step size underflow", res.t, res.y[0], res.y[1]);
  if (res.status == Dopri5Status::Event) {
    return {res.event == 0 ? ShotClass::Crossed : ShotClass::TurnedUp, res.t, res.y[0], res.y[1], res.steps};
  }
  return {ShotClass::Decayed, res.t, res.y[0], res.y[1], res.steps};
}

double first_energy_root(const EffectiveNonlinearity& eff) {
  // L < 0 near 0 since H = o(s^2); march up geometrically to the first sign change.
  double lo = 1e-150;
  if (eff.L(lo) >= 0.0) throw NoBracketError("energy root: L(s) >= 0 near 0", eff.lambda());
  double hi = lo;
  while (true) {
    hi = lo * 2.0;
    if (hi > 1e150) throw NoBracketError("energy root: L(s) has no positive root", eff.lambda());
    if (eff.L(hi) > 0.0) break;
    lo = hi;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (eff.L(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

double sphere_area(int dim) {
  const double pi = boost::math::constants::pi<double>();
  return 2.0 * std::pow(pi, 0.5 * dim) / boost::math::tgamma(0.5 * dim);
}

namespace {

template <class Phys>
Norms norms_impl(const RadialProfile& p, Phys&& phys) {
  Norms out;
  if (p.grid.empty()) return out;
  const int n = p.dim;
  const auto& r = p.grid;
  auto w = [&](std::size_t i) { return std::pow(r[i], n - 1); };
  const double area = sphere_area(n);
  out.norm2_sq = simpson(r, [&](std::size_t i) { return p.values[i] * p.values[i] * w(i); });
  out.grad_norm2_sq = simpson(r, [&](std::size_t i) { return p.dvalues[i] * p.dvalues[i] * w(i); });
  out.dual_mass = simpson(r, [&](std::size_t i) {
    const double u = phys(p.values[i]);
    return u * u * w(i);
  });
  if (p.tail_amplitude != 0.0) {
    const double vc = p.values.back();
    out.norm2_sq += vc * vc * std::pow(p.r_cut(), n - 1) / (2.0 * p.tail_rate);
    out.grad_norm2_sq += tail_integral(p, [](double, double dw) { return dw * dw; });
    out.dual_mass += tail_integral(p, [&](double wv, double) {
      const double u = phys(wv);
      return u * u;
    });
  }
  out.norm2_sq *= area;
  out.grad_norm2_sq *= area;
  out.dual_mass *= area;
  for (double v : p.values) out.sup_norm = std::max(out.sup_norm, std::fabs(v));
  return out;
}

}  // namespace

Norms compute_norms(const RadialProfile& profile, const DualMap& map) {
  return norms_impl(profile, [&](double v) { return map.G_inv(v); });
}

Norms compute_norms(const RadialProfile& profile, const EffectiveNonlinearity& eff) {
  return norms_impl(profile, [&](double v) { return eff.to_physical(v); });
}

double integral_H(const RadialProfile& p, const EffectiveNonlinearity& eff) {
  if (p.grid.empty()) return 0.0;
  const int n = p.dim;
  double acc = simpson(p.grid, [&](std::size_t i) {
    return eff.H(p.values[i]) * std::pow(p.grid[i], n - 1);
  });
  acc += tail_integral(p, [&](double w, double) { return eff.H(w); });
  return acc * sphere_area(n);
}

double pohozaev_residual(const RadialProfile& profile, const EffectiveNonlinearity& eff) {
  const Norms nm = compute_norms(profile, eff);
  const int n = profile.dim;
  const double lhs = 0.5 * (n - 2) * nm.grad_norm2_sq + 0.5 * n * eff.lambda() * nm.norm2_sq;
  const double rhs = n * integral_H(profile, eff);
  return std::fabs(lhs - rhs) / std::max({std::fabs(lhs), std::fabs(rhs), 1e-30});
}

Energies energy(const RadialProfile& p, const EffectiveNonlinearity& eff) {
  Energies e;
  if (p.grid.empty()) return e;
  const Norms nm = compute_norms(p, eff);
  e.action = 0.5 * nm.grad_norm2_sq + 0.5 * eff.lambda() * nm.norm2_sq - integral_H(p, eff);
  const int n = p.dim;
  const auto& src = eff.source();
  double intF = simpson(p.grid, [&](std::size_t i) {
    return src.F(eff.to_physical(p.values[i])) * std::pow(p.grid[i], n - 1);
  });
  intF += tail_integral(p, [&](double w, double) { return src.F(eff.to_physical(w)); });
  e.dual_energy = 0.5 * nm.grad_norm2_sq - intF * sphere_area(n);
  return e;
}

std::vector<double> physical_values(const RadialProfile& profile, const EffectiveNonlinearity& eff) {
  std::vector<double> u(profile.values.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = eff.to_physical(profile.values[i]);
  return u;
}

namespace {

struct Bracket {
  double low;   // TurnedUp
  double high;  // Crossed
  int shots = 0;
  bool hint = false;
  std::optional<double> decayed;
};

Bracket find_bracket(const RadialProblem& problem, double r_max, const SolverOptions& options) {
  Bracket b{};
  auto classify = [&](double a) {
    ++b.shots;
    return integrate_from_center(problem, a, r_max, options).cls;
  };
  const double lambda = problem.lambda();

  if (options.seed && *options.seed > 0.0) {
    // Continuation: expand geometrically around the seed.
    double a = *options.seed;
    ShotClass c = classify(a);
    if (c == ShotClass::Decayed) {
      b.decayed = a;
      return b;
    }
    double step = 1.02;
    for (int k = 0; k < 60; ++k) {
      const double next = c == ShotClass::TurnedUp ? a * step : a / step;
      const ShotClass cn = classify(next);
      if (cn == ShotClass::Decayed) {
        b.decayed = next;
        return b;
      }
      if (cn != c) {
        b.low = c == ShotClass::TurnedUp ? a : next;
        b.high = c == ShotClass::TurnedUp ? next : a;
        return b;
      }
      a = next;
      step *= step;
    }
    throw NoBracketError("shooting: seeded scan found a single trajectory class", lambda);
  }

  const double s_star = first_energy_root(problem.eff());
  double prev = 0.0;
  bool have_low = false;
  double factor = 1.01;
  for (int k = 0; k < 200; ++k) {
    const double a = s_star * factor;
    const ShotClass c = classify(a);
    if (c == ShotClass::Decayed) {
      b.decayed = a;
      return b;
    }
    if (c == ShotClass::TurnedUp) {
      prev = a;
      have_low = true;
    } else {
      if (!have_low) {
        // Overshoot already just above s*: approach s* from above.
        double hi = a;
        for (int j = 1; j <= 40; ++j) {
          const double lo = s_star * (1.0 + 0.01 / std::pow(2.0, j));
          if (classify(lo) == ShotClass::TurnedUp) {
            b.low = lo;
            b.high = hi;
            return b;
          }
          hi = lo;
        }
        throw NoBracketError("shooting: no undershoot above the energy root", lambda);
      }
      b.low = prev;
      b.high = a;
      // A trajectory above the first overshoot turning up again hints at a
      // second separatrix.
      b.hint = classify(2.0 * a) == ShotClass::TurnedUp;
      return b;
    }
    factor = k == 0 ? 2.0 : factor * 2.0;
  }
  throw NoBracketError("shooting: scan found only undershoots", lambda);
}

}  // namespace

GroundState shoot_ground_state(const RadialProblem& problem, const SolverOptions& options) {
  const double r_max = options.r_max > 0.0 ? options.r_max : problem.default_r_max();
  Bracket b = find_bracket(problem, r_max, options);
  int shots = b.shots;

  double lo = b.low, hi = b.high;
  if (b.decayed) {
    lo = hi = *b.decayed;
  } else {
    int it = 0;
    for (; it < options.max_bisections; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      ++shots;
      const ShotClass c = integrate_from_center(problem, mid, r_max, options).cls;
      if (c == ShotClass::Decayed) {
        lo = hi = mid;
        break;
      }
      (c == ShotClass::TurnedUp ? lo : hi) = mid;
    }
    if (it == options.max_bisections && hi - lo > options.bisection_rtol * hi)
      throw MaxIterationsError("shooting: bisection did not converge", 0.0, lo, hi);
  }

  // Final pair of trajectories with dense output; they agree up to the radius
  // where the separatrix instability separates them.
  DenseSolution<2> dlo, dhi;
  const Shot slo = integrate_from_center(problem, lo, r_max, options, &dlo);
  const Shot shi = integrate_from_center(problem, hi, r_max, options, &dhi);
  shots += 2;
  if (dlo.empty() || dhi.empty())
    throw NumericError("shooting: degenerate final trajectories", 0.0, lo, hi);

  const int n = problem.dim();
  const auto& eff = problem.eff();
  const double a = 0.5 * (lo + hi);
  const Series slow{lo, eff.reaction(lo), n}, shigh{hi, eff.reaction(hi), n};
  const double r_start = dlo.t_begin();
  auto state = [&](double r) -> std::array<OdeState<2>, 2> {
    if (r < r_start) return {slow.at(r), shigh.at(r)};
    return {dlo(r), dhi(r)};
  };
  const double r_end = std::min(slo.r, shi.r);

  // Largest radius up to which the averaged trajectory is reliable.
  const int scan = 8000;
  double r_cut = 0.0;
  for (int i = 1; i <= scan; ++i) {
    const double r = r_end * i / scan;
    const auto s = state(r);
    const double v = 0.5 * (s[0][0] + s[1][0]);
    const double dv = 0.5 * (s[0][1] + s[1][1]);
    if (!(std::fabs(s[1][0] - s[0][0]) <= 1e-6 * v) || !(v > 1e-9 * a) || !(dv < 0.0)) break;
    r_cut = r;
  }
  if (r_cut <= 0.0) throw NumericError("shooting: no reliable profile segment", 0.0, lo, hi);

  GroundState gs;
  gs.lambda = problem.lambda();
  gs.a_low = lo;
  gs.a_high = hi;
  gs.shots = shots;
  gs.multiple_separatrix_hint = b.hint;

  RadialProfile& p = gs.profile;
  p.dim = n;
  p.r_max = r_max;
  p.tail_rate = std::sqrt(problem.lambda());
  const int m = std::max(2, options.grid_intervals + options.grid_intervals % 2);
  p.grid.resize(m + 1);
  p.values.resize(m + 1);
  p.dvalues.resize(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double r = r_cut * i / m;
    const auto s = state(r);
    p.grid[i] = r;
    p.values[i] = 0.5 * (s[0][0] + s[1][0]);
    p.dvalues[i] = 0.5 * (s[0][1] + s[1][1]);
  }
  p.dvalues[0] = 0.0;
  p.values[0] = a;
  for (int i = 1; i <= m; ++i) {
    if (!(p.values[i] > 0.0) || !(p.values[i] < p.values[i - 1]))
      throw NumericError("shooting: profile not positive and decreasing", p.grid[i], p.values[i], p.dvalues[i]);
  }
  p.tail_amplitude =
      p.values[m] * std::pow(r_cut, 0.5 * (n - 1)) * std::exp(p.tail_rate * r_cut);

  const Norms nm = compute_norms(p, eff);
  gs.center_value = a;
  gs.norm2_sq = nm.norm2_sq;
  gs.grad_norm2_sq = nm.grad_norm2_sq;
  gs.dual_mass = nm.dual_mass;
  gs.sup_norm = nm.sup_norm;
  const Energies en = energy(p, eff);
  gs.energy = en.action;
  gs.dual_energy = en.dual_energy;
  gs.pohozaev_residual = pohozaev_residual(p, eff);
  const double level = gs.grad_norm2_sq / n;
  gs.level_residual =
      std::fabs(gs.energy - level) / std::max({std::fabs(gs.energy), std::fabs(level), 1e-300});
  if (!(gs.pohozaev_residual <= options.pohozaev_tol))
    throw NumericError("shooting: Pohozaev residual " + std::to_string(gs.pohozaev_residual) +
                           " above gate",
                       r_cut, a, gs.pohozaev_residual);
  if (!(gs.level_residual <= options.pohozaev_tol))
    throw NumericError("shooting: level identity residual " + std::to_string(gs.level_residual) +
                           " above gate",
                       r_cut, a, gs.level_residual);
  return gs;
}

}  // namespace qnls
