#include "qnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qnls/branch.hpp"
#include "qnls/errors.hpp"
#include "qnls/io.hpp"
#include "qnls/limit_profiles.hpp"

namespace qnls {

namespace {

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

class Collector {
 public:
  explicit Collector(std::string suite) : suite_(std::move(suite)) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    out_.push_back({suite_, name, ok, detail});
  }

  // Runs body; exceptions count as failures.
  void guarded(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, detail] = body();
      check(name, ok, detail);
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

double quad(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-12);
}

const std::vector<double> kKappas = {0.1, 1.0, 10.0};

std::vector<CheckResult> dual_suite() {
  Collector c("dual");
  const std::vector<double> ts = logspace(-4, 4, 200);
  const double lo = std::sqrt(1.0 / 6.0), s6 = std::sqrt(6.0);

  c.guarded("g0 even, g(0)=1, sqrt(1/6) < g <= 1", [&] {
    bool ok = true;
    for (double k : kKappas) {
      DualMap m(k);
      ok = ok && m.g(0.0) == 1.0;
      for (double t : ts) ok = ok && m.g(-t) == m.g(t) && m.g(t) > lo && m.g(t) <= 1.0;
    }
    return std::make_pair(ok, std::string());
  });
  c.guarded("g1 g(t) -> sqrt(1/6)", [&] {
    double worst = 0.0;
    for (double k : kKappas) worst = std::max(worst, DualMap(k).g(1e12) - lo);
    return std::make_pair(worst < 1e-10, fmt("g(1e12)-sqrt(1/6) = %.2e", worst));
  });
  c.guarded("g2 t g'(t) -> 0", [&] {
    double worst = 0.0;
    for (double k : kKappas) worst = std::max(worst, std::fabs(1e12 * DualMap(k).g_prime(1e12)));
    return std::make_pair(worst < 1e-10, fmt("|t g'(t)| at 1e12 = %.2e", worst));
  });
  c.guarded("g3/g4 G_inv(v)/v -> 1 and sqrt(6)", [&] {
    double e0 = 0.0, e1 = 0.0;
    for (double k : kKappas) {
      DualMap m(k);
      e0 = std::max(e0, std::fabs(m.G_inv(1e-8) / 1e-8 - 1.0));
      e1 = std::max(e1, std::fabs(m.G_inv(1e14) / 1e14 - s6));
    }
    return std::make_pair(e0 < 1e-12 && e1 < 1e-10, fmt("%.2e / %.2e", e0, e1));
  });
  c.guarded("g5 t <= G_inv(t) <= sqrt(6) t", [&] {
    bool ok = true;
    for (double k : kKappas) {
      DualMap m(k);
      for (double t : ts) {
        const double u = m.G_inv(t);
        ok = ok && t <= u && u <= s6 * t;
      }
    }
    return std::make_pair(ok, std::string());
  });
  c.guarded("g6 -1/2 <= t g'/g <= 0", [&] {
    double lo6 = 0.0, hi6 = -1.0;
    for (double k : kKappas) {
      DualMap m(k);
      for (double t : ts) {
        const double q = t * m.g_prime(t) / m.g(t);
        lo6 = std::min(lo6, q);
        hi6 = std::max(hi6, q);
      }
    }
    return std::make_pair(lo6 >= -0.5 && hi6 <= 0.0, fmt("range [%.6f, %.3e]", lo6, hi6));
  });
  c.guarded("g7 G_inv(v)/v <= 1/g(G_inv(v))", [&] {
    bool ok = true;
    for (double k : kKappas) {
      DualMap m(k);
      for (double v : ts) ok = ok && m.G_inv(v) / v <= m.g_ratio(v) * (1.0 + 1e-15);
    }
    return std::make_pair(ok, std::string());
  });
  c.guarded("C1 gluing at t0", [&] {
    double jump = 0.0, cont = 0.0;
    for (double k : kKappas) {
      DualMap m(k);
      const double t0 = m.t0(), h = 1e-7 * t0;
      const double left = (m.g(t0) - m.g(t0 - h)) / h;
      const double right = (m.g(t0 + h) - m.g(t0)) / h;
      jump = std::max(jump, std::fabs(left - right) / std::sqrt(k));
      cont = std::max(cont, std::fabs(m.g_inner(t0) - m.g_outer(t0)));
    }
    return std::make_pair(jump < 1e-6 && cont < 1e-12, fmt("FD jump %.2e, value gap %.2e", jump, cont));
  });
  c.guarded("C1 gluing exact one-sided derivatives", [&] {
    double worst = 0.0;
    for (double k : kKappas) {
      DualMap m(k);
      const double target = -std::sqrt(k / 2.0);
      worst = std::max({worst, std::fabs(m.g_prime_inner(m.t0()) - target),
                        std::fabs(m.g_prime_outer(m.t0()) - target)});
    }
    return std::make_pair(worst < 1e-8, fmt("%.2e", worst));
  });
  c.guarded("G strictly increasing", [&] {
    bool ok = true;
    for (double k : kKappas) {
      DualMap m(k);
      double prev = 0.0;
      for (double t : ts) {
        ok = ok && m.G(t) > prev;
        prev = m.G(t);
      }
    }
    return std::make_pair(ok, std::string());
  });
  c.guarded("G closed form vs adaptive quadrature on [0, 1e3]", [&] {
    double worst = 0.0;
    for (double k : kKappas) {
      DualMap m(k);
      const auto g = [&](double s) { return m.g(s); };
      for (double t : {1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1000.0}) {
        double q = 0.0;
        if (t <= m.t0()) q = quad(g, 0.0, t);
        else q = quad(g, 0.0, m.t0()) + quad(g, m.t0(), t);
        worst = std::max(worst, std::fabs(m.G(t) - q) / q);
      }
    }
    return std::make_pair(worst < 1e-12, fmt("max rel %.2e", worst));
  });
  c.guarded("G_inv(G(t)) = t", [&] {
    double worst = 0.0;
    for (double k : kKappas) {
      DualMap m(k);
      for (double t : {0.01, m.t0(), 10.0, 1000.0}) worst = std::max(worst, std::fabs(m.G_inv(m.G(t)) / t - 1.0));
    }
    return std::make_pair(worst < 1e-10, fmt("max rel %.2e", worst));
  });
  c.guarded("kappa -> 0 degeneration", [&] {
    DualMap m(1e-8);
    double eg = 0.0, eG = 0.0;
    for (double t : logspace(-4, 0, 50)) {
      eg = std::max(eg, std::fabs(m.g(t) - 1.0));
      eG = std::max(eG, std::fabs(m.G(t) - t));
    }
    return std::make_pair(eg <= 1e-8 && eG <= 1e-8, fmt("%.2e / %.2e", eg, eG));
  });
  return c.take();
}

std::vector<Nonlinearity> builtin_sources() {
  return {Nonlinearity(PurePower{1.0, 2.5}), Nonlinearity(PurePower{1.0, 10.0 / 3.0}),
          Nonlinearity(PurePower{1.0, 4.0}), Nonlinearity(TwoRegime{2.5, 4.0}),
          Nonlinearity(TwoRegime{4.0, 2.5})};
}

std::vector<CheckResult> nonlinearity_suite() {
  Collector c("nonlinearity");
  const DualMap map(1.0);
  const std::vector<double> lambdas = {0.1, 1.0, 10.0};

  c.guarded("h finite, h >= 0 at lambda = 0.1", [&] {
    bool ok = true;
    for (const auto& src : builtin_sources())
      for (double l : lambdas) {
        EffectiveNonlinearity e(l, map, src);
        for (double v : logspace(-6, 6, 200)) ok = ok && std::isfinite(e.h(v)) && (l > 0.1 || e.h(v) >= 0.0);
      }
    return std::make_pair(ok, std::string());
  });
  c.guarded("h(s)/s^3 -> 1 - 2 lambda kappa/3 for p = 4", [&] {
    double worst = 0.0;
    for (double l : lambdas) {
      EffectiveNonlinearity e(l, map, Nonlinearity(PurePower{1.0, 4.0}));
      worst = std::max(worst, std::fabs(e.h(1e-3) / 1e-9 - (1.0 - 2.0 * l / 3.0)));
    }
    return std::make_pair(worst <= 1e-5, fmt("max %.2e", worst));
  });
  c.guarded("h(s)/s^(beta-1) bounded on [1e3, 1e6]", [&] {
    double worst = 0.0;
    for (const auto& src : builtin_sources()) {
      EffectiveNonlinearity e(1.0, map, src);
      const double beta = src.beta_eff();
      // limit is mu2 6^{beta/2}
      const double bound = 2.0 * src.mu2_eff() * std::pow(6.0, 0.5 * beta);
      for (double s : logspace(3, 6, 50)) worst = std::max(worst, e.h(s) / std::pow(s, beta - 1.0) / bound);
    }
    return std::make_pair(worst <= 1.0, fmt("max ratio/bound %.3f", worst));
  });
  c.guarded("exists T with H(T) > lambda T^2/2", [&] {
    bool ok = true;
    for (const auto& src : builtin_sources())
      for (double l : lambdas) {
        EffectiveNonlinearity e(l, map, src);
        bool found = false;
        for (double T : logspace(0, 4, 100)) found = found || e.L(T) > 0.0;
        ok = ok && found;
      }
    return std::make_pair(ok, std::string());
  });
  c.guarded("h_prime vs finite differences", [&] {
    double worst = 0.0;
    for (const auto& src : builtin_sources())
      for (double l : lambdas) {
        EffectiveNonlinearity e(l, map, src);
        for (double v : logspace(-3, 3, 60)) {
          if (std::fabs(v / map.G_at_t0() - 1.0) < 1e-3) continue;
          const double d = 1e-5 * v;
          const double fd = (e.h(v + d) - e.h(v - d)) / (2.0 * d);
          worst = std::max(worst, std::fabs(e.h_prime(v) - fd) / std::max(1.0, std::fabs(e.h_prime(v))));
        }
      }
    return std::make_pair(worst <= 1e-6, fmt("max %.2e", worst));
  });
  c.guarded("H vs quadrature of h", [&] {
    double worst = 0.0;
    for (const auto& src : builtin_sources())
      for (double l : lambdas) {
        EffectiveNonlinearity e(l, map, src);
        const auto h = [&](double s) { return e.h(s); };
        const double vt = map.G_at_t0();
        for (double v : logspace(-3, 3, 40)) {
          const double q = v <= vt ? quad(h, 0.0, v) : quad(h, 0.0, vt) + quad(h, vt, v);
          worst = std::max(worst, std::fabs(e.H(v) - q) / std::fabs(q));
        }
      }
    return std::make_pair(worst <= 1e-10, fmt("max rel %.2e", worst));
  });
  c.guarded("exponent classes for N=3", [&] {
    const bool ok = classify_exponent(Rational{5, 2}, 3) == ExponentClass::Subcritical &&
                    classify_exponent(Rational{10, 3}, 3) == ExponentClass::MassCritical &&
                    classify_exponent(Rational{4, 1}, 3) == ExponentClass::Supercritical &&
                    classify_exponent(3.3333333, 3) == ExponentClass::MassCritical;
    return std::make_pair(ok, std::string());
  });
  return c.take();
}

RadialProblem problem_at(double kappa, double p, double lambda, bool semilinear) {
  return RadialProblem(3, EffectiveNonlinearity(lambda, DualMap(kappa), Nonlinearity(PurePower{1.0, p}), semilinear));
}

std::vector<CheckResult> shooting_suite() {
  Collector c("shooting");
  struct Case {
    double p, lambda;
  };
  const std::vector<Case> cases = {{2.5, 1.0}, {10.0 / 3.0, 0.1}, {4.0, 1.0}, {4.0, 10.0}};
  std::vector<GroundState> states;
  for (const Case& k : cases) {
    c.guarded(fmt("ground state p=%.4g lambda=%g", k.p, k.lambda), [&] {
      states.push_back(shoot_ground_state(problem_at(1.0, k.p, k.lambda, false)));
      const GroundState& gs = states.back();
      return std::make_pair(true, fmt("a=%.10g rho=%.10g", gs.center_value, gs.dual_mass));
    });
  }
  c.guarded("profiles strictly decreasing", [&] {
    bool ok = !states.empty();
    for (const auto& gs : states)
      for (std::size_t i = 1; i < gs.profile.values.size(); ++i) ok = ok && gs.profile.values[i] < gs.profile.values[i - 1];
    return std::make_pair(ok, std::string());
  });
  c.guarded("exponential tail", [&] {
    double worst = 0.0;
    bool ok = !states.empty();
    for (const auto& gs : states) {
      const auto& pr = gs.profile;
      const double rate = std::sqrt(gs.lambda);
      double lo = 1e300, hi = -1e300;
      for (std::size_t i = pr.grid.size() / 2; i < pr.grid.size(); ++i) {
        const double q = std::log(pr.values[i]) + rate * pr.grid[i];
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      worst = std::max(worst, hi - lo);
    }
    return std::make_pair(ok && worst < 5.0, fmt("max spread of log v + sqrt(lambda) r: %.3f", worst));
  });
  c.guarded("Pohozaev and level identities", [&] {
    double worst = 0.0;
    for (const auto& gs : states) worst = std::max({worst, gs.pohozaev_residual, gs.level_residual});
    return std::make_pair(!states.empty() && worst <= 1e-6, fmt("max %.2e", worst));
  });
  c.guarded("halving integrator tolerance", [&] {
    SolverOptions a, b;
    b.rtol = 0.5 * a.rtol;
    const auto pr = problem_at(1.0, 4.0, 1.0, false);
    const double x = shoot_ground_state(pr, a).center_value, y = shoot_ground_state(pr, b).center_value;
    const double rel = std::fabs(x - y) / x;
    return std::make_pair(rel < 1e-8, fmt("rel change %.2e", rel));
  });
  c.guarded("kappa=1e-8 matches semilinear", [&] {
    const GroundState q = shoot_ground_state(problem_at(1e-8, 4.0, 1.0, false));
    const GroundState s = shoot_ground_state(problem_at(1.0, 4.0, 1.0, true));
    const double ea = std::fabs(q.center_value / s.center_value - 1.0);
    const double em = std::fabs(q.norm2_sq / s.norm2_sq - 1.0);
    return std::make_pair(ea <= 1e-6 && em <= 1e-6, fmt("%.2e / %.2e", ea, em));
  });
  return c.take();
}

std::vector<CheckResult> limits_suite() {
  Collector c("limits");
  c.guarded("U for p=4, N=3", [&] {
    const GroundState U = solve_U(4.0, 1.0, 3);
    const double e = std::fabs(U.center_value - 4.337387679926869) / 4.337387679926869;
    return std::make_pair(e < 1e-8, fmt("U(0)=%.12g mass=%.12g", U.center_value, U.norm2_sq));
  });
  c.guarded("uniqueness under perturbed seeds", [&] {
    const GroundState U = solve_U(10.0 / 3.0, 1.0, 3);
    double worst = 0.0;
    for (double f : {0.7, 0.95, 1.05, 1.5}) {
      SolverOptions o;
      o.seed = f * U.center_value;
      worst = std::max(worst, std::fabs(solve_U(10.0 / 3.0, 1.0, 3, o).center_value / U.center_value - 1.0));
    }
    return std::make_pair(worst <= 1e-10, fmt("max rel %.2e", worst));
  });
  c.guarded("mu scaling U^mu = mu^(1/(2-p)) U", [&] {
    double worst = 0.0;
    for (double p : {2.5, 4.0}) {
      const GroundState U = solve_U(p, 1.0, 3);
      for (double mu : {0.5, 2.0}) {
        const GroundState W = solve_U(p, mu, 3);
        const double s = std::pow(mu, 1.0 / (2.0 - p));
        for (std::size_t i = 0; i < W.profile.grid.size(); i += 16) {
          const double r = W.profile.grid[i];
          const double ref = s * U.profile.value_at(r);
          worst = std::max(worst, std::fabs(W.profile.values[i] - ref) / (s * U.center_value));
        }
      }
    }
    return std::make_pair(worst <= 1e-6, fmt("max %.2e", worst));
  });
  c.guarded("c_* < c^* for Mixed exponents", [&] {
    const LimitProfiles lp = compute_limit_profiles(Nonlinearity(TwoRegime{2.5, 4.0}), 3);
    return std::make_pair(lp.c_star < lp.c_upper_star, fmt("c_*=%.8g c^*=%.8g", lp.c_star, lp.c_upper_star));
  });
  c.guarded("V* residual with amplitude 6^(-1/2)", [&] {
    double worst = 0.0;
    for (double beta : {2.5, 10.0 / 3.0, 4.0}) {
      const GroundState V = solve_V(beta, 1.0, 3);
      worst = std::max(worst, v_star(V, beta, 1.0, 3).residual);
    }
    return std::make_pair(worst <= 1e-8, fmt("max %.2e", worst));
  });
  c.guarded("V* amplitude (1/6)^(1/beta) is not a solution", [&] {
    const double beta = 4.0;
    const GroundState V = solve_V(beta, 1.0, 3);
    const double r = v_star_residual(V, std::pow(1.0 / 6.0, 1.0 / beta), beta, 1.0, 3);
    return std::make_pair(r > 1e-2, fmt("residual %.3f", r));
  });
  return c.take();
}

std::vector<CheckResult> branch_suite() {
  Collector c("branch");
  c.guarded("semilinear sweep matches closed form", [&] {
    double worst = 0.0;
    for (double p : {2.5, 10.0 / 3.0, 4.0}) {
      const ProblemSpec ps{3, 1.0, Nonlinearity(PurePower{1.0, p}), true};
      const double mU = solve_U(p, 1.0, 3).norm2_sq;
      const MassCurve curve = sweep(ps, 1e-3, 1e3, 61);
      for (const auto& b : curve.points)
        worst = std::max(worst, std::fabs(b.rho / (std::pow(b.lambda, 2.0 / (p - 2.0) - 1.5) * mU) - 1.0));
    }
    return std::make_pair(worst <= 1e-6, fmt("max rel %.2e", worst));
  });
  c.guarded("semilinear rescaled profile equals U", [&] {
    const ProblemSpec ps{3, 1.0, Nonlinearity(PurePower{1.0, 4.0}), true};
    const GroundState U = solve_U(4.0, 1.0, 3);
    const auto rep = check_small_lambda_asymptotics(ps, {1e-2, 1e-3}, U);
    double worst = 0.0;
    for (const auto& row : rep.rows) worst = std::max(worst, row.sup_distance);
    return std::make_pair(worst <= 1e-8, fmt("max %.2e", worst));
  });
  c.guarded("log-log slopes p=2.5", [&] {
    const ProblemSpec ps{3, 1.0, Nonlinearity(PurePower{1.0, 2.5}), false};
    const MassCurve curve = sweep(ps, 1e-3, 1e3, 31, SweepOptions{{}, 0.5, 8, false});
    const double s0 = loglog_slope(curve, 1e-3, 1e-1), s1 = loglog_slope(curve, 1e1, 1e3);
    const bool ok = std::fabs(s0 / 2.5 - 1.0) <= 0.02 && std::fabs(s1 / 2.5 - 1.0) <= 0.02;
    return std::make_pair(ok, fmt("slopes %.5f, %.5f", s0, s1));
  });
  c.guarded("normalized roots p=2.5", [&] {
    const ProblemSpec ps{3, 1.0, Nonlinearity(PurePower{1.0, 2.5}), false};
    const MassCurve curve = sweep(ps, 1e-3, 1e3, 31, SweepOptions{{}, 0.5, 8, false});
    bool ok = true;
    double worst = 0.0;
    for (double cm : {0.1, 1.0, 10.0}) {
      const auto roots = solve_normalized(curve, cm);
      ok = ok && roots.size() == 1;
      for (const auto& r : roots) {
        worst = std::max(worst, std::fabs(r.state.dual_mass - cm) / cm);
        ok = ok && r.state.pohozaev_residual <= 1e-6;
      }
    }
    return std::make_pair(ok && worst <= 1e-8, fmt("max |rho-c|/c %.2e", worst));
  });
  c.guarded("case tags", [&] {
    const bool ok = classify_case(10.0 / 3.0, 10.0 / 3.0, 3).tag == CaseTag::ExactlyCritical &&
                    classify_case(2.5, 4.0, 3).tag == CaseTag::Mixed1 &&
                    classify_case(2.5, 4.0, 3).at_zero == Endpoint::Zero &&
                    classify_case(2.5, 4.0, 3).at_infinity == Endpoint::Zero &&
                    classify_case(4.0, 4.0, 3).tag == CaseTag::SupercriticalBoth;
    return std::make_pair(ok, std::string());
  });
  c.guarded("Mixed-1 interior maximum and two roots", [&] {
    const ProblemSpec ps{3, 1.0, Nonlinearity(TwoRegime{2.5, 4.0}), false};
    const MassCurve curve = sweep(ps, 1e-3, 1e3, 31, SweepOptions{{}, 0.5, 8, false});
    std::size_t imax = 0;
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      if (curve.points[i].rho > curve.points[imax].rho) imax = i;
    const double c1 = curve.points[imax].rho;
    const bool interior = imax > 0 && imax + 1 < curve.points.size();
    const auto roots = solve_normalized(curve, 0.7 * c1);
    const auto none = solve_normalized(curve, 2.0 * c1);
    return std::make_pair(interior && roots.size() >= 2 && none.empty(),
                          fmt("c1=%.6g, %zu roots at 0.7 c1", c1, roots.size()));
  });
  return c.take();
}

std::vector<CheckResult> io_suite() {
  Collector c("io");
  c.guarded("curve file round trip", [&] {
    const ProblemSpec ps{3, 1.0, Nonlinearity(TwoRegime{2.5, 4.0}), false};
    MassCurve curve = sweep(ps, 1e-1, 1e1, 7, SweepOptions{{}, 0.5, 8, false});
    curve.regime = CaseTag::Mixed1;
    std::ostringstream a;
    write_curve(a, curve);
    std::istringstream in(a.str());
    const MassCurve back = read_curve(in);
    std::ostringstream b;
    write_curve(b, back);
    bool same = back.points.size() == curve.points.size() && back.regime == curve.regime;
    for (std::size_t i = 0; same && i < curve.points.size(); ++i)
      same = back.points[i].lambda == curve.points[i].lambda && back.points[i].rho == curve.points[i].rho &&
             back.points[i].energy == curve.points[i].energy;
    return std::make_pair(same && a.str() == b.str(), std::string());
  });
  c.guarded("deterministic output", [&] {
    const ProblemSpec ps{3, 1.0, Nonlinearity(PurePower{1.0, 4.0}), false};
    std::ostringstream a, b;
    write_curve(a, sweep(ps, 1e-1, 1e1, 5, SweepOptions{{}, 0.5, 8, false}));
    write_curve(b, sweep(ps, 1e-1, 1e1, 5, SweepOptions{{}, 0.5, 8, false}));
    return std::make_pair(a.str() == b.str(), std::string());
  });
  c.guarded("config precedence flags > file > defaults", [&] {
    const ConfigMap file = parse_config_text("kappa = 0.5\nlambda = 2\n");
    const ConfigMap flags = {{"lambda", "3"}};
    const RunConfig r = resolve_config(file, flags);
    return std::make_pair(r.dim == 3 && r.kappa == 0.5 && r.lambda == 3.0, std::string());
  });
  c.guarded("unknown config key rejected", [&] {
    bool threw = false;
    try {
      parse_config_text("lamda = 2\n");
    } catch (const ConfigError&) {
      threw = true;
    }
    return std::make_pair(threw, std::string());
  });
  c.guarded("figure-k crossing = 1/(18 C1^2)", [&] {
    double worst = 0.0;
    for (double C1 : {1.0, 4.3, 39.35}) {
      const double k1 = 1.0 / (18.0 * C1 * C1);
      worst = std::max(worst, std::fabs(kappa_bound_crossing(C1) - k1) / k1);
    }
    return std::make_pair(worst <= 1e-12, fmt("max rel %.2e", worst));
  });
  return c.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"dual", "nonlinearity", "shooting", "limits", "branch", "io"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  if (suite == "dual") return dual_suite();
  if (suite == "nonlinearity") return nonlinearity_suite();
  if (suite == "shooting") return shooting_suite();
  if (suite == "limits") return limits_suite();
  if (suite == "branch") return branch_suite();
  if (suite == "io") return io_suite();
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const auto& name : suite_names()) {
      auto part = run_suite(name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw ConfigError("verify: unknown suite '" + suite + "'");
}

bool print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (r.passed) ++passed;
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-13s %-52s", r.passed ? "PASS" : "FAIL", r.suite.c_str(),
                  r.name.c_str());
    os << line;
    if (!r.detail.empty()) os << ' ' << r.detail;
    os << '\n';
  }
  os << passed << '/' << results.size() << " checks passed\n";
  return passed == results.size();
}

}  // namespace qnls
