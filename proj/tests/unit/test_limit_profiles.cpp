#include <cmath>
#include <vector>

#include "doctest.h"
#include "qnls/limit_profiles.hpp"

using namespace qnls;

namespace {

// Simpson's rule for S_{N-1} ∫ v(r)^q r^{N-1} dr on the uniform profile grid.
double lq_power(const RadialProfile& p, double q) {
  const std::size_t m = p.grid.size() - 1;
  const double h = p.grid[1] - p.grid[0];
  double s = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::pow(p.values[i], q) * std::pow(p.grid[i], p.dim - 1);
  }
  return sphere_area(p.dim) * s * h / 3.0;
}

}  // namespace

TEST_CASE("U for the cubic case matches the shooting regression value") {
  const GroundState U = solve_U(4.0, 1.0, 3);
  CHECK(U.norm2_sq == doctest::Approx(18.8972513026965).epsilon(1e-9));
  CHECK(U.center_value == doctest::Approx(4.33738767992687).epsilon(1e-10));
}

TEST_CASE("coefficient scaling U^mu = mu^(1/(2-alpha)) U") {
  for (double alpha : {2.5, 10.0 / 3.0, 4.0}) {
    const GroundState U = solve_U(alpha, 1.0, 3);
    for (double mu : {0.5, 2.0}) {
      const GroundState W = solve_U(alpha, mu, 3);
      const double s = std::pow(mu, 1.0 / (1.0 - (alpha - 1.0)));
      CHECK(W.center_value == doctest::Approx(s * U.center_value).epsilon(1e-9));
      for (std::size_t i = 0; i < W.profile.grid.size(); i += 8) {
        const double r = W.profile.grid[i];
        CHECK(std::fabs(W.profile.values[i] - s * U.profile.value_at(r)) <= 1e-6 * s * U.center_value);
      }
    }
  }
}

TEST_CASE("Pohozaev identity for the semilinear limit equation") {
  for (double alpha : {2.5, 10.0 / 3.0, 4.0}) {
    const double mu = 1.5;
    const GroundState U = solve_U(alpha, mu, 3);
    const double lhs = 0.5 * U.grad_norm2_sq + 1.5 * U.norm2_sq;
    const double rhs = 3.0 * mu / alpha * lq_power(U.profile, alpha);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("mass thresholds") {
  const double f = std::pow(6.0, -1.5);
  CHECK(f == doctest::Approx(0.0680414).epsilon(1e-6));
  const Thresholds t = mass_thresholds(10.0, 10.0, 3);
  CHECK(t.c_star == doctest::Approx(10.0 * f));
  CHECK(t.c_upper_star == doctest::Approx(10.0));
  const Thresholds a = mass_thresholds(1.0, 100.0, 3);
  CHECK(a.c_star == doctest::Approx(1.0));
  CHECK(a.c_upper_star == doctest::Approx(100.0 * f));
  const Thresholds b = mass_thresholds(100.0 * f, 1.0 / f, 3);
  CHECK(b.c_star == doctest::Approx(1.0));
  CHECK(b.c_upper_star == doctest::Approx(100.0 * f));
}

TEST_CASE("limit profiles for two regimes") {
  const LimitProfiles lp = compute_limit_profiles(Nonlinearity(TwoRegime{2.5, 4.0}), 3);
  CHECK(lp.c_star < lp.c_upper_star);
  CHECK(lp.c_star > 0.0);
  CHECK(lp.mass_V == doctest::Approx(18.8972513026965).epsilon(1e-9));
  const LimitProfiles same = compute_limit_profiles(Nonlinearity(PurePower{1.0, 10.0 / 3.0}), 3);
  CHECK(same.mass_U == same.mass_V);
  CHECK(same.c_star == doctest::Approx(std::pow(6.0, -1.5) * same.mass_U));
}

TEST_CASE("uniqueness under perturbed seeds") {
  const GroundState U = solve_U(2.5, 1.0, 3);
  for (double f : {0.6, 0.9, 1.1, 2.0}) {
    SolverOptions o;
    o.seed = f * U.center_value;
    CHECK(solve_U(2.5, 1.0, 3, o).center_value == doctest::Approx(U.center_value).epsilon(1e-10));
  }
}

TEST_CASE("V* amplitude and residual") {
  for (double beta : {3.0, 4.0, 5.0}) {
    const double mu2 = 1.0;
    const GroundState V = solve_V(beta, mu2, 3);
    const VStar vs = v_star(V, beta, mu2, 3);
    CHECK(vs.residual <= 1e-8);
    CHECK(vs.profile.values.front() == doctest::Approx(V.center_value / std::sqrt(6.0)));
    CHECK(6.0 * vs.mass == doctest::Approx(std::pow(6.0, -1.5) * V.norm2_sq).epsilon(1e-8));
    CHECK(vs.profile.value_at(0.5) == doctest::Approx(V.profile.value_at(0.5 * std::sqrt(6.0)) / std::sqrt(6.0)));
  }
}

TEST_CASE("V* amplitude (1/6)^(1/beta) does not solve the limit equation") {
  for (double beta : {3.0, 4.0, 5.0}) {
    const GroundState V = solve_V(beta, 1.0, 3);
    CHECK(v_star_residual(V, std::pow(1.0 / 6.0, 1.0 / beta), beta, 1.0, 3) > 1e-2);
    CHECK(v_star_residual(V, 1.0 / std::sqrt(6.0), beta, 1.0, 3) <= 1e-8);
  }
}
