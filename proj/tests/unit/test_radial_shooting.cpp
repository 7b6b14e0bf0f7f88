#include <cmath>
#include <vector>

#include "doctest.h"
#include "qnls/errors.hpp"
#include "qnls/radial_shooting.hpp"

using namespace qnls;

namespace {

const double kPi = 3.14159265358979323846;

RadialProblem power_problem(double kappa, double p, double lambda, bool semilinear = false) {
  return RadialProblem(3, EffectiveNonlinearity(lambda, DualMap(kappa), Nonlinearity(PurePower{1.0, p}), semilinear));
}

RadialProfile sampled(double r_end, int m, double (*v)(double), double (*dv)(double)) {
  RadialProfile p;
  p.dim = 3;
  p.r_max = r_end;
  p.tail_rate = 1.0;
  p.tail_amplitude = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double r = r_end * i / m;
    p.grid.push_back(r);
    p.values.push_back(v(r));
    p.dvalues.push_back(dv(r));
  }
  return p;
}

}  // namespace

TEST_CASE("shot classes around the separatrix") {
  const RadialProblem q = power_problem(1.0, 4.0, 1.0, true);
  const double s_star = first_energy_root(q.eff());
  // L(s) = s^4/4 - s^2/2 vanishes at sqrt(2)
  CHECK(s_star == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(integrate_from_center(q, 0.9 * s_star, 30.0).cls == ShotClass::TurnedUp);
  CHECK(integrate_from_center(q, 1e3 * s_star, 30.0).cls == ShotClass::Crossed);
  CHECK(integrate_from_center(q, 4.33, 30.0).cls == ShotClass::TurnedUp);
  CHECK(integrate_from_center(q, 4.345, 30.0).cls == ShotClass::Crossed);

  const RadialProblem ql = power_problem(1.0, 4.0, 1.0);
  const double s_ql = first_energy_root(ql.eff());
  CHECK(integrate_from_center(ql, 0.5 * s_ql, 30.0).cls == ShotClass::TurnedUp);
  CHECK(integrate_from_center(ql, 1e3 * s_ql, 30.0).cls == ShotClass::Crossed);
}

TEST_CASE("semilinear cubic ground state in three dimensions") {
  const GroundState Q = shoot_ground_state(power_problem(1.0, 4.0, 1.0, true));
  CHECK(Q.center_value == doctest::Approx(4.33738767992687).epsilon(1e-10));
  CHECK(Q.norm2_sq == doctest::Approx(18.8972513026965).epsilon(1e-9));
  CHECK(Q.dual_mass == Q.norm2_sq);
  CHECK(Q.pohozaev_residual <= 1e-6);
  CHECK(Q.level_residual <= 1e-6);
  // Pohozaev for -ΔQ + Q = Q^3 in R^3: ‖∇Q‖² = 3 ‖Q‖²
  CHECK(Q.grad_norm2_sq == doctest::Approx(3.0 * Q.norm2_sq).epsilon(1e-7));
}

TEST_CASE("quasilinear ground state diagnostics") {
  const RadialProblem pr = power_problem(1.0, 4.0, 1.0);
  const GroundState gs = shoot_ground_state(pr);
  CHECK(gs.pohozaev_residual <= 1e-6);
  CHECK(gs.level_residual <= 1e-6);
  CHECK(gs.sup_norm == gs.center_value);
  CHECK(gs.energy == doctest::Approx(gs.grad_norm2_sq / 3.0).epsilon(1e-6));
  CHECK(gs.dual_mass >= gs.norm2_sq);
  CHECK(gs.dual_mass <= 6.0 * gs.norm2_sq);
  CHECK(gs.profile.dvalues.front() == 0.0);
  CHECK(gs.profile.grid.front() == 0.0);
  CHECK(gs.profile.value_at(gs.profile.r_max) <= 1e-10 * gs.center_value);
  CHECK(gs.a_low <= gs.center_value);
  CHECK(gs.center_value <= gs.a_high);
  CHECK((gs.a_high - gs.a_low) <= 1e-12 * gs.a_high);
}

TEST_CASE("dual energy identity") {
  for (double lambda : {0.1, 1.0, 10.0}) {
    const RadialProblem pr = power_problem(1.0, 4.0, lambda);
    const GroundState gs = shoot_ground_state(pr);
    const Energies e = energy(gs.profile, pr.eff());
    CHECK(e.action == doctest::Approx(e.dual_energy + 0.5 * lambda * gs.dual_mass).epsilon(1e-8));
  }
}

TEST_CASE("profiles decrease and decay exponentially") {
  for (double lambda : {0.01, 1.0, 30.0}) {
    for (double p : {2.5, 10.0 / 3.0, 4.0}) {
      const GroundState gs = shoot_ground_state(power_problem(1.0, p, lambda));
      const auto& pr = gs.profile;
      for (std::size_t i = 1; i < pr.values.size(); ++i) CHECK(pr.values[i] < pr.values[i - 1]);
      double lo = 1e300, hi = -1e300;
      for (std::size_t i = pr.grid.size() / 2; i < pr.grid.size(); ++i) {
        const double q = std::log(pr.values[i]) + std::sqrt(lambda) * pr.grid[i];
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      CHECK(hi - lo < 5.0);
      CHECK(pr.value_at(pr.r_max) <= 1e-7 * gs.center_value);
    }
  }
}

TEST_CASE("Gaussian norms") {
  const RadialProfile p = sampled(
      12.0, 4096, [](double r) { return std::exp(-r * r); }, [](double r) { return -2.0 * r * std::exp(-r * r); });
  const Norms n = compute_norms(p, DualMap(1.0));
  CHECK(n.norm2_sq == doctest::Approx(std::pow(kPi / 2.0, 1.5)).epsilon(1e-10));
  CHECK(n.norm2_sq == doctest::Approx(1.968701).epsilon(1e-6));
  // ‖∇e^{-r²}‖² = 3 (π/2)^{3/2}
  CHECK(n.grad_norm2_sq == doctest::Approx(3.0 * std::pow(kPi / 2.0, 1.5)).epsilon(1e-10));
  CHECK(n.sup_norm == 1.0);
  CHECK(n.dual_mass >= n.norm2_sq);
  CHECK(n.dual_mass <= 6.0 * n.norm2_sq);
}

TEST_CASE("zero profile") {
  const RadialProfile p = sampled(
      10.0, 64, [](double) { return 0.0; }, [](double) { return 0.0; });
  const Norms n = compute_norms(p, DualMap(1.0));
  CHECK(n.norm2_sq == 0.0);
  CHECK(n.grad_norm2_sq == 0.0);
  CHECK(n.dual_mass == 0.0);
  CHECK(n.sup_norm == 0.0);
  const EffectiveNonlinearity e(1.0, DualMap(1.0), Nonlinearity(PurePower{1.0, 4.0}));
  CHECK(energy(p, e).action == 0.0);
}

TEST_CASE("sphere area") {
  CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * kPi * kPi));
}

TEST_CASE("Pohozaev residual detects a scaled profile") {
  const RadialProblem pr = power_problem(1.0, 4.0, 1.0);
  GroundState gs = shoot_ground_state(pr);
  RadialProfile scaled = gs.profile;
  for (auto& v : scaled.values) v *= 1.1;
  for (auto& d : scaled.dvalues) d *= 1.1;
  scaled.tail_amplitude *= 1.1;
  CHECK(pohozaev_residual(gs.profile, pr.eff()) <= 1e-6);
  CHECK(pohozaev_residual(scaled, pr.eff()) > 1e-2);
}

TEST_CASE("tolerance halving and semilinear consistency") {
  const RadialProblem pr = power_problem(1.0, 4.0, 1.0);
  SolverOptions fine;
  fine.rtol = 0.5e-10;
  const GroundState a = shoot_ground_state(pr);
  const GroundState b = shoot_ground_state(pr, fine);
  CHECK(std::fabs(a.center_value - b.center_value) < 1e-8 * a.center_value);
  CHECK(std::fabs(a.dual_mass - b.dual_mass) < 1e-7 * a.dual_mass);

  const GroundState q = shoot_ground_state(power_problem(1e-8, 4.0, 1.0));
  const GroundState s = shoot_ground_state(power_problem(1.0, 4.0, 1.0, true));
  CHECK(q.center_value == doctest::Approx(s.center_value).epsilon(1e-6));
  CHECK(q.norm2_sq == doctest::Approx(s.norm2_sq).epsilon(1e-6));
}

TEST_CASE("deterministic") {
  const RadialProblem pr = power_problem(0.5, 2.5, 2.0);
  const GroundState a = shoot_ground_state(pr);
  const GroundState b = shoot_ground_state(pr);
  CHECK(a.center_value == b.center_value);
  CHECK(a.dual_mass == b.dual_mass);
  CHECK(a.profile.values == b.profile.values);
}

TEST_CASE("domain errors") {
  const EffectiveNonlinearity e(1.0, DualMap(1.0), Nonlinearity(PurePower{1.0, 4.0}));
  CHECK_THROWS_AS(RadialProblem(2, e), DomainError);
  const EffectiveNonlinearity bad(1.0, DualMap(1.0), Nonlinearity(PurePower{1.0, 6.5}));
  CHECK_THROWS_AS(RadialProblem(3, bad), DomainError);
}
