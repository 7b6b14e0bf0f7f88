#include <cmath>
#include <vector>

#include "doctest.h"
#include "qnls/branch.hpp"
#include "qnls/errors.hpp"

using namespace qnls;

namespace {

ProblemSpec power(double p, bool semilinear = false, double kappa = 1.0) {
  return ProblemSpec{3, kappa, Nonlinearity(PurePower{1.0, p}), semilinear};
}

SweepOptions light() {
  SweepOptions o;
  o.keep_states = false;
  return o;
}

}  // namespace

TEST_CASE("case classification") {
  const auto crit = classify_case(10.0 / 3.0, 10.0 / 3.0, 3);
  CHECK(crit.tag == CaseTag::ExactlyCritical);
  CHECK(crit.at_zero == Endpoint::MassU);
  CHECK(crit.at_infinity == Endpoint::ScaledMassV);
  const auto mixed = classify_case(2.5, 4.0, 3);
  CHECK(mixed.tag == CaseTag::Mixed1);
  CHECK(mixed.at_zero == Endpoint::Zero);
  CHECK(mixed.at_infinity == Endpoint::Zero);
  const auto sup = classify_case(4.0, 4.0, 3);
  CHECK(sup.tag == CaseTag::SupercriticalBoth);
  CHECK(sup.at_zero == Endpoint::Infinity);
  CHECK(sup.at_infinity == Endpoint::Zero);
  CHECK(classify_case(2.5, 2.5, 3).tag == CaseTag::SubcriticalBoth);
  CHECK(classify_case(2.5, 10.0 / 3.0, 3).tag == CaseTag::AtMostCritical1);
  CHECK(classify_case(10.0 / 3.0, 2.5, 3).tag == CaseTag::AtMostCritical2);
  CHECK(classify_case(4.0, 2.5, 3).tag == CaseTag::Mixed2);
  CHECK(classify_case(10.0 / 3.0, 4.0, 3).tag == CaseTag::AtLeastCritical1);
  CHECK(classify_case(4.0, 10.0 / 3.0, 3).tag == CaseTag::AtLeastCritical2);
  CHECK(std::string(to_string(CaseTag::Mixed1)) == "Mixed-1");
  CHECK_THROWS_AS(classify_case(2.0, 4.0, 3), DomainError);
  CHECK_THROWS_AS(classify_case(2.5, 6.0, 3), DomainError);
}

TEST_CASE("semilinear sweep reproduces the scaling law") {
  for (double p : {2.5, 10.0 / 3.0, 4.0}) {
    const double mU = solve_U(p, 1.0, 3).norm2_sq;
    const MassCurve c = sweep(power(p, true), 1e-2, 1e2, 21, light());
    REQUIRE(c.points.size() >= 21);
    for (const auto& b : c.points) {
      const double exact = std::pow(b.lambda, 2.0 / (p - 2.0) - 1.5) * mU;
      CHECK(b.rho == doctest::Approx(exact).epsilon(1e-6));
      CHECK(b.pohozaev_residual <= 1e-6);
    }
  }
}

TEST_CASE("sweep structure") {
  const MassCurve c = sweep(power(2.5), 1e-2, 1e2, 9, light());
  CHECK(c.regime == CaseTag::SubcriticalBoth);
  CHECK(c.points.front().lambda == doctest::Approx(1e-2));
  CHECK(c.points.back().lambda == doctest::Approx(1e2));
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    CHECK(c.points[i].lambda > c.points[i - 1].lambda);
    const double jump = std::fabs(c.points[i].rho - c.points[i - 1].rho) / std::min(c.points[i].rho, c.points[i - 1].rho);
    CHECK(jump < 0.5);
  }
  for (const auto& b : c.points) CHECK(b.rho > 0.0);
  CHECK_THROWS_AS(sweep(power(2.5), 1.0, 1.0, 5), DomainError);
  CHECK_THROWS_AS(sweep(power(2.5), 1.0, 2.0, 1), DomainError);
}

TEST_CASE("log-log slope of a synthetic power law") {
  MassCurve c;
  for (double l : logspace(-2, 2, 9)) {
    BranchPoint b;
    b.lambda = l;
    b.rho = 3.0 * std::pow(l, -0.75);
    c.points.push_back(b);
  }
  CHECK(loglog_slope(c, 1e-2, 1e2) == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(loglog_slope(c, 1.0, 1e2) == doctest::Approx(-0.75).epsilon(1e-12));
}

TEST_CASE("normalized solutions, subcritical power") {
  const MassCurve c = sweep(power(2.5), 1e-3, 1e3, 31, light());
  for (double mass : {0.1, 1.0, 10.0}) {
    const auto roots = solve_normalized(c, mass);
    REQUIRE(roots.size() == 1);
    CHECK(std::fabs(roots[0].state.dual_mass - mass) <= 1e-8 * mass);
    CHECK(roots[0].state.pohozaev_residual <= 1e-6);
    CHECK(roots[0].u.size() == roots[0].state.profile.grid.size());
    CHECK(roots[0].u.front() == doctest::Approx(DualMap(1.0).G_inv(roots[0].state.center_value)));
  }
}

TEST_CASE("mass equal to a sampled value returns that lambda") {
  MassCurve c = sweep(power(4.0), 0.5, 2.0, 3, light());
  const BranchPoint mid = c.points[1];
  const auto roots = solve_normalized(c, mid.rho);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].lambda == mid.lambda);
}

TEST_CASE("mixed exponents give two roots below the maximum") {
  const ProblemSpec ps{3, 1.0, Nonlinearity(TwoRegime{2.5, 4.0}), false};
  const MassCurve c = sweep(ps, 1e-3, 1e3, 31, light());
  CHECK(c.regime == CaseTag::Mixed1);
  std::size_t imax = 0;
  for (std::size_t i = 0; i < c.points.size(); ++i)
    if (c.points[i].rho > c.points[imax].rho) imax = i;
  CHECK(imax > 0);
  CHECK(imax + 1 < c.points.size());
  const double c1 = c.points[imax].rho;
  const auto two = solve_normalized(c, 0.8 * c1);
  CHECK(two.size() >= 2);
  for (const auto& r : two) CHECK(std::fabs(r.state.dual_mass - 0.8 * c1) <= 1e-8 * 0.8 * c1);
  CHECK(solve_normalized(c, 2.0 * c1).empty());
}

TEST_CASE("exact kappa scaling for the cubic power") {
  // v_{λ,κ}(x) = κ^{-1/2} v_{λκ,1}(x/√κ)
  for (double kappa : {0.1, 4.0}) {
    const double lambda = 0.7;
    const GroundState a = shoot_ground_state(power(4.0, false, kappa).at(lambda));
    const GroundState b = shoot_ground_state(power(4.0, false, 1.0).at(lambda * kappa));
    CHECK(a.center_value == doctest::Approx(b.center_value / std::sqrt(kappa)).epsilon(1e-8));
    CHECK(a.dual_mass == doctest::Approx(b.dual_mass * std::pow(kappa, 0.5)).epsilon(1e-7));
  }
}

TEST_CASE("tolerance halving moves rho by less than 1e-7") {
  const ProblemSpec ps = power(10.0 / 3.0);
  SolverOptions fine;
  fine.rtol = 0.5e-10;
  const GroundState a = shoot_ground_state(ps.at(0.3));
  const GroundState b = shoot_ground_state(ps.at(0.3), fine);
  CHECK(std::fabs(a.dual_mass - b.dual_mass) < 1e-7 * a.dual_mass);
}

TEST_CASE("semilinear rescaled profiles coincide with U") {
  const GroundState U = solve_U(4.0, 1.0, 3);
  const auto small = check_small_lambda_asymptotics(power(4.0, true), {1e-1, 1e-2, 1e-3}, U);
  for (const auto& row : small.rows) {
    CHECK(row.sup_distance <= 1e-8);
    CHECK(row.scaled_mass == doctest::Approx(U.norm2_sq).epsilon(1e-8));
  }
  CHECK(small.ratio_in_window);
}

TEST_CASE("kappa threshold and sup-norm table") {
  CHECK(kappa_threshold(1.0) == doctest::Approx(1.0 / 18.0).epsilon(1e-15));
  const SupnormReport rep =
      check_supnorm_threshold(3, PurePower{1.0, 4.0}, {0.1, 1.0}, logspace(-1, 1, 3), {0.5});
  CHECK(rep.C1 > 0.0);
  CHECK(rep.k1 == doctest::Approx(1.0 / (18.0 * rep.C1 * rep.C1)));
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[2].probe);
  CHECK(rep.rows[2].checked);
  for (const auto& row : rep.rows) CHECK(row.max_physical_sup_norm <= std::sqrt(6.0) * row.max_sup_norm * (1 + 1e-14));
}

TEST_CASE("normalized input checks") {
  MassCurve empty;
  CHECK_THROWS_AS(solve_normalized(empty, 1.0), DomainError);
  const MassCurve c = sweep(power(4.0), 0.5, 2.0, 3, light());
  CHECK_THROWS_AS(solve_normalized(c, -1.0), DomainError);
}
