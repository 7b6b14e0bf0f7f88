#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "qnls/branch.hpp"
#include "qnls/errors.hpp"
#include "qnls/nonlinearity.hpp"

using namespace qnls;

namespace {

double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-12);
}

std::vector<Nonlinearity> sources() {
  return {Nonlinearity(PurePower{1.0, 2.5}), Nonlinearity(PurePower{2.0, 10.0 / 3.0}),
          Nonlinearity(PurePower{1.0, 4.0}), Nonlinearity(TwoRegime{2.5, 4.0}),
          Nonlinearity(TwoRegime{4.0, 2.5})};
}

}  // namespace

TEST_CASE("f values and limits") {
  const Nonlinearity pw(PurePower{1.0, 4.0});
  CHECK(pw.f(0.0) == 0.0);
  CHECK(pw.f(2.0) == doctest::Approx(8.0));
  const Nonlinearity tr(TwoRegime{2.5, 4.0});
  CHECK(tr.f(0.0) == 0.0);
  CHECK(tr.f(1e-6) / std::pow(1e-6, 1.5) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(tr.f(1e6) / std::pow(1e6, 3.0) == doctest::Approx(1.0).epsilon(1e-5));
  for (const auto& s : sources())
    for (double t : logspace(-6, 6, 30)) CHECK(s.f(t) > 0.0);
}

TEST_CASE("f' limits at 0 and infinity") {
  for (const auto& s : sources()) {
    const double a = s.alpha_eff(), b = s.beta_eff();
    CHECK(s.f_prime(1e-6) / std::pow(1e-6, a - 2.0) == doctest::Approx(s.mu1_eff() * (a - 1.0)).epsilon(0.01));
    CHECK(s.f_prime(1e6) / std::pow(1e6, b - 2.0) == doctest::Approx(s.mu2_eff() * (b - 1.0)).epsilon(0.01));
  }
}

TEST_CASE("F closed form and quadrature cache") {
  CHECK(Nonlinearity(PurePower{1.0, 4.0}).F(0.0) == 0.0);
  CHECK(Nonlinearity(PurePower{2.0, 4.0}).F(1.0) == doctest::Approx(0.5));
  for (const auto& s : {Nonlinearity(TwoRegime{2.5, 4.0}), Nonlinearity(TwoRegime{4.0, 2.5})}) {
    CHECK(s.F(0.0) == 0.0);
    for (double x : logspace(-3, 3, 50)) {
      const double d = 1e-5 * x;
      const double fd = (s.F(x + d) - s.F(x - d)) / (2.0 * d);
      CHECK(fd == doctest::Approx(s.f(x)).epsilon(1e-8));
      const double q = integrate([&](double t) { return s.f(t); }, 0.0, x);
      CHECK(std::fabs(s.F(x) - q) <= 1e-12 * std::max(1.0, s.f(x) * x));
    }
  }
}

TEST_CASE("h at small and large arguments") {
  const DualMap map(1.0);
  for (double lambda : {0.1, 1.0, 10.0}) {
    const EffectiveNonlinearity e(lambda, map, Nonlinearity(PurePower{1.0, 4.0}));
    CHECK(e.h(0.0) == 0.0);
    CHECK(e.h(1e-8) / 1e-8 < 1e-12);
    CHECK(e.h(1e8) / std::pow(1e8, 3.0) == doctest::Approx(36.0).epsilon(1e-6));
  }
  for (double kappa : {0.1, 10.0}) {
    const EffectiveNonlinearity e(1.0, DualMap(kappa), Nonlinearity(PurePower{1.0, 4.0}));
    CHECK(e.h(1e9) / std::pow(1e9, 3.0) == doctest::Approx(36.0).epsilon(1e-5));
  }
}

TEST_CASE("h_prime against central differences") {
  const DualMap map(1.0);
  for (const auto& s : sources()) {
    for (double lambda : {0.1, 1.0, 10.0}) {
      const EffectiveNonlinearity e(lambda, map, s);
      for (double v : logspace(-3, 3, 60)) {
        if (std::fabs(v / map.G_at_t0() - 1.0) < 1e-3) continue;
        const double d = 1e-5 * v;
        const double fd = (e.h(v + d) - e.h(v - d)) / (2.0 * d);
        CHECK(std::fabs(e.h_prime(v) - fd) / std::max(1.0, std::fabs(e.h_prime(v))) <= 1e-6);
      }
      CHECK(e.h_prime(0.0) == 0.0);
    }
  }
}

TEST_CASE("h(s) <= s h'(s) for small s") {
  const DualMap map(1.0);
  for (const auto& s : sources()) {
    const EffectiveNonlinearity e(1.0, map, s);
    for (double v : logspace(-6, -2, 20)) CHECK(e.h(v) <= v * e.h_prime(v));
  }
}

TEST_CASE("H closed form against quadrature of h") {
  const DualMap map(1.0);
  const double vt = map.G_at_t0();
  for (const auto& s : sources()) {
    for (double lambda : {0.1, 1.0, 10.0}) {
      const EffectiveNonlinearity e(lambda, map, s);
      CHECK(e.H(0.0) == 0.0);
      const auto h = [&](double t) { return e.h(t); };
      for (double v : logspace(-3, 3, 40)) {
        const double q = v <= vt ? integrate(h, 0.0, v) : integrate(h, 0.0, vt) + integrate(h, vt, v);
        CHECK(std::fabs(e.H(v) - q) <= 1e-10 * std::fabs(q));
      }
    }
  }
}

TEST_CASE("H tends to F as kappa -> 0") {
  const Nonlinearity s(PurePower{1.0, 4.0});
  const EffectiveNonlinearity e(1.0, DualMap(1e-10), s);
  for (double v : {0.1, 0.5, 1.0}) CHECK(e.H(v) == doctest::Approx(s.F(v)).epsilon(1e-8));
}

TEST_CASE("semilinear mode uses f directly") {
  const Nonlinearity s(TwoRegime{2.5, 4.0});
  const EffectiveNonlinearity e(2.0, DualMap(1.0), s, true);
  for (double v : {1e-3, 0.7, 20.0}) {
    CHECK(e.h(v) == doctest::Approx(s.f(v)));
    CHECK(e.H(v) == doctest::Approx(s.F(v)));
    CHECK(e.reaction(v) == doctest::Approx(s.f(v) - 2.0 * v));
  }
}

TEST_CASE("growth and positivity properties") {
  const DualMap map(1.0);
  for (const auto& s : sources()) {
    for (double lambda : {0.1, 1.0, 10.0}) {
      const EffectiveNonlinearity e(lambda, map, s);
      const double bound = 2.0 * s.mu2_eff() * std::pow(6.0, 0.5 * s.beta_eff());
      for (double v : logspace(3, 6, 40)) CHECK(e.h(v) / std::pow(v, s.beta_eff() - 1.0) <= bound);
      bool found = false;
      for (double T : logspace(0, 4, 100)) found = found || e.H(T) > 0.5 * lambda * T * T;
      CHECK(found);
      if (lambda < 1.0)
        for (double v : logspace(-8, 8, 200)) CHECK(e.h(v) >= 0.0);
    }
  }
}

TEST_CASE("h changes sign once lambda kappa exceeds 3 mu / 2") {
  // p = 4: u/g(u) - G(u) = 2 kappa u^3 / 3 + O(u^5), so h(s) = (mu - 2 lambda kappa / 3) s^3 + O(s^5)
  const Nonlinearity s(PurePower{1.0, 4.0});
  for (double kappa : {0.5, 1.0}) {
    for (double lambda : {0.3, 1.0, 2.0, 10.0}) {
      const EffectiveNonlinearity e(lambda, DualMap(kappa), s);
      const double c3 = 1.0 - 2.0 * lambda * kappa / 3.0;
      CHECK(e.h(1e-3) / 1e-9 == doctest::Approx(c3).epsilon(1e-5));
      CHECK((e.h(1e-3) < 0.0) == (lambda * kappa > 1.5));
    }
  }
}

TEST_CASE("exponent classification") {
  CHECK(classify_exponent(Rational{10, 3}, 3) == ExponentClass::MassCritical);
  CHECK(classify_exponent(Rational{5, 2}, 3) == ExponentClass::Subcritical);
  CHECK(classify_exponent(Rational{4, 1}, 3) == ExponentClass::Supercritical);
  CHECK(classify_exponent(10.0 / 3.0, 3) == ExponentClass::MassCritical);
  CHECK(classify_exponent(3.3333333, 3) == ExponentClass::MassCritical);
  CHECK(classify_exponent(Rational{3, 1}, 4) == ExponentClass::MassCritical);
  CHECK_THROWS_AS(classify_exponent(Rational{6, 1}, 3), DomainError);
  CHECK_THROWS_AS(classify_exponent(2.0, 3), DomainError);
  CHECK(parse_exponent("10/3") == doctest::Approx(10.0 / 3.0).epsilon(1e-16));
  CHECK_THROWS_AS(parse_exponent("ten"), DomainError);
}

TEST_CASE("descriptor round trip and validation") {
  for (const auto& s : sources()) {
    const Nonlinearity back = Nonlinearity::parse(s.descriptor());
    CHECK(back.descriptor() == s.descriptor());
    CHECK(back.alpha_eff() == s.alpha_eff());
    CHECK(back.beta_eff() == s.beta_eff());
  }
  CHECK(Nonlinearity::parse("kind=power, mu=1, p=10/3").alpha_eff() == doctest::Approx(10.0 / 3.0));
  CHECK_THROWS_AS(Nonlinearity::parse("kind=cubic"), DomainError);
  CHECK_THROWS_AS(Nonlinearity(PurePower{1.0, 7.0}).validate(3), DomainError);
  CHECK_THROWS_AS(Nonlinearity(PurePower{-1.0, 4.0}), DomainError);
}
