#include "qnls/dual_transform.hpp"

#include <cmath>
#include <limits>

#include "qnls/errors.hpp"

namespace qnls {

namespace {

const double kInvSqrt6 = 1.0 / std::sqrt(6.0);
const double kSqrt6 = std::sqrt(6.0);

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

}  // namespace

DualMap::DualMap(double kappa) : kappa_(kappa) {
  if (!std::isfinite(kappa) || kappa <= 0.0)
    throw DomainError("DualMap: kappa must be finite and positive");
  sqrt_kappa_ = std::sqrt(kappa_);
  t0_ = std::sqrt(1.0 / (3.0 * kappa_));
  g_t0_ = std::sqrt(2.0 / 3.0);
  outer_coeff_ = 1.0 / (3.0 * std::sqrt(2.0 * kappa_));
  // Inner-branch closed form at t0.
  G_t0_ = 0.5 * (t0_ * std::sqrt(1.0 - kappa_ * t0_ * t0_) +
                 std::asin(sqrt_kappa_ * t0_) / sqrt_kappa_);
}

double DualMap::g_inner(double t) const { return std::sqrt(1.0 - kappa_ * t * t); }

double DualMap::g_outer(double t) const { return outer_coeff_ / std::fabs(t) + kInvSqrt6; }

double DualMap::g_prime_inner(double t) const {
  return -kappa_ * t / std::sqrt(1.0 - kappa_ * t * t);
}

double DualMap::g_prime_outer(double t) const { return -outer_coeff_ / (t * t); }

double DualMap::g(double t) const {
  require_finite(t, "g");
  const double a = std::fabs(t);
  return a < t0_ ? g_inner(a) : g_outer(a);
}

double DualMap::g_prime(double t) const {
  require_finite(t, "g_prime");
  const double a = std::fabs(t);
  const double d = a < t0_ ? g_prime_inner(a) : g_prime_outer(a);
  return t < 0.0 ? -d : d;
}

double DualMap::G_nonneg(double t) const {
  if (t < t0_) {
    return 0.5 * (t * std::sqrt(1.0 - kappa_ * t * t) + std::asin(sqrt_kappa_ * t) / sqrt_kappa_);
  }
  return G_t0_ + outer_coeff_ * std::log(t / t0_) + kInvSqrt6 * (t - t0_);
}

double DualMap::G(double t) const {
  require_finite(t, "G");
  return t < 0.0 ? -G_nonneg(-t) : G_nonneg(t);
}

double DualMap::G_inv(double v) const {
  require_finite(v, "G_inv");
  if (v == 0.0) return 0.0;
  if (v < 0.0) return -G_inv(-v);

  double lo = v;
  double hi = kSqrt6 * v;
  // G is concave on [0, inf), so Newton from the left endpoint increases
  // monotonically towards the root; the bracket only guards rounding.
  double u = v;
  for (int it = 0; it < 100; ++it) {
    const double r = G_nonneg(u) - v;
    if (r == 0.0) return u;
    if (r < 0.0)
      lo = u;
    else
      hi = u;
    double next = u - r / g(u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - u) <= 2.0 * std::numeric_limits<double>::epsilon() * u) return next;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) return next;
    u = next;
  }
  throw NumericError("G_inv: no convergence", 0.0, v, u);
}

double DualMap::g_ratio(double v) const { return 1.0 / g(G_inv(v)); }

}  // namespace qnls

namespace qnls {

double DualMap::excess(double u) const {
  const double x = kappa_ * u * u;
  if (x < 0.1 && u < t0_) {
    // u - G(u) = -sum_{k>=1} binom(1/2, k) (-x)^k u / (2k + 1)
    double binom = 1.0;
    double power = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
      binom *= (0.5 - (k - 1)) / k;
      power *= -x;
      const double term = -binom * power / (2 * k + 1);
      sum += term;
      if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
    }
    return sum * u;
  }
  return u - G_nonneg(u);
}

double DualMap::one_minus_g(double u) const {
  if (u < t0_) {
    const double x = kappa_ * u * u;
    return x / (1.0 + std::sqrt(1.0 - x));
  }
  return 1.0 - g_outer(u);
}

}  // namespace qnls
