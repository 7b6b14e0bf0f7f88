#pragma once

// The change of unknown v = G(u), G(t) = int_0^t g(s) ds, where
//
//   g(t) = sqrt(1 - kappa t^2)                      for |t| <  t0,
//   g(t) = 1 / (3 sqrt(2 kappa) |t|) + sqrt(1/6)    for |t| >= t0,
//
// with t0 = sqrt(1 / (3 kappa)). g is even, C^1, decreasing on [0, inf) and
// takes values in (sqrt(1/6), 1]. G and G^{-1} are odd.

namespace qnls {

class DualMap {
 public:
  /// Throws DomainError unless kappa is finite and positive.
  explicit DualMap(double kappa);

  double kappa() const { return kappa_; }
  double t0() const { return t0_; }
  double g_at_t0() const { return g_t0_; }
  double G_at_t0() const { return G_t0_; }

  double g(double t) const;
  double g_prime(double t) const;
  double G(double t) const;

  /// Inverse of G. Safeguarded Newton inside the bracket [v, sqrt(6) v].
  double G_inv(double v) const;

  /// 1 / g(G^{-1}(v)).
  double g_ratio(double v) const;

  /// u - G(u) and 1 - g(u) for u >= 0, free of cancellation near 0.
  double excess(double u) const;
  double one_minus_g(double u) const;

  /// One-sided values of g and g' from the inner (sqrt) and outer (1/t) branch
  /// formulas, evaluated at any t >= 0 regardless of which branch is active.
  double g_inner(double t) const;
  double g_outer(double t) const;
  double g_prime_inner(double t) const;
  double g_prime_outer(double t) const;

 private:
  double G_nonneg(double t) const;

  double kappa_;
  double sqrt_kappa_;
  double t0_;
  double g_t0_;
  double G_t0_;
  double outer_coeff_;  // 1 / (3 sqrt(2 kappa))
};

}  // namespace qnls
