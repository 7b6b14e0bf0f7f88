#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qnls/dual_transform.hpp"

namespace qnls {

/// f(s) = mu s^{p-1}.
struct PurePower {
  double mu = 1.0;
  double p = 4.0;
};

/// f(s) = s^{alpha-1} (1+s)^{beta-alpha}: behaves like s^{alpha-1} at 0 and
/// s^{beta-1} at infinity, with unit coefficients at both ends.
struct TwoRegime {
  double alpha = 2.5;
  double beta = 4.0;
};

/// Source term f with its primitive F and derivative f'.
class Nonlinearity {
 public:
  explicit Nonlinearity(PurePower model);
  explicit Nonlinearity(TwoRegime model);

  /// Parses "kind=power, mu=1, p=4" or "kind=tworegime, alpha=2.5, beta=4".
  static Nonlinearity parse(const std::string& descriptor);
  std::string descriptor() const;

  const std::variant<PurePower, TwoRegime>& model() const { return model_; }
  bool is_power() const { return std::holds_alternative<PurePower>(model_); }

  double alpha_eff() const { return alpha_; }
  double beta_eff() const { return beta_; }
  double mu1_eff() const { return mu1_; }
  double mu2_eff() const { return mu2_; }

  /// Throws DomainError unless 2 < alpha, beta < 2N/(N-2) and N >= 3.
  void validate(int dim) const;

  double f(double s) const;
  double f_prime(double s) const;
  double F(double s) const;

 private:
  double F_tworegime(double s) const;

  std::variant<PurePower, TwoRegime> model_;
  double alpha_, beta_, mu1_, mu2_;
  // TwoRegime only: cumulative integral of f at the nodes 10^{k/4}.
  std::shared_ptr<const std::vector<double>> F_nodes_;
};

/// h_lambda(v) = f(u)/g(u) - lambda u/g(u) + lambda v, u = G^{-1}(v), with its
/// derivative and primitive. In semilinear mode g == 1 and G^{-1} == id, so
/// h_lambda reduces to f.
class EffectiveNonlinearity {
 public:
  EffectiveNonlinearity(double lambda, DualMap dual, Nonlinearity source, bool semilinear = false);

  double lambda() const { return lambda_; }
  const DualMap& dual() const { return dual_; }
  const Nonlinearity& source() const { return source_; }
  bool semilinear() const { return semilinear_; }

  /// Same problem at another lambda.
  EffectiveNonlinearity with_lambda(double lambda) const;

  double to_physical(double v) const { return semilinear_ ? v : dual_.G_inv(v); }

  double h(double v) const;
  double h_prime(double v) const;
  double H(double v) const;

  /// h(v) - lambda v, evaluated without cancellation as (f(u) - lambda u)/g(u).
  /// Negative arguments are clamped: h(v) = h(0) = 0 for v < 0.
  double reaction(double v) const;

  /// L(s) = H(s) - lambda s^2 / 2.
  double L(double s) const { return H(s) - 0.5 * lambda_ * s * s; }

 private:
  double lambda_;
  DualMap dual_;
  Nonlinearity source_;
  bool semilinear_;
};

enum class ExponentClass { Subcritical, MassCritical, Supercritical };

struct Rational {
  long num;
  long den;
};

/// Compares against 2 + 4/N in exact integer arithmetic.
ExponentClass classify_exponent(Rational p, int dim);
/// Floating-point exponents within 1e-6 (relative) of 2 + 4/N are critical.
ExponentClass classify_exponent(double p, int dim);

/// Parses "10/3" as a rational or "3.5" as a decimal.
double parse_exponent(const std::string& text);

const char* to_string(ExponentClass c);

}  // namespace qnls
