#pragma once

#include "qnls/radial_shooting.hpp"

namespace qnls {

/// Positive radial solution of -ΔW + W = mu W^{q-1} in R^N (semilinear,
/// λ = 1). U uses (alpha, mu1), V uses (beta, mu2).
GroundState solve_limit_profile(double q, double mu, int dim, const SolverOptions& options = {});
inline GroundState solve_U(double alpha, double mu1, int dim, const SolverOptions& options = {}) {
  return solve_limit_profile(alpha, mu1, dim, options);
}
inline GroundState solve_V(double beta, double mu2, int dim, const SolverOptions& options = {}) {
  return solve_limit_profile(beta, mu2, dim, options);
}

struct Thresholds {
  double c_star = 0.0;        // min{‖U‖², 6^{-N/2}‖V‖²}
  double c_upper_star = 0.0;  // max of the same pair
};

Thresholds mass_thresholds(double mass_U, double mass_V, int dim);

struct LimitProfiles {
  GroundState U;
  GroundState V;
  double mass_U = 0.0;
  double mass_V = 0.0;
  double c_star = 0.0;
  double c_upper_star = 0.0;
};

/// Solves U and V for the exponents and coefficients of `source`.
LimitProfiles compute_limit_profiles(const Nonlinearity& source, int dim,
                                     const SolverOptions& options = {});

inline Thresholds mass_thresholds(const LimitProfiles& lp, int dim) {
  return mass_thresholds(lp.mass_U, lp.mass_V, dim);
}

struct VStar {
  RadialProfile profile;
  double residual = 0.0;  // sup of the PDE residual relative to 6 V*(0)
  double mass = 0.0;      // ‖V*‖₂²
};

/// V*(x) = 6^{-1/2} V(√6 x), the large-λ limit of the rescaled solutions,
/// together with its residual in -ΔV* + 6V* = mu2 6^{β/2} (V*)^{β-1}.
VStar v_star(const GroundState& V, double beta, double mu2, int dim);

/// Residual of the candidate amplitude * V(√6 x) in the V* equation,
/// evaluated on V's grid with V'' taken from V's own equation.
double v_star_residual(const GroundState& V, double amplitude, double beta, double mu2, int dim);

}  // namespace qnls
