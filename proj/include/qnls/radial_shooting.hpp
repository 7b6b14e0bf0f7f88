#pragma once

#include <optional>
#include <vector>

#include "qnls/dopri5.hpp"
#include "qnls/nonlinearity.hpp"

namespace qnls {

/// Radial form of -Δv + λv = h_λ(v) in R^N:
///   v'' + (N-1)/r v' + h_λ(v) - λ v = 0,  v'(0) = 0.
class RadialProblem {
 public:
  /// Throws DomainError for N < 3 or exponents outside (2, 2N/(N-2)).
  RadialProblem(int dim, EffectiveNonlinearity eff);

  int dim() const { return dim_; }
  const EffectiveNonlinearity& eff() const { return eff_; }
  double lambda() const { return eff_.lambda(); }
  bool semilinear() const { return eff_.semilinear(); }
  RadialProblem with_lambda(double lambda) const { return RadialProblem(dim_, eff_.with_lambda(lambda)); }

  /// Default truncation radius max(30, 20/sqrt(λ)).
  double default_r_max() const;

 private:
  int dim_;
  EffectiveNonlinearity eff_;
};

/// Sampled radial function. Beyond the last grid radius the profile continues
/// as tail_amplitude * r^{-(N-1)/2} * exp(-tail_rate * r).
struct RadialProfile {
  int dim = 3;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> dvalues;
  double tail_rate = 0.0;
  double tail_amplitude = 0.0;
  double r_max = 0.0;

  double r_cut() const { return grid.empty() ? 0.0 : grid.back(); }
  /// Cubic Hermite interpolation on the grid, matched tail beyond it.
  double value_at(double r) const;
  double derivative_at(double r) const;
  double tail_value(double r) const;
  double tail_derivative(double r) const;
};

enum class ShotClass { Crossed, TurnedUp, Decayed };
const char* to_string(ShotClass c);

struct Shot {
  ShotClass cls;
  double r;   // radius of the event (or r_max)
  double v;
  double dv;
  long steps = 0;
};

struct SolverOptions {
  double rtol = 1e-10;            // integrator relative tolerance
  double bisection_rtol = 1e-12;  // bisection continues to machine precision below this
  int max_bisections = 400;
  int grid_intervals = 4096;      // Simpson grid on [0, r_cut]
  double pohozaev_tol = 1e-6;     // residual gate
  double r_max = 0.0;             // 0: RadialProblem::default_r_max()
  std::optional<double> seed;     // warm-start center value
};

/// Integrates outward from v(0) = a; stops at the first zero of v (Crossed) or
/// of v' with v > 0 (TurnedUp).
Shot integrate_from_center(const RadialProblem& problem, double a, double r_max,
                           const SolverOptions& options = {}, DenseSolution<2>* dense = nullptr);

/// First positive root of L(s) = H_λ(s) - λ s^2/2. Throws NoBracketError if none.
double first_energy_root(const EffectiveNonlinearity& eff);

struct Norms {
  double norm2_sq = 0.0;       // ‖v‖₂²
  double grad_norm2_sq = 0.0;  // ‖∇v‖₂²
  double dual_mass = 0.0;      // ‖G⁻¹(v)‖₂²
  double sup_norm = 0.0;       // ‖v‖_∞
};

/// |S^{N-1}| = 2 π^{N/2} / Γ(N/2).
double sphere_area(int dim);

Norms compute_norms(const RadialProfile& profile, const DualMap& map);
/// Uses the problem's physical map (identity in semilinear mode).
Norms compute_norms(const RadialProfile& profile, const EffectiveNonlinearity& eff);

/// S_{N-1} ∫ H_λ(v(r)) r^{N-1} dr.
double integral_H(const RadialProfile& profile, const EffectiveNonlinearity& eff);

/// Relative residual of (N-2)/2 ‖∇v‖² + (N/2) λ ‖v‖² = N ∫ H_λ(v).
double pohozaev_residual(const RadialProfile& profile, const EffectiveNonlinearity& eff);

struct Energies {
  double action = 0.0;       // I_λ(v) = ½‖∇v‖² + ½λ‖v‖² - ∫H_λ(v)
  double dual_energy = 0.0;  // Ī(v) = ½‖∇v‖² - ∫F(G⁻¹(v))
};
Energies energy(const RadialProfile& profile, const EffectiveNonlinearity& eff);

struct GroundState {
  double lambda = 0.0;
  double center_value = 0.0;
  RadialProfile profile;
  double norm2_sq = 0.0;
  double grad_norm2_sq = 0.0;
  double dual_mass = 0.0;
  double sup_norm = 0.0;
  double energy = 0.0;
  double dual_energy = 0.0;
  double pohozaev_residual = 0.0;
  double level_residual = 0.0;  // relative gap between I_λ and ‖∇v‖²/N
  // Diagnostics.
  double a_low = 0.0;
  double a_high = 0.0;
  int shots = 0;
  bool multiple_separatrix_hint = false;
};

/// Bisection shooting for the positive radial ground state. Throws
/// NoBracketError, MaxIterationsError, or NumericError when the Pohozaev
/// gate (options.pohozaev_tol) fails.
GroundState shoot_ground_state(const RadialProblem& problem, const SolverOptions& options = {});

/// u = G⁻¹(v) sampled on the profile grid.
std::vector<double> physical_values(const RadialProfile& profile, const EffectiveNonlinearity& eff);

}  // namespace qnls
