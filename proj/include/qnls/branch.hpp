#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qnls/limit_profiles.hpp"
#include "qnls/radial_shooting.hpp"

namespace qnls {

/// Everything that defines the branch except λ.
struct ProblemSpec {
  int dim = 3;
  double kappa = 1.0;
  Nonlinearity source = Nonlinearity(PurePower{});
  bool semilinear = false;

  RadialProblem at(double lambda) const {
    return RadialProblem(dim, EffectiveNonlinearity(lambda, DualMap(kappa), source, semilinear));
  }
};

enum class CaseTag {
  SubcriticalBoth,
  ExactlyCritical,
  AtMostCritical1,
  AtMostCritical2,
  Mixed1,
  Mixed2,
  AtLeastCritical1,
  AtLeastCritical2,
  SupercriticalBoth,
};
const char* to_string(CaseTag t);

/// Limit of ρ(λ) at one end of the branch.
enum class Endpoint { Zero, MassU, ScaledMassV, Infinity };
const char* to_string(Endpoint e);

struct CasePrediction {
  CaseTag tag;
  Endpoint at_zero;      // λ → 0⁺, decided by α
  Endpoint at_infinity;  // λ → ∞, decided by β
};

/// Throws DomainError for exponents outside (2, 2N/(N-2)).
CasePrediction classify_case(double alpha, double beta, int dim);

struct BranchPoint {
  double lambda = 0.0;
  double rho = 0.0;  // ‖G⁻¹(v_λ)‖₂²
  double center_value = 0.0;
  double sup_norm = 0.0;
  double grad_norm2_sq = 0.0;
  double energy = 0.0;
  double pohozaev_residual = 0.0;
  double level_residual = 0.0;  // not written to curve files
  std::shared_ptr<const GroundState> state;  // optional stored solution

  static BranchPoint from(const GroundState& gs, bool keep_state);
};

struct MassCurve {
  ProblemSpec problem;
  CaseTag regime = CaseTag::SupercriticalBoth;
  std::vector<BranchPoint> points;  // strictly increasing λ
};

struct SweepOptions {
  SolverOptions solver;
  double max_jump = 0.5;  // relative jump in center value or ρ that triggers refinement
  int max_refine_depth = 8;
  bool keep_states = true;
};

/// Geometric sweep of λ in [lambda_min, lambda_max] with warm-started
/// shooting and adaptive refinement between points that jump.
MassCurve sweep(const ProblemSpec& problem, double lambda_min, double lambda_max, int n_points,
                const SweepOptions& options = {});

/// Least-squares slope of log ρ against log λ over points with λ in [lo, hi].
double loglog_slope(const MassCurve& curve, double lambda_lo, double lambda_hi);

struct NormalizedSolution {
  double lambda = 0.0;
  GroundState state;
  std::vector<double> u;  // G⁻¹(v_λ) on the profile grid
  int iterations = 0;
};

struct NormalizedOptions {
  SolverOptions solver;
  double rtol = 1e-8;  // |ρ - c| <= rtol * c
  int max_iterations = 100;
};

/// Every λ in the swept range with ρ(λ) = c, each refined by re-solving the
/// ground state. Empty when c is not attained on the curve.
std::vector<NormalizedSolution> solve_normalized(const MassCurve& curve, double c,
                                                 const NormalizedOptions& options = {});

struct AsymptoticRow {
  double lambda = 0.0;
  double rho = 0.0;
  double sup_norm = 0.0;
  double sup_distance = 0.0;      // sup |w_λ - target|
  double sup_distance_rel = 0.0;  // relative to ‖target‖_∞
  double l2_distance = 0.0;       // ‖w_λ - target‖₂
  double supnorm_ratio = 0.0;     // ‖v_λ‖_∞^{q-2} / λ
  double scaled_mass = 0.0;       // ρ(λ) λ^{N/2 - 2/(q-2)}
};

struct AsymptoticReport {
  std::vector<AsymptoticRow> rows;
  double target_sup = 0.0;
  double target_scaled_mass = 0.0;  // ‖U‖² or 6‖V*‖²
  double window_eps = 1e-2;
  bool distances_decreasing = false;
  bool ratio_in_window = false;
  bool supnorm_monotone = false;  // decreasing for small λ, increasing for large λ
};

/// Rescales v_λ to w_λ(r) = λ^{1/(2-α)} v_λ(r/√λ) and compares with U along a
/// decreasing list of λ.
AsymptoticReport check_small_lambda_asymptotics(const ProblemSpec& problem,
                                                const std::vector<double>& lambdas,
                                                const GroundState& U,
                                                const SolverOptions& options = {});

/// Same with exponent β against V* along an increasing list of λ.
AsymptoticReport check_large_lambda_asymptotics(const ProblemSpec& problem,
                                                const std::vector<double>& lambdas,
                                                const GroundState& V,
                                                const SolverOptions& options = {});

struct SupnormRow {
  double kappa = 0.0;
  double max_sup_norm = 0.0;           // max over λ of ‖v_λ‖_∞
  double max_physical_sup_norm = 0.0;  // max over λ of ‖G⁻¹(v_λ)‖_∞
  bool probe = false;                  // κ chosen below k1 after C1 was measured
  bool checked = false;                // κ < k1
  bool passes = false;                 // ‖u‖_∞ <= √6‖v‖_∞ < √(1/(3κ)) for all λ
};

struct SupnormReport {
  double C1 = 0.0;
  double k1 = 0.0;
  double variation = 0.0;  // (max - min)/max of the per-κ maxima on the measured grid
  std::vector<SupnormRow> rows;
  bool all_pass = false;
};

/// Measures C1 over the κ × λ grid, sets k1 = 1/(18 C1²), then checks the
/// strict bound for grid κ below k1 and for the probes k1 * probe_fractions.
SupnormReport check_supnorm_threshold(int dim, PurePower power, const std::vector<double>& kappas,
                                      const std::vector<double>& lambdas,
                                      const std::vector<double>& probe_fractions,
                                      const SolverOptions& options = {});

/// k1 = 1/(18 C1²).
double kappa_threshold(double C1);

std::vector<double> logspace(double lo_exp, double hi_exp, int n);

}  // namespace qnls
