#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnls/branch.hpp"

namespace qnls {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNoBracket = 3,
  kExitNumeric = 4,
};

/// Raw key/value pairs from a config file or from command-line flags.
using ConfigMap = std::map<std::string, std::string>;

struct RunConfig {
  int dim = 3;
  double kappa = 1.0;
  std::string nonlinearity = "power";
  double mu = 1.0;
  double p = 4.0;
  std::optional<double> alpha;  // tworegime defaults: 2.5
  std::optional<double> beta;   // tworegime defaults: 4
  bool semilinear = false;

  double lambda = 1.0;
  double lambda_min = 1e-3;
  double lambda_max = 1e3;
  int lambda_points = 61;

  std::optional<double> mass;
  double c1 = 0.0;  // figure-k; 0 means measure it
  std::string suite = "all";

  double tol_rtol = 1e-10;
  double tol_bisection = 1e-12;
  double tol_pohozaev = 1e-6;
  double tol_mass = 1e-8;
  double tol_window = 0.05;
  int grid_intervals = 4096;

  std::string out = ".";
  std::string tag = "run";

  /// Throws ConfigError when a parameter is outside its domain.
  void validate() const;

  Nonlinearity source() const;
  /// (alpha, beta) for the limit profiles: explicit values when given,
  /// otherwise the exponents of source().
  std::pair<double, double> limit_exponents() const;
  ProblemSpec problem() const;
  SolverOptions solver() const;
  SweepOptions sweep_options() const;
  NormalizedOptions normalized_options() const;
};

/// Keys accepted in config files and as flags (without the leading dashes).
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; '#' starts a comment. Unknown or repeated keys
/// throw ConfigError.
ConfigMap parse_config_text(const std::string& text);
ConfigMap read_config_file(const std::string& path);

/// Applies the entries of `map` on top of `config`.
void apply_config(const ConfigMap& map, RunConfig& config);

/// Defaults, then file values, then flags.
RunConfig resolve_config(const ConfigMap& file, const ConfigMap& flags);

std::string format_double(double x);

/// Ordered key=value report.
class Summary {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long value);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::optional<std::string> get(const std::string& key) const;
  void write(std::ostream& os) const;
  static Summary read(std::istream& is);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void write_profile(std::ostream& os, const GroundState& gs, const EffectiveNonlinearity& eff);

struct ProfileTable {
  std::vector<double> r, v, dv, u;
};
ProfileTable read_profile(std::istream& is);

void write_curve(std::ostream& os, const MassCurve& curve);
/// Inverse of write_curve; stored states are not restored.
MassCurve read_curve(std::istream& is);

CaseTag parse_case_tag(const std::string& text);

struct ReferenceLine {
  std::string label;
  double value = 0.0;
};

struct PlotMarker {
  std::string label;
  double x = 0.0;
  double y = 0.0;
};

/// Gnuplot script for ρ against λ on log axes.
std::string branch_plot_script(const std::string& curve_file, const std::vector<ReferenceLine>& refs,
                               const std::optional<PlotMarker>& marker, const std::string& title);

struct KappaBoundPlot {
  double k1 = 0.0;
  double crossing = 0.0;  // root of sqrt(1/(3k)) = sqrt(6) C1, found numerically
  std::string data_path;
  std::string script_path;
};

/// Writes k, sqrt(1/(3k)), sqrt(6) C1 for k in (0, 2 k1] and a script marking k1.
KappaBoundPlot emit_kappa_bound_plot(double C1, const std::string& dir, int n_samples = 400);

/// Root of sqrt(1/(3k)) - sqrt(6) C1 by bracketing.
double kappa_bound_crossing(double C1);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace qnls
