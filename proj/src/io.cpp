#include "qnls/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "qnls/errors.hpp"

namespace qnls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    return parse_exponent(text);
  } catch (const DomainError&) {
    throw ConfigError("config: bad number for '" + key + "': '" + text + "'");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max())
    throw ConfigError("config: bad integer for '" + key + "': '" + text + "'");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigError("config: bad boolean for '" + key + "': '" + text + "'");
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double read_double(const std::string& tok) {
  char* end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (tok.empty() || *end != '\0') throw ConfigError("data file: bad number '" + tok + "'");
  return x;
}

// "# key=value" -> (key, value); anything else -> nullopt.
std::optional<std::pair<std::string, std::string>> meta_line(const std::string& line) {
  if (line.empty() || line[0] != '#') return std::nullopt;
  const std::string body = trim(line.substr(1));
  const auto eq = body.find('=');
  if (eq == std::string::npos) return std::nullopt;
  return std::make_pair(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
}

const char* const kCurveHeader = "# lambda rho center_value sup_norm grad_norm2_sq energy pohozaev_residual";
const char* const kProfileHeader = "# r v dv u";

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "n",          "kappa",       "nonlinearity",  "mu",           "p",        "alpha",
      "beta",       "semilinear",  "lambda",        "lambda-min",   "lambda-max",
      "lambda-points", "mass",     "c1",            "suite",        "tol-rtol", "tol-bisection",
      "tol-pohozaev", "tol-mass",  "tol-window",    "grid-intervals", "out",    "tag",
  };
  return keys;
}

void RunConfig::validate() const {
  if (dim < 3) throw ConfigError("config: n must be >= 3");
  if (!finite_positive(kappa)) throw ConfigError("config: kappa must be > 0");
  if (nonlinearity != "power" && nonlinearity != "tworegime")
    throw ConfigError("config: nonlinearity must be 'power' or 'tworegime'");
  if (!finite_positive(lambda)) throw ConfigError("config: lambda must be > 0");
  if (!finite_positive(lambda_min) || !finite_positive(lambda_max) || !(lambda_min < lambda_max))
    throw ConfigError("config: need 0 < lambda-min < lambda-max");
  if (lambda_points < 2) throw ConfigError("config: lambda-points must be >= 2");
  if (mass && !finite_positive(*mass)) throw ConfigError("config: mass must be > 0");
  if (!(std::isfinite(c1) && c1 >= 0.0)) throw ConfigError("config: c1 must be >= 0");
  static const std::vector<std::string> suites = {"dual", "nonlinearity", "shooting", "limits",
                                                  "branch", "io", "all"};
  if (std::find(suites.begin(), suites.end(), suite) == suites.end())
    throw ConfigError("config: unknown suite '" + suite + "'");
  for (double t : {tol_rtol, tol_bisection, tol_pohozaev, tol_mass, tol_window})
    if (!finite_positive(t)) throw ConfigError("config: tolerances must be > 0");
  if (grid_intervals < 16) throw ConfigError("config: grid-intervals must be >= 16");
  try {
    source().validate(dim);
    const auto [a, b] = limit_exponents();
    classify_case(a, b, dim);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

Nonlinearity RunConfig::source() const {
  try {
    if (nonlinearity == "tworegime") return Nonlinearity(TwoRegime{alpha.value_or(2.5), beta.value_or(4.0)});
    return Nonlinearity(PurePower{mu, p});
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::pair<double, double> RunConfig::limit_exponents() const {
  if (alpha || beta) return {alpha.value_or(*beta), beta.value_or(*alpha)};
  const Nonlinearity s = source();
  return {s.alpha_eff(), s.beta_eff()};
}

ProblemSpec RunConfig::problem() const { return ProblemSpec{dim, kappa, source(), semilinear}; }

SolverOptions RunConfig::solver() const {
  SolverOptions o;
  o.rtol = tol_rtol;
  o.bisection_rtol = tol_bisection;
  o.pohozaev_tol = tol_pohozaev;
  o.grid_intervals = grid_intervals;
  return o;
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.solver = solver();
  return o;
}

NormalizedOptions RunConfig::normalized_options() const {
  NormalizedOptions o;
  o.solver = solver();
  o.rtol = tol_mass;
  return o;
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap map;
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  const auto& keys = config_keys();
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!map.emplace(key, value).second)
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return map;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_config(const ConfigMap& map, RunConfig& c) {
  for (const auto& [key, value] : map) {
    if (key == "n") c.dim = parse_int(key, value);
    else if (key == "kappa") c.kappa = parse_real(key, value);
    else if (key == "nonlinearity") c.nonlinearity = trim(value);
    else if (key == "mu") c.mu = parse_real(key, value);
    else if (key == "p") c.p = parse_real(key, value);
    else if (key == "alpha") c.alpha = parse_real(key, value);
    else if (key == "beta") c.beta = parse_real(key, value);
    else if (key == "semilinear") c.semilinear = parse_bool(key, value);
    else if (key == "lambda") c.lambda = parse_real(key, value);
    else if (key == "lambda-min") c.lambda_min = parse_real(key, value);
    else if (key == "lambda-max") c.lambda_max = parse_real(key, value);
    else if (key == "lambda-points") c.lambda_points = parse_int(key, value);
    else if (key == "mass") c.mass = parse_real(key, value);
    else if (key == "c1") c.c1 = parse_real(key, value);
    else if (key == "suite") c.suite = trim(value);
    else if (key == "tol-rtol") c.tol_rtol = parse_real(key, value);
    else if (key == "tol-bisection") c.tol_bisection = parse_real(key, value);
    else if (key == "tol-pohozaev") c.tol_pohozaev = parse_real(key, value);
    else if (key == "tol-mass") c.tol_mass = parse_real(key, value);
    else if (key == "tol-window") c.tol_window = parse_real(key, value);
    else if (key == "grid-intervals") c.grid_intervals = parse_int(key, value);
    else if (key == "out") c.out = trim(value);
    else if (key == "tag") c.tag = trim(value);
    else throw ConfigError("config: unknown key '" + key + "'");
  }
}

RunConfig resolve_config(const ConfigMap& file, const ConfigMap& flags) {
  RunConfig c;
  apply_config(file, c);
  apply_config(flags, c);
  return c;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Summary::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Summary::add(const std::string& key, double value) { add(key, format_double(value)); }
void Summary::add(const std::string& key, long value) { add(key, std::to_string(value)); }

std::optional<std::string> Summary::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

void Summary::write(std::ostream& os) const {
  for (const auto& [k, v] : entries_) os << k << '=' << v << '\n';
}

Summary Summary::read(std::istream& is) {
  Summary s;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    s.add(line.substr(0, eq), line.substr(eq + 1));
  }
  return s;
}

void write_profile(std::ostream& os, const GroundState& gs, const EffectiveNonlinearity& eff) {
  const RadialProfile& pr = gs.profile;
  const std::vector<double> u = physical_values(pr, eff);
  os << "# n=" << pr.dim << '\n';
  os << "# kappa=" << format_double(eff.dual().kappa()) << '\n';
  os << "# semilinear=" << (eff.semilinear() ? 1 : 0) << '\n';
  os << "# nonlinearity=" << eff.source().descriptor() << '\n';
  os << "# lambda=" << format_double(gs.lambda) << '\n';
  os << "# center_value=" << format_double(gs.center_value) << '\n';
  os << "# tail_rate=" << format_double(pr.tail_rate) << '\n';
  os << "# tail_amplitude=" << format_double(pr.tail_amplitude) << '\n';
  os << kProfileHeader << '\n';
  for (std::size_t i = 0; i < pr.grid.size(); ++i) {
    os << format_double(pr.grid[i]) << ' ' << format_double(pr.values[i]) << ' '
       << format_double(pr.dvalues[i]) << ' ' << format_double(u[i]) << '\n';
  }
}

ProfileTable read_profile(std::istream& is) {
  ProfileTable t;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tok = split_ws(line);
    if (tok.size() != 4) throw ConfigError("profile file: expected 4 columns");
    t.r.push_back(read_double(tok[0]));
    t.v.push_back(read_double(tok[1]));
    t.dv.push_back(read_double(tok[2]));
    t.u.push_back(read_double(tok[3]));
  }
  return t;
}

void write_curve(std::ostream& os, const MassCurve& curve) {
  os << "# n=" << curve.problem.dim << '\n';
  os << "# kappa=" << format_double(curve.problem.kappa) << '\n';
  os << "# semilinear=" << (curve.problem.semilinear ? 1 : 0) << '\n';
  os << "# nonlinearity=" << curve.problem.source.descriptor() << '\n';
  os << "# regime=" << to_string(curve.regime) << '\n';
  os << kCurveHeader << '\n';
  for (const BranchPoint& b : curve.points) {
    os << format_double(b.lambda) << ' ' << format_double(b.rho) << ' ' << format_double(b.center_value)
       << ' ' << format_double(b.sup_norm) << ' ' << format_double(b.grad_norm2_sq) << ' '
       << format_double(b.energy) << ' ' << format_double(b.pohozaev_residual) << '\n';
  }
}

MassCurve read_curve(std::istream& is) {
  MassCurve curve;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto kv = meta_line(line);
      if (!kv) continue;
      const auto& [key, value] = *kv;
      try {
        if (key == "n") curve.problem.dim = parse_int(key, value);
        else if (key == "kappa") curve.problem.kappa = read_double(value);
        else if (key == "semilinear") curve.problem.semilinear = parse_bool(key, value);
        else if (key == "nonlinearity") curve.problem.source = Nonlinearity::parse(value);
        else if (key == "regime") curve.regime = parse_case_tag(value);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("curve file: ") + e.what());
      }
      continue;
    }
    const auto tok = split_ws(line);
    if (tok.size() != 7) throw ConfigError("curve file: expected 7 columns");
    BranchPoint b;
    b.lambda = read_double(tok[0]);
    b.rho = read_double(tok[1]);
    b.center_value = read_double(tok[2]);
    b.sup_norm = read_double(tok[3]);
    b.grad_norm2_sq = read_double(tok[4]);
    b.energy = read_double(tok[5]);
    b.pohozaev_residual = read_double(tok[6]);
    curve.points.push_back(b);
  }
  return curve;
}

CaseTag parse_case_tag(const std::string& text) {
  for (CaseTag t : {CaseTag::SubcriticalBoth, CaseTag::ExactlyCritical, CaseTag::AtMostCritical1,
                    CaseTag::AtMostCritical2, CaseTag::Mixed1, CaseTag::Mixed2, CaseTag::AtLeastCritical1,
                    CaseTag::AtLeastCritical2, CaseTag::SupercriticalBoth}) {
    if (text == to_string(t)) return t;
  }
  throw ConfigError("unknown case tag '" + text + "'");
}

std::string branch_plot_script(const std::string& curve_file, const std::vector<ReferenceLine>& refs,
                               const std::optional<PlotMarker>& marker, const std::string& title) {
  std::ostringstream gp;
  gp << "set terminal png size 900,600\n";
  gp << "set output \"branch.png\"\n";
  gp << "set logscale xy\n";
  gp << "set format x \"10^{%L}\"\n";
  gp << "set xlabel \"lambda\"\n";
  gp << "set ylabel \"rho\"\n";
  gp << "set grid\n";
  gp << "set key top right\n";
  gp << "set title \"" << title << "\"\n";
  if (marker) {
    gp << "set label 1 \"" << marker->label << "\" at " << format_double(marker->x) << ','
       << format_double(marker->y) << " point pt 7 ps 1.5 offset 1,1\n";
  }
  gp << "plot \"" << curve_file << "\" using 1:2 with linespoints pt 7 ps 0.5 title \"rho(lambda)\"";
  for (const ReferenceLine& r : refs) {
    gp << ", \\\n     " << format_double(r.value) << " with lines dt 2 title \"" << r.label << "\"";
  }
  gp << '\n';
  return gp.str();
}

double kappa_bound_crossing(double C1) {
  if (!finite_positive(C1)) throw ConfigError("figure-k: C1 must be > 0");
  const double level = std::sqrt(6.0) * C1;
  const auto f = [level](double k) { return std::sqrt(1.0 / (3.0 * k)) - level; };
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  double lo = hi;
  while (f(lo) <= 0.0) lo *= 0.5;
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits);
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol);
  return 0.5 * (a + b);
}

KappaBoundPlot emit_kappa_bound_plot(double C1, const std::string& dir, int n_samples) {
  KappaBoundPlot out;
  out.k1 = kappa_threshold(C1);
  out.crossing = kappa_bound_crossing(C1);
  const double level = std::sqrt(6.0) * C1;
  std::ostringstream data;
  data << "# C1=" << format_double(C1) << '\n';
  data << "# k1=" << format_double(out.k1) << '\n';
  data << "# k sqrt(1/(3k)) sqrt(6)C1\n";
  for (int i = 1; i <= n_samples; ++i) {
    const double k = 2.0 * out.k1 * i / n_samples;
    data << format_double(k) << ' ' << format_double(std::sqrt(1.0 / (3.0 * k))) << ' '
         << format_double(level) << '\n';
  }
  std::ostringstream gp;
  gp << "set terminal png size 900,600\n";
  gp << "set output \"kappa_bound.png\"\n";
  gp << "set xlabel \"k\"\n";
  gp << "set ylabel \"bound\"\n";
  gp << "set grid\n";
  gp << "set yrange [0:" << format_double(3.0 * level) << "]\n";
  gp << "set arrow 1 from " << format_double(out.k1) << ", graph 0 to " << format_double(out.k1)
     << ", graph 1 nohead dt 2\n";
  gp << "set label 1 \"k1 = " << format_double(out.k1) << "\" at " << format_double(out.k1)
     << ", graph 0.9 offset 1,0\n";
  gp << "plot \"kappa_bound.dat\" using 1:2 with lines lc rgb \"blue\" title \"sqrt(1/(3k))\", \\\n"
     << "     \"kappa_bound.dat\" using 1:3 with lines lc rgb \"red\" title \"sqrt(6) C1\"\n";
  const std::filesystem::path d(dir);
  out.data_path = (d / "kappa_bound.dat").string();
  out.script_path = (d / "kappa_bound.gp").string();
  write_text_file(out.data_path, data.str());
  write_text_file(out.script_path, gp.str());
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace qnls
