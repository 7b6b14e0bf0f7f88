#include "qnls/nonlinearity.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "qnls/errors.hpp"

namespace qnls {

namespace {

// Log grid for the TwoRegime primitive: nodes 10^{k/4}, k = -160 .. 160.
constexpr int kNodesPerDecade = 4;
constexpr int kMinExp = -40;
constexpr int kMaxExp = 40;
constexpr int kNodeCount = (kMaxExp - kMinExp) * kNodesPerDecade + 1;

double node(int k) {
  return std::pow(10.0, kMinExp + static_cast<double>(k) / kNodesPerDecade);
}

double tworegime_f(double alpha, double beta, double s) {
  if (s <= 0.0) return 0.0;
  return std::pow(s, alpha - 1.0) * std::pow(1.0 + s, beta - alpha);
}

double tworegime_F_series(double alpha, double beta, double s) {
  return std::pow(s, alpha) / alpha + (beta - alpha) * std::pow(s, alpha + 1.0) / (alpha + 1.0);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    return parse_exponent(text);
  } catch (const DomainError&) {
    throw DomainError("nonlinearity: bad value for " + key + ": '" + text + "'");
  }
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Nonlinearity::Nonlinearity(PurePower model)
    : model_(model), alpha_(model.p), beta_(model.p), mu1_(model.mu), mu2_(model.mu) {
  if (!(model.mu > 0.0) || !std::isfinite(model.mu))
    throw DomainError("PurePower: mu must be positive");
  if (!(model.p > 2.0) || !std::isfinite(model.p)) throw DomainError("PurePower: p must exceed 2");
}

Nonlinearity::Nonlinearity(TwoRegime model)
    : model_(model), alpha_(model.alpha), beta_(model.beta), mu1_(1.0), mu2_(1.0) {
  if (!(model.alpha > 2.0) || !(model.beta > 2.0) || !std::isfinite(model.alpha) ||
      !std::isfinite(model.beta))
    throw DomainError("TwoRegime: exponents must exceed 2");
  const double a = model.alpha;
  const double b = model.beta;
  auto nodes = std::make_shared<std::vector<double>>(kNodeCount);
  auto& cum = *nodes;
  auto fk = [a, b](double s) { return tworegime_f(a, b, s); };
  cum[0] = tworegime_F_series(a, b, node(0));
  for (int k = 1; k < kNodeCount; ++k) {
    cum[k] = cum[k - 1] + boost::math::quadrature::gauss<double, 20>::integrate(fk, node(k - 1), node(k));
  }
  F_nodes_ = std::move(nodes);
}

Nonlinearity Nonlinearity::parse(const std::string& descriptor) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(descriptor);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("nonlinearity: expected key=value, got '" + item + "'");
    kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  const auto kind = kv.find("kind");
  if (kind == kv.end()) throw DomainError("nonlinearity: missing kind");
  if (kind->second == "power") {
    PurePower m;
    for (const auto& [k, v] : kv) {
      if (k == "kind") continue;
      if (k == "mu")
        m.mu = to_double(k, v);
      else if (k == "p")
        m.p = to_double(k, v);
      else
        throw DomainError("nonlinearity: unknown key '" + k + "' for kind=power");
    }
    return Nonlinearity(m);
  }
  if (kind->second == "tworegime") {
    TwoRegime m;
    for (const auto& [k, v] : kv) {
      if (k == "kind") continue;
      if (k == "alpha")
        m.alpha = to_double(k, v);
      else if (k == "beta")
        m.beta = to_double(k, v);
      else
        throw DomainError("nonlinearity: unknown key '" + k + "' for kind=tworegime");
    }
    return Nonlinearity(m);
  }
  throw DomainError("nonlinearity: unknown kind '" + kind->second + "'");
}

std::string Nonlinearity::descriptor() const {
  if (const auto* pp = std::get_if<PurePower>(&model_))
    return "kind=power, mu=" + format_double(pp->mu) + ", p=" + format_double(pp->p);
  const auto& tr = std::get<TwoRegime>(model_);
  return "kind=tworegime, alpha=" + format_double(tr.alpha) + ", beta=" + format_double(tr.beta);
}

void Nonlinearity::validate(int dim) const {
  if (dim < 3) throw DomainError("dimension N must be at least 3");
  const double crit = 2.0 * dim / (dim - 2.0);
  if (!(alpha_ > 2.0 && alpha_ < crit) || !(beta_ > 2.0 && beta_ < crit))
    throw DomainError("exponents must lie in (2, 2N/(N-2)) = (2, " + format_double(crit) + ")");
}

double Nonlinearity::f(double s) const {
  if (s <= 0.0) return 0.0;
  if (const auto* pp = std::get_if<PurePower>(&model_)) return pp->mu * std::pow(s, pp->p - 1.0);
  return tworegime_f(alpha_, beta_, s);
}

double Nonlinearity::f_prime(double s) const {
  if (s <= 0.0) return 0.0;
  if (const auto* pp = std::get_if<PurePower>(&model_))
    return pp->mu * (pp->p - 1.0) * std::pow(s, pp->p - 2.0);
  return std::pow(s, alpha_ - 2.0) * std::pow(1.0 + s, beta_ - alpha_ - 1.0) *
         ((alpha_ - 1.0) * (1.0 + s) + (beta_ - alpha_) * s);
}

double Nonlinearity::F(double s) const {
  if (s <= 0.0) return 0.0;
  if (const auto* pp = std::get_if<PurePower>(&model_)) return pp->mu * std::pow(s, pp->p) / pp->p;
  return F_tworegime(s);
}

double Nonlinearity::F_tworegime(double s) const {
  const auto& cum = *F_nodes_;
  const double a = alpha_;
  const double b = beta_;
  auto fk = [a, b](double x) { return tworegime_f(a, b, x); };
  using GL = boost::math::quadrature::gauss<double, 20>;
  if (s <= node(0)) return tworegime_F_series(a, b, s);
  int k = static_cast<int>(std::floor((std::log10(s) - kMinExp) * kNodesPerDecade));
  if (k >= kNodeCount - 1) {
    // Beyond the cached range: continue on geometric panels of ratio 10^{1/4}.
    double acc = cum[kNodeCount - 1];
    double left = node(kNodeCount - 1);
    const double ratio = std::pow(10.0, 1.0 / kNodesPerDecade);
    while (left * ratio < s) {
      acc += GL::integrate(fk, left, left * ratio);
      left *= ratio;
    }
    return acc + GL::integrate(fk, left, s);
  }
  k = std::max(k, 0);
  // Guard against log10 rounding placing s just left of node(k).
  while (k > 0 && node(k) > s) --k;
  return cum[k] + GL::integrate(fk, node(k), s);
}

EffectiveNonlinearity::EffectiveNonlinearity(double lambda, DualMap dual, Nonlinearity source,
                                             bool semilinear)
    : lambda_(lambda), dual_(dual), source_(std::move(source)), semilinear_(semilinear) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
}

EffectiveNonlinearity EffectiveNonlinearity::with_lambda(double lambda) const {
  return EffectiveNonlinearity(lambda, dual_, source_, semilinear_);
}

double EffectiveNonlinearity::h(double v) const {
  if (v <= 0.0) return 0.0;
  if (semilinear_) return source_.f(v);
  const double u = dual_.G_inv(v);
  const double g = dual_.g(u);
  // u/g - v = u (1 - g)/g + (u - G(u))
  const double linear = u * dual_.one_minus_g(u) / g + dual_.excess(u);
  return source_.f(u) / g - lambda_ * linear;
}

double EffectiveNonlinearity::reaction(double v) const {
  if (v <= 0.0) return -lambda_ * v;
  if (semilinear_) return source_.f(v) - lambda_ * v;
  const double u = dual_.G_inv(v);
  return (source_.f(u) - lambda_ * u) / dual_.g(u);
}

double EffectiveNonlinearity::h_prime(double v) const {
  if (v < 0.0) return 0.0;
  if (semilinear_) return source_.f_prime(v);
  const double u = dual_.G_inv(v);
  const double g = dual_.g(u);
  const double gp = dual_.g_prime(u);
  const double g3 = g * g * g;
  const double source_part = (source_.f_prime(u) * g - source_.f(u) * gp) / g3;
  // 1 - (g - u g')/g^3 = (g^3 - g + u g')/g^3
  double numer;
  if (u < dual_.t0()) {
    const double x = dual_.kappa() * u * u;  // g^2 = 1 - x, u g' = -x/g
    numer = -x * (g + 1.0 / g);
  } else {
    numer = g3 - g + u * gp;
  }
  return source_part + lambda_ * numer / g3;
}

double EffectiveNonlinearity::H(double v) const {
  if (v <= 0.0) return 0.0;
  if (semilinear_) return source_.F(v);
  const double u = dual_.G_inv(v);
  // F(u) - lambda (u^2 - v^2)/2 with u - v = u - G(u).
  return source_.F(u) - 0.5 * lambda_ * dual_.excess(u) * (u + v);
}

ExponentClass classify_exponent(Rational p, int dim) {
  if (dim < 3) throw DomainError("classify_exponent: N must be at least 3");
  if (p.den == 0) throw DomainError("classify_exponent: zero denominator");
  if (p.den < 0) {
    p.num = -p.num;
    p.den = -p.den;
  }
  // 2 < p < 2N/(N-2)
  if (!(p.num > 2 * p.den) || !(p.num * (dim - 2) < 2L * dim * p.den))
    throw DomainError("classify_exponent: p outside (2, 2N/(N-2))");
  // compare p with (2N + 4)/N
  const long lhs = p.num * dim;
  const long rhs = (2L * dim + 4) * p.den;
  if (lhs < rhs) return ExponentClass::Subcritical;
  if (lhs == rhs) return ExponentClass::MassCritical;
  return ExponentClass::Supercritical;
}

ExponentClass classify_exponent(double p, int dim) {
  if (dim < 3) throw DomainError("classify_exponent: N must be at least 3");
  if (!(p > 2.0 && p < 2.0 * dim / (dim - 2.0)))
    throw DomainError("classify_exponent: p outside (2, 2N/(N-2))");
  const double crit = 2.0 + 4.0 / dim;
  if (std::fabs(p - crit) <= 1e-6 * crit) return ExponentClass::MassCritical;
  return p < crit ? ExponentClass::Subcritical : ExponentClass::Supercritical;
}

double parse_exponent(const std::string& text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  char* end = nullptr;
  if (slash != std::string::npos) {
    const std::string a = t.substr(0, slash), b = t.substr(slash + 1);
    const double num = std::strtod(a.c_str(), &end);
    if (a.empty() || *end != '\0') throw DomainError("bad number '" + text + "'");
    const double den = std::strtod(b.c_str(), &end);
    if (b.empty() || *end != '\0' || den == 0.0) throw DomainError("bad number '" + text + "'");
    return num / den;
  }
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || !std::isfinite(x)) throw DomainError("bad number '" + text + "'");
  return x;
}

const char* to_string(ExponentClass c) {
  switch (c) {
    case ExponentClass::Subcritical: return "Subcritical";
    case ExponentClass::MassCritical: return "MassCritical";
    case ExponentClass::Supercritical: return "Supercritical";
  }
  return "?";
}

}  // namespace qnls
