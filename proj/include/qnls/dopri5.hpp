#pragma once

// Dormand-Prince 5(4) with the 4th-order continuous extension and sign-change
// event location.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace qnls {

template <std::size_t Dim>
using OdeState = std::array<double, Dim>;

/// Piecewise-polynomial interpolant built from accepted steps.
template <std::size_t Dim>
class DenseSolution {
 public:
  struct Segment {
    double t;
    double h;
    std::array<OdeState<Dim>, 5> rc;
  };

  void clear() { segments_.clear(); }
  bool empty() const { return segments_.empty(); }
  double t_begin() const { return segments_.front().t; }
  std::size_t size() const { return segments_.size(); }
  void push(const Segment& s) { segments_.push_back(s); }

  /// Drops everything after t (used to cut at an event).
  void truncate(double t) {
    while (segments_.size() > 1 && segments_.back().t >= t) segments_.pop_back();
  }

  OdeState<Dim> operator()(double t) const {
    const Segment& s = locate(t);
    return eval(s, t);
  }

  static OdeState<Dim> eval(const Segment& s, double t) {
    const double th = (t - s.t) / s.h;
    const double th1 = 1.0 - th;
    OdeState<Dim> y;
    for (std::size_t i = 0; i < Dim; ++i) {
      y[i] = s.rc[0][i] +
             th * (s.rc[1][i] + th1 * (s.rc[2][i] + th * (s.rc[3][i] + th1 * s.rc[4][i])));
    }
    return y;
  }

 private:
  const Segment& locate(double t) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const Segment& s) { return x < s.t; });
    if (it == segments_.begin()) return segments_.front();
    return *(it - 1);
  }

  std::vector<Segment> segments_;
};

struct Dopri5Options {
  double rtol = 1e-10;
  double h_init = 0.0;  // 0: automatic
  double h_max = std::numeric_limits<double>::infinity();
  long max_steps = 2000000;
};

enum class Dopri5Status { Reached, Event, StepFailure };

template <std::size_t Dim>
struct Dopri5Result {
  Dopri5Status status;
  double t;
  OdeState<Dim> y;
  int event = -1;
  long steps = 0;
};

/// Integrates y' = rhs(t, y) from t0 to t_end. `events(t, y)` returns a
/// std::array<double, E>; integration stops at the first event whose value
/// changes from positive to non-positive, located on the dense output.
template <std::size_t Dim, class Rhs, class Events>
Dopri5Result<Dim> dopri5(Rhs&& rhs, double t0, OdeState<Dim> y0, double t_end,
                         const OdeState<Dim>& atol, const Dopri5Options& opt, Events&& events,
                         DenseSolution<Dim>* dense = nullptr) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  using State = OdeState<Dim>;
  auto combine = [](const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, k] : terms)
      for (std::size_t i = 0; i < Dim; ++i) out[i] += h * c * (*k)[i];
    return out;
  };

  double t = t0;
  State y = y0;
  State k1 = rhs(t, y), k2, k3, k4, k5, k6, k7;
  auto ev_prev = events(t, y);

  double h = opt.h_init;
  if (h <= 0.0) {
    // Hairer's starting-step heuristic, simplified.
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
      const double sc = atol[i] + opt.rtol * std::fabs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (k1[i] / sc) * (k1[i] / sc);
    }
    h = (d0 < 1e-10 || d1n < 1e-10) ? 1e-6 : 0.01 * std::sqrt(d0 / d1n);
    h = std::min(h, std::fabs(t_end - t0));
  }

  double err_old = 1e-4;
  long steps = 0;
  bool reject = false;
  while (t < t_end) {
    if (++steps > opt.max_steps) return {Dopri5Status::StepFailure, t, y, -1, steps};
    if (t + h > t_end) h = t_end - t;
    h = std::min(h, opt.h_max);
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::fabs(t))
      return {Dopri5Status::StepFailure, t, y, -1, steps};

    k2 = rhs(t + c2 * h, combine(y, h, {{a21, &k1}}));
    k3 = rhs(t + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
    k4 = rhs(t + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    k5 = rhs(t + c5 * h, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    k6 = rhs(t + h, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y1 = combine(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    k7 = rhs(t + h, y1);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < Dim; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol[i] + opt.rtol * std::max(std::fabs(y[i]), std::fabs(y1[i]));
      err += (e / sc) * (e / sc);
      finite = finite && std::isfinite(y1[i]);
    }
    err = std::sqrt(err / Dim);
    if (!finite) err = 1e10;

    if (err <= 1.0) {
      typename DenseSolution<Dim>::Segment seg;
      seg.t = t;
      seg.h = h;
      for (std::size_t i = 0; i < Dim; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        seg.rc[0][i] = y[i];
        seg.rc[1][i] = ydiff;
        seg.rc[2][i] = bspl;
        seg.rc[3][i] = ydiff - h * k7[i] - bspl;
        seg.rc[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }

      const auto ev = events(t + h, y1);
      int fired = -1;
      double t_fire = t + h;
      for (std::size_t e = 0; e < ev.size(); ++e) {
        if (ev_prev[e] > 0.0 && ev[e] <= 0.0) {
          // Bisection on the dense output for the crossing time.
          double lo = t, hi = t + h;
          for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            const auto val = events(mid, DenseSolution<Dim>::eval(seg, mid));
            if (val[e] > 0.0)
              lo = mid;
            else
              hi = mid;
          }
          if (fired < 0 || hi < t_fire) {
            fired = static_cast<int>(e);
            t_fire = hi;
          }
        }
      }
      if (dense) dense->push(seg);
      if (fired >= 0) {
        if (dense) dense->truncate(t_fire);
        return {Dopri5Status::Event, t_fire, DenseSolution<Dim>::eval(seg, t_fire), fired, steps};
      }
      ev_prev = ev;

      // PI step control (Hairer & Wanner).
      const double beta = 0.04;
      double fac = std::pow(err, 0.2 - 0.75 * beta) / std::pow(err_old, beta) / 0.9;
      fac = std::clamp(fac, 0.1, 5.0);
      double h_new = h / fac;
      if (reject) h_new = std::min(h_new, h);
      err_old = std::max(err, 1e-4);
      t += h;
      y = y1;
      k1 = k7;
      h = h_new;
      reject = false;
    } else {
      h /= std::min(5.0, std::pow(err, 0.2) / 0.9);
      reject = true;
    }
  }
  return {Dopri5Status::Reached, t, y, -1, steps};
}

}  // namespace qnls
