#ifndef VS_ODE_HPP
#define VS_ODE_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "vs/common.hpp"

namespace vs {

using State = std::vector<cplx>;
using Field = std::function<void(double, const State&, State&)>;

struct OdeOpts {
  double rtol = 1e-8;
  double atol = 1e-10;
  double hmax = 0.0;  // 0 = no cap
  double h0 = 0.0;    // 0 = automatic
};

struct OdeStats {
  long n_steps = 0;
  long n_rejected = 0;
  long n_rhs = 0;
  double t_end = 0.0;
};

// Hook called after every accepted step; may modify the state in place
// (e.g. re-orthonormalization). Return false to abort integration early.
using StepHook = std::function<bool(double, State&)>;

// Scalar event function; integration stops at the first sign change,
// located by bisection on the cubic Hermite interpolant of the last step.
using EventFn = std::function<double(double, const State&)>;

// Optional recorder of accepted nodes (t, y, y') for profile construction.
using NodeSink = std::function<void(double, const State&, const State&)>;

namespace detail {

// Dormand--Prince 5(4) coefficients.
inline constexpr double DP_C[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double DP_A[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double DP_B5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
inline constexpr double DP_E[7] = {35.0 / 384 - 5179.0 / 57600,
                                   0,
                                   500.0 / 1113 - 7571.0 / 16695,
                                   125.0 / 192 - 393.0 / 640,
                                   -2187.0 / 6784 + 92097.0 / 339200,
                                   11.0 / 84 - 187.0 / 2100,
                                   -1.0 / 40};

inline void hermite_eval(double t0, const State& y0, const State& f0, double t1,
                         const State& y1, const State& f1, double t, State& out) {
  double h = t1 - t0;
  double s = (t - t0) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  out.resize(y0.size());
  for (size_t i = 0; i < y0.size(); ++i)
    out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
}

}  // namespace detail

// Adaptive embedded RK 5(4) (Dormand--Prince) over [t0, t1], either direction.
// Deterministic: step selection depends only on inputs.
inline State integrate_adaptive(const Field& field, double t0, double t1, State y0,
                                const OdeOpts& opts, OdeStats* stats = nullptr,
                                const StepHook& hook = nullptr,
                                const EventFn& event = nullptr,
                                const NodeSink& sink = nullptr) {
  OdeStats local;
  OdeStats& st = stats ? *stats : local;
  double span = t1 - t0;
  st.t_end = t0;
  if (span == 0.0) return y0;
  double dir = span > 0 ? 1.0 : -1.0;
  size_t n = y0.size();
  State k[7];
  for (auto& ki : k) ki.assign(n, cplx(0.0));
  State ytmp(n), ynew(n), yerr(n);

  field(t0, y0, k[0]);
  ++st.n_rhs;
  if (sink) sink(t0, y0, k[0]);
  double ev_prev = event ? event(t0, y0) : 0.0;

  // initial step guess
  double h = opts.h0;
  if (h == 0.0) {
    double ynorm = 0.0, fnorm = 0.0;
    for (size_t i = 0; i < n; ++i) {
      ynorm = std::max(ynorm, std::abs(y0[i]));
      fnorm = std::max(fnorm, std::abs(k[0][i]));
    }
    h = (fnorm > 0) ? 0.01 * std::max(ynorm, 1.0) / fnorm : 0.01 * std::abs(span);
    h = std::min(h, 0.1 * std::abs(span));
    if (h <= 0.0) h = 1e-6 * std::abs(span);
  }
  if (opts.hmax > 0) h = std::min(h, opts.hmax);
  h *= dir;

  double t = t0;
  bool fsal_valid = true;
  while ((t1 - t) * dir > 0.0) {
    if (std::abs(h) < 1e-14 * std::abs(span))
      throw numerical_error("StepUnderflow", "required step below 1e-14 of span");
    if ((t + h - t1) * dir > 0.0) h = t1 - t;

    if (!fsal_valid) {
      field(t, y0, k[0]);
      ++st.n_rhs;
      fsal_valid = true;
    }
    for (int s = 1; s < 7; ++s) {
      for (size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < s; ++j)
          if (detail::DP_A[s][j] != 0.0) acc += detail::DP_A[s][j] * k[j][i];
        ytmp[i] = y0[i] + h * acc;
      }
      field(t + detail::DP_C[s] * h, ytmp, k[s]);
      ++st.n_rhs;
    }
    double errnorm = 0.0;
    for (size_t i = 0; i < n; ++i) {
      cplx acc5 = 0.0, acce = 0.0;
      for (int s = 0; s < 7; ++s) {
        if (detail::DP_B5[s] != 0.0) acc5 += detail::DP_B5[s] * k[s][i];
        if (detail::DP_E[s] != 0.0) acce += detail::DP_E[s] * k[s][i];
      }
      ynew[i] = y0[i] + h * acc5;
      double sc = opts.atol + opts.rtol * std::max(std::abs(y0[i]), std::abs(ynew[i]));
      double e = std::abs(h * acce) / sc;
      errnorm += e * e;
    }
    errnorm = std::sqrt(errnorm / static_cast<double>(n));

    if (errnorm <= 1.0) {
      double tnew = t + h;
      // event localization on the accepted step
      if (event) {
        double ev_new = event(tnew, ynew);
        if (ev_prev * ev_new < 0.0) {
          State f0 = k[0], f1 = k[6];  // FSAL: k7 = f(tnew, ynew)
          double a = t, b = tnew;
          State ymid;
          for (int it = 0; it < 80 && std::abs(b - a) > 1e-15 * (std::abs(t) + std::abs(h)); ++it) {
            double m = 0.5 * (a + b);
            detail::hermite_eval(t, y0, f0, tnew, ynew, f1, m, ymid);
            double em = event(m, ymid);
            if (ev_prev * em <= 0.0)
              b = m;
            else
              a = m;
          }
          double tstop = 0.5 * (a + b);
          detail::hermite_eval(t, y0, f0, tnew, ynew, f1, tstop, ymid);
          ++st.n_steps;
          if (sink) {
            State fstop(n);
            field(tstop, ymid, fstop);
            ++st.n_rhs;
            sink(tstop, ymid, fstop);
          }
          st.t_end = tstop;
          return ymid;
        }
        ev_prev = ev_new;
      }
      t = tnew;
      y0 = ynew;
      k[0] = k[6];  // FSAL
      ++st.n_steps;
      bool keep = true;
      if (hook) {
        keep = hook(t, y0);
        fsal_valid = false;  // the hook may have modified the state
      }
      if (sink) {
        if (!fsal_valid) {
          field(t, y0, k[0]);
          ++st.n_rhs;
          fsal_valid = true;
        }
        sink(t, y0, k[0]);
      }
      st.t_end = t;
      if (!keep) return y0;
      double fac = (errnorm > 0) ? 0.9 * std::pow(errnorm, -0.2) : 5.0;
      fac = std::min(5.0, std::max(0.2, fac));
      h *= fac;
    } else {
      ++st.n_rejected;
      double fac = std::max(0.1, 0.9 * std::pow(errnorm, -0.2));
      h *= fac;
    }
    if (opts.hmax > 0 && std::abs(h) > opts.hmax) h = opts.hmax * dir;
  }
  st.t_end = t;
  return y0;
}

}  // namespace vs

#endif  // VS_ODE_HPP
