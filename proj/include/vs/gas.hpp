#ifndef VS_GAS_HPP
#define VS_GAS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "vs/ode.hpp"

namespace vs {

// Normalization m = -s = 1, rho_- = 1 is fixed throughout (not configurable).
struct GasModel {
  double gamma = 5.0 / 3.0;
  double a = 0.0;
  double mu = 0.5;   // first viscosity (2D only)
  double eta = 0.0;  // second viscosity (2D only)
};

struct EndStates {
  double rho_plus = 0.0, u_plus = 0.0;  // Eulerian
  double tau_plus = 0.0, w_plus = 0.0;  // Lagrangian (tau_+ = u_+, w_+ = u_+)
};

struct EndStateSolve {
  EndStates states;
  double a = 0.0;
};

inline EndStateSolve solve_endstates(double gamma, double u_plus) {
  if (gamma <= 1.0) throw domain_error("InvalidParam", "gamma must exceed 1");
  if (u_plus <= 0.0) throw domain_error("InvalidParam", "u_plus must be positive");
  if (u_plus >= 1.0 - 1e-12)
    throw domain_error("DegenerateShock", "zero-strength limit u_plus -> 1");
  EndStateSolve s;
  double tau = u_plus;
  s.a = (1.0 - tau) / (std::pow(tau, -gamma) - 1.0);
  s.states.u_plus = u_plus;
  s.states.rho_plus = 1.0 / u_plus;
  s.states.tau_plus = tau;
  s.states.w_plus = u_plus;
  return s;
}

// Once-integrated Eulerian profile equation: u' = g(u).
inline double profile_g(const GasModel& m, double u) {
  return (u - 1.0) + m.a * (std::pow(u, -m.gamma) - 1.0);
}
inline double profile_g_prime(const GasModel& m, double u) {
  return 1.0 - m.a * m.gamma * std::pow(u, -m.gamma - 1.0);
}
// Lagrangian profile equation: tau' = H(tau) = tau*g(tau).
inline double profile_H(const GasModel& m, double tau) { return tau * profile_g(m, tau); }
inline double profile_H_prime(const GasModel& m, double tau) {
  return profile_g(m, tau) + tau * profile_g_prime(m, tau);
}

enum class Frame { Eulerian, Lagrangian };

struct ShockProfile {
  Frame frame = Frame::Eulerian;
  GasModel model;
  double u_plus = 0.0;
  double M_plus = 0.0, M_minus = 0.0;  // numerical infinities (positive numbers)

  // grid ascending over [-M_minus, M_plus]; val = u (Eulerian) or tau (Lagrangian)
  std::vector<double> grid, val, dval;
  // Eulerian frame only: y(x) samples and the Delta integrals
  std::vector<double> ymap, inv_val;
  double delta_plus = 0.0, delta_minus = 0.0;

  double rho_plus() const { return 1.0 / u_plus; }

  // cubic Hermite interpolation of the primary variable
  double value(double x) const { return hermite(grid, val, dval, x); }
  double deriv(double x) const {
    double u = value(x);
    return frame == Frame::Eulerian ? profile_g(model, u) : profile_H(model, u);
  }
  double rho(double x) const { return 1.0 / value(x); }

  // dy/dx = rho = 1/u at the nodes, dx/dy = u
  double y_of_x(double x) const { return hermite(grid, ymap, inv_val, x); }
  double x_of_y(double y) const { return hermite(ymap, grid, val, y); }

  static double hermite(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& ds, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    size_t hi = static_cast<size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    size_t lo = hi - 1;
    double h = xs[hi] - xs[lo];
    double s = (x - xs[lo]) / h;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    double h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s);
    double h11 = s * s * (s - 1);
    return h00 * ys[lo] + h10 * h * ds[lo] + h01 * ys[hi] + h11 * h * ds[hi];
  }
};

namespace detail {

struct SideNodes {
  std::vector<double> x, u, y, integ;
  double M = 0.0;
  bool stopped = false;
};

// Integrate the scalar profile equation outward from the center value toward
// one endstate, carrying the y-map and Delta integrands alongside (Eulerian).
inline SideNodes profile_side(const GasModel& m, Frame frame, double u0, double u_end,
                              double jump, int dir /*+1 toward +inf*/, double cap,
                              double extend_to, double tol) {
  SideNodes out;
  bool euler = frame == Frame::Eulerian;
  double rho_end = 1.0 / u_end;
  Field field = [&](double, const State& s, State& ds) {
    double u = s[0].real();
    double du = euler ? profile_g(m, u) : profile_H(m, u);
    ds.assign(s.size(), cplx(0.0));
    ds[0] = du;
    if (euler) {
      ds[1] = 1.0 / u;             // y' = rho
      ds[2] = 1.0 / u - rho_end;   // Delta integrand for this side
    }
  };
  double lo = std::min(u0, u_end) - 0.5 * jump, hi = std::max(u0, u_end) + 0.5 * jump;
  StepHook guard = [&](double, State& s) {
    double u = s[0].real();
    if (u < lo || u > hi || !(std::isfinite(u)))
      throw numerical_error("ProfileDivergence", "profile left the interval (u_plus, 1)");
    return true;
  };
  EventFn event = nullptr;
  double target = dir > 0 ? cap : -cap;
  if (extend_to > 0.0) {
    target = dir > 0 ? extend_to : -extend_to;
  } else {
    event = [&](double, const State& s) {
      return std::abs(s[0].real() - u_end) - 1e-8 * jump;
    };
  }
  OdeOpts opts;
  opts.rtol = tol;
  opts.atol = tol * 1e-2;
  opts.hmax = std::min(0.25, cap / 32.0);
  NodeSink sink = [&](double t, const State& s, const State&) {
    out.x.push_back(t);
    out.u.push_back(s[0].real());
    if (euler) {
      out.y.push_back(s[1].real());
      out.integ.push_back(s[2].real());
    }
  };
  State s0(euler ? 3 : 1, cplx(0.0));
  s0[0] = u0;
  OdeStats st;
  integrate_adaptive(field, 0.0, target, s0, opts, &st, guard, event, sink);
  out.M = std::abs(st.t_end);
  out.stopped = event ? (std::abs(st.t_end) < std::abs(target) * (1.0 - 1e-12)) : true;
  if (event && !out.stopped)
    throw numerical_error("TruncationFailure", "numerical infinity exceeds 50/|decay rate| cap");
  return out;
}

}  // namespace detail

// Traveling-wave profile, centered so that value(0) = (1 + u_plus)/2
// (endstate average); the same wave point anchors both frames, so that
// tau(y(x)) = u(x) with y(0) = 0. extend_factor > 1 grows both numerical
// infinities past the natural truncation point (used by truncation-
// independence checks). center_value overrides the centering (used by
// translation-consistency tests).
inline ShockProfile compute_profile(const GasModel& m, const EndStates& es, Frame frame,
                                    double tol = 1e-10, double extend_factor = 1.0,
                                    double center_value = 0.0) {
  double u_plus = es.u_plus;
  double jump = 1.0 - u_plus;
  double u0 = center_value > 0.0 ? center_value : 0.5 * (1.0 + u_plus);
  if (u0 <= u_plus || u0 >= 1.0)
    throw domain_error("InvalidParam", "centering value outside (u_plus, 1)");
  bool euler = frame == Frame::Eulerian;
  double kap_p = euler ? std::abs(profile_g_prime(m, u_plus)) : std::abs(profile_H_prime(m, u_plus));
  double kap_m = euler ? std::abs(profile_g_prime(m, 1.0)) : std::abs(profile_H_prime(m, 1.0));
  // Each cap pays for the tail decay (50/kappa of its own endstate) plus the
  // O(1) transit from the centering value into the tail, whose slowest scale
  // is set by the other endstate's rate (strong shocks: kappa_+ >> kappa_-).
  double cap_p = 50.0 / kap_p + 50.0 / kap_m;
  double cap_m = 50.0 / kap_m + 50.0 / kap_p;

  detail::SideNodes plus = detail::profile_side(m, frame, u0, u_plus, jump, +1, cap_p, 0.0, tol);
  detail::SideNodes minus = detail::profile_side(m, frame, u0, 1.0, jump, -1, cap_m, 0.0, tol);
  if (extend_factor != 1.0) {
    plus = detail::profile_side(m, frame, u0, u_plus, jump, +1, cap_p, extend_factor * plus.M, tol);
    minus = detail::profile_side(m, frame, u0, 1.0, jump, -1, cap_m, extend_factor * minus.M, tol);
  }

  ShockProfile p;
  p.frame = frame;
  p.model = m;
  p.u_plus = u_plus;
  p.M_plus = plus.M;
  p.M_minus = minus.M;
  size_t nm = minus.x.size(), np = plus.x.size();
  p.grid.reserve(nm + np - 1);
  for (size_t i = nm; i-- > 1;) p.grid.push_back(minus.x[i]);
  for (size_t i = 0; i < np; ++i) p.grid.push_back(plus.x[i]);
  auto gather = [&](const std::vector<double>& mv, const std::vector<double>& pv) {
    std::vector<double> out;
    out.reserve(nm + np - 1);
    for (size_t i = nm; i-- > 1;) out.push_back(mv[i]);
    for (size_t i = 0; i < np; ++i) out.push_back(pv[i]);
    return out;
  };
  p.val = gather(minus.u, plus.u);
  p.dval.resize(p.val.size());
  for (size_t i = 0; i < p.val.size(); ++i)
    p.dval[i] = euler ? profile_g(m, p.val[i]) : profile_H(m, p.val[i]);
  if (euler) {
    p.ymap = gather(minus.y, plus.y);
    p.inv_val.resize(p.val.size());
    for (size_t i = 0; i < p.val.size(); ++i) p.inv_val[i] = 1.0 / p.val[i];
    double rho_p = 1.0 / u_plus;
    double dev_p = 1.0 / plus.u.back() - rho_p;       // rho(M+) - rho_+
    double dev_m = 1.0 / minus.u.back() - 1.0;        // rho(-M-) - rho_-
    p.delta_plus = plus.integ.back() + dev_p / kap_p;
    p.delta_minus = -minus.integ.back() + dev_m / kap_m;
  }
  return p;
}

}  // namespace vs

#endif  // VS_GAS_HPP
