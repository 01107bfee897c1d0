#ifndef VS_ANALYSIS_HPP
#define VS_ANALYSIS_HPP

#include <vector>

#include "vs/contour.hpp"
#include "vs/evans.hpp"
#include "vs/systems.hpp"

namespace vs {

// ---------------------------------------------------------------------------
// Eulerian / Lagrangian ratio relation
//   D_E(lambda) = det T^(0) * exp(-nu_+ Delta_+ + nu_- Delta_-) * D_L(lambda)
// with nu_+ the stable-eigenvalue sum of the Lagrangian limit at +infinity and
// nu_- the unstable-eigenvalue sum at -infinity. The sign convention displayed
// in some sources (+nu_+ Delta_+ - nu_- Delta_-) is available behind a flag,
// as is taking nu from the Eulerian limits instead (they differ by the factor
// rho at the endstate).
// ---------------------------------------------------------------------------

struct EvrelOpts {
  bool legacy_sign = false;    // use +nu_+ Delta_+ - nu_- Delta_- instead
  bool nu_from_euler = false;  // take nu from the Eulerian limiting matrices
  LagMode lag_mode = LagMode::Flow;
  EvansOpts evans;
};

struct EvrelPoint {
  cplx lambda;
  LogComplex D_E, D_L, rhs;
  cplx nu_plus, nu_minus;
  double rel_err = 0.0;
};

struct EvrelResult {
  std::vector<EvrelPoint> points;
  double max_rel_err = 0.0;
  double detThat0 = 0.0;
  double delta_plus = 0.0, delta_minus = 0.0;
};

inline EvrelResult check_evrel(const ShockProfile& euler_prof, const ShockProfile& lag_prof,
                               const std::vector<cplx>& lambdas, const EvrelOpts& opts = {}) {
  if (euler_prof.frame != Frame::Eulerian || lag_prof.frame != Frame::Lagrangian)
    throw domain_error("InvalidParam", "need one Eulerian and one Lagrangian profile");
  EvansSystem sysE = assemble_euler_1d(euler_prof);
  EvansSystem sysL = assemble_lagrange_1d(lag_prof, opts.lag_mode);
  GasModel m = euler_prof.model;
  Mat That_p = detail::conj_matrix(m, euler_prof.u_plus, true);
  Mat That_m = detail::conj_matrix(m, 1.0, true);
  Mat That_p_inv = inverse(That_p), That_m_inv = inverse(That_m);
  double detThat0 = det(detail::conj_matrix(m, euler_prof.value(0.0), true)).real();

  EvrelResult res;
  res.detThat0 = detThat0;
  res.delta_plus = euler_prof.delta_plus;
  res.delta_minus = euler_prof.delta_minus;
  for (cplx lam : lambdas) {
    EvrelPoint pt;
    pt.lambda = lam;
    Mat Vp = kato_seed(sysE.limit(+1, lam, 0.0), true);
    Mat Vm = kato_seed(sysE.limit(-1, lam, 0.0), false);
    Mat Up = That_p_inv * Vp;
    Mat Um = That_m_inv * Vm;
    {
      Splitting spL = splitting(sysL, lam, 0.0);
      pt.nu_plus = spL.sum_plus;
      pt.nu_minus = spL.sum_minus;
    }
    if (opts.nu_from_euler) {
      Splitting spE = splitting(sysE, lam, 0.0);
      pt.nu_plus = spE.sum_plus;
      pt.nu_minus = spE.sum_minus;
    }
    pt.D_E = evaluate(sysE, Vp, Vm, lam, 0.0, opts.evans).D;
    pt.D_L = evaluate(sysL, Up, Um, lam, 0.0, opts.evans).D;
    cplx expo = opts.legacy_sign
                    ? pt.nu_plus * euler_prof.delta_plus - pt.nu_minus * euler_prof.delta_minus
                    : -pt.nu_plus * euler_prof.delta_plus + pt.nu_minus * euler_prof.delta_minus;
    pt.rhs = LogComplex::from_value(cplx(detThat0)) * LogComplex::from_ln(expo) * pt.D_L;
    pt.rel_err = relative_gap(pt.D_E, pt.rhs);
    res.max_rel_err = std::max(res.max_rel_err, pt.rel_err);
    res.points.push_back(pt);
  }
  return res;
}

// ---------------------------------------------------------------------------
// High-frequency growth fit: ln|D(lambda)| against c0 + c1*sqrt(lambda)
// versus c0 + c1*lambda over real positive lambda samples.
// ---------------------------------------------------------------------------

struct HighfreqFit {
  double c0_sqrt = 0.0, c1_sqrt = 0.0, r2_sqrt = 0.0;
  double c0_lin = 0.0, c1_lin = 0.0, r2_lin = 0.0;
  bool sqrt_wins = false;
};

namespace detail {

inline void least_squares_line(const std::vector<double>& x, const std::vector<double>& y,
                               double* c0, double* c1, double* r2) {
  size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw numerical_error("NonConvergence", "degenerate fit abscissae");
  *c1 = (n * sxy - sx * sy) / den;
  *c0 = (sy - *c1 * sx) / n;
  double ssr = 0, sst = 0, ym = sy / n;
  for (size_t i = 0; i < n; ++i) {
    double r = y[i] - (*c0 + *c1 * x[i]);
    ssr += r * r;
    sst += (y[i] - ym) * (y[i] - ym);
  }
  *r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
}

}  // namespace detail

inline HighfreqFit fit_highfreq(const std::vector<double>& lambda,
                                const std::vector<double>& ln_mod) {
  if (lambda.size() != ln_mod.size() || lambda.size() < 3)
    throw domain_error("InvalidParam", "need at least 3 matched samples");
  std::vector<double> sq(lambda.size());
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] <= 0.0) throw domain_error("InvalidParam", "samples must be positive");
    sq[i] = std::sqrt(lambda[i]);
  }
  HighfreqFit f;
  detail::least_squares_line(sq, ln_mod, &f.c0_sqrt, &f.c1_sqrt, &f.r2_sqrt);
  detail::least_squares_line(lambda, ln_mod, &f.c0_lin, &f.c1_lin, &f.r2_lin);
  f.sqrt_wins = f.r2_sqrt > f.r2_lin;
  return f;
}

// Unnormalized |D| samples over real lambda, with per-point limiting frames.
// The modulus is canonical (seed frames are orthonormal) so the growth rate
// of ln|D| is meaningful even without an analytic phase continuation.
inline std::vector<double> highfreq_samples(const EvansSystem& sys,
                                            const std::vector<double>& lambdas, double xi = 0.0,
                                            const EvansOpts& opts = {}) {
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) {
    cplx lam(l, 0.0);
    Mat fp = kato_seed(sys.limit(+1, lam, xi), true);
    Mat fm = kato_seed(sys.limit(-1, lam, xi), false);
    EvansValue v = evaluate(sys, fp, fm, lam, xi, opts);
    if (v.D.is_zero) throw numerical_error("NonConvergence", "vanishing sample on the real axis");
    out.push_back(v.D.log10_mod * LN10);  // natural log
  }
  return out;
}

// ---------------------------------------------------------------------------
// xi = 0 consistency of the multidimensional system: decoupling of the
// (rho, v1, F1) block from (v2, F2), agreement of the block Evans function
// with the one-dimensional one up to a constant factor, and equal winding
// numbers over a common contour.
// ---------------------------------------------------------------------------

struct Xi0Result {
  double coupling_residual = 0.0;  // max |cross-block entry| at xi = 0
  double ratio_variation = 0.0;    // relative spread of D_block / D_1d
  cplx ratio0;                     // the constant itself (first sample)
  int winding_1d = 0, winding_2d = 0;
  bool winding_valid_1d = false, winding_valid_2d = false;
  long cost_1d = 0, cost_2d = 0;
};

namespace detail {

// (rho, v1, F1) sub-block of the 5x5 system at xi = 0.
inline EvansSystem extract_block(const EvansSystem& full) {
  static const int idx[3] = {0, 1, 3};
  EvansSystem s;
  s.frame = full.frame;
  s.N = 3;
  s.M_plus = full.M_plus;
  s.M_minus = full.M_minus;
  auto at = full.matrix_at;
  auto lim = full.limit;
  s.matrix_at = [at](double x, cplx lam, double) {
    Mat A = at(x, lam, 0.0);
    Mat B(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) B(i, j) = A(idx[i], idx[j]);
    return B;
  };
  s.limit = [lim](int side, cplx lam, double) {
    Mat A = lim(side, lam, 0.0);
    Mat B(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) B(i, j) = A(idx[i], idx[j]);
    return B;
  };
  return s;
}

// Map from block variables (rho, v1, F1) to the 1D flux variables (f1, f2, u).
inline Mat block_map(double u) {
  Mat S(3, 3);
  S(0, 0) = -u;
  S(0, 1) = -1.0 / u;
  S(1, 2) = 1.0;
  S(2, 1) = 1.0;
  return S;
}

}  // namespace detail

inline Xi0Result check_xi0(const ShockProfile& euler_prof, double mu, double eta, double r,
                           double R, int n0, const std::vector<cplx>& ratio_lambdas,
                           const EvansOpts& eo = {}, double eta_refine = 0.2) {
  EvansSystem sys2d = assemble_euler_2d(euler_prof, mu, eta);
  EvansSystem sys1d = assemble_euler_1d(euler_prof);
  Xi0Result res;

  // decoupling residual across the profile and both limits
  {
    static const int blk[3] = {0, 1, 3};
    static const int oth[2] = {2, 4};
    auto scan = [&](const Mat& A) {
      for (int i : blk)
        for (int j : oth) {
          res.coupling_residual = std::max(res.coupling_residual, std::abs(A(i, j)));
          res.coupling_residual = std::max(res.coupling_residual, std::abs(A(j, i)));
        }
    };
    cplx lam(0.7, 0.3);
    for (int k = 0; k <= 40; ++k) {
      double x = -sys2d.M_minus + (sys2d.M_plus + sys2d.M_minus) * k / 40.0;
      scan(sys2d.matrix_at(x, lam, 0.0));
    }
    scan(sys2d.limit(+1, lam, 0.0));
    scan(sys2d.limit(-1, lam, 0.0));
  }

  // constant-ratio check of the block Evans function against the 1D one,
  // with seeds mapped through S so that per-point seed choices cancel
  {
    EvansSystem blk = detail::extract_block(sys2d);
    Mat Sp_inv = inverse(detail::block_map(euler_prof.u_plus));
    Mat Sm_inv = inverse(detail::block_map(1.0));
    bool first = true;
    for (cplx lam : ratio_lambdas) {
      Mat Vp = kato_seed(sys1d.limit(+1, lam, 0.0), true);
      Mat Vm = kato_seed(sys1d.limit(-1, lam, 0.0), false);
      LogComplex D1 = evaluate(sys1d, Vp, Vm, lam, 0.0, eo).D;
      LogComplex Db = evaluate(blk, Sp_inv * Vp, Sm_inv * Vm, lam, 0.0, eo).D;
      LogComplex ratio = Db / D1;
      if (first) {
        res.ratio0 = ratio.value();
        first = false;
      } else {
        res.ratio_variation =
            std::max(res.ratio_variation, std::abs(ratio.value() / res.ratio0 - 1.0));
      }
    }
  }

  // winding numbers over the common contour
  {
    Contour c = semiannulus(r, R, n0);
    ContourRunOpts ro;
    ro.eta = eta_refine;
    ro.evans = eo;
    ContourImage i1 = run_contour(sys1d, 0.0, c, ro);
    ContourImage i2 = run_contour(sys2d, 0.0, c, ro);
    res.winding_1d = i1.winding;
    res.winding_2d = i2.winding;
    res.winding_valid_1d = i1.valid;
    res.winding_valid_2d = i2.valid;
    res.cost_1d = i1.cost;
    res.cost_2d = i2.cost;
  }
  return res;
}

}  // namespace vs

#endif  // VS_ANALYSIS_HPP
