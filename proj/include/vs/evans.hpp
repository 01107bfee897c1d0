#ifndef VS_EVANS_HPP
#define VS_EVANS_HPP

#include "vs/kato.hpp"
#include "vs/logcomplex.hpp"
#include "vs/ode.hpp"
#include "vs/systems.hpp"

namespace vs {

struct EvansOpts {
  double rtol = 1e-8;
  double atol = 1e-10;
};

struct EvansValue {
  cplx lambda;
  double xi = 0.0;
  LogComplex D;
  LogComplex side_plus, side_minus;  // per-side radial contributions
  long cost = 0;                     // right-hand-side evaluation count
};

namespace detail {

// One-sided polar (continuous-orthogonalization) integration from the
// numerical infinity to the matching point x = 0. The radial variable is
// delta' = tr(Q^H A Q) - shift, with shift the sum of the limiting
// eigenvalues of the tracked subspace; under the e^{mu_j x} V_j data
// prescription the shift*M data term cancels exactly against the removed
// growth, so delta starts at ln det(R) of the seed's triangular factor.
struct SideResult {
  Mat Q;
  cplx delta;
  long cost = 0;
};

inline SideResult polar_side(const EvansSystem& sys, const Mat& seed, cplx lam, double xi,
                             cplx shift, double from, const EvansOpts& opts) {
  int N = sys.N, k = seed.nc;
  QrFrame qr = orthonormalize(seed);
  State s(static_cast<size_t>(N * k) + 1, cplx(0.0));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < k; ++j) s[static_cast<size_t>(i * k + j)] = qr.Q(i, j);
  s[static_cast<size_t>(N * k)] = ln_det_triangular(qr.Rfac);

  Field field = [&](double x, const State& y, State& dy) {
    Mat A = sys.matrix_at(x, lam, xi);
    Mat Q(N, k);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < k; ++j) Q(i, j) = y[static_cast<size_t>(i * k + j)];
    Mat AQ = A * Q;
    Mat M = Q.adjoint() * AQ;      // k x k
    Mat Qdot = AQ - Q * M;
    dy.resize(y.size());
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < k; ++j) dy[static_cast<size_t>(i * k + j)] = Qdot(i, j);
    dy[static_cast<size_t>(N * k)] = M.trace() - shift;
  };

  StepHook renorm = [&](double, State& y) {
    Mat Q(N, k);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < k; ++j) Q(i, j) = y[static_cast<size_t>(i * k + j)];
    Mat G = Q.adjoint() * Q;
    double drift = (G - Mat::identity(k)).frobenius();
    if (drift >= 1e-10) {
      QrFrame f = orthonormalize(Q);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < k; ++j) y[static_cast<size_t>(i * k + j)] = f.Q(i, j);
      y[static_cast<size_t>(N * k)] += ln_det_triangular(f.Rfac);
    }
    return true;
  };

  OdeOpts oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  OdeStats st;
  State out = integrate_adaptive(field, from, 0.0, s, oo, &st, renorm);
  SideResult r;
  r.Q = Mat(N, k);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < k; ++j) r.Q(i, j) = out[static_cast<size_t>(i * k + j)];
  r.delta = out[static_cast<size_t>(N * k)];
  r.cost = st.n_rhs;
  return r;
}

}  // namespace detail

// Evaluate the Evans function at one frequency point, with the initializing
// frames (Kato bases) supplied for both spatial infinities.
inline EvansValue evaluate(const EvansSystem& sys, const Mat& frame_plus,
                           const Mat& frame_minus, cplx lam, double xi,
                           const EvansOpts& opts = {}) {
  Splitting sp = splitting(sys, lam, xi);
  if (frame_plus.nc != sp.k_plus || frame_minus.nc != sp.k_minus_unstable)
    throw domain_error("InvalidParam", "initializing frame ranks do not match the splitting");
  detail::SideResult plus =
      detail::polar_side(sys, frame_plus, lam, xi, sp.sum_plus, sys.M_plus, opts);
  detail::SideResult minus =
      detail::polar_side(sys, frame_minus, lam, xi, sp.sum_minus, -sys.M_minus, opts);

  Mat F = hcat(plus.Q, minus.Q);
  std::vector<double> sv = singular_values(F);
  if (sv.front() <= 0.0 || sv.back() / sv.front() > 1e14)
    throw numerical_error("FrameDegeneracy",
                          "concatenated frame conditioning exceeds 1e14 at lambda=(" +
                              std::to_string(lam.real()) + "," + std::to_string(lam.imag()) + ")");
  cplx d = det(F);
  EvansValue v;
  v.lambda = lam;
  v.xi = xi;
  v.side_plus = LogComplex::from_ln(plus.delta);
  v.side_minus = LogComplex::from_ln(minus.delta);
  v.D = LogComplex::from_value(d) * v.side_plus * v.side_minus;
  v.cost = plus.cost + minus.cost;
  return v;
}

// Divide every value by D(lambda_star); one unnormalized copy is the caller's
// responsibility to retain where needed.
inline std::vector<EvansValue> normalize(std::vector<EvansValue> values, cplx lambda_star) {
  const EvansValue* ref = nullptr;
  for (const auto& v : values)
    if (v.lambda == lambda_star) {
      ref = &v;
      break;
    }
  if (!ref) throw domain_error("InvalidParam", "lambda_star not present in value list");
  if (ref->D.is_zero)
    throw numerical_error("ZeroAtNormalization", "Evans value at lambda_star is exactly zero");
  LogComplex d0 = ref->D;
  for (auto& v : values) v.D = v.D / d0;
  return values;
}

}  // namespace vs

#endif  // VS_EVANS_HPP
