#ifndef VS_SYSTEMS_HPP
#define VS_SYSTEMS_HPP

#include <functional>
#include <memory>

#include "vs/eig.hpp"
#include "vs/gas.hpp"
#include "vs/matrix.hpp"

namespace vs {

enum class FrameTag { Euler1d, Lagrange1d, PseudoLagrange1d, Euler2d, PseudoLagrange2d };

// Variants of the Lagrangian generator:
//   Paper:      alpha = P'(tau) - ubar'/tau^2 (as displayed)
//   Similarity: alpha = P'(tau) (pointwise similar to the Eulerian matrix)
//   Flow:       similarity variant plus the conjugator-derivative term, so that
//               solution flows are exactly conjugate (used by ratio checks)
enum class LagMode { Paper, Similarity, Flow };

struct EvansSystem {
  FrameTag frame = FrameTag::Euler1d;
  int N = 3;
  double M_plus = 0.0, M_minus = 0.0;  // domain in the frame's own variable
  std::function<Mat(double, cplx, double)> matrix_at;  // (coordinate, lambda, xi)
  std::function<Mat(int /*side: +1,-1*/, cplx, double)> limit;
};

// ---------------------------------------------------------------------------
// pointwise coefficient matrices
// ---------------------------------------------------------------------------

inline double p_prime_rho(const GasModel& m, double rho) {
  return m.a * m.gamma * std::pow(rho, m.gamma - 1.0);
}
inline double P_prime_tau(const GasModel& m, double tau) {
  return m.a * m.gamma * std::pow(tau, -m.gamma - 1.0);
}

inline Mat euler_1d_matrix(const GasModel& m, double u, cplx lam) {
  double rho = 1.0 / u;
  double beta = (u * u + p_prime_rho(m, rho)) / u;
  Mat A(3, 3);
  A(0, 0) = -lam / u;
  A(0, 2) = -lam * rho / u;
  A(1, 0) = -lam;
  A(2, 0) = -beta;
  A(2, 1) = 1.0;
  A(2, 2) = 2.0 - beta * rho;
  return A;
}

namespace detail {

// Conjugator between (f, u) and (tau, w, w') evaluated with a complex
// argument so that exact derivatives are available via complex step.
inline std::array<cplx, 9> conj_entries(const GasModel& m, cplx u, bool hatted) {
  cplx rho = 1.0 / u;
  cplx pp = m.a * m.gamma * std::pow(rho, cplx(m.gamma - 1.0));
  cplx beta = (u * u + pp) / u;
  // M1 = [[-u, -rho, 0], [-beta*u, -2, 1], [0, 1, 0]], columns scaled by
  // diag(-1/tau^2, 1, 1) with tau = u; hatted variant appends diag(1, 1, rho).
  cplx s0 = -1.0 / (u * u);
  cplx s2 = hatted ? rho : cplx(1.0);
  return {-u * s0,        -rho,     cplx(0.0),
          -beta * u * s0, cplx(-2), s2,
          cplx(0.0),      cplx(1.0), cplx(0.0)};
}

inline Mat conj_matrix(const GasModel& m, double u, bool hatted) {
  auto e = conj_entries(m, cplx(u), hatted);
  Mat T(3, 3);
  for (int i = 0; i < 9; ++i) T.a[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
  return T;
}

// dT^/du by complex step (entries are real-analytic in u).
inline Mat conj_matrix_du(const GasModel& m, double u, bool hatted) {
  const double h = 1e-100;
  auto e = conj_entries(m, cplx(u, h), hatted);
  Mat D(3, 3);
  for (int i = 0; i < 9; ++i) D.a[static_cast<size_t>(i)] = e[static_cast<size_t>(i)].imag() / h;
  return D;
}

}  // namespace detail

inline Mat lagrange_1d_matrix(const GasModel& m, double tau, cplx lam, LagMode mode) {
  double Pp = P_prime_tau(m, tau);
  double g = profile_g(m, tau);
  double alpha0 = (mode == LagMode::Paper) ? Pp - g / tau : Pp;
  Mat B(3, 3);
  B(0, 0) = -lam;
  B(0, 2) = 1.0;
  B(1, 2) = 1.0;
  B(2, 0) = lam * alpha0 * tau;
  B(2, 1) = lam * tau;
  B(2, 2) = tau * (1.0 - alpha0);
  if (mode == LagMode::Flow && g != 0.0) {
    // subtract rho^{-1} T^^{-1} T^' = tau * g(tau) * T^^{-1} dT^/du
    Mat That = detail::conj_matrix(m, tau, true);
    Mat dThat = detail::conj_matrix_du(m, tau, true);
    Mat corr = inverse(That) * dThat * cplx(tau * g);
    B = B - corr;
  }
  return B;
}

// 2D Eulerian first-order system in flux variables (rho, v1, v2, F1, F2):
//   F1 = (2mu+eta) v1' + i xi (mu+eta) v2 - (vbar1^2 + p') rho - 2 rhobar vbar1 v1
//   F2 = mu v2' + i xi (mu+eta) v1 - rhobar vbar1 v2
inline Mat euler_2d_matrix(const GasModel& m, double u, double g, cplx lam, double xi) {
  double rho = 1.0 / u;
  double rho_p = -g / (u * u);  // d rhobar / dx
  double pp = p_prime_rho(m, rho);
  double b = u * u + pp;
  double mflux = rho * u;  // = 1 under the normalization; kept symbolic
  double mu = m.mu, eta = m.eta;
  double c1 = 1.0 / (2.0 * mu + eta), c2 = 1.0 / mu;
  cplx ixe = cplx(0.0, xi) * (mu + eta);
  Mat A(5, 5);
  // v1 row
  A(1, 0) = c1 * b;
  A(1, 1) = c1 * 2.0 * mflux;
  A(1, 2) = -c1 * ixe;
  A(1, 3) = c1;
  // v2 row
  A(2, 1) = -c2 * ixe;
  A(2, 2) = c2 * mflux;
  A(2, 4) = c2;
  // rho row: -(1/u) [ (lam + g) rho_comp + rhobar' v1 + i xi rhobar v2 + rhobar v1' ]
  A(0, 0) = -(lam + g) / u - rho / u * A(1, 0);
  A(0, 1) = -rho_p / u - rho / u * A(1, 1);
  A(0, 2) = -cplx(0.0, xi) * rho / u - rho / u * A(1, 2);
  A(0, 3) = -rho / u * A(1, 3);
  // F1 row
  A(3, 0) = lam * u;
  A(3, 1) = lam * rho + mu * xi * xi;
  A(3, 2) = cplx(0.0, xi) * mflux;
  // F2 row
  A(4, 0) = cplx(0.0, xi) * pp;
  A(4, 2) = lam * rho + (2.0 * mu + eta) * xi * xi;
  return A;
}

// ---------------------------------------------------------------------------
// system assembly
// ---------------------------------------------------------------------------

inline EvansSystem assemble_euler_1d(const ShockProfile& p) {
  if (p.frame != Frame::Eulerian) throw domain_error("InvalidParam", "Eulerian profile required");
  EvansSystem s;
  s.frame = FrameTag::Euler1d;
  s.N = 3;
  s.M_plus = p.M_plus;
  s.M_minus = p.M_minus;
  GasModel m = p.model;
  double up = p.u_plus;
  auto prof = std::make_shared<ShockProfile>(p);
  s.matrix_at = [m, prof](double x, cplx lam, double) {
    return euler_1d_matrix(m, prof->value(x), lam);
  };
  s.limit = [m, up](int side, cplx lam, double) {
    return euler_1d_matrix(m, side > 0 ? up : 1.0, lam);
  };
  return s;
}

inline EvansSystem assemble_lagrange_1d(const ShockProfile& p, LagMode mode = LagMode::Paper) {
  if (p.frame != Frame::Lagrangian)
    throw domain_error("InvalidParam", "Lagrangian profile required");
  EvansSystem s;
  s.frame = FrameTag::Lagrange1d;
  s.N = 3;
  s.M_plus = p.M_plus;
  s.M_minus = p.M_minus;
  GasModel m = p.model;
  double tp = p.u_plus;
  auto prof = std::make_shared<ShockProfile>(p);
  s.matrix_at = [m, prof, mode](double y, cplx lam, double) {
    return lagrange_1d_matrix(m, prof->value(y), lam, mode);
  };
  s.limit = [m, tp, mode](int side, cplx lam, double) {
    return lagrange_1d_matrix(m, side > 0 ? tp : 1.0, lam, mode);
  };
  return s;
}

inline EvansSystem assemble_euler_2d(const ShockProfile& p, double mu, double eta) {
  if (p.frame != Frame::Eulerian) throw domain_error("InvalidParam", "Eulerian profile required");
  if (!(mu > 0.0) || !(mu + eta > 0.0))
    throw domain_error("InvalidParam", "need mu > 0 and mu + eta > 0");
  EvansSystem s;
  s.frame = FrameTag::Euler2d;
  s.N = 5;
  s.M_plus = p.M_plus;
  s.M_minus = p.M_minus;
  GasModel m = p.model;
  m.mu = mu;
  m.eta = eta;
  double up = p.u_plus;
  auto prof = std::make_shared<ShockProfile>(p);
  s.matrix_at = [m, prof](double x, cplx lam, double xi) {
    double u = prof->value(x);
    return euler_2d_matrix(m, u, profile_g(m, u), lam, xi);
  };
  s.limit = [m, up](int side, cplx lam, double xi) {
    return euler_2d_matrix(m, side > 0 ? up : 1.0, 0.0, lam, xi);
  };
  return s;
}

// Independent-variable rescaling dy/dx = rhobar of an Eulerian-frame system.
inline EvansSystem assemble_pseudo_lagrangian(const EvansSystem& base, const ShockProfile& p) {
  if (base.frame != FrameTag::Euler1d && base.frame != FrameTag::Euler2d)
    throw domain_error("InvalidParam", "pseudo-Lagrangian base must be Eulerian");
  if (p.frame != Frame::Eulerian || p.ymap.empty())
    throw domain_error("InvalidParam", "Eulerian profile with y-map required");
  EvansSystem s;
  s.frame = base.frame == FrameTag::Euler1d ? FrameTag::PseudoLagrange1d : FrameTag::PseudoLagrange2d;
  s.N = base.N;
  s.M_plus = p.y_of_x(p.M_plus);
  s.M_minus = -p.y_of_x(-p.M_minus);
  auto prof = std::make_shared<ShockProfile>(p);
  auto inner_at = base.matrix_at;
  auto inner_lim = base.limit;
  double up = p.u_plus;
  s.matrix_at = [prof, inner_at](double y, cplx lam, double xi) {
    double x = prof->x_of_y(y);
    double dxdy = prof->value(x);  // 1/rho
    return inner_at(x, lam, xi) * cplx(dxdy);
  };
  s.limit = [inner_lim, up](int side, cplx lam, double xi) {
    double dxdy = side > 0 ? up : 1.0;
    return inner_lim(side, lam, xi) * cplx(dxdy);
  };
  return s;
}

// ---------------------------------------------------------------------------
// conjugator and splitting
// ---------------------------------------------------------------------------

struct Conjugator {
  std::function<Mat(double)> T_at;     // product of the two displayed factors
  std::function<Mat(double)> That_at;  // with the dw'/dy chain-rule factor
  double detT0 = 0.0;
  double detThat0 = 0.0;
};

inline Conjugator conjugator(const ShockProfile& euler) {
  if (euler.frame != Frame::Eulerian)
    throw domain_error("InvalidParam", "conjugator needs the Eulerian profile");
  Conjugator c;
  GasModel m = euler.model;
  auto prof = std::make_shared<ShockProfile>(euler);
  c.T_at = [m, prof](double x) { return detail::conj_matrix(m, prof->value(x), false); };
  c.That_at = [m, prof](double x) { return detail::conj_matrix(m, prof->value(x), true); };
  c.detT0 = det(c.T_at(0.0)).real();
  c.detThat0 = det(c.That_at(0.0)).real();
  return c;
}

struct Splitting {
  int k_plus = 0;            // dim stable subspace of the + limit
  int k_minus_unstable = 0;  // dim unstable subspace of the - limit
  Mat basis_plus;            // stable eigenvectors, descending |Re eigenvalue|
  Mat basis_minus;           // unstable eigenvectors, descending |Re eigenvalue|
  std::vector<cplx> eigs_plus, eigs_minus;
  cplx sum_plus = 0.0, sum_minus = 0.0;  // eigenvalue sums of the tracked halves
};

namespace detail {

// Tracked half-spectrum data via the sign-function projector: the dimension is
// the (integral) projector trace and the eigenvalue sum is tr(M P), both of
// which stay accurate through collisions inside the tracked cluster.
inline void half_basis(const Mat& M, bool stable, Mat* basis, std::vector<cplx>* eigs, cplx* sum) {
  Mat P = sign_projector(M, stable);
  double tr = P.trace().real();
  int k = static_cast<int>(std::lround(tr));
  if (std::abs(tr - k) > 1e-6 || k < 0 || k > M.nr)
    throw numerical_error("SplittingFailure", "non-integral projector trace");
  *basis = projector_basis(P, k);
  *sum = (M * P).trace();
  eigs->clear();
  try {
    EigenDecomp e = eig_small(M);
    for (cplx lam : e.eigenvalues)
      if ((lam.real() < 0.0) == stable) eigs->push_back(lam);
    std::sort(eigs->begin(), eigs->end(), [](cplx a, cplx b) {
      return std::abs(a.real()) > std::abs(b.real());
    });
  } catch (const Error&) {
    // diagnostics only: the engine needs just the dimension and the sum
  }
}

}  // namespace detail

inline Splitting splitting(const EvansSystem& s, cplx lam, double xi) {
  Splitting sp;
  Mat Ap = s.limit(+1, lam, xi);
  Mat Am = s.limit(-1, lam, xi);
  detail::half_basis(Ap, true, &sp.basis_plus, &sp.eigs_plus, &sp.sum_plus);
  detail::half_basis(Am, false, &sp.basis_minus, &sp.eigs_minus, &sp.sum_minus);
  sp.k_plus = sp.basis_plus.nc;
  sp.k_minus_unstable = sp.basis_minus.nc;
  if (sp.k_plus + sp.k_minus_unstable != s.N)
    throw numerical_error("SplittingFailure", "stable/unstable dimensions do not sum to N");
  return sp;
}

}  // namespace vs

#endif  // VS_SYSTEMS_HPP
