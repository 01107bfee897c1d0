#ifndef VS_EIG_HPP
#define VS_EIG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "vs/matrix.hpp"

namespace vs {

namespace detail {

// Monic characteristic polynomial coefficients of det(x*I - M), by the
// Faddeev--LeVerrier recursion (exact up to rounding for these small sizes).
inline std::vector<cplx> charpoly(const Mat& M) {
  int n = M.nr;
  std::vector<cplx> c(static_cast<size_t>(n) + 1);
  c[static_cast<size_t>(n)] = 1.0;
  Mat Mk = M;
  c[static_cast<size_t>(n - 1)] = -Mk.trace();
  for (int k = 2; k <= n; ++k) {
    Mk = M * (Mk + Mat::identity(n) * c[static_cast<size_t>(n - k + 1)]);
    c[static_cast<size_t>(n - k)] = -Mk.trace() * (1.0 / k);
  }
  return c;
}

inline cplx poly_eval(const std::vector<cplx>& c, cplx x, cplx* dp = nullptr) {
  cplx v = 0.0, d = 0.0;
  for (size_t k = c.size(); k-- > 0;) {
    d = d * x + v;
    v = v * x + c[k];
  }
  if (dp) *dp = d;
  return v;
}

// Aberth--Ehrlich simultaneous root iteration with deterministic start.
inline std::vector<cplx> poly_roots(const std::vector<cplx>& c) {
  int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return {};
  double cauchy = 0.0;
  for (int i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(c[static_cast<size_t>(i)]));
  double radius = 1.0 + cauchy;
  std::vector<cplx> z(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * PI * (k + 0.35) / n + 0.4;
    z[static_cast<size_t>(k)] = 0.7 * radius * cplx(std::cos(th), std::sin(th));
  }
  bool converged = false;
  for (int it = 0; it < 400 && !converged; ++it) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      cplx d;
      cplx p = poly_eval(c, z[static_cast<size_t>(k)], &d);
      // backward-error style stopping bound
      double bound = 0.0, xp = 1.0;
      double ax = std::abs(z[static_cast<size_t>(k)]);
      for (size_t i = 0; i < c.size(); ++i) {
        bound += std::abs(c[i]) * xp;
        xp *= ax;
      }
      if (std::abs(p) <= 1e-15 * bound) continue;
      cplx w = (d != cplx(0.0)) ? p / d : p;
      cplx s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)]);
      cplx denom = 1.0 - w * s;
      cplx corr = (std::abs(denom) > 1e-300) ? w / denom : w;
      z[static_cast<size_t>(k)] -= corr;
      if (std::abs(corr) > 1e-14 * (1.0 + std::abs(z[static_cast<size_t>(k)]))) converged = false;
    }
  }
  if (!converged) {
    // check residuals before giving up
    for (int k = 0; k < n; ++k) {
      cplx p = poly_eval(c, z[static_cast<size_t>(k)]);
      double bound = 0.0, xp = 1.0;
      double ax = std::abs(z[static_cast<size_t>(k)]);
      for (size_t i = 0; i < c.size(); ++i) {
        bound += std::abs(c[i]) * xp;
        xp *= ax;
      }
      if (std::abs(p) > 1e-10 * (bound + 1e-300))
        throw numerical_error("NonConvergence", "polynomial root iteration did not converge");
    }
  }
  return z;
}

}  // namespace detail

struct EigenDecomp {
  std::vector<cplx> eigenvalues;            // sorted: ascending Re, ties by Im
  Mat right;                                // columns are unit right eigenvectors
  Mat left;                                 // columns, biorthogonal to right ones
  std::vector<std::vector<int>> groups;     // clusters within grouping tolerance
  double norm = 0.0;                        // Frobenius norm of the input
};

namespace detail {

inline Mat inverse_iteration(const Mat& M, cplx shift, int variant) {
  int n = M.nr;
  Mat A = M;
  for (int i = 0; i < n; ++i) A(i, i) -= shift;
  Lu f = lu_factor(A);
  if (f.singular) {
    // exact singularity: nudge deterministically
    for (int i = 0; i < n; ++i) A(i, i) -= cplx(1e-14, 1e-14);
    f = lu_factor(A);
  }
  Mat b(n, 1);
  for (int i = 0; i < n; ++i) b(i, 0) = cplx(std::sin(1.7 * (i + 1) * (variant + 1)) + 1.1, std::cos(0.9 * (i + 1) + variant));
  double nb = b.frobenius();
  b = b * (1.0 / nb);
  for (int it = 0; it < 4; ++it) {
    Mat x = lu_solve(f, b);
    double nx = x.frobenius();
    if (!(nx > 0.0) || !x.finite()) break;
    b = x * (1.0 / nx);
  }
  // fix phase deterministically: largest component real positive
  int imax = 0;
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    if (std::abs(b(i, 0)) > best) {
      best = std::abs(b(i, 0));
      imax = i;
    }
  cplx phase = b(imax, 0) / best;
  b = b * (cplx(1.0) / phase);
  double nb2 = b.frobenius();
  return b * (1.0 / nb2);
}

}  // namespace detail

// Eigendecomposition of a small (n<=6) dense complex matrix.
inline EigenDecomp eig_small(const Mat& M) {
  if (M.nr != M.nc) throw domain_error("InvalidParam", "eig_small requires a square matrix");
  if (!M.finite()) throw domain_error("InvalidParam", "eig_small requires finite entries");
  int n = M.nr;
  EigenDecomp e;
  e.norm = M.frobenius();
  std::vector<cplx> c = detail::charpoly(M);
  std::vector<cplx> roots = detail::poly_roots(c);
  std::sort(roots.begin(), roots.end(), [&](cplx x, cplx y) {
    double tol = 1e-12 * (1.0 + e.norm);
    if (std::abs(x.real() - y.real()) > tol) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  e.eigenvalues = roots;

  // grouping by chained proximity
  double gtol = 1e-8 * (1.0 + e.norm);
  for (int i = 0; i < n; ++i) {
    if (!e.groups.empty()) {
      int last = e.groups.back().back();
      if (std::abs(roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(last)]) <= gtol) {
        e.groups.back().push_back(i);
        continue;
      }
    }
    e.groups.push_back({i});
  }

  // cluster representatives: average eigenvalue per group; per-member shifts
  e.right = Mat(n, n);
  e.left = Mat(n, n);
  Mat Mh = M.adjoint();
  for (const auto& g : e.groups) {
    for (size_t m = 0; m < g.size(); ++m) {
      int j = g[m];
      cplx lam = roots[static_cast<size_t>(j)];
      double eps = 1e-11 * (1.0 + std::abs(lam));
      cplx shift = lam + eps * cplx(1.0 + static_cast<double>(m), 0.7);
      Mat v = detail::inverse_iteration(M, shift, static_cast<int>(m));
      Mat w = detail::inverse_iteration(Mh, std::conj(shift), static_cast<int>(m));
      e.right.set_col(j, v);
      e.left.set_col(j, w);
    }
    if (g.size() > 1) {
      // re-orthonormalize right vectors within the group (repeated eigenvalue)
      for (size_t m = 0; m < g.size(); ++m) {
        Mat v = e.right.col(g[m]);
        for (size_t p = 0; p < m; ++p) {
          Mat u = e.right.col(g[p]);
          cplx proj = (u.adjoint() * v)(0, 0);
          v = v - u * proj;
        }
        double nv = v.frobenius();
        if (nv < 1e-8) throw numerical_error("NonConvergence", "degenerate eigenvector cluster");
        e.right.set_col(g[m], v * (1.0 / nv));
      }
    }
  }

  // biorthonormalize left vectors: enforce W^H V = I group-block-wise
  for (const auto& g : e.groups) {
    int k = static_cast<int>(g.size());
    Mat V(n, k), W(n, k);
    for (int m = 0; m < k; ++m) {
      V.set_col(m, e.right.col(g[static_cast<size_t>(m)]));
      W.set_col(m, e.left.col(g[static_cast<size_t>(m)]));
    }
    Mat G = W.adjoint() * V;  // k x k
    Mat Wn = W * inverse(G).adjoint();
    for (int m = 0; m < k; ++m) e.left.set_col(g[static_cast<size_t>(m)], Wn.col(m));
  }

  // residual check
  for (int j = 0; j < n; ++j) {
    Mat v = e.right.col(j);
    Mat r = M * v - v * roots[static_cast<size_t>(j)];
    if (r.frobenius() > 1e-8 * (1.0 + e.norm))
      throw numerical_error("NonConvergence", "eigenpair residual target unreachable");
  }
  return e;
}

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations
// (unconditionally stable; used for Gram matrices with wide spectra).
inline std::vector<double> eig_hermitian(Mat A) {
  if (A.nr != A.nc) throw domain_error("InvalidParam", "eig_hermitian requires a square matrix");
  int n = A.nr;
  double scale = A.frobenius();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(A(p, q));
    if (std::sqrt(off) <= 1e-15 * (scale + 1e-300)) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double r = std::abs(A(p, q));
        if (r <= 1e-18 * (scale + 1e-300)) continue;
        cplx phase = A(p, q) / r;
        double tau = (A(q, q).real() - A(p, p).real()) / (2.0 * r);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        Mat J = Mat::identity(n);
        J(p, p) = c;
        J(p, q) = s;
        J(q, p) = -s * std::conj(phase);
        J(q, q) = c * std::conj(phase);
        A = J.adjoint() * A * J;
      }
  }
  std::vector<double> ev(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = A(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Matrix sign function by scaled Newton iteration. Requires no eigenvalues on
// the imaginary axis; unlike eigenvector sums it stays accurate through
// eigenvalue collisions inside the stable (or unstable) cluster.
inline Mat matrix_sign(const Mat& M) {
  Mat S = M;
  bool ok = false;
  for (int it = 0; it < 100; ++it) {
    cplx d = det(S);
    double c = std::pow(std::abs(d), -1.0 / S.nr);
    if (!(c > 0.0) || !std::isfinite(c)) c = 1.0;
    Mat Sc = S * c;
    Mat Snext = (Sc + inverse(Sc)) * 0.5;
    double diff = (Snext - S).frobenius();
    S = Snext;
    if (!S.finite()) break;
    if (diff <= 1e-13 * (S.frobenius() + 1e-300)) {
      ok = true;
      break;
    }
  }
  if (!ok || (S * S - Mat::identity(S.nr)).frobenius() > 1e-6)
    throw numerical_error("SplittingFailure", "matrix sign iteration did not converge");
  return S;
}

// Spectral projector onto the stable (Re < 0) or unstable invariant subspace.
inline Mat sign_projector(const Mat& M, bool stable) {
  Mat S = matrix_sign(M);
  Mat P = stable ? (Mat::identity(M.nr) - S) * 0.5 : (Mat::identity(M.nr) + S) * 0.5;
  return P;
}

// Deterministic orthonormal basis of the range of a rank-k projector, by
// greedy column pivoting with deflation.
inline Mat projector_basis(const Mat& P, int k) {
  int n = P.nr;
  Mat cols = P;
  Mat Q(n, k);
  for (int j = 0; j < k; ++j) {
    int pick = 0;
    double best = -1.0;
    for (int m = 0; m < n; ++m) {
      double nm = cols.col(m).frobenius();
      if (nm > best + 1e-15) {
        best = nm;
        pick = m;
      }
    }
    if (best < 1e-10)
      throw numerical_error("SplittingFailure", "projector rank below requested basis size");
    Mat q = cols.col(pick) * (1.0 / best);
    Q.set_col(j, q);
    for (int m = 0; m < n; ++m) {
      Mat cm = cols.col(m);
      cplx proj = (q.adjoint() * cm)(0, 0);
      cols.set_col(m, cm - q * proj);
    }
  }
  return Q;
}

// Singular values of a small matrix via the Hermitian eigenproblem of M^H M.
inline std::vector<double> singular_values(const Mat& M) {
  std::vector<double> ev = eig_hermitian(M.adjoint() * M);
  std::vector<double> s;
  s.reserve(ev.size());
  for (double lam : ev) s.push_back(std::sqrt(std::max(0.0, lam)));
  return s;
}

}  // namespace vs

#endif  // VS_EIG_HPP
