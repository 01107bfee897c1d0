#ifndef VS_MATRIX_HPP
#define VS_MATRIX_HPP

#include <array>
#include <cmath>
#include <initializer_list>

#include "vs/common.hpp"

namespace vs {

// Small dense complex matrix with fixed capacity 6x6 (no heap allocation).
// Also used for rectangular frames (columns spanning a subspace).
struct Mat {
  int nr = 0, nc = 0;
  std::array<cplx, 36> a{};

  Mat() = default;
  Mat(int rows, int cols) : nr(rows), nc(cols) {
    if (rows < 0 || cols < 0 || rows > 6 || cols > 6)
      throw domain_error("InvalidParam", "matrix dimension out of range (max 6)");
  }
  Mat(int rows, int cols, std::initializer_list<cplx> vals) : Mat(rows, cols) {
    int i = 0;
    for (cplx v : vals) a[static_cast<size_t>(i++)] = v;
  }

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i * nc + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i * nc + j)]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  Mat col(int j) const {
    Mat c(nr, 1);
    for (int i = 0; i < nr; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  void set_col(int j, const Mat& c) {
    for (int i = 0; i < nr; ++i) (*this)(i, j) = c(i, 0);
  }

  Mat adjoint() const {
    Mat m(nc, nr);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Mat operator+(const Mat& o) const {
    Mat m(nr, nc);
    for (int i = 0; i < nr * nc; ++i) m.a[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] + o.a[static_cast<size_t>(i)];
    return m;
  }
  Mat operator-(const Mat& o) const {
    Mat m(nr, nc);
    for (int i = 0; i < nr * nc; ++i) m.a[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] - o.a[static_cast<size_t>(i)];
    return m;
  }
  Mat operator*(cplx s) const {
    Mat m(nr, nc);
    for (int i = 0; i < nr * nc; ++i) m.a[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] * s;
    return m;
  }
  Mat operator*(const Mat& o) const {
    Mat m(nr, o.nc);
    for (int i = 0; i < nr; ++i)
      for (int k = 0; k < nc; ++k) {
        cplx x = (*this)(i, k);
        if (x == cplx(0.0)) continue;
        for (int j = 0; j < o.nc; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (int i = 0; i < nr * nc; ++i) s += std::norm(a[static_cast<size_t>(i)]);
    return std::sqrt(s);
  }
  double max_abs() const {
    double s = 0.0;
    for (int i = 0; i < nr * nc; ++i) s = std::max(s, std::abs(a[static_cast<size_t>(i)]));
    return s;
  }
  bool finite() const {
    for (int i = 0; i < nr * nc; ++i)
      if (!std::isfinite(a[static_cast<size_t>(i)].real()) || !std::isfinite(a[static_cast<size_t>(i)].imag()))
        return false;
    return true;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < nr; ++i) t += (*this)(i, i);
    return t;
  }
};

// Concatenate columns of two frames with matching row counts.
inline Mat hcat(const Mat& A, const Mat& B) {
  Mat m(A.nr, A.nc + B.nc);
  for (int i = 0; i < A.nr; ++i) {
    for (int j = 0; j < A.nc; ++j) m(i, j) = A(i, j);
    for (int j = 0; j < B.nc; ++j) m(i, A.nc + j) = B(i, j);
  }
  return m;
}

// LU decomposition with partial pivoting, in place on a copy.
// Returns false if exactly singular; det accumulates pivots and sign.
struct Lu {
  Mat lu;
  std::array<int, 6> piv{};
  cplx det = 1.0;
  bool singular = false;
};

inline Lu lu_factor(const Mat& M) {
  Lu f;
  f.lu = M;
  int n = M.nr;
  for (int i = 0; i < n; ++i) f.piv[static_cast<size_t>(i)] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(f.lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.piv[static_cast<size_t>(k)], f.piv[static_cast<size_t>(p)]);
      f.det = -f.det;
    }
    cplx pivot = f.lu(k, k);
    if (pivot == cplx(0.0)) {
      f.singular = true;
      f.det = 0.0;
      return f;
    }
    f.det *= pivot;
    for (int i = k + 1; i < n; ++i) {
      cplx m = f.lu(i, k) / pivot;
      f.lu(i, k) = m;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

inline Mat lu_solve(const Lu& f, const Mat& B) {
  int n = f.lu.nr;
  Mat X(n, B.nc);
  for (int c = 0; c < B.nc; ++c) {
    std::array<cplx, 6> y{};
    for (int i = 0; i < n; ++i) {
      cplx s = B(f.piv[static_cast<size_t>(i)], c);
      for (int j = 0; j < i; ++j) s -= f.lu(i, j) * y[static_cast<size_t>(j)];
      y[static_cast<size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
      cplx s = y[static_cast<size_t>(i)];
      for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * X(j, c);
      X(i, c) = s / f.lu(i, i);
    }
  }
  return X;
}

inline cplx det(const Mat& M) { return lu_factor(M).det; }

inline Mat inverse(const Mat& M) {
  Lu f = lu_factor(M);
  if (f.singular) throw numerical_error("SingularMatrix", "matrix inverse of singular matrix");
  return lu_solve(f, Mat::identity(M.nr));
}

}  // namespace vs

#endif  // VS_MATRIX_HPP
