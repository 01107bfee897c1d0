#ifndef VS_ORTHO_HPP
#define VS_ORTHO_HPP

#include <cmath>

#include "vs/matrix.hpp"

namespace vs {

struct QrFrame {
  Mat Q;     // orthonormal columns, same span as input
  Mat Rfac;  // upper triangular, input = Q * Rfac
};

// Modified Gram--Schmidt with a second orthogonalization pass.
// Throws RankDeficient when near linear dependence is detected.
inline QrFrame orthonormalize(const Mat& F) {
  int n = F.nr, k = F.nc;
  QrFrame out;
  out.Q = F;
  out.Rfac = Mat(k, k);
  double scale = 0.0;
  for (int j = 0; j < k; ++j) scale = std::max(scale, F.col(j).frobenius());
  if (scale == 0.0) throw numerical_error("RankDeficient", "zero frame");
  for (int j = 0; j < k; ++j) {
    Mat v = out.Q.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        Mat qi = out.Q.col(i);
        cplx r = (qi.adjoint() * v)(0, 0);
        out.Rfac(i, j) += r;
        v = v - qi * r;
      }
    }
    double nv = v.frobenius();
    if (nv <= 1e-12 * scale)
      throw numerical_error("RankDeficient", "near-dependent frame column");
    out.Rfac(j, j) = nv;
    out.Q.set_col(j, v * (1.0 / nv));
  }
  (void)n;
  return out;
}

// ln det(Rfac) for a triangular factor with positive real diagonal.
inline cplx ln_det_triangular(const Mat& R) {
  cplx s = 0.0;
  for (int i = 0; i < R.nr; ++i) s += std::log(R(i, i));
  return s;
}

}  // namespace vs

#endif  // VS_ORTHO_HPP
