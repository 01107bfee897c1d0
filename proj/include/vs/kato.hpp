#ifndef VS_KATO_HPP
#define VS_KATO_HPP

#include <functional>
#include <vector>

#include "vs/eig.hpp"
#include "vs/ortho.hpp"

namespace vs {

struct Projector {
  Mat P;
  int rank = 0;
};

// Spectral projector onto the stable (unstable) invariant subspace, via the
// matrix sign function (robust through eigenvalue collisions inside the
// tracked cluster, where eigenvector sums cancel catastrophically).
inline Projector projector(const Mat& M, bool stable) {
  Projector pr;
  pr.P = sign_projector(M, stable);
  double tr = pr.P.trace().real();
  pr.rank = static_cast<int>(std::lround(tr));
  if (std::abs(tr - pr.rank) > 1e-6 || pr.rank < 0 || pr.rank > M.nr)
    throw numerical_error("SplittingFailure", "non-integral projector trace");
  return pr;
}

using MatFamily = std::function<Mat(cplx)>;

// Seed frame at the normalization point: deterministic orthonormal basis of
// the tracked invariant subspace.
inline Mat kato_seed(const Mat& M, bool stable) {
  Projector pr = projector(M, stable);
  return projector_basis(pr.P, pr.rank);
}

namespace detail {

// Smallest principal angle complement: acos of the smallest singular value of
// Qa^H Qb for orthonormal range frames Qa, Qb.
inline double principal_angle(const Mat& Pa, const Mat& Pb, const Mat& frame) {
  Mat Qa = orthonormalize(Pa * frame).Q;
  Mat Qb = orthonormalize(Pb * frame).Q;
  std::vector<double> sv = singular_values(Qa.adjoint() * Qb);
  double smin = sv.empty() ? 1.0 : sv.front();
  smin = std::min(1.0, std::max(-1.0, smin));
  return std::acos(smin);
}

// One discrete Kato step with internal bisection when the projector turns too
// fast: R_b = P_b (I + (P_b - P_a)/2) R_a, followed by range repair.
inline Mat kato_step(const MatFamily& fam, bool stable, cplx lam_a, const Mat& frame_a,
                     cplx lam_b, int depth) {
  Projector pa = projector(fam(lam_a), stable);
  Projector pb = projector(fam(lam_b), stable);
  double angle = PI / 2.0;  // subspace collapse counts as a maximal turn
  try {
    angle = principal_angle(pa.P, pb.P, frame_a);
  } catch (const Error& e) {
    if (e.kind() != "RankDeficient") throw;
  }
  if (angle >= PI / 8.0) {
    if (depth >= 20)
      throw numerical_error("PathTooCoarse", "Kato bisection exceeded depth 20");
    cplx mid = 0.5 * (lam_a + lam_b);
    Mat fm = kato_step(fam, stable, lam_a, frame_a, mid, depth + 1);
    return kato_step(fam, stable, mid, fm, lam_b, depth + 1);
  }
  Mat I = Mat::identity(pa.P.nr);
  Mat R = pb.P * (I + (pb.P - pa.P) * cplx(0.5)) * frame_a;
  return pb.P * R;  // range repair: enforce P_b R = R
}

}  // namespace detail

// One analytic-continuation step exposed for contour refinement.
inline Mat kato_step(const MatFamily& fam, bool stable, cplx lam_a, const Mat& frame_a,
                     cplx lam_b) {
  return detail::kato_step(fam, stable, lam_a, frame_a, lam_b, 0);
}

struct AnalyticBasis {
  std::vector<cplx> lambda_path;
  std::vector<Mat> frames;
};

inline AnalyticBasis kato_propagate(const MatFamily& fam, bool stable,
                                    const std::vector<cplx>& path, const Mat& seed) {
  if (path.empty()) throw domain_error("InvalidParam", "empty lambda path");
  AnalyticBasis b;
  b.lambda_path = path;
  b.frames.reserve(path.size());
  b.frames.push_back(seed);
  for (size_t k = 1; k < path.size(); ++k)
    b.frames.push_back(kato_step(fam, stable, path[k - 1], b.frames.back(), path[k]));
  return b;
}

// Lemma check: families related by fam_B = rho^{-1} T fam_A T^{-1} propagate
// frames related by S = T R once seeds are aligned. Returns the max deviation.
inline double kato_invariance_check(const MatFamily& fam_A, const MatFamily& fam_B,
                                    const Mat& T, bool stable, const std::vector<cplx>& path) {
  Mat seed_A = kato_seed(fam_A(path.front()), stable);
  Mat seed_B = T * seed_A;
  AnalyticBasis ra = kato_propagate(fam_A, stable, path, seed_A);
  AnalyticBasis rb = kato_propagate(fam_B, stable, path, seed_B);
  double dev = 0.0;
  for (size_t k = 0; k < path.size(); ++k)
    dev = std::max(dev, (T * ra.frames[k] - rb.frames[k]).frobenius());
  return dev;
}

}  // namespace vs

#endif  // VS_KATO_HPP
