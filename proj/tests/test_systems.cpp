#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vs/systems.hpp"

using namespace vs;

namespace {

ShockProfile euler_profile(double u_plus) {
  EndStateSolve es = solve_endstates(5.0 / 3.0, u_plus);
  GasModel m;
  m.gamma = 5.0 / 3.0;
  m.a = es.a;
  return compute_profile(m, es.states, Frame::Eulerian);
}

ShockProfile lagrange_profile(double u_plus) {
  EndStateSolve es = solve_endstates(5.0 / 3.0, u_plus);
  GasModel m;
  m.gamma = 5.0 / 3.0;
  m.a = es.a;
  return compute_profile(m, es.states, Frame::Lagrangian);
}

}  // namespace

TEST_CASE("pointwise conjugation of the 1D generators") {
  ShockProfile p = euler_profile(0.2733);
  GasModel m = p.model;
  for (cplx lam : {cplx(1.0, 0.0), cplx(0.3, 0.9), cplx(-0.2, 2.0)}) {
    for (double u : {0.30, 0.45, 0.63665, 0.85, 0.98}) {
      Mat A = euler_1d_matrix(m, u, lam);
      Mat That = detail::conj_matrix(m, u, true);
      Mat lhs = (inverse(That) * A * That) * cplx(u);  // rhobar^{-1} = u
      Mat rhs = lagrange_1d_matrix(m, u, lam, LagMode::Similarity);
      CHECK((lhs - rhs).max_abs() < 1e-8);
    }
  }
}

TEST_CASE("Lagrangian generator variants differ only through alpha") {
  ShockProfile p = euler_profile(0.2733);
  GasModel m = p.model;
  cplx lam(0.7, -0.4);
  for (double tau : {0.35, 0.63665, 0.9}) {
    double g = profile_g(m, tau);
    Mat Bp = lagrange_1d_matrix(m, tau, lam, LagMode::Paper);
    Mat Bs = lagrange_1d_matrix(m, tau, lam, LagMode::Similarity);
    Mat D = Bp - Bs;
    CHECK(std::abs(D(2, 0) - (-lam * g)) < 1e-12);
    CHECK(std::abs(D(2, 2) - cplx(g)) < 1e-12);
    D(2, 0) = 0.0;
    D(2, 2) = 0.0;
    CHECK(D.max_abs() < 1e-14);
  }
  // at the endstates g = 0 and all variants coincide
  for (double tau : {0.2733, 1.0}) {
    Mat Bp = lagrange_1d_matrix(m, tau, lam, LagMode::Paper);
    Mat Bf = lagrange_1d_matrix(m, tau, lam, LagMode::Flow);
    CHECK((Bp - Bf).max_abs() < 1e-13);
  }
}

TEST_CASE("conjugator determinants at the wave center") {
  ShockProfile p = euler_profile(0.2733);
  Conjugator c = conjugator(p);
  CHECK(c.detThat0 == doctest::Approx(-2.467166805).epsilon(1e-7));
  double rho0 = 1.0 / p.value(0.0);
  CHECK(c.detThat0 == doctest::Approx(c.detT0 * rho0).epsilon(1e-12));
  CHECK((c.T_at(0.0) - detail::conj_matrix(p.model, p.value(0.0), false)).max_abs() == 0.0);
}

TEST_CASE("splitting dimensions and tracked sums, 1D") {
  ShockProfile pe = euler_profile(0.2733);
  ShockProfile pl = lagrange_profile(0.2733);
  for (const EvansSystem& s : {assemble_euler_1d(pe), assemble_lagrange_1d(pl)}) {
    Splitting sp = splitting(s, cplx(1.0, 0.5), 0.0);
    CHECK(sp.k_plus == 2);
    CHECK(sp.k_minus_unstable == 1);
    CHECK((sp.basis_plus.adjoint() * sp.basis_plus - Mat::identity(2)).max_abs() < 1e-10);
    CHECK((sp.basis_minus.adjoint() * sp.basis_minus - Mat::identity(1)).max_abs() < 1e-10);
    cplx se = 0.0;
    for (cplx l : sp.eigs_plus) se += l;
    CHECK(std::abs(sp.sum_plus - se) < 1e-8 * (1.0 + std::abs(se)));
  }
}

TEST_CASE("splitting dimensions, 2D") {
  ShockProfile p = euler_profile(0.2733);
  EvansSystem s = assemble_euler_2d(p, 0.5, 0.0);
  Splitting sp = splitting(s, cplx(1.0, 0.5), 0.7);
  CHECK(sp.k_plus == 3);
  CHECK(sp.k_minus_unstable == 2);
  CHECK_THROWS_AS((void)assemble_euler_2d(p, -0.5, 0.0), Error);
  CHECK_THROWS_AS((void)assemble_euler_2d(p, 0.5, -0.6), Error);
}

TEST_CASE("2D generator encodes the linearized equations (dispersion oracle)") {
  // For constant coefficients every eigenpair (nu, w) of the limit matrix must
  // satisfy the second-order linearized isentropic equations in conservative
  // form. This re-derives the physics independently of how the first-order
  // reduction chose its flux variables.
  ShockProfile p = euler_profile(0.2733);
  double mu = 0.5, eta = 0.1;
  EvansSystem s = assemble_euler_2d(p, mu, eta);
  GasModel m = p.model;
  m.mu = mu;
  m.eta = eta;
  for (int side : {+1, -1}) {
    double u = side > 0 ? p.u_plus : 1.0;
    double rho = 1.0 / u;
    double pp = p_prime_rho(m, rho);
    double b = u * u + pp;
    for (double xi : {0.0, 0.8}) {
      cplx lam(0.9, 0.4);
      Mat A = s.limit(side, lam, xi);
      EigenDecomp e = eig_small(A);
      for (int j = 0; j < 5; ++j) {
        cplx nu = e.eigenvalues[static_cast<size_t>(j)];
        Mat w = e.right.col(j);
        cplx r = w(0, 0), v1 = w(1, 0), v2 = w(2, 0);
        cplx ixi(0.0, xi);
        cplx mass = (lam + u * nu) * r + rho * (nu * v1 + ixi * v2);
        cplx mom1 = lam * (rho * v1 + u * r) + nu * (2.0 * v1 + b * r) + ixi * v2 -
                    ((2.0 * mu + eta) * nu * nu * v1 + ixi * (mu + eta) * nu * v2 -
                     mu * xi * xi * v1);
        cplx mom2 = lam * rho * v2 + nu * v2 + ixi * pp * r -
                    (mu * nu * nu * v2 + ixi * (mu + eta) * nu * v1 -
                     (2.0 * mu + eta) * xi * xi * v2);
        double scale = 1.0 + std::abs(nu) * std::abs(nu);
        CHECK(std::abs(mass) < 1e-9 * scale);
        CHECK(std::abs(mom1) < 1e-9 * scale);
        CHECK(std::abs(mom2) < 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("2D system decouples at xi = 0") {
  ShockProfile p = euler_profile(0.06);
  EvansSystem s = assemble_euler_2d(p, 0.5, 0.0);
  static const int blk[3] = {0, 1, 3};
  static const int oth[2] = {2, 4};
  double worst = 0.0;
  cplx lam(0.7, 0.3);
  for (double x : {-p.M_minus, -1.0, 0.0, 2.0, p.M_plus}) {
    Mat A = s.matrix_at(x, lam, 0.0);
    for (int i : blk)
      for (int j : oth) worst = std::max({worst, std::abs(A(i, j)), std::abs(A(j, i))});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("pseudo-Lagrangian rescaling: domain map and limits") {
  ShockProfile p = euler_profile(0.2733);
  EvansSystem base = assemble_euler_1d(p);
  EvansSystem pl = assemble_pseudo_lagrangian(base, p);
  CHECK(pl.M_plus == doctest::Approx(p.y_of_x(p.M_plus)));
  CHECK(pl.M_minus == doctest::Approx(-p.y_of_x(-p.M_minus)));
  cplx lam(1.2, -0.3);
  // limits pick up the factor dx/dy = u at the endstates
  CHECK((pl.limit(+1, lam, 0.0) - base.limit(+1, lam, 0.0) * cplx(p.u_plus)).max_abs() < 1e-14);
  CHECK((pl.limit(-1, lam, 0.0) - base.limit(-1, lam, 0.0)).max_abs() < 1e-14);
  // interior: y = 0 maps to x = 0, factor u(0)
  Mat lhs = pl.matrix_at(0.0, lam, 0.0);
  Mat rhs = base.matrix_at(0.0, lam, 0.0) * cplx(p.value(0.0));
  CHECK((lhs - rhs).max_abs() < 1e-10);
  // rejects non-Eulerian bases
  ShockProfile pL = lagrange_profile(0.2733);
  CHECK_THROWS_AS((void)assemble_pseudo_lagrangian(assemble_lagrange_1d(pL), p), Error);
}

TEST_CASE("assemblers enforce the matching frame") {
  ShockProfile pe = euler_profile(0.2733);
  ShockProfile pl = lagrange_profile(0.2733);
  CHECK_THROWS_AS((void)assemble_euler_1d(pl), Error);
  CHECK_THROWS_AS((void)assemble_lagrange_1d(pe), Error);
  CHECK_THROWS_AS((void)assemble_euler_2d(pl, 0.5, 0.0), Error);
  CHECK_THROWS_AS((void)conjugator(pl), Error);
}
