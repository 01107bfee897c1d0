#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vs/analysis.hpp"

using namespace vs;

namespace {

ShockProfile profile_for(double u_plus, Frame fr) {
  EndStateSolve es = solve_endstates(5.0 / 3.0, u_plus);
  GasModel m;
  m.gamma = 5.0 / 3.0;
  m.a = es.a;
  return compute_profile(m, es.states, fr);
}

}  // namespace

TEST_CASE("fit_highfreq recovers synthetic growth laws") {
  std::vector<double> lam, y_sqrt, y_lin;
  for (double l = 20.0; l <= 200.0; l += 12.0) {
    lam.push_back(l);
    y_sqrt.push_back(1.0 + 3.0 * std::sqrt(l));
    y_lin.push_back(-2.0 + 0.5 * l);
  }
  HighfreqFit fs = fit_highfreq(lam, y_sqrt);
  CHECK(fs.sqrt_wins);
  CHECK(fs.c1_sqrt == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fs.c0_sqrt == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(fs.r2_sqrt == doctest::Approx(1.0));
  CHECK(fs.r2_lin < 1.0);
  HighfreqFit fl = fit_highfreq(lam, y_lin);
  CHECK_FALSE(fl.sqrt_wins);
  CHECK(fl.c1_lin == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fl.r2_lin == doctest::Approx(1.0));
}

TEST_CASE("fit_highfreq input validation") {
  CHECK_THROWS_AS((void)fit_highfreq({1.0, 2.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS((void)fit_highfreq({1.0, 2.0, 3.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS((void)fit_highfreq({1.0, -2.0, 3.0}, {1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS((void)fit_highfreq({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}), Error);
}

TEST_CASE("Eulerian/Lagrangian ratio relation holds to high accuracy") {
  ShockProfile pe = profile_for(0.2733, Frame::Eulerian);
  ShockProfile pl = profile_for(0.2733, Frame::Lagrangian);
  std::vector<cplx> lams = {cplx(1.0, 0.0), cplx(0.3, 2.0), cplx(4.0, -3.0), cplx(8.0, 5.0),
                            cplx(0.05, 0.4)};
  EvrelResult r = check_evrel(pe, pl, lams);
  CHECK(r.max_rel_err <= 1e-2);
  CHECK(r.max_rel_err <= 1e-5);  // in practice far below the contract
  CHECK(r.detThat0 == doctest::Approx(-2.467166805).epsilon(1e-7));
  CHECK(r.delta_plus == doctest::Approx(-1.9174209928).epsilon(1e-7));
  CHECK(r.delta_minus == doctest::Approx(0.5783615890).epsilon(1e-7));
  // tracked eigenvalue sums at lambda = 1 (independently derived)
  CHECK(r.points[0].nu_plus.real() == doctest::Approx(-2.5473594613377113).epsilon(1e-9));
  CHECK(r.points[0].nu_minus.real() == doctest::Approx(1.54958715914199).epsilon(1e-9));
}

TEST_CASE("the displayed sign variant of the ratio relation fails") {
  ShockProfile pe = profile_for(0.2733, Frame::Eulerian);
  ShockProfile pl = profile_for(0.2733, Frame::Lagrangian);
  std::vector<cplx> lams = {cplx(1.0, 0.0), cplx(2.0, 1.0)};
  EvrelOpts legacy;
  legacy.legacy_sign = true;
  double err_legacy = check_evrel(pe, pl, lams, legacy).max_rel_err;
  double err_default = check_evrel(pe, pl, lams).max_rel_err;
  CHECK(err_legacy > 1e3 * err_default);
  CHECK(err_legacy > 1.0);
}

TEST_CASE("high-frequency growth of the Lagrangian Evans function is sqrt-like") {
  // strong shock: the growth law separates cleanly inside [20, 200]
  ShockProfile pl = profile_for(0.001, Frame::Lagrangian);
  EvansSystem sys = assemble_lagrange_1d(pl);
  std::vector<double> lams;
  for (double l = 20.0; l <= 200.0; l += 30.0) lams.push_back(l);
  std::vector<double> ln_mod = highfreq_samples(sys, lams);
  HighfreqFit f = fit_highfreq(lams, ln_mod);
  CHECK(f.sqrt_wins);
  CHECK(f.r2_sqrt > 0.99);
}

TEST_CASE("xi = 0 reduction of the 2D system on a small contour") {
  ShockProfile pe = profile_for(0.2733, Frame::Eulerian);
  std::vector<cplx> ratio_lams = {cplx(2.0, 0.0), cplx(0.8, 1.1), cplx(1.5, -0.9)};
  Xi0Result r = check_xi0(pe, 0.5, 0.0, 0.5, 2.0, 8, ratio_lams);
  CHECK(r.coupling_residual <= 1e-12);
  CHECK(r.ratio_variation <= 1e-5);
  CHECK(std::abs(r.ratio0) > 0.0);
  CHECK(r.winding_valid_1d);
  CHECK(r.winding_valid_2d);
  CHECK(r.winding_1d == r.winding_2d);
  CHECK(r.cost_1d > 0);
  CHECK(r.cost_2d > 0);
}
