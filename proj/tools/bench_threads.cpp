// Wall-time comparison of the OpenMP-parallel contour evaluation against the
// serial reference (the same kernel pinned to one thread), on a fixed
// workload. The images must agree exactly apart from floating-point
// reduction order, which this kernel does not have: every point is an
// independent evaluation, so the comparison checks bitwise-equal windings and
// point counts alongside the timings.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vs/contour.hpp"

using namespace vs;

namespace {

double now_s() {
  using clk = std::chrono::steady_clock;
  return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

}  // namespace

int main() {
  EndStateSolve es = solve_endstates(5.0 / 3.0, 0.06);
  GasModel m;
  m.gamma = 5.0 / 3.0;
  m.a = es.a;
  ShockProfile p = compute_profile(m, es.states, Frame::Eulerian);
  EvansSystem sysE = assemble_euler_2d(p, 0.5, 0.0);
  EvansSystem sysPL = assemble_pseudo_lagrangian(sysE, p);
  Contour c = semiannulus(1e-3, 10.0, 32);

  int max_threads = 1;
#ifdef _OPENMP
  max_threads = omp_get_max_threads();
#endif
  std::printf("workload: 2D pseudo-Lagrangian contour, u+=0.06, R=10, n0=32, eta=0.2\n");
  std::printf("%8s %12s %10s %8s\n", "threads", "wall_s", "points", "winding");

  double t_serial = 0.0;
  for (int nt : {1, max_threads}) {
    ContourRunOpts ro;
    ro.eta = 0.2;
    ro.threads = nt;
    double t0 = now_s();
    ContourImage img = run_contour(sysPL, 1.0, c, ro);
    double dt = now_s() - t0;
    if (nt == 1) t_serial = dt;
    std::printf("%8d %12.3f %10zu %8d\n", nt, dt, img.pts.size(), img.winding);
    if (nt == max_threads && max_threads > 1)
      std::printf("speedup over serial reference: %.2fx\n", t_serial / dt);
    if (max_threads == 1) break;
  }
  return 0;
}
