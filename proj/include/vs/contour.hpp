#ifndef VS_CONTOUR_HPP
#define VS_CONTOUR_HPP

#include <algorithm>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vs/evans.hpp"

namespace vs {

// Boundary of the right-half-plane semi-annulus {r <= |lambda| <= R, Re >= 0},
// traversed as a closed curve starting and ending at lambda* = R:
// outer arc R -> -iR, segment -iR -> -ir, inner arc -ir -> ir (through r),
// segment ir -> iR, outer arc iR -> R.
struct Contour {
  double r = 0.0, R = 0.0;
  std::vector<double> tpar;   // parameters in [0,1], first 0, last 1
  std::vector<cplx> points;   // first == last == R (closed)

  cplx at(double t) const {
    double L_arc_q = 0.5 * PI * R;   // quarter outer arc
    double L_seg = R - r;
    double L_inner = PI * r;
    double L = 2.0 * L_arc_q + 2.0 * L_seg + L_inner;
    double s = t * L;
    if (s <= L_arc_q) {
      double th = -(s / L_arc_q) * (PI / 2.0);
      return R * cplx(std::cos(th), std::sin(th));
    }
    s -= L_arc_q;
    if (s <= L_seg) return cplx(0.0, -(R - s));
    s -= L_seg;
    if (s <= L_inner) {
      double th = -PI / 2.0 + (s / L_inner) * PI;
      return r * cplx(std::cos(th), std::sin(th));
    }
    s -= L_inner;
    if (s <= L_seg) return cplx(0.0, r + s);
    s -= L_seg;
    double th = PI / 2.0 - (s / L_arc_q) * (PI / 2.0);
    return R * cplx(std::cos(th), std::sin(th));
  }
};

inline Contour semiannulus(double r, double R, int n0) {
  if (!(0.0 < r && r < R)) throw domain_error("InvalidRadii", "need 0 < r < R");
  if (n0 < 4) throw domain_error("InvalidParam", "need at least 4 initial points");
  Contour c;
  c.r = r;
  c.R = R;
  c.tpar.resize(static_cast<size_t>(n0) + 1);
  c.points.resize(static_cast<size_t>(n0) + 1);
  for (int i = 0; i <= n0; ++i) {
    double t = static_cast<double>(i) / n0;
    c.tpar[static_cast<size_t>(i)] = t;
    c.points[static_cast<size_t>(i)] = c.at(t);
  }
  c.points.front() = cplx(R, 0.0);
  c.points.back() = cplx(R, 0.0);
  return c;
}

struct ImagePoint {
  double t = 0.0;
  cplx lam;
  LogComplex D;        // normalized so that D(lambda*) = 1
  int generation = 0;  // refinement round that created the point
};

struct ContourImage {
  std::vector<ImagePoint> pts;           // sorted by contour parameter
  std::vector<double> arg_unwrapped;     // sequence-unwrapped argument
  std::vector<double> relative_gaps;     // gap between consecutive points
  int winding = 0;
  double wraps = 0.0;
  bool valid = false;                    // all argument steps < pi/2
  double log10_min = 0.0, log10_max = 0.0;
  long cost = 0;                         // Evans evaluations performed
  bool budget_exceeded = false;
};

namespace detail {

inline void finalize_image(ContourImage& img) {
  std::sort(img.pts.begin(), img.pts.end(),
            [](const ImagePoint& a, const ImagePoint& b) { return a.t < b.t; });
  size_t n = img.pts.size();
  img.arg_unwrapped.resize(n);
  img.relative_gaps.assign(n > 0 ? n - 1 : 0, 0.0);
  img.valid = true;
  double prev = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double raw = img.pts[i].D.arg;
    if (i == 0) {
      img.arg_unwrapped[0] = wrap_angle(raw);
    } else {
      double step = wrap_angle(raw - prev);
      img.arg_unwrapped[i] = img.arg_unwrapped[i - 1] + step;
      if (std::abs(step) >= PI / 2.0) img.valid = false;
      img.relative_gaps[i - 1] = relative_gap(img.pts[i - 1].D, img.pts[i].D);
    }
    prev = raw;
  }
  double amin = 0.0, amax = 0.0, lmin = 0.0, lmax = 0.0;
  for (size_t i = 0; i < n; ++i) {
    amin = std::min(amin, img.arg_unwrapped[i] - img.arg_unwrapped[0]);
    amax = std::max(amax, img.arg_unwrapped[i] - img.arg_unwrapped[0]);
    double lm = img.pts[i].D.is_zero ? -300.0 : img.pts[i].D.log10_mod;
    if (i == 0) {
      lmin = lmax = lm;
    } else {
      lmin = std::min(lmin, lm);
      lmax = std::max(lmax, lm);
    }
  }
  img.winding = static_cast<int>(std::lround((img.arg_unwrapped.back() - img.arg_unwrapped.front()) / (2.0 * PI)));
  img.wraps = (amax - amin) / (2.0 * PI);
  img.log10_min = lmin;
  img.log10_max = lmax;
}

}  // namespace detail

struct WindingResult {
  int winding = 0;
  double wraps = 0.0;
  bool valid = false;
};

// Winding and wrap metrics of an image polyline (re-derives the unwrapping).
inline WindingResult winding(ContourImage& image) {
  detail::finalize_image(image);
  if (!image.valid) {
    // UnderResolved: the numbers are still reported, flagged untrustworthy.
  }
  return {image.winding, image.wraps, image.valid};
}

// Generic adaptive refinement against the relative-distance criterion
// |1 - D_{k+1}/D_k| <= eta, for an arbitrary pointwise evaluator.
//
// Every unresolved interval is bisected and only retired once its evaluated
// midpoint confirms the endpoint gap (full gap and both half gaps <= eta).
// The endpoint gap alone is blind to a full 2*pi turn of the argument between
// two samples; the mandatory interior sample catches that aliasing.
inline ContourImage adaptive_evaluate(const std::function<LogComplex(cplx)>& evaluator,
                                      const Contour& contour, double eta, int max_rounds = 24) {
  if (!(eta > 0.0 && eta < 1.0)) throw domain_error("InvalidParam", "eta must lie in (0,1)");
  struct Pt {
    ImagePoint p;
    bool settled_right = false;  // interval to the next point confirmed resolved
  };
  std::vector<Pt> pts;
  ContourImage img;
  for (size_t i = 0; i < contour.tpar.size(); ++i) {
    Pt q;
    q.p.t = contour.tpar[i];
    q.p.lam = contour.points[i];
    q.p.D = evaluator(q.p.lam);
    q.p.generation = 0;
    pts.push_back(q);
    ++img.cost;
  }
  pts.back().settled_right = true;  // no interval beyond the last point
  for (int round = 1; round <= max_rounds + 1; ++round) {
    std::vector<size_t> open;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
      if (!pts[i].settled_right) open.push_back(i);
    if (open.empty()) break;
    if (round > max_rounds) {
      img.budget_exceeded = true;
      for (const auto& q : pts) img.pts.push_back(q.p);
      detail::finalize_image(img);
      throw numerical_error("RefinementBudgetExceeded",
                            "adaptive refinement exceeded depth 24");
    }
    std::vector<Pt> next;
    next.reserve(pts.size() + open.size());
    size_t oi = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      next.push_back(pts[i]);
      if (oi < open.size() && open[oi] == i) {
        ++oi;
        Pt m;
        m.p.t = 0.5 * (pts[i].p.t + pts[i + 1].p.t);
        m.p.lam = contour.at(m.p.t);
        m.p.D = evaluator(m.p.lam);
        m.p.generation = round;
        ++img.cost;
        bool ok = relative_gap(pts[i].p.D, pts[i + 1].p.D) <= eta &&
                  relative_gap(pts[i].p.D, m.p.D) <= eta &&
                  relative_gap(m.p.D, pts[i + 1].p.D) <= eta;
        next.back().settled_right = ok;
        m.settled_right = ok;
        next.push_back(m);
      }
    }
    pts = std::move(next);
  }
  img.pts.reserve(pts.size());
  for (const auto& q : pts) img.pts.push_back(q.p);
  detail::finalize_image(img);
  return img;
}

struct ContourRunOpts {
  double eta = 0.2;
  int max_rounds = 24;
  EvansOpts evans;
  int threads = 0;        // 0 = library default
  bool throw_on_budget = false;
};

// Full Evans contour image: Kato bases are continued along the contour
// (midpoint frames propagated from the left parent point, deterministically),
// Evans evaluations run concurrently per refinement wavefront, and the image
// is normalized by the value at lambda* = R.
inline ContourImage run_contour(const EvansSystem& sys, double xi, const Contour& contour,
                                const ContourRunOpts& opts = {}) {
  struct Node {
    double t;
    cplx lam;
    Mat fp, fm;  // Kato frames at the two infinities
    LogComplex D;
    int generation;
    bool settled_right = false;  // interval to the next node confirmed resolved
  };
  MatFamily famP = [&](cplx lam) { return sys.limit(+1, lam, xi); };
  MatFamily famM = [&](cplx lam) { return sys.limit(-1, lam, xi); };

  std::vector<Node> nodes;
  nodes.reserve(contour.points.size());
  {
    Node n0;
    n0.t = contour.tpar.front();
    n0.lam = contour.points.front();
    n0.fp = kato_seed(famP(n0.lam), true);
    n0.fm = kato_seed(famM(n0.lam), false);
    n0.generation = 0;
    nodes.push_back(n0);
    for (size_t i = 1; i < contour.points.size(); ++i) {
      Node n;
      n.t = contour.tpar[i];
      n.lam = contour.points[i];
      n.fp = kato_step(famP, true, nodes.back().lam, nodes.back().fp, n.lam);
      n.fm = kato_step(famM, false, nodes.back().lam, nodes.back().fm, n.lam);
      n.generation = 0;
      nodes.push_back(n);
    }
  }

  ContourImage img;
  auto eval_range = [&](std::vector<Node>& batch) {
    std::exception_ptr err = nullptr;
    int nb = static_cast<int>(batch.size());
#ifdef _OPENMP
    int nt = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (int i = 0; i < nb; ++i) {
      try {
        EvansValue v = evaluate(sys, batch[static_cast<size_t>(i)].fp,
                                batch[static_cast<size_t>(i)].fm,
                                batch[static_cast<size_t>(i)].lam, xi, opts.evans);
        batch[static_cast<size_t>(i)].D = v.D;
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    img.cost += nb;
  };
  eval_range(nodes);

  // Every unresolved interval is bisected and only retired once its evaluated
  // midpoint confirms the endpoint gap (full gap and both half gaps <= eta).
  // The endpoint gap alone cannot see a full 2*pi turn of the argument between
  // two samples; the mandatory interior sample catches that aliasing.
  nodes.back().settled_right = true;  // no interval beyond the closing point
  for (int round = 1; round <= opts.max_rounds + 1; ++round) {
    std::vector<size_t> parents;
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
      if (!nodes[i].settled_right) parents.push_back(i);
    if (parents.empty()) break;
    if (round > opts.max_rounds) {
      img.budget_exceeded = true;
      if (opts.throw_on_budget)
        throw numerical_error("RefinementBudgetExceeded",
                              "adaptive refinement exceeded depth 24");
      break;
    }
    std::vector<Node> mids(parents.size());
    std::exception_ptr err = nullptr;
    int nb = static_cast<int>(parents.size());
#ifdef _OPENMP
    int nt = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (int i = 0; i < nb; ++i) {
      try {
        const Node& a = nodes[parents[static_cast<size_t>(i)]];
        Node m;
        m.t = 0.5 * (a.t + nodes[parents[static_cast<size_t>(i)] + 1].t);
        m.lam = contour.at(m.t);
        m.fp = kato_step(famP, true, a.lam, a.fp, m.lam);
        m.fm = kato_step(famM, false, a.lam, a.fm, m.lam);
        m.generation = round;
        EvansValue v = evaluate(sys, m.fp, m.fm, m.lam, xi, opts.evans);
        m.D = v.D;
        mids[static_cast<size_t>(i)] = m;
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    img.cost += nb;
    for (size_t i = 0; i < parents.size(); ++i) {
      Node& a = nodes[parents[i]];
      const Node& b = nodes[parents[i] + 1];
      Node& m = mids[i];
      bool ok = relative_gap(a.D, b.D) <= opts.eta && relative_gap(a.D, m.D) <= opts.eta &&
                relative_gap(m.D, b.D) <= opts.eta;
      a.settled_right = ok;
      m.settled_right = ok;
    }
    for (auto& m : mids) nodes.push_back(std::move(m));
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });
  }

  // normalize by the value at lambda* (first point) and emit
  LogComplex d0 = nodes.front().D;
  if (d0.is_zero)
    throw numerical_error("ZeroAtNormalization", "Evans value at lambda_star is exactly zero");
  img.pts.reserve(nodes.size());
  for (const auto& n : nodes) {
    ImagePoint p;
    p.t = n.t;
    p.lam = n.lam;
    p.D = n.D / d0;
    p.generation = n.generation;
    img.pts.push_back(p);
  }
  detail::finalize_image(img);
  return img;
}

}  // namespace vs

#endif  // VS_CONTOUR_HPP
