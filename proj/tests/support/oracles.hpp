// Independent reference implementations used as test oracles. Nothing here
// may call into the solver paths under test; only the grid primitives are
// shared, and those are themselves pinned by adjointness and stencil tests.

#ifndef TVLEARN_TESTS_ORACLES_HPP
#define TVLEARN_TESTS_ORACLES_HPP

#include <cmath>
#include <random>
#include <vector>

#include "tvlearn/grid.hpp"
#include "tvlearn/rof.hpp"
#include "tvlearn/tv_ops.hpp"

namespace oracles {

using tvlearn::ScalarField;
using tvlearn::VectorField;

inline ScalarField random_field(int p, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  ScalarField f(p);
  for (double& v : f.values) v = unif(rng);
  return f;
}

inline VectorField random_vector_field(int p, std::mt19937_64& rng, double lo = -1.0,
                                       double hi = 1.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  VectorField f(p);
  for (double& v : f.x) v = unif(rng);
  for (double& v : f.y) v = unif(rng);
  return f;
}

// Random point of the dual ball ||v||_{inf,2} <= alpha.
inline VectorField random_ball_field(int p, double alpha, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  VectorField f(p);
  for (std::size_t k = 0; k < f.x.size(); ++k) {
    const double r = alpha * std::sqrt(unif(rng));
    const double a = angle(rng);
    f.x[k] = r * std::cos(a);
    f.y[k] = r * std::sin(a);
  }
  return f;
}

// Minimizes <g, v> over the per-pixel disks by scanning sampled directions
// and radii independently at every pixel.
inline VectorField brute_force_lmo(const VectorField& g, double alpha, int samples) {
  VectorField best(g.width);
  for (std::size_t k = 0; k < g.x.size(); ++k) {
    double best_val = 0.0;  // v = 0 candidate
    double bx = 0.0, by = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double a = 2.0 * M_PI * s / samples;
      const double vx = alpha * std::cos(a);
      const double vy = alpha * std::sin(a);
      const double val = g.x[k] * vx + g.y[k] * vy;
      if (val < best_val) {
        best_val = val;
        bx = vx;
        by = vy;
      }
    }
    best.x[k] = bx;
    best.y[k] = by;
  }
  return best;
}

// ROF primal objective 1/2 ||u - xi||^2 + alpha TV(u), written out directly.
inline double rof_primal(const ScalarField& u, const ScalarField& xi, double alpha) {
  return 0.5 * tvlearn::norm_sq(u - xi) + alpha * tvlearn::tv(u);
}

// Primal-dual gap of the ROF pair (div v + xi, v), written out directly.
inline double rof_gap_at_dual(const VectorField& v, const ScalarField& xi, double alpha) {
  const ScalarField u = tvlearn::div(v) + xi;
  return 0.5 * tvlearn::norm_sq(u - xi) + alpha * tvlearn::tv(u) +
         0.5 * tvlearn::norm_sq(tvlearn::div(v) + xi) - 0.5 * tvlearn::norm_sq(xi);
}

struct PgResult {
  VectorField v;
  ScalarField u;
  double gap = 0.0;
  long iterations = 0;
};

// Projected gradient on the ROF dual with step 1/8 (the gradient of
// 1/2 ||div v + xi||^2 is 8-Lipschitz), run until its own gap evaluation
// drops below gap_tol.
inline PgResult projected_gradient_rof_dual(const ScalarField& xi, double alpha,
                                            double gap_tol, long max_iter) {
  const int p = xi.width;
  VectorField v(p);
  PgResult out;
  for (long it = 0;; ++it) {
    out.gap = rof_gap_at_dual(v, xi, alpha);
    out.iterations = it;
    if (out.gap < gap_tol || it == max_iter) break;
    const VectorField step = tvlearn::grad(tvlearn::div(v) + xi);
    for (std::size_t k = 0; k < v.x.size(); ++k) {
      double vx = v.x[k] + step.x[k] / 8.0;
      double vy = v.y[k] + step.y[k] / 8.0;
      const double norm = std::sqrt(vx * vx + vy * vy);
      if (norm > alpha) {
        vx *= alpha / norm;
        vy *= alpha / norm;
      }
      v.x[k] = vx;
      v.y[k] = vy;
    }
  }
  out.u = tvlearn::div(v) + xi;
  out.v = std::move(v);
  return out;
}

// Bilevel reference: scan alpha over [lo, hi] with the given step, solving
// the inner ROF problem by projected gradient, and return the alpha with the
// smallest squared reconstruction error.
struct GridSearchResult {
  double alpha = 0.0;
  double sq_err = 0.0;
};

inline GridSearchResult bilevel_grid_search(const ScalarField& gt, const ScalarField& xi,
                                            double lo, double hi, double step,
                                            double inner_gap_tol, long inner_max_iter) {
  GridSearchResult best;
  best.sq_err = std::numeric_limits<double>::infinity();
  for (double a = lo; a <= hi + 1e-15; a += step) {
    const double alpha = std::max(a, 1e-12);
    const auto pg = projected_gradient_rof_dual(xi, alpha, inner_gap_tol, inner_max_iter);
    const double err = tvlearn::norm_sq(gt - pg.u);
    if (err < best.sq_err) {
      best.sq_err = err;
      best.alpha = alpha;
    }
  }
  return best;
}

}  // namespace oracles

#endif  // TVLEARN_TESTS_ORACLES_HPP
