// ROF denoising through its dual problem, solved by the conditional-gradient
// limb of the hybrid solver (P = 0), plus primal-dual gap and Bregman
// certificates.
//
// Primal:  min_u  1/2 ||u - xi||^2 + alpha TV(u)
// Dual:    min_v  1/2 ||div v + xi||^2   s.t.  ||v||_{inf,2} <= alpha
//
// with primal recovery u = div v + xi. The feasible set is bounded, so the
// strong-coercivity hypothesis holds with P = 0, and the linear minimization
// oracle over the per-pixel disks is closed-form.

#ifndef TVLEARN_ROF_HPP
#define TVLEARN_ROF_HPP

#include "tvlearn/grid.hpp"
#include "tvlearn/solver.hpp"
#include "tvlearn/tv_ops.hpp"

namespace tvlearn {

struct RofInstance {
  ScalarField xi;
  double alpha = 0.0;

  RofInstance() = default;
  RofInstance(ScalarField data, double a);
};

struct PrimalDualPair {
  ScalarField u;
  VectorField v;
  double gap = 0.0;  // primal_dual_gap(u, v)
};

struct BregmanDecomposition {
  double d_f = 0.0;      // 1/2 ||u - u_opt||^2
  double d_fstar = 0.0;  // conjugate term at div v vs div v_opt
  double d_gstar = 0.0;  // ball-indicator term at v vs v_opt
  double d_g = 0.0;      // TV term at grad u vs grad u_opt

  double sum() const { return d_f + d_fstar + d_gstar + d_g; }
};

// argmin of <g_field, v> over ||v||_{inf,2} <= alpha: per pixel, -alpha times
// the unit gradient direction; zero-gradient pixels map to zero.
VectorField lmo_ball(const VectorField& g_field, double alpha);

// Which curvature surrogate the dual solve uses.
enum class RofDfKind {
  divergence,  // D_f(v, w) = 1/2 ||div(v - w)||^2; no Lipschitz constant needed
  lipschitz,   // D_f(v, w) = 4 ||v - w||^2 (L = ||div||^2 <= 8)
};

// The dual problem as a solver oracle. Point space is VectorField with
// f(v) = 1/2 ||div v + xi||^2 and g the indicator of the dual ball.
struct RofDualProblem {
  using Point = VectorField;

  const RofInstance& instance;
  RofDfKind df_kind = RofDfKind::divergence;

  Point grad_f(const Point& v) const { return -1.0 * grad(div(v) + instance.xi); }
  Point hybrid_argmin(const Point&, const Point& grad_v) const {
    return lmo_ball(grad_v, instance.alpha);
  }
  double df(const Point& v, const Point& w) const;
  double p_norm_sq(const Point&) const { return 0.0; }
  double f_value(const Point& v) const { return 0.5 * norm_sq(div(v) + instance.xi); }
  double g_value(const Point& v) const;
  double dot(const Point& a, const Point& b) const { return tvlearn::dot(a, b); }
  // Rounds floating-point drift back onto the dual ball.
  void retract(Point& v) const;
};

struct DenoiseResult {
  PrimalDualPair pd;
  SolveStatus status = SolveStatus::converged;
  long iterations = 0;
  SolveTrace trace;
};

DenoiseResult denoise(const RofInstance& instance, const SolverConfig& config,
                      RofDfKind df_kind = RofDfKind::divergence);

// Fenchel primal-dual gap G_alpha(u, v); +inf when v lies outside the dual
// ball (beyond the relative tolerance), nonnegative up to round-off otherwise.
double primal_dual_gap(const ScalarField& u, const VectorField& v,
                       const RofInstance& instance);

// Splits the gap at (u, v) into the four Bregman divergences anchored at a
// primal-dual solution pair; their sum reproduces the gap up to pd.gap.
// Throws if pd is not a primal-dual pair to high accuracy.
BregmanDecomposition bregman_decomposition(const ScalarField& u,
                                           const VectorField& v,
                                           const PrimalDualPair& pd,
                                           const RofInstance& instance);

}  // namespace tvlearn

#endif  // TVLEARN_ROF_HPP
