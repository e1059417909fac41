// Hybrid proximal generalized conditional gradient solver.
//
// Minimizes f + g over an abstract point space when given an oracle for the
// hybrid subproblem
//
//   v(u) = argmin_v  <grad f(u), v> - <u, v>_P + 1/2 ||v||_P^2 + g(v),
//
// a curvature surrogate D_f, and the quadratic form ||.||_P^2 of a positive
// semidefinite metric P. The update is u <- u + theta (v(u) - u) with the
// closed-form step
//
//   theta = min(1, (D(u) + 1/2 ||u - v||_P^2) / (2 D_f(u, v))),
//
// where D(u) = <grad f(u), u - v> + g(u) - g(v) - 1/2 ||u - v||_P^2 is the
// subproblem optimality gap; D(u) = 0 exactly at minimizers of f + g. With
// P = 0 the iteration is the generalized conditional gradient method; with P
// positive definite and unit steps it is the preconditioned forward-backward
// map.
//
// A problem type models the HybridProblem concept below. Points need value
// semantics plus +, -, and scalar *.

#ifndef TVLEARN_SOLVER_HPP
#define TVLEARN_SOLVER_HPP

#include <cmath>
#include <concepts>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tvlearn {

template <class Pr>
concept HybridProblem = requires(const Pr& p, const typename Pr::Point& u,
                                 const typename Pr::Point& v) {
  { p.grad_f(u) } -> std::convertible_to<typename Pr::Point>;
  { p.hybrid_argmin(u, v) } -> std::convertible_to<typename Pr::Point>;
  { p.df(u, v) } -> std::convertible_to<double>;
  { p.p_norm_sq(u) } -> std::convertible_to<double>;
  { p.f_value(u) } -> std::convertible_to<double>;
  { p.g_value(u) } -> std::convertible_to<double>;
  { p.dot(u, v) } -> std::convertible_to<double>;
};

// Problems may additionally provide retract(Point&), which rounds a convex
// combination of feasible points back onto dom g. Iterates stay feasible in
// exact arithmetic, but over millions of combinations the accumulated
// floating-point drift can leave the set by more than the feasibility
// tolerance; the retraction removes that drift and must be a no-op up to
// round-off.
template <class Pr>
concept HasRetract = requires(const Pr& p, typename Pr::Point& u) {
  { p.retract(u) };
};

struct SolverConfig {
  double residual_tolerance = 1e-6;
  long max_iterations = 100000;
  long trace_every = 1;  // record every k-th iterate (0 and the last always)
};

struct TraceEntry {
  long k = 0;
  double residual = 0.0;   // D(u^k), clamped at zero
  double p_gap = 0.0;      // 1/2 ||u^k - v^k||_P^2
  double theta = 1.0;      // step taken from u^k (1.0 on the terminal entry)
  double objective = 0.0;  // (f+g)(u^k)
};

struct SolveTrace {
  std::vector<TraceEntry> entries;
  long clamp_events = 0;     // negative residuals clamped to zero
  long oracle_warnings = 0;  // problem-specific warnings (e.g. eigenvalue clamps)
};

enum class SolveStatus { converged, iteration_limit };

template <class Point>
struct SolveResult {
  Point point;
  SolveStatus status = SolveStatus::converged;
  long iterations = 0;          // steps taken
  double final_residual = 0.0;  // D at the returned point
  double final_p_gap = 0.0;
  SolveTrace trace;
};

// Adaptive step-size rule. A vanishing surrogate D_f means the majorization
// gap is zero, so the full step is exact; min(1, +inf) makes 1 the natural
// convention there.
inline double step_size(double d_u, double p_gap, double df_val) {
  if (df_val <= 0.0) return 1.0;
  return std::min(1.0, (d_u + p_gap) / (2.0 * df_val));
}

namespace detail {

struct ResidualParts {
  double d = 0.0;      // clamped D(u)
  double p_gap = 0.0;  // 1/2 ||u - v||_P^2
};

// Shared residual evaluation; `grad_u` must be grad_f(u) and `v` the hybrid
// subproblem solution at u.
template <HybridProblem Pr>
ResidualParts residual_parts(const Pr& prob, const typename Pr::Point& u,
                             const typename Pr::Point& v,
                             const typename Pr::Point& grad_u,
                             long* clamp_events = nullptr) {
  const double gu = prob.g_value(u);
  if (!(gu < std::numeric_limits<double>::infinity()))
    throw std::domain_error("residual: infeasible iterate (g(u) is not finite)");
  const double gv = prob.g_value(v);
  if (!(gv < std::numeric_limits<double>::infinity()))
    throw std::runtime_error("residual: hybrid_argmin returned a point outside dom g");

  const auto diff = u - v;
  const double lin = prob.dot(grad_u, diff);
  const double pq = prob.p_norm_sq(diff);
  const double p_gap = 0.5 * pq;
  double d = lin + gu - gv - p_gap;

  if (d < 0.0) {
    const double scale = std::abs(lin) + std::abs(gu) + std::abs(gv) + p_gap;
    if (d < -1e-9 * (1.0 + scale))
      throw std::runtime_error(
          "residual: internal consistency failure, D(u) = " + std::to_string(d) +
          " is negative beyond round-off (broken oracle?)");
    if (clamp_events) ++*clamp_events;
    d = 0.0;
  }
  return {d, p_gap};
}

}  // namespace detail

// Subproblem optimality gap D(u) at a point u with candidate v = v(u).
// Nonnegative up to round-off; tiny negatives are clamped, larger ones raise.
template <HybridProblem Pr>
double residual(const Pr& prob, const typename Pr::Point& u,
                const typename Pr::Point& v) {
  return detail::residual_parts(prob, u, v, prob.grad_f(u)).d;
}

// Runs the iteration from u0 until D(u^k) + 1/2 ||u^k - v^k||_P^2 drops below
// config.residual_tolerance (both terms vanish in the limit, and stopping on
// their sum implies the residual itself is below tolerance) or max_iterations
// steps have been taken. `observer(k, u)` is called at every recorded iterate.
template <HybridProblem Pr, class Observer>
SolveResult<typename Pr::Point> hpgcg_solve(const Pr& prob,
                                            typename Pr::Point u0,
                                            const SolverConfig& config,
                                            Observer&& observer) {
  if (!(config.residual_tolerance > 0.0))
    throw std::invalid_argument("SolverConfig: residual_tolerance must be > 0");
  if (config.max_iterations < 1)
    throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
  if (config.trace_every < 1)
    throw std::invalid_argument("SolverConfig: trace_every must be >= 1");

  SolveResult<typename Pr::Point> result{std::move(u0)};
  auto& u = result.point;

  if (!(prob.g_value(u) < std::numeric_limits<double>::infinity()))
    throw std::domain_error("hpgcg_solve: initial point is infeasible");

  for (long k = 0;; ++k) {
    const auto grad_u = prob.grad_f(u);
    const auto v = prob.hybrid_argmin(u, grad_u);
    const auto parts =
        detail::residual_parts(prob, u, v, grad_u, &result.trace.clamp_events);

    const bool converged = parts.d + parts.p_gap < config.residual_tolerance;
    const bool last = converged || k == config.max_iterations;
    const double theta =
        last ? 1.0 : step_size(parts.d, parts.p_gap, prob.df(u, v));

    if (last || k % config.trace_every == 0) {
      result.trace.entries.push_back(
          {k, parts.d, parts.p_gap, theta, prob.f_value(u) + prob.g_value(u)});
      observer(k, u);
    }
    if (last) {
      result.status =
          converged ? SolveStatus::converged : SolveStatus::iteration_limit;
      result.iterations = k;
      result.final_residual = parts.d;
      result.final_p_gap = parts.p_gap;
      return result;
    }
    u = u + theta * (v - u);
    if constexpr (HasRetract<Pr>) prob.retract(u);
  }
}

template <HybridProblem Pr>
SolveResult<typename Pr::Point> hpgcg_solve(const Pr& prob,
                                            typename Pr::Point u0,
                                            const SolverConfig& config) {
  return hpgcg_solve(prob, std::move(u0), config,
                     [](long, const typename Pr::Point&) {});
}

}  // namespace tvlearn

#endif  // TVLEARN_SOLVER_HPP
