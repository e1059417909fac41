#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "support/toy_problems.hpp"
#include "tvlearn/solver.hpp"

using namespace tvlearn;
using toys::Vec;

TEST_CASE("step_size clamps at one when the gap dominates the curvature") {
  CHECK(step_size(4.0, 0.0, 1.0) == 1.0);
}

TEST_CASE("step_size evaluates the ratio inside (0, 1)") {
  CHECK(step_size(0.5, 0.5, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("step_size returns one when the curvature surrogate vanishes") {
  CHECK(step_size(0.3, 0.0, 0.0) == 1.0);
}

TEST_CASE("step_size is zero only at a stationary pair") {
  CHECK(step_size(0.0, 0.0, 2.0) == 0.0);
  CHECK(step_size(1e-300, 0.0, 1.0) > 0.0);
}

TEST_CASE("residual vanishes at a minimizer") {
  toys::BallProjectionProblem prob{Vec{2.0, 0.0}};
  const Vec u{1.0, 0.0};  // projection of (2,0) onto the unit ball
  const Vec v = prob.hybrid_argmin(u, prob.grad_f(u));
  CHECK(residual(prob, u, v) == 0.0);
}

TEST_CASE("residual propagates an unbounded-subproblem failure") {
  toys::UnboundedSubproblem prob;
  const Vec u{1.0};
  CHECK_THROWS_AS(prob.hybrid_argmin(u, prob.grad_f(u)), std::domain_error);
  SolverConfig cfg;
  CHECK_THROWS_AS(hpgcg_solve(prob, u, cfg), std::domain_error);
}

TEST_CASE("solver converges to the ball projection") {
  toys::BallProjectionProblem prob{Vec{2.0, 0.0}};
  SolverConfig cfg;
  cfg.residual_tolerance = 1e-8;
  cfg.max_iterations = 10000;
  const auto result = hpgcg_solve(prob, Vec{0.0, 0.0}, cfg);
  CHECK(result.status == SolveStatus::converged);
  CHECK(result.point.v[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.point.v[1] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(result.final_residual < 1e-8);
}

TEST_CASE("solver trace obeys descent, monotonicity and step bounds") {
  toys::BallProjectionProblem prob{Vec{2.0, 0.0}};
  SolverConfig cfg;
  cfg.residual_tolerance = 1e-10;
  cfg.max_iterations = 5000;
  cfg.trace_every = 1;
  const auto result = hpgcg_solve(prob, Vec{0.0, 1.0}, cfg);
  const auto& tr = result.trace.entries;
  REQUIRE(tr.size() >= 2);
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const auto& a = tr[i];
    const auto& b = tr[i + 1];
    CHECK(b.k == a.k + 1);
    CHECK(a.theta > 0.0);
    CHECK(a.theta <= 1.0);
    CHECK(a.residual >= 0.0);
    // Per-step descent bound of the adaptive rule, with a round-off allowance.
    CHECK(b.objective - a.objective <=
          -0.5 * a.theta * (a.residual + a.p_gap) + 1e-10 * (1.0 + std::abs(a.objective)));
    // Monotone within round-off.
    CHECK(b.objective <= a.objective + 1e-10 * (1.0 + std::abs(a.objective)));
  }
}

TEST_CASE("unit-metric instance reproduces the proximal-gradient iteration") {
  toys::SoftThresholdProblem prob;
  prob.eps = 0.25;
  prob.mu = 0.05;
  prob.b = Vec{1.0, -2.0, 0.03, 0.7};

  // Independent proximal-gradient loop on the same instance.
  std::vector<Vec> expected;
  Vec u(4);
  for (int k = 0; k < 20; ++k) {
    expected.push_back(u);
    Vec step = u - prob.grad_f(u);
    for (double& x : step.v) x = toys::SoftThresholdProblem::soft(x, prob.mu);
    u = step;
  }

  std::vector<Vec> seen;
  SolverConfig cfg;
  cfg.residual_tolerance = 1e-14;
  cfg.max_iterations = 19;
  cfg.trace_every = 1;
  const auto result = hpgcg_solve(prob, Vec(4), cfg,
                                  [&](long, const Vec& point) { seen.push_back(point); });

  REQUIRE(seen.size() >= expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(seen[k].v[i] - expected[k].v[i]) <= 1e-10);
  }
  // The construction forces full steps throughout.
  for (std::size_t i = 0; i + 1 < result.trace.entries.size(); ++i)
    CHECK(result.trace.entries[i].theta == 1.0);
}

TEST_CASE("iteration limit reported as a status, not an error") {
  toys::BallProjectionProblem prob{Vec{2.0, 0.0}};
  SolverConfig cfg;
  cfg.residual_tolerance = 1e-14;
  cfg.max_iterations = 3;
  const auto result = hpgcg_solve(prob, Vec{0.0, 1.0}, cfg);
  CHECK(result.status == SolveStatus::iteration_limit);
  CHECK(result.iterations == 3);
}

TEST_CASE("solver validates its configuration") {
  toys::BallProjectionProblem prob{Vec{2.0, 0.0}};
  SolverConfig cfg;
  cfg.residual_tolerance = 0.0;
  CHECK_THROWS_AS(hpgcg_solve(prob, Vec{0.0, 0.0}, cfg), std::invalid_argument);
  cfg.residual_tolerance = 1e-6;
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(hpgcg_solve(prob, Vec{0.0, 0.0}, cfg), std::invalid_argument);
}

TEST_CASE("infeasible start is rejected") {
  toys::BallProjectionProblem prob{Vec{2.0, 0.0}};
  SolverConfig cfg;
  CHECK_THROWS_AS(hpgcg_solve(prob, Vec{5.0, 0.0}, cfg), std::domain_error);
}

namespace {

// An oracle whose "minimizer" is worse than the current point, driving the
// residual genuinely negative.
struct BrokenOracle {
  using Point = Vec;
  Point grad_f(const Point& u) const { return u; }
  Point hybrid_argmin(const Point& u, const Point&) const { return 2.0 * u; }
  double df(const Point&, const Point&) const { return 1.0; }
  double p_norm_sq(const Point&) const { return 0.0; }
  double f_value(const Point& u) const { return 0.5 * toys::dot(u, u); }
  double g_value(const Point&) const { return 0.0; }
  double dot(const Point& a, const Point& b) const { return toys::dot(a, b); }
};

}  // namespace

TEST_CASE("a residual negative beyond round-off reports a broken oracle") {
  BrokenOracle prob;
  const Vec u{1.0};
  // D = <u, u - 2u> = -1, far below the round-off band.
  CHECK_THROWS_AS(residual(prob, u, prob.hybrid_argmin(u, u)), std::runtime_error);
}
