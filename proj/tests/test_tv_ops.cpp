#include <cmath>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tvlearn/tv_ops.hpp"

using namespace tvlearn;

TEST_CASE("grad of a constant field is zero") {
  ScalarField u(5, 3.7);
  const VectorField g = grad(u);
  for (std::size_t k = 0; k < g.x.size(); ++k) {
    CHECK(g.x[k] == 0.0);
    CHECK(g.y[k] == 0.0);
  }
}

TEST_CASE("grad forward-difference stencil on a 2x2 field") {
  ScalarField u(2);
  u.at(0, 0) = 0.0;
  u.at(0, 1) = 1.0;
  u.at(1, 0) = 2.0;
  u.at(1, 1) = 3.0;
  const VectorField g = grad(u);
  // pixel (0,0): x-diff 1, y-diff 2
  CHECK(g.x[0] == doctest::Approx(1.0));
  CHECK(g.y[0] == doctest::Approx(2.0));
  // pixel (0,1): last column, y-diff 2
  CHECK(g.x[1] == doctest::Approx(0.0));
  CHECK(g.y[1] == doctest::Approx(2.0));
  // pixel (1,0): x-diff 1, last row
  CHECK(g.x[2] == doctest::Approx(1.0));
  CHECK(g.y[2] == doctest::Approx(0.0));
  // pixel (1,1): both boundaries
  CHECK(g.x[3] == doctest::Approx(0.0));
  CHECK(g.y[3] == doctest::Approx(0.0));
}

TEST_CASE("grad of a linear ramp") {
  ScalarField u(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) u.at(i, j) = j;
  const VectorField g = grad(u);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * 3 + j;
      CHECK(g.x[k] == doctest::Approx(j < 2 ? 1.0 : 0.0));
      CHECK(g.y[k] == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("div of the zero field is zero") {
  const ScalarField d = div(VectorField(4));
  for (double v : d.values) CHECK(v == 0.0);
}

TEST_CASE("div is the exact negative adjoint of grad") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 8, 16}) {
    for (int rep = 0; rep < 50; ++rep) {
      const ScalarField u = oracles::random_field(p, rng, -1.0, 1.0);
      const VectorField v = oracles::random_vector_field(p, rng);
      const double lhs = dot(grad(u), v);
      const double rhs = dot(u, div(v));
      CHECK(std::abs(lhs + rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("div of a unit x-spike matches the transposed stencil") {
  // For v with a single unit x-component at pixel (0,0) of a 2x2 grid the
  // adjointness identity <grad u, v> = -<u, div v> forces
  // div v = +1 at (0,0) and -1 at (0,1): <grad u, v> = u(0,1) - u(0,0).
  VectorField v(2);
  v.x[0] = 1.0;
  const ScalarField d = div(v);
  CHECK(d.at(0, 0) == doctest::Approx(1.0));
  CHECK(d.at(0, 1) == doctest::Approx(-1.0));
  CHECK(d.at(1, 0) == doctest::Approx(0.0));
  CHECK(d.at(1, 1) == doctest::Approx(0.0));

  // Cross-check by evaluating both inner products on a generic u.
  ScalarField u(2);
  u.at(0, 0) = 0.3;
  u.at(0, 1) = -1.2;
  u.at(1, 0) = 0.9;
  u.at(1, 1) = 2.0;
  CHECK(dot(grad(u), v) == doctest::Approx(-dot(u, d)).epsilon(1e-14));
}

TEST_CASE("norm_1_2 examples") {
  CHECK(norm_1_2(VectorField(3)) == 0.0);

  ScalarField u(2);
  u.at(0, 0) = 0.0;
  u.at(0, 1) = 1.0;
  u.at(1, 0) = 2.0;
  u.at(1, 1) = 3.0;
  CHECK(norm_1_2(grad(u)) == doctest::Approx(3.0 + std::sqrt(5.0)));

  VectorField single(1);
  single.x[0] = 3.0;
  single.y[0] = 4.0;
  CHECK(norm_1_2(single) == doctest::Approx(5.0));
}

TEST_CASE("norm_inf_2 examples") {
  CHECK(norm_inf_2(VectorField(3)) == 0.0);

  ScalarField u(2);
  u.at(0, 0) = 0.0;
  u.at(0, 1) = 1.0;
  u.at(1, 0) = 2.0;
  u.at(1, 1) = 3.0;
  CHECK(norm_inf_2(grad(u)) == doctest::Approx(std::sqrt(5.0)));

  VectorField f(2);
  f.x[2] = 0.6;
  f.y[2] = 0.8;
  CHECK(norm_inf_2(f) == doctest::Approx(1.0));
}

TEST_CASE("tv examples") {
  CHECK(tv(ScalarField(4, 0.25)) == 0.0);

  ScalarField stripes(2);
  stripes.at(0, 0) = 0.0;
  stripes.at(0, 1) = 1.0;
  stripes.at(1, 0) = 0.0;
  stripes.at(1, 1) = 1.0;
  CHECK(tv(stripes) == doctest::Approx(2.0));

  ScalarField u(2);
  u.at(0, 0) = 0.0;
  u.at(0, 1) = 1.0;
  u.at(1, 0) = 2.0;
  u.at(1, 1) = 3.0;
  CHECK(tv(u) == doctest::Approx(3.0 + std::sqrt(5.0)));
}

TEST_CASE("norm duality via the closed-form maximizer") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const VectorField v = oracles::random_vector_field(6, rng);
    // w_j = v_j / |v_j| attains max <v, w> over norm_inf_2(w) <= 1.
    VectorField w(6);
    for (std::size_t k = 0; k < v.x.size(); ++k) {
      const double n = std::sqrt(v.x[k] * v.x[k] + v.y[k] * v.y[k]);
      if (n > 0.0) {
        w.x[k] = v.x[k] / n;
        w.y[k] = v.y[k] / n;
      }
    }
    CHECK(norm_inf_2(w) <= 1.0 + 1e-12);
    CHECK(dot(v, w) == doctest::Approx(norm_1_2(v)).epsilon(1e-12));
  }
}

TEST_CASE("tv is positively homogeneous") {
  std::mt19937_64 rng(13);
  const ScalarField u = oracles::random_field(7, rng);
  for (double t : {0.0, 0.5, 2.0, -3.0}) {
    CHECK(tv(t * u) == doctest::Approx(std::abs(t) * tv(u)).epsilon(1e-12));
  }
}

TEST_CASE("operator norm of grad stays within the classical bound") {
  std::mt19937_64 rng(17);
  for (int p : {2, 3, 8, 16}) {
    for (int rep = 0; rep < 10; ++rep) {
      ScalarField u = oracles::random_field(p, rng, -1.0, 1.0);
      const double n = std::sqrt(norm_sq(u));
      u *= 1.0 / n;
      CHECK(std::sqrt(norm_sq(div(grad(u)))) <= 8.0 + 1e-9);
    }
    const double est = grad_norm_sq_estimate(p);
    CHECK(est > 0.0);
    CHECK(est <= 8.0 + 1e-9);
  }
}
