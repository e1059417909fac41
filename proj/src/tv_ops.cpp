#include "tvlearn/tv_ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tvlearn {

VectorField grad(const ScalarField& u) {
  const int p = u.width;
  VectorField g(p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * p + j;
      g.x[k] = (j < p - 1) ? u.values[k + 1] - u.values[k] : 0.0;
      g.y[k] = (i < p - 1) ? u.values[k + p] - u.values[k] : 0.0;
    }
  }
  return g;
}

ScalarField div(const VectorField& v) {
  const int p = v.width;
  ScalarField d(p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * p + j;
      double s = 0.0;
      // Transposed forward-difference stencil, negated.
      if (j < p - 1) s += v.x[k];
      if (j > 0) s -= v.x[k - 1];
      if (i < p - 1) s += v.y[k];
      if (i > 0) s -= v.y[k - p];
      d.values[k] = s;
    }
  }
  return d;
}

double norm_1_2(const VectorField& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < v.x.size(); ++k)
    s += std::sqrt(v.x[k] * v.x[k] + v.y[k] * v.y[k]);
  return s;
}

double norm_inf_2(const VectorField& v) {
  double m = 0.0;
  for (std::size_t k = 0; k < v.x.size(); ++k)
    m = std::max(m, std::sqrt(v.x[k] * v.x[k] + v.y[k] * v.y[k]));
  return m;
}

double tv(const ScalarField& u) { return norm_1_2(grad(u)); }

double grad_norm_sq_estimate(int p, int iterations) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  ScalarField u(p);
  for (double& v : u.values) v = unif(rng);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    ScalarField w = -1.0 * div(grad(u));  // grad^T grad u
    lambda = dot(u, w);
    const double n = std::sqrt(norm_sq(w));
    if (n == 0.0) return 0.0;
    u = (1.0 / n) * w;
  }
  return lambda;
}

}  // namespace tvlearn
