// Small hand-rolled problem instances exercising the solver contract on
// spaces other than the imaging ones.

#ifndef TVLEARN_TESTS_TOY_PROBLEMS_HPP
#define TVLEARN_TESTS_TOY_PROBLEMS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace toys {

struct Vec {
  std::vector<double> v;

  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0) : v(n, fill) {}
  Vec(std::initializer_list<double> init) : v(init) {}

  Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec& operator*=(double t) {
    for (double& x : v) x *= t;
    return *this;
  }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double t, Vec a) { return a *= t; }

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += a.v[i] * b.v[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// min 1/2 ||u - target||^2 over the unit Euclidean ball, P = 0. The pure
// conditional-gradient configuration with a closed-form linear oracle.
struct BallProjectionProblem {
  using Point = Vec;
  Vec target;

  Point grad_f(const Point& u) const { return u - target; }
  Point hybrid_argmin(const Point&, const Point& g) const {
    const double n = norm(g);
    if (n == 0.0) return Point(g.v.size());
    return (-1.0 / n) * g;
  }
  double df(const Point& u, const Point& w) const { return 0.5 * dot(u - w, u - w); }
  double p_norm_sq(const Point&) const { return 0.0; }
  double f_value(const Point& u) const { return 0.5 * dot(u - target, u - target); }
  double g_value(const Point& u) const {
    return norm(u) <= 1.0 + 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  double dot(const Point& a, const Point& b) const { return toys::dot(a, b); }
};

// f = eps/2 ||u - b||^2, g = mu ||u||_1, P = identity. With eps <= 1/2 the
// step-size rule returns 1 every iteration and the update coincides with the
// proximal-gradient map u <- soft_threshold(u - grad f(u), mu).
struct SoftThresholdProblem {
  using Point = Vec;
  double eps = 0.25;
  double mu = 0.1;
  Vec b;

  static double soft(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
  }

  Point grad_f(const Point& u) const { return eps * (u - b); }
  Point hybrid_argmin(const Point& u, const Point& g) const {
    Point out = u - g;
    for (double& x : out.v) x = soft(x, mu);
    return out;
  }
  double df(const Point& u, const Point& w) const { return 0.5 * eps * dot(u - w, u - w); }
  double p_norm_sq(const Point& w) const { return dot(w, w); }
  double f_value(const Point& u) const { return 0.5 * eps * dot(u - b, u - b); }
  double g_value(const Point& u) const {
    double s = 0.0;
    for (double x : u.v) s += std::abs(x);
    return mu * s;
  }
  double dot(const Point& a, const Point& b2) const { return toys::dot(a, b2); }
};

// f = 1/2 u^2 with g = 0 and P = 0 on the real line: the hybrid subproblem
// min_v u*v is unbounded below, i.e. 1/2 ||.||_P^2 + g is not strongly
// coercive and the solver's precondition fails.
struct UnboundedSubproblem {
  using Point = Vec;

  Point grad_f(const Point& u) const { return u; }
  Point hybrid_argmin(const Point& u, const Point&) const {
    if (u.v[0] != 0.0)
      throw std::domain_error("hybrid subproblem unbounded below (no strong coercivity)");
    return u;
  }
  double df(const Point& u, const Point& w) const { return 0.5 * dot(u - w, u - w); }
  double p_norm_sq(const Point&) const { return 0.0; }
  double f_value(const Point& u) const { return 0.5 * dot(u, u); }
  double g_value(const Point&) const { return 0.0; }
  double dot(const Point& a, const Point& b) const { return toys::dot(a, b); }
};

}  // namespace toys

#endif  // TVLEARN_TESTS_TOY_PROBLEMS_HPP
