#include "tvlearn/grid.hpp"

#include <cassert>
#include <stdexcept>

namespace tvlearn {

ScalarField::ScalarField(int p, double fill)
    : width(p), values(static_cast<std::size_t>(p) * p, fill) {
  if (p < 1) throw std::invalid_argument("ScalarField: width must be >= 1");
}

VectorField::VectorField(int p, double fill)
    : width(p),
      x(static_cast<std::size_t>(p) * p, fill),
      y(static_cast<std::size_t>(p) * p, fill) {
  if (p < 1) throw std::invalid_argument("VectorField: width must be >= 1");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  assert(width == other.width);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  assert(width == other.width);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double t) {
  for (double& v : values) v *= t;
  return *this;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  assert(width == other.width);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] += other.x[i];
    y[i] += other.y[i];
  }
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  assert(width == other.width);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] -= other.x[i];
    y[i] -= other.y[i];
  }
  return *this;
}

VectorField& VectorField::operator*=(double t) {
  for (double& v : x) v *= t;
  for (double& v : y) v *= t;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double t, ScalarField a) { return a *= t; }

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double t, VectorField a) { return a *= t; }

double dot(const ScalarField& a, const ScalarField& b) {
  assert(a.width == b.width);
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return s;
}

double dot(const VectorField& a, const VectorField& b) {
  assert(a.width == b.width);
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) s += a.x[i] * b.x[i] + a.y[i] * b.y[i];
  return s;
}

double norm_sq(const ScalarField& a) { return dot(a, a); }
double norm_sq(const VectorField& a) { return dot(a, a); }

}  // namespace tvlearn
