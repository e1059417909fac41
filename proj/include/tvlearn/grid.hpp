// Square-grid scalar and vector fields used throughout the library.
//
// A ScalarField is a p x p image stored row-major; a VectorField carries one
// (x, y) pair per pixel and is the range of the discrete gradient. Both are
// plain value types with component-wise arithmetic and Euclidean inner
// products, which is all the solver needs from a point space.

#ifndef TVLEARN_GRID_HPP
#define TVLEARN_GRID_HPP

#include <cstddef>
#include <vector>

namespace tvlearn {

struct ScalarField {
  int width = 0;               // p; the grid is width x width
  std::vector<double> values;  // p*p entries, row-major

  ScalarField() = default;
  explicit ScalarField(int p, double fill = 0.0);

  int size() const { return width * width; }
  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double t);
};

struct VectorField {
  int width = 0;
  std::vector<double> x;  // p*p x-components, row-major
  std::vector<double> y;  // p*p y-components, row-major

  VectorField() = default;
  explicit VectorField(int p, double fill = 0.0);

  int size() const { return width * width; }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double t);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double t, ScalarField a);

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double t, VectorField a);

// Plain Euclidean inner products on the grid (no mesh weighting).
double dot(const ScalarField& a, const ScalarField& b);
double dot(const VectorField& a, const VectorField& b);

double norm_sq(const ScalarField& a);
double norm_sq(const VectorField& a);

}  // namespace tvlearn

#endif  // TVLEARN_GRID_HPP
