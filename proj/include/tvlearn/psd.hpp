// Projection onto the positive semidefinite cone via spectral decomposition.

#ifndef TVLEARN_PSD_HPP
#define TVLEARN_PSD_HPP

#include <Eigen/Core>

namespace tvlearn {

struct PsdProjectStats {
  long clamped = 0;          // eigenvalues below the round-off band that were clamped
  double min_eigenvalue = 0.0;
};

// Frobenius-nearest PSD matrix: symmetrize, eigendecompose, clamp negative
// eigenvalues to zero, reassemble. Eigenvalues in [-1e-9 * ||S||_F, 0) count
// as round-off; anything more negative increments stats.clamped.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& s, PsdProjectStats* stats = nullptr);

// Smallest eigenvalue of the symmetrized input (PSD diagnostics).
double min_eigenvalue(const Eigen::MatrixXd& s);

}  // namespace tvlearn

#endif  // TVLEARN_PSD_HPP
