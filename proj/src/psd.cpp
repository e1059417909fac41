#include "tvlearn/psd.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace tvlearn {

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& s, PsdProjectStats* stats) {
  if (s.rows() != s.cols()) throw std::invalid_argument("psd_project: matrix must be square");
  if (!s.allFinite()) throw std::invalid_argument("psd_project: non-finite input");

  const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("psd_project: eigendecomposition failed");

  Eigen::VectorXd lambda = eig.eigenvalues();
  const double roundoff = 1e-9 * sym.norm();
  long clamped = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0.0) {
      if (lambda[i] < -roundoff) ++clamped;
      lambda[i] = 0.0;
    }
  }
  if (stats) {
    stats->clamped += clamped;
    stats->min_eigenvalue = eig.eigenvalues().size() ? eig.eigenvalues().minCoeff() : 0.0;
  }
  return eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
}

double min_eigenvalue(const Eigen::MatrixXd& s) {
  const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue: eigendecomposition failed");
  return eig.eigenvalues().minCoeff();
}

}  // namespace tvlearn
