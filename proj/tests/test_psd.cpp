#include <Eigen/Core>
#include <random>

#include "doctest.h"
#include "tvlearn/psd.hpp"

using namespace tvlearn;

namespace {

Eigen::MatrixXd random_symmetric(long n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> unif(-scale, scale);
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = unif(rng);
  return 0.5 * (m + m.transpose()).eval();
}

Eigen::MatrixXd random_psd(long n, std::mt19937_64& rng, double scale = 1.0) {
  const Eigen::MatrixXd m = random_symmetric(n, rng, scale);
  return (m * m.transpose()).eval();
}

}  // namespace

TEST_CASE("identity is a fixed point") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  CHECK((psd_project(id) - id).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("diagonal clamping") {
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 0.0, 0.0, -2.0;
  Eigen::MatrixXd expected(2, 2);
  expected << 1.0, 0.0, 0.0, 0.0;
  CHECK((psd_project(s) - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("off-diagonal example projects onto the rank-one part") {
  Eigen::MatrixXd s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  Eigen::MatrixXd expected(2, 2);
  expected << 0.5, 0.5, 0.5, 0.5;
  CHECK((psd_project(s) - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("projection is idempotent") {
  std::mt19937_64 rng(23);
  for (long n : {2L, 5L, 33L}) {
    const Eigen::MatrixXd s = random_symmetric(n, rng);
    const Eigen::MatrixXd once = psd_project(s);
    const Eigen::MatrixXd twice = psd_project(once);
    CHECK((twice - once).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + once.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("variational characterization of the metric projection") {
  std::mt19937_64 rng(29);
  for (long n : {3L, 17L}) {
    const Eigen::MatrixXd s = random_symmetric(n, rng, 2.0);
    const Eigen::MatrixXd proj = psd_project(s);
    for (int rep = 0; rep < 100; ++rep) {
      const Eigen::MatrixXd x = random_psd(n, rng);
      const double inner = ((s - proj).cwiseProduct(x - proj)).sum();
      CHECK(inner <= 1e-9);
    }
  }
}

TEST_CASE("clamp warnings count genuinely negative eigenvalues") {
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 0.0, 0.0, -2.0;
  PsdProjectStats stats;
  psd_project(s, &stats);
  CHECK(stats.clamped == 1);
  CHECK(stats.min_eigenvalue == doctest::Approx(-2.0));

  PsdProjectStats clean;
  psd_project(Eigen::MatrixXd::Identity(3, 3), &clean);
  CHECK(clean.clamped == 0);
}

TEST_CASE("non-finite input is rejected") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
  s(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(psd_project(s), std::invalid_argument);
}

TEST_CASE("min_eigenvalue agrees with the projection split") {
  std::mt19937_64 rng(31);
  const Eigen::MatrixXd s = random_symmetric(6, rng);
  const double mineig = min_eigenvalue(s);
  // s - project(s) is negative semidefinite with smallest eigenvalue mineig.
  const Eigen::MatrixXd neg = s - psd_project(s);
  CHECK(min_eigenvalue(neg) == doctest::Approx(std::min(mineig, 0.0)).epsilon(1e-10));
}
