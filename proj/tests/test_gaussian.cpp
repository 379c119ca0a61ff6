#include <doctest.h>

#include <cmath>

#include "weylclt/gaussian.hpp"
#include "weylclt/rng.hpp"

using namespace weylclt;

namespace {

CovarianceMatrix isotropic(int modes, double a) {
  return CovarianceMatrix(a * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

Eigen::MatrixXd random_symmetric(Rng& rng, int dim, double scale) {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = scale * rng.normal();
  }
  return 0.5 * (m + m.transpose());
}

}  // namespace

TEST_CASE("isotropic spectrum: eigenvalues are a -/+ 1/2 with multiplicity two") {
  for (double a = 0.1; a <= 2.0; a += 0.1) {
    const auto eig = isotropic_spectrum(a);
    CHECK(std::abs(eig[0] - (a - 0.5)) <= 1e-12);
    CHECK(std::abs(eig[1] - (a - 0.5)) <= 1e-12);
    CHECK(std::abs(eig[2] - (a + 0.5)) <= 1e-12);
    CHECK(std::abs(eig[3] - (a + 0.5)) <= 1e-12);
  }
}

TEST_CASE("isotropic spectrum: specific values") {
  const auto half = isotropic_spectrum(0.5);
  CHECK(std::abs(half[0]) <= 1e-12);
  CHECK(std::abs(half[3] - 1.0) <= 1e-12);
  const auto one = isotropic_spectrum(1.0);
  CHECK(std::abs(one[0] - 0.5) <= 1e-12);
  CHECK(std::abs(one[3] - 1.5) <= 1e-12);
  // a = 0.49: min eigenvalue -0.01, so exp(-0.245||z||^2) is not quantum
  CHECK(isotropic_spectrum(0.49)[0] == doctest::Approx(-0.01));
}

TEST_CASE("covariance admissibility: the isotropic boundary at one half") {
  const auto at_half = covariance_admissible(isotropic(1, 0.5));
  CHECK(at_half.admissible);
  CHECK(std::abs(at_half.min_eigenvalue) <= 1e-12);

  CHECK_FALSE(covariance_admissible(isotropic(1, 0.3)).admissible);
  CHECK(covariance_admissible(isotropic(1, 0.51)).admissible);
  CHECK_FALSE(covariance_admissible(isotropic(2, 0.49)).admissible);
  CHECK(covariance_admissible(isotropic(2, 1.0)).admissible);
}

TEST_CASE("covariance admissibility: singular matrices are rejected") {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
  q(0, 0) = 1.0;  // diag(1, 0)
  CHECK_FALSE(covariance_admissible(CovarianceMatrix(q)).admissible);

  q(0, 0) = 5.0;  // diag(5, 0)
  CHECK_FALSE(covariance_admissible(CovarianceMatrix(q)).admissible);
}

TEST_CASE("covariance matrix: validates shape and symmetry") {
  CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd::Zero(3, 3)), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.2, -0.2, 1.0;
  CHECK_THROWS_AS(CovarianceMatrix{asym}, std::invalid_argument);
}

TEST_CASE("sample check: admissible isotropic matrices have no violations") {
  const auto result = covariance_sample_check(isotropic(1, 1.0), 2000, 77);
  CHECK(result.worst >= 0.0);
}

TEST_CASE("sample check: a = 0.3 violation is found by the structured pairs") {
  const auto result = covariance_sample_check(isotropic(1, 0.3), 1000, 78);
  CHECK(result.worst < 0.0);
  // witness reproduces its reported value
  const auto& w = result.witness;
  const Eigen::MatrixXd q = 0.3 * Eigen::MatrixXd::Identity(2, 2);
  const double direct = w.z.coords().dot(q * w.z.coords()) +
                        w.w.coords().dot(q * w.w.coords()) - symplectic_form(w.z, w.w);
  CHECK(direct == doctest::Approx(result.worst).epsilon(1e-12));
}

TEST_CASE("sample check: the zero matrix fails immediately") {
  const auto result = covariance_sample_check(
      CovarianceMatrix(Eigen::MatrixXd::Zero(2, 2)), 10, 79);
  CHECK(result.worst < 0.0);
}

TEST_CASE("agreement: eigenvalue test and sampled inequality concur on seeded sweeps") {
  Rng rng(80);
  int admissible_count = 0;
  for (int t = 0; t < 1000; ++t) {
    const int d = 1 + (t % 2);
    Eigen::MatrixXd q = random_symmetric(rng, 2 * d, 1.0);
    if (t % 3 == 0) {
      // bias some samples towards admissibility
      q = 0.5 * Eigen::MatrixXd::Identity(2 * d, 2 * d) + q * q.transpose();
    }
    const CovarianceMatrix cov(q);
    const auto verdict = covariance_admissible(cov);
    const auto sampled = covariance_sample_check(cov, 10000, 8000 + t);
    if (verdict.admissible) {
      ++admissible_count;
      CHECK(sampled.worst >= -1e-9);
    } else if (verdict.min_eigenvalue < -1e-6) {
      // a clear failure must produce a sampled violation
      CHECK(sampled.worst < 0.0);
    }
  }
  CHECK(admissible_count > 20);  // the sweep exercises both verdicts
}

TEST_CASE("scaling monotonicity: admissible matrices stay admissible when scaled up") {
  Rng rng(81);
  for (int t = 0; t < 100; ++t) {
    Eigen::MatrixXd q = random_symmetric(rng, 2, 0.6);
    q = 0.5 * Eigen::MatrixXd::Identity(2, 2) + q * q.transpose();
    const auto base = covariance_admissible(CovarianceMatrix(q));
    REQUIRE(base.admissible);
    for (const double c : {1.0, 1.5, 4.0}) {
      CHECK(covariance_admissible(CovarianceMatrix(c * q)).admissible);
    }
  }
}

TEST_CASE("nonsingularity: values and the admissibility cross-check") {
  const auto half = check_nonsingular(isotropic(1, 0.5));
  CHECK(half.nonsingular);
  CHECK(half.min_singular_value == doctest::Approx(0.5));

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
  q(0, 0) = 5.0;
  const auto singular = check_nonsingular(CovarianceMatrix(q));
  CHECK_FALSE(singular.nonsingular);
  // singular implies inadmissible
  CHECK_FALSE(covariance_admissible(CovarianceMatrix(q)).admissible);
}

TEST_CASE("nonsingularity: no admissible matrix in the sweep is singular") {
  Rng rng(82);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + (t % 2);
    Eigen::MatrixXd q = random_symmetric(rng, 2 * d, 1.5);
    const CovarianceMatrix cov(0.5 * (q + q.transpose()));
    if (covariance_admissible(cov).admissible) {
      CHECK(check_nonsingular(cov).min_singular_value > 1e-10);
    }
  }
}
