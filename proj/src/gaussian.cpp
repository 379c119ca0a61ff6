#include "weylclt/gaussian.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "weylclt/rng.hpp"

namespace weylclt {

namespace {

using Complex = std::complex<double>;

constexpr double kSymmetryTol = 1e-12;
constexpr double kAdmissibleTol = 1e-10;
constexpr double kSingularTol = 1e-10;

double inequality_value(const Eigen::MatrixXd& q, const PhaseVector& z, const PhaseVector& w) {
  return z.coords().dot(q * z.coords()) + w.coords().dot(q * w.coords()) -
         symplectic_form(z, w);
}

PhaseVector unit_sphere_sample(Rng& rng, int dim) {
  Eigen::VectorXd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    norm = v.norm();
  } while (norm == 0.0);
  return PhaseVector(v / norm);
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd q) : q_(std::move(q)) {
  if (q_.rows() != q_.cols() || q_.rows() < 2 || q_.rows() % 2 != 0) {
    throw std::invalid_argument("covariance must be square with even dimension 2d");
  }
  if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw std::invalid_argument("covariance must be symmetric to 1e-12");
  }
  modes_ = static_cast<int>(q_.rows() / 2);
}

AdmissibilityResult covariance_admissible(const CovarianceMatrix& q) {
  const Eigen::MatrixXd j = symplectic_matrix(q.modes());
  const Eigen::MatrixXcd h =
      q.matrix().cast<Complex>() + Complex(0.0, 0.5) * j.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  return {lo, lo >= -kAdmissibleTol};
}

CovarianceSampleResult covariance_sample_check(const CovarianceMatrix& q, int trials,
                                               std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int d = q.modes();
  const int dim = 2 * d;
  Rng rng(seed);

  double worst = std::numeric_limits<double>::infinity();
  PhaseVector worst_z = PhaseVector::zero(d);
  PhaseVector worst_w = PhaseVector::zero(d);
  const auto consider = [&](const PhaseVector& z, const PhaseVector& w) {
    const double value = inequality_value(q.matrix(), z, w);
    if (value < worst) {
      worst = value;
      worst_z = z;
      worst_w = w;
    }
  };

  // structured single-mode pairs z = (x, y), w = (-x, y): the family that
  // exposes isotropic violations below the 1/2 boundary
  for (int k = 0; k < d; ++k) {
    for (int step = 0; step < 8; ++step) {
      const double angle = M_PI * step / 8.0;
      Eigen::VectorXd zc = Eigen::VectorXd::Zero(dim);
      Eigen::VectorXd wc = Eigen::VectorXd::Zero(dim);
      zc[2 * k] = std::cos(angle);
      zc[2 * k + 1] = std::sin(angle);
      wc[2 * k] = -zc[2 * k];
      wc[2 * k + 1] = zc[2 * k + 1];
      consider(PhaseVector(zc), PhaseVector(wc));
    }
  }

  for (int t = 0; t < trials; ++t) {
    consider(unit_sphere_sample(rng, dim), unit_sphere_sample(rng, dim));
  }
  return {worst, {worst_z, worst_w, worst}};
}

std::array<double, 4> isotropic_spectrum(double a) {
  if (a <= 0.0) throw std::invalid_argument("isotropic coefficient must be positive");
  Eigen::Matrix4d m;
  m << a, 0.0, 0.0, -0.5,
       0.0, a, 0.5, 0.0,
       0.0, 0.5, a, 0.0,
       -0.5, 0.0, 0.0, a;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  return out;
}

NonsingularityResult check_nonsingular(const CovarianceMatrix& q) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q.matrix());
  const double lo = svd.singularValues().minCoeff();
  return {lo, lo > kSingularTol};
}

}  // namespace weylclt
