#ifndef WEYLCLT_GAUSSIAN_HPP
#define WEYLCLT_GAUSSIAN_HPP

#include <array>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "weylclt/phase_space.hpp"

namespace weylclt {

/// A real symmetric 2d x 2d candidate covariance matrix. Positive
/// semidefiniteness is not assumed; whether Q is the covariance of a
/// Gaussian probability operator is what this module decides.
class CovarianceMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is square with even
  /// dimension and symmetric to 1e-12.
  explicit CovarianceMatrix(Eigen::MatrixXd q);

  int modes() const { return modes_; }
  const Eigen::MatrixXd& matrix() const { return q_; }

 private:
  Eigen::MatrixXd q_;
  int modes_;
};

struct AdmissibilityResult {
  double min_eigenvalue;  // of the Hermitian matrix Q + (i/2) J
  bool admissible;        // min_eigenvalue >= -1e-10
};

/// Decides <Qz,z> + <Qz',z'> >= Delta(z,z') for all z, z' by the minimum
/// eigenvalue of Q + (i/2)J. The reduction is validated against
/// covariance_sample_check in the test suite.
AdmissibilityResult covariance_admissible(const CovarianceMatrix& q);

struct CovarianceWitness {
  PhaseVector z;
  PhaseVector w;
  double value;  // <Qz,z> + <Qw,w> - Delta(z,w) at the minimizer found
};

struct CovarianceSampleResult {
  double worst;  // min over samples; negative certifies inadmissibility
  CovarianceWitness witness;
};

/// Brute-force sampling of the admissibility inequality over seeded random
/// unit-sphere pairs plus the structured single-mode pairs
/// (x, y) / (-x, y) that expose isotropic violations. Keeps the minimizing
/// pair as a reproducible witness.
CovarianceSampleResult covariance_sample_check(const CovarianceMatrix& q, int trials,
                                               std::uint64_t seed);

/// Eigenvalues (ascending) of the 4 x 4 isotropic admissibility form
/// [[a,0,0,-1/2],[0,a,1/2,0],[0,1/2,a,0],[-1/2,0,0,a]]; analytically
/// {a-1/2, a-1/2, a+1/2, a+1/2}, so exp(-(a/2)||z||^2) is a quantum
/// characteristic function exactly when a >= 1/2.
std::array<double, 4> isotropic_spectrum(double a);

struct NonsingularityResult {
  double min_singular_value;
  bool nonsingular;  // min_singular_value > 1e-10
};

/// Minimum singular value of Q. Admissible covariances are always
/// nonsingular; the test suite sweeps that consistency.
NonsingularityResult check_nonsingular(const CovarianceMatrix& q);

}  // namespace weylclt

#endif  // WEYLCLT_GAUSSIAN_HPP
