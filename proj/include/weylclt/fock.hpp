#ifndef WEYLCLT_FOCK_HPP
#define WEYLCLT_FOCK_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "weylclt/phase_space.hpp"

namespace weylclt {

using Complex = std::complex<double>;

/// A truncated d-mode Fock space: each mode keeps the number states
/// |0>, ..., |N-1>, so operators are dense N^d x N^d matrices. Mode 1 is the
/// leftmost tensor factor.
struct FockSpaceSpec {
  static constexpr long kDefaultMaxDim = 4096;

  FockSpaceSpec(int modes, int cutoff, long max_dim = kDefaultMaxDim);

  int modes;   // d >= 1
  int cutoff;  // N >= 2 number states per mode

  long dim() const;  // N^d

  friend bool operator==(const FockSpaceSpec&, const FockSpaceSpec&) = default;
};

/// A dense operator on a truncated Fock space.
class FockOperator {
 public:
  FockOperator(FockSpaceSpec spec, Eigen::MatrixXcd matrix);

  const FockSpaceSpec& spec() const { return spec_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  FockSpaceSpec spec_;
  Eigen::MatrixXcd matrix_;
};

struct ModeOperators {
  FockOperator momentum;  // p_k
  FockOperator position;  // q_k
};

/// Truncated momentum and position of mode k (0-based), embedded with
/// identity factors on the other modes. Built from ladder matrices as
/// q = (a + a^dag)/sqrt(2), p = -i(a - a^dag)/sqrt(2), so [p, q] = -i holds
/// exactly on the span of |0>, ..., |N-2> of mode k and truncation corrupts
/// only the top corner.
ModeOperators mode_operators(const FockSpaceSpec& spec, int mode);

/// R(z) = sum_k (x_k p_k + y_k q_k). Hermitian.
FockOperator canonical_observable(const FockSpaceSpec& spec, const PhaseVector& z);

/// V(z) = exp(i R(z)), computed through the Hermitian eigendecomposition of
/// R(z); unitary up to rounding.
FockOperator weyl_operator(const FockSpaceSpec& spec, const PhaseVector& z);

/// Max-norm residual of V(z)V(z') - e^{i Delta(z,z')/2} V(z+z') at cutoff N,
/// measured on the leading window x window block. The full-matrix residual
/// never converges (its mass sits at the moving truncation edge), so
/// convergence studies fix the observation window while N grows.
double weyl_relation_residual(int modes, int cutoff, const PhaseVector& z,
                              const PhaseVector& w, int window);

/// alpha = (-x + i y)/sqrt(2): with the ladder convention above,
/// V(z) restricted to one mode is the displacement D(alpha).
Complex displacement_amplitude(double x, double y);

/// Exact single-mode matrix element <m|D(alpha)|n> of the (untruncated)
/// displacement operator, via generalized Laguerre recurrences.
Complex displacement_element(int m, int n, Complex alpha);

/// The cutoff x cutoff block of the untruncated single-mode displacement
/// operator.
Eigen::MatrixXcd displacement_block(int cutoff, Complex alpha);

struct DensityValidation {
  double hermitian_defect;   // max |M - M^dag|
  double min_eigenvalue;     // of the symmetrized matrix
  double trace_defect;       // |tr M - 1|
  bool hermitian;
  bool positive;
  bool unit_trace;

  bool ok() const { return hermitian && positive && unit_trace; }
  std::string describe() const;
};

/// Checks the three probability-operator invariants: Hermitian to 1e-12,
/// eigenvalues >= -1e-10, trace within 1e-10 of one. Reports which failed
/// and by how much; never repairs.
DensityValidation validate_density(const Eigen::MatrixXcd& matrix);

/// A validated density matrix on a truncated Fock space.
class ProbabilityOperator {
 public:
  /// Throws std::invalid_argument with the validation report when the matrix
  /// is not an admissible density matrix.
  ProbabilityOperator(FockSpaceSpec spec, Eigen::MatrixXcd matrix);

  const FockSpaceSpec& spec() const { return spec_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  FockSpaceSpec spec_;
  Eigen::MatrixXcd matrix_;
};

struct VacuumParams {};
struct NumberParams {
  std::vector<int> occupation;  // one entry per mode, each < cutoff
};
struct CoherentParams {
  std::vector<Complex> alpha;  // one amplitude per mode
};
struct ThermalParams {
  std::vector<double> mean_occupation;  // nbar per mode, > 0
};
struct GinibreParams {
  std::uint64_t seed = 0;
};
struct ExplicitParams {
  Eigen::MatrixXcd matrix;  // validated, not repaired
};

using StateParams = std::variant<VacuumParams, NumberParams, CoherentParams,
                                 ThermalParams, GinibreParams, ExplicitParams>;

/// State constructors. Thermal and coherent states are truncated and then
/// renormalized to unit trace; explicit matrices are validated as given.
/// Ginibre states are G G^dag / tr(G G^dag) with G a seeded complex Gaussian
/// matrix: full-rank generic density matrices with reproducible seeds.
ProbabilityOperator make_state(const FockSpaceSpec& spec, const StateParams& params);

}  // namespace weylclt

#endif  // WEYLCLT_FOCK_HPP
