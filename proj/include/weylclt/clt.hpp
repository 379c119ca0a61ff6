#ifndef WEYLCLT_CLT_HPP
#define WEYLCLT_CLT_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "weylclt/char_fn.hpp"
#include "weylclt/fock.hpp"
#include "weylclt/measures.hpp"
#include "weylclt/phase_space.hpp"

namespace weylclt {

/// Centering vector z_n = -sqrt(n) * mean_vector(T), so that
/// <z_n, z> = -sqrt(n) m1(z).
PhaseVector centering_sequence(const ProbabilityOperator& state, std::int64_t n);

/// Characteristic function of the n-th normed, centered convolution power:
/// e^{i<centering,z>} [f(A z)]^n with A the per-mode scales. The integer
/// power is computed as exp(n log v) with the principal log, which is exact
/// for integer exponents (v^n is single-valued); v = 0 underflows to the
/// legitimate limit value 0.
Complex scheme_char(const CharFn& f, const Eigen::VectorXd& scales,
                    const PhaseVector& centering, const PhaseVector& z, std::int64_t n);

/// Covariance recovered from the variance form by polarization:
/// Q_jk = (var(e_j + e_k) - var(e_j) - var(e_k)) / 2.
Eigen::MatrixXd recovered_covariance(const ProbabilityOperator& state);

/// The centered Gaussian limit exp(-<Qz,z>/2) with Q recovered from the
/// state's variance form. Throws std::domain_error when Q fails the
/// covariance admissibility test, which signals truncation artifacts.
CharFn gaussian_limit_target(const ProbabilityOperator& state);

struct CltRunConfig {
  std::vector<std::int64_t> n_list;  // nonempty, increasing
  GridSpec grid;
  double threshold = 0.05;
};

struct CltErrorRecord {
  std::int64_t n;
  double sup_error;  // max over grid |scheme_char - target|
};

struct CltReport {
  std::vector<CltErrorRecord> errors;
  Eigen::MatrixXd target_covariance;
  double covariance_min_eigenvalue;
  bool covariance_admissible;
  bool strictly_decreasing;  // over the whole n_list
  bool degenerate_limit;     // |scheme_char| ~ 1 everywhere at n_max
  bool pass;                 // final error < threshold and < first error
};

/// Convergence study of the scheme against the Gaussian target on a grid.
/// Centering comes from the state's mean vector at every n.
CltReport clt_convergence_report(const ProbabilityOperator& state,
                                 const NormingSequence& norming, const CltRunConfig& config);

// ---------------------------------------------------------------------------
// Classical one-dimensional diagnostics.
// ---------------------------------------------------------------------------

struct RademacherFamily {};  // atoms +-1 with weight 1/2
struct UniformFamily {
  double halfwidth = 1.0;  // uniform on [-halfwidth, halfwidth]
};
struct ParetoFamily {
  double tail_index;  // alpha; infinite variance when alpha <= 2
  double scale = 1.0;
};

using ClassicalMeasure =
    std::variant<DiscreteMeasure, RademacherFamily, UniformFamily, ParetoFamily>;

/// U(x) = integral of lambda^2 over [-x, x]; closed forms for the parametric
/// families, an atom sum otherwise.
double truncated_second_moment(const ClassicalMeasure& nu, double x);

struct ScalingDiagnostic {
  struct Row {
    std::int64_t n;
    double value;  // n b_n^2 U(x / b_n)
  };
  std::vector<Row> rows;
  bool stabilized;  // final values settle, vs. growing without bound
};

/// The diagnostic sequence n b_n^2 U(x/b_n). With b_n = 1/sqrt(n) it
/// stabilizes near the full second moment exactly when that moment is
/// finite; heavy tails in a non-Gaussian stable domain make it diverge.
ScalingDiagnostic truncated_moment_scaling(const ClassicalMeasure& nu,
                                           const NormingSequence& b, double x,
                                           std::span<const std::int64_t> n_list);

struct ClassicalCltResult {
  struct Row {
    std::int64_t n;
    double sup_error;
  };
  std::vector<Row> rows;
  double mean;
  double variance;
  bool degenerate;  // variance 0: the limit is the constant 1
};

/// Sup error of e^{-i t m sqrt(n)} [nu^(t/sqrt(n))]^n against e^{-var t^2/2}
/// on the t grid. Rejects infinite-variance families, pointing at the
/// scaling diagnostic instead.
ClassicalCltResult classical_clt_check(const ClassicalMeasure& nu,
                                       std::span<const std::int64_t> n_list,
                                       std::span<const double> t_grid);

}  // namespace weylclt

#endif  // WEYLCLT_CLT_HPP
