#ifndef WEYLCLT_CHAR_FN_HPP
#define WEYLCLT_CHAR_FN_HPP

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "weylclt/fock.hpp"
#include "weylclt/phase_space.hpp"

namespace weylclt {

/// A finite rectangular evaluation lattice in R^{2d}. Points enumerate with
/// the last axis fastest.
struct GridSpec {
  struct Axis {
    double lo;
    double hi;
    int count;  // >= 1
  };

  explicit GridSpec(std::vector<Axis> axes);

  /// Uniform [-halfwidth, halfwidth] on every axis.
  static GridSpec cube(int modes, double halfwidth, int points_per_axis);

  int modes() const { return static_cast<int>(axes.size()) / 2; }
  long total_points() const;
  std::vector<PhaseVector> points() const;

  std::vector<Axis> axes;  // size 2d
};

/// A characteristic function on phase space. Either a Gaussian closed form
/// exp(i<z0,z> - <Qz,z>/2), the transform z -> tr(T V(z)) of a probability
/// operator, a pointwise product, or a phase translate of another CharFn.
/// Values are immutable after construction.
class CharFn {
 public:
  struct GaussianForm {
    PhaseVector center;
    Eigen::MatrixXd covariance;
  };
  struct OperatorForm {
    std::shared_ptr<const ProbabilityOperator> state;
  };
  struct ProductForm {
    std::vector<CharFn> factors;
  };
  struct TranslatedForm {
    std::shared_ptr<const CharFn> base;
    PhaseVector shift;
  };
  using Form = std::variant<GaussianForm, OperatorForm, ProductForm, TranslatedForm>;

  static CharFn gaussian(PhaseVector center, Eigen::MatrixXd covariance);
  /// Isotropic Gaussian exp(-(a/2) ||z||^2), i.e. covariance a * I.
  static CharFn isotropic_gaussian(int modes, double a);
  static CharFn from_state(ProbabilityOperator state);
  static CharFn from_state(std::shared_ptr<const ProbabilityOperator> state);
  static CharFn product(std::vector<CharFn> factors);
  static CharFn translated(CharFn base, PhaseVector shift);

  int modes() const { return modes_; }
  const Form& form() const { return *form_; }

  /// Pointwise evaluation. Operator-backed functions evaluate tr(T V(z))
  /// with the truncated Weyl operator at the state's own cutoff.
  Complex operator()(const PhaseVector& z) const;

  /// Evaluation through exact (untruncated) displacement matrix elements for
  /// operator-backed leaves; identical to operator() for closed forms. Used
  /// where the truncated Weyl operator is unreliable, i.e. far from the
  /// origin relative to the cutoff.
  Complex eval_exact(const PhaseVector& z) const;

  /// A logarithm of the value: closed-form exponents for Gaussian factors
  /// and translations, the principal branch for operator-backed leaves.
  /// Branches only differ by 2 pi i, so exp(n log_eval(z)) is exact for
  /// integer n. The real part is -inf where the value vanishes.
  Complex log_eval(const PhaseVector& z) const;

 private:
  CharFn(int modes, Form form);

  int modes_;
  std::shared_ptr<const Form> form_;
};

/// The translate z -> e^{i<shift,z>} f(z); again a characteristic function.
CharFn translate(const CharFn& f, const PhaseVector& shift);

/// Convolution at the transform level: the pointwise product.
CharFn convolve(const CharFn& f, const CharFn& g);

/// M_jk = f(z_j - z_k) e^{i Delta(z_j, z_k)/2}, symmetrized to (M + M^dag)/2
/// to suppress rounding asymmetry. Eigenvalues >= 0 for every quantum
/// characteristic function.
Eigen::MatrixXcd twisted_pd_matrix(const CharFn& f, std::span<const PhaseVector> points);

struct TwistedPdResult {
  double min_eigenvalue;
  double matrix_norm;  // spectral norm of M
  bool pass;           // min_eigenvalue >= -tol * matrix_norm
};

/// Twisted positive-definiteness test on a finite point set. A failure
/// certifies f is not a quantum characteristic function; a pass is evidence
/// only, since a finite grid cannot check continuity at the origin.
TwistedPdResult twisted_pd_check(const CharFn& f, std::span<const PhaseVector> points,
                                 double tol = 1e-8);

/// max |f| over the grid. The algebra norm ||T|| = ||T^|| is approximated by
/// this supremum on user-specified grids.
double sup_norm(const CharFn& f, const GridSpec& grid);

struct QuadratureSpec {
  double halfwidth = 8.0;     // box [-L, L]^{2d}
  int points_per_axis = 161;
  double boundary_tol = 1e-10;  // flag threshold on |f|^2 at the box edge
};

struct PlancherelResult {
  double value;
  double boundary_max_sq;  // max |f|^2 over boundary lattice points
  bool converged;          // boundary_max_sq < boundary_tol
};

/// L^2 norm (2pi)^{-d/2} (int |f|^2 dz)^{1/2} by trapezoid quadrature on the
/// box. For an operator-backed f this matches hs_norm of the state up to
/// quadrature error. Operator leaves evaluate through eval_exact; the
/// truncated Weyl operator does not decay at large ||z|| and would corrupt
/// the tail of the integral.
PlancherelResult plancherel_norm(const CharFn& f, const QuadratureSpec& quad = {});

/// Hilbert-Schmidt norm sqrt(tr(T^dag T)); in (0, 1] for probability
/// operators.
double hs_norm(const ProbabilityOperator& state);

}  // namespace weylclt

#endif  // WEYLCLT_CHAR_FN_HPP
