#ifndef WEYLCLT_PHASE_SPACE_HPP
#define WEYLCLT_PHASE_SPACE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace weylclt {

/// A point z in phase space R^{2d}. Coordinates are stored interleaved as
/// (x_1, y_1, ..., x_d, y_d); every module in this library assumes that
/// ordering.
class PhaseVector {
 public:
  explicit PhaseVector(Eigen::VectorXd coords);
  PhaseVector(std::initializer_list<double> coords);

  static PhaseVector zero(int modes);
  static PhaseVector basis(int modes, int axis);

  int modes() const { return modes_; }
  Eigen::Index size() const { return coords_.size(); }
  const Eigen::VectorXd& coords() const { return coords_; }

  double x(int mode) const { return coords_[2 * mode]; }
  double y(int mode) const { return coords_[2 * mode + 1]; }
  double operator[](Eigen::Index i) const { return coords_[i]; }

  double norm() const { return coords_.norm(); }
  bool is_zero() const;

  PhaseVector operator+(const PhaseVector& rhs) const;
  PhaseVector operator-(const PhaseVector& rhs) const;
  PhaseVector operator-() const;
  PhaseVector operator*(double s) const;

 private:
  Eigen::VectorXd coords_;
  int modes_;
};

PhaseVector operator*(double s, const PhaseVector& z);

/// Euclidean inner product <z, w>.
double inner(const PhaseVector& z, const PhaseVector& w);

/// The symplectic form sum_k (x_k y'_k - y_k x'_k). Bilinear, antisymmetric.
/// Throws std::invalid_argument on mode-count mismatch.
double symplectic_form(const PhaseVector& z, const PhaseVector& w);

/// The 2d x 2d block-diagonal matrix J with blocks [[0,1],[-1,0]], so that
/// z^T J w equals symplectic_form(z, w).
Eigen::MatrixXd symplectic_matrix(int modes);

/// Scales the k-th coordinate pair (x_k, y_k) by scales[k]. All scales must
/// be strictly positive.
PhaseVector apply_norming(const Eigen::VectorXd& scales, const PhaseVector& z);

/// A norming sequence: for every n >= 1 a vector of d positive scale factors
/// (a_1^(n), ..., a_d^(n)), one per mode.
class NormingSequence {
 public:
  using Rule = std::function<Eigen::VectorXd(std::int64_t)>;

  NormingSequence(int modes, Rule rule);

  /// a_k^(n) = 1/sqrt(n), the classical scaling.
  static NormingSequence inverse_sqrt(int modes);
  /// a_k^(n) = 1/n.
  static NormingSequence harmonic(int modes);
  /// a_k^(n) = n^{-exponent}.
  static NormingSequence power(int modes, double exponent);
  /// Explicit table; row i holds the scales for n = i + 1.
  static NormingSequence from_table(std::vector<Eigen::VectorXd> rows);

  int modes() const { return modes_; }
  /// Scales for index n (1-based). Throws if any entry is not positive or
  /// the table does not cover n.
  Eigen::VectorXd at(std::int64_t n) const;

 private:
  int modes_;
  Rule rule_;
};

struct BoundViolation {
  std::int64_t n;
  int mode;       // 0-based
  double value;   // the offending a_k^(n)
};

/// Scans n = 1..n_max and returns every (n, k) with a_k^(n) < 1/sqrt(n).
/// The comparison is strict with no tolerance: the scales are user inputs,
/// not computed quantities. An empty result means the necessary
/// admissibility bound holds on the checked range.
std::vector<BoundViolation> check_admissibility_bound(const NormingSequence& seq,
                                                      std::int64_t n_max);

}  // namespace weylclt

#endif  // WEYLCLT_PHASE_SPACE_HPP
