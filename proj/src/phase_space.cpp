#include "weylclt/phase_space.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace weylclt {

namespace {

void require_same_modes(const PhaseVector& z, const PhaseVector& w, const char* what) {
  if (z.modes() != w.modes()) {
    throw std::invalid_argument(std::string(what) + ": mode counts differ (" +
                                std::to_string(z.modes()) + " vs " +
                                std::to_string(w.modes()) + ")");
  }
}

}  // namespace

PhaseVector::PhaseVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2 || coords_.size() % 2 != 0) {
    throw std::invalid_argument("phase vector needs 2d coordinates, got " +
                                std::to_string(coords_.size()));
  }
  modes_ = static_cast<int>(coords_.size() / 2);
}

PhaseVector::PhaseVector(std::initializer_list<double> coords)
    : PhaseVector(Eigen::Map<const Eigen::VectorXd>(coords.begin(),
                                                    static_cast<Eigen::Index>(coords.size()))) {}

PhaseVector PhaseVector::zero(int modes) {
  return PhaseVector(Eigen::VectorXd::Zero(2 * modes));
}

PhaseVector PhaseVector::basis(int modes, int axis) {
  if (axis < 0 || axis >= 2 * modes) throw std::invalid_argument("basis axis out of range");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * modes);
  c[axis] = 1.0;
  return PhaseVector(std::move(c));
}

bool PhaseVector::is_zero() const { return coords_.isZero(0.0); }

PhaseVector PhaseVector::operator+(const PhaseVector& rhs) const {
  require_same_modes(*this, rhs, "phase vector sum");
  return PhaseVector(coords_ + rhs.coords_);
}

PhaseVector PhaseVector::operator-(const PhaseVector& rhs) const {
  require_same_modes(*this, rhs, "phase vector difference");
  return PhaseVector(coords_ - rhs.coords_);
}

PhaseVector PhaseVector::operator-() const { return PhaseVector(-coords_); }

PhaseVector PhaseVector::operator*(double s) const { return PhaseVector(coords_ * s); }

PhaseVector operator*(double s, const PhaseVector& z) { return z * s; }

double inner(const PhaseVector& z, const PhaseVector& w) {
  require_same_modes(z, w, "inner product");
  return z.coords().dot(w.coords());
}

double symplectic_form(const PhaseVector& z, const PhaseVector& w) {
  require_same_modes(z, w, "symplectic form");
  double acc = 0.0;
  for (int k = 0; k < z.modes(); ++k) {
    acc += z.x(k) * w.y(k) - z.y(k) * w.x(k);
  }
  return acc;
}

Eigen::MatrixXd symplectic_matrix(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be positive");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

PhaseVector apply_norming(const Eigen::VectorXd& scales, const PhaseVector& z) {
  if (scales.size() != z.modes()) {
    throw std::invalid_argument("norming needs one scale per mode");
  }
  if ((scales.array() <= 0.0).any()) {
    throw std::invalid_argument("norming scales must be strictly positive");
  }
  Eigen::VectorXd c(z.size());
  for (int k = 0; k < z.modes(); ++k) {
    c[2 * k] = scales[k] * z.x(k);
    c[2 * k + 1] = scales[k] * z.y(k);
  }
  return PhaseVector(std::move(c));
}

NormingSequence::NormingSequence(int modes, Rule rule)
    : modes_(modes), rule_(std::move(rule)) {
  if (modes_ < 1) throw std::invalid_argument("mode count must be positive");
}

NormingSequence NormingSequence::inverse_sqrt(int modes) {
  return NormingSequence(modes, [modes](std::int64_t n) {
    return Eigen::VectorXd::Constant(modes, 1.0 / std::sqrt(static_cast<double>(n)));
  });
}

NormingSequence NormingSequence::harmonic(int modes) {
  return NormingSequence(modes, [modes](std::int64_t n) {
    return Eigen::VectorXd::Constant(modes, 1.0 / static_cast<double>(n));
  });
}

NormingSequence NormingSequence::power(int modes, double exponent) {
  return NormingSequence(modes, [modes, exponent](std::int64_t n) {
    return Eigen::VectorXd::Constant(modes, std::pow(static_cast<double>(n), -exponent));
  });
}

NormingSequence NormingSequence::from_table(std::vector<Eigen::VectorXd> rows) {
  if (rows.empty()) throw std::invalid_argument("norming table is empty");
  const int modes = static_cast<int>(rows.front().size());
  auto table = std::make_shared<std::vector<Eigen::VectorXd>>(std::move(rows));
  for (const auto& row : *table) {
    if (row.size() != modes) throw std::invalid_argument("ragged norming table");
  }
  return NormingSequence(modes, [table](std::int64_t n) {
    if (n < 1 || n > static_cast<std::int64_t>(table->size())) {
      throw std::out_of_range("norming table has no row for n = " + std::to_string(n));
    }
    return (*table)[static_cast<std::size_t>(n - 1)];
  });
}

Eigen::VectorXd NormingSequence::at(std::int64_t n) const {
  if (n < 1) throw std::out_of_range("norming index must be >= 1");
  Eigen::VectorXd scales = rule_(n);
  if (scales.size() != modes_) {
    throw std::invalid_argument("norming rule returned wrong mode count");
  }
  if ((scales.array() <= 0.0).any()) {
    throw std::invalid_argument("norming scales must be strictly positive at n = " +
                                std::to_string(n));
  }
  return scales;
}

std::vector<BoundViolation> check_admissibility_bound(const NormingSequence& seq,
                                                      std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  std::vector<BoundViolation> violations;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const Eigen::VectorXd scales = seq.at(n);
    const double bound = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < seq.modes(); ++k) {
      if (scales[k] < bound) {
        violations.push_back({n, k, scales[k]});
      }
    }
  }
  return violations;
}

}  // namespace weylclt
