#include "weylclt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "weylclt/rng.hpp"

namespace weylclt {

namespace {

constexpr double kMergeTol = 1e-9;       // relative eigenvalue merge tolerance
constexpr double kVarianceFloor = -1e-12;

}  // namespace

double DiscreteMeasure::total_weight() const {
  double sum = 0.0;
  for (const Atom& atom : atoms) sum += atom.weight;
  return sum;
}

DiscreteMeasure spectral_measure(const ProbabilityOperator& state, const PhaseVector& z) {
  if (z.modes() != state.spec().modes) {
    throw std::invalid_argument("spectral measure: mode counts differ");
  }
  if (z.is_zero()) {
    return DiscreteMeasure{{{0.0, 1.0}}};
  }
  const FockOperator r = canonical_observable(state.spec(), z);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral measure: eigendecomposition failed");
  }
  const Eigen::VectorXd values = solver.eigenvalues();  // ascending
  const Eigen::MatrixXcd vectors = solver.eigenvectors();

  const double scale = std::max(1.0, std::max(std::abs(values[0]),
                                              std::abs(values[values.size() - 1])));
  DiscreteMeasure mu;
  Eigen::Index i = 0;
  while (i < values.size()) {
    Eigen::Index j = i;
    double weight = 0.0;
    double weighted_value = 0.0;
    double plain_value = 0.0;
    while (j < values.size() && values[j] - values[i] <= kMergeTol * scale) {
      const Complex diag = vectors.col(j).dot(state.matrix() * vectors.col(j));
      const double w = std::max(0.0, diag.real());
      weight += w;
      weighted_value += w * values[j];
      plain_value += values[j];
      ++j;
    }
    const double value = weight > 0.0 ? weighted_value / weight
                                      : plain_value / static_cast<double>(j - i);
    mu.atoms.push_back({value, weight});
    i = j;
  }
  return mu;
}

double mean(const DiscreteMeasure& mu) {
  double acc = 0.0;
  for (const auto& atom : mu.atoms) acc += atom.weight * atom.value;
  return acc;
}

double second_moment(const DiscreteMeasure& mu) {
  double acc = 0.0;
  for (const auto& atom : mu.atoms) acc += atom.weight * atom.value * atom.value;
  return acc;
}

double variance(const DiscreteMeasure& mu) {
  const double m1 = mean(mu);
  const double value = second_moment(mu) - m1 * m1;
  if (value < kVarianceFloor) {
    throw std::runtime_error("variance evaluated below -1e-12: " + std::to_string(value));
  }
  return std::max(value, 0.0);
}

PhaseVector mean_vector(const ProbabilityOperator& state) {
  const int d = state.spec().modes;
  Eigen::VectorXd m(2 * d);
  for (int axis = 0; axis < 2 * d; ++axis) {
    m[axis] = mean(spectral_measure(state, PhaseVector::basis(d, axis)));
  }
  const PhaseVector result(m);

  // re-verify linearity of the mean on pseudo-random directions
  Rng rng(0x6d65616e);
  for (int t = 0; t < 4; ++t) {
    Eigen::VectorXd c(2 * d);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = rng.normal();
    const PhaseVector z(c);
    const double direct = mean(spectral_measure(state, z));
    const double linear = inner(result, z);
    if (std::abs(direct - linear) > 1e-8 * (1.0 + std::abs(direct))) {
      throw std::runtime_error("mean vector linearity check failed; truncation too aggressive");
    }
  }
  return result;
}

std::vector<PhaseVector> component_decomposition(const PhaseVector& z) {
  std::vector<PhaseVector> parts;
  parts.reserve(z.modes());
  for (int k = 0; k < z.modes(); ++k) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(z.size());
    c[2 * k] = z.x(k);
    c[2 * k + 1] = z.y(k);
    parts.emplace_back(c);
  }
  return parts;
}

CommutingFamilyReport commuting_family_check(const FockSpaceSpec& spec, const PhaseVector& z) {
  if (z.modes() != spec.modes) {
    throw std::invalid_argument("commuting family check: mode counts differ");
  }
  const auto parts = component_decomposition(z);
  std::vector<Eigen::MatrixXcd> observables;
  observables.reserve(parts.size());
  for (const auto& part : parts) {
    observables.push_back(canonical_observable(spec, part).matrix());
  }

  double max_commutator = 0.0;
  for (std::size_t j = 0; j < observables.size(); ++j) {
    for (std::size_t k = j + 1; k < observables.size(); ++k) {
      const Eigen::MatrixXcd comm =
          observables[j] * observables[k] - observables[k] * observables[j];
      max_commutator = std::max(max_commutator, comm.cwiseAbs().maxCoeff());
    }
  }

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(spec.dim(), spec.dim());
  for (const auto& r : observables) sum += r;
  const double additivity =
      (canonical_observable(spec, z).matrix() - sum).cwiseAbs().maxCoeff();
  return {max_commutator, additivity};
}

MomentInequalityResult moment_inequality_check(const ProbabilityOperator& state,
                                               const PhaseVector& z) {
  const double lhs = second_moment(spectral_measure(state, z));
  double component_sum = 0.0;
  for (const auto& part : component_decomposition(z)) {
    component_sum += second_moment(spectral_measure(state, part));
  }
  const double rhs = static_cast<double>(z.modes()) * component_sum;
  return {lhs, rhs, lhs <= rhs + 1e-8 * (1.0 + rhs)};
}

}  // namespace weylclt
