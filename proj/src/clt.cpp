#include "weylclt/clt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weylclt/gaussian.hpp"

namespace weylclt {

PhaseVector centering_sequence(const ProbabilityOperator& state, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("centering index must be >= 1");
  return mean_vector(state) * (-std::sqrt(static_cast<double>(n)));
}

Complex scheme_char(const CharFn& f, const Eigen::VectorXd& scales,
                    const PhaseVector& centering, const PhaseVector& z, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("scheme index must be >= 1");
  const PhaseVector scaled = apply_norming(scales, z);
  const Complex log_value = f.log_eval(scaled);
  if (std::isinf(log_value.real()) && log_value.real() < 0.0) {
    return Complex(0.0, 0.0);  // the factor vanished; the limit value is 0
  }
  const Complex exponent =
      Complex(0.0, inner(centering, z)) + static_cast<double>(n) * log_value;
  return std::exp(exponent);
}

Eigen::MatrixXd recovered_covariance(const ProbabilityOperator& state) {
  const int d = state.spec().modes;
  const int dim = 2 * d;
  Eigen::VectorXd axis_var(dim);
  for (int j = 0; j < dim; ++j) {
    axis_var[j] = variance(spectral_measure(state, PhaseVector::basis(d, j)));
  }
  Eigen::MatrixXd q(dim, dim);
  for (int j = 0; j < dim; ++j) {
    q(j, j) = axis_var[j];
    for (int k = j + 1; k < dim; ++k) {
      const PhaseVector sum = PhaseVector::basis(d, j) + PhaseVector::basis(d, k);
      const double polar =
          0.5 * (variance(spectral_measure(state, sum)) - axis_var[j] - axis_var[k]);
      q(j, k) = polar;
      q(k, j) = polar;
    }
  }
  return q;
}

CharFn gaussian_limit_target(const ProbabilityOperator& state) {
  const Eigen::MatrixXd q = recovered_covariance(state);
  const auto verdict = covariance_admissible(CovarianceMatrix(q));
  if (!verdict.admissible) {
    throw std::domain_error("recovered covariance is not admissible (min eigenvalue " +
                            std::to_string(verdict.min_eigenvalue) +
                            "); truncation artifacts likely");
  }
  return CharFn::gaussian(PhaseVector::zero(state.spec().modes), q);
}

CltReport clt_convergence_report(const ProbabilityOperator& state,
                                 const NormingSequence& norming, const CltRunConfig& config) {
  if (config.n_list.empty()) throw std::invalid_argument("clt run needs a nonempty n list");
  if (!std::is_sorted(config.n_list.begin(), config.n_list.end()) ||
      std::adjacent_find(config.n_list.begin(), config.n_list.end()) != config.n_list.end()) {
    throw std::invalid_argument("clt run n list must be strictly increasing");
  }
  if (norming.modes() != state.spec().modes) {
    throw std::invalid_argument("norming and state mode counts differ");
  }

  CltReport report;
  report.target_covariance = recovered_covariance(state);
  const auto verdict = covariance_admissible(CovarianceMatrix(report.target_covariance));
  report.covariance_min_eigenvalue = verdict.min_eigenvalue;
  report.covariance_admissible = verdict.admissible;

  const CharFn f = CharFn::from_state(state);
  const CharFn target = CharFn::gaussian(PhaseVector::zero(state.spec().modes),
                                         report.target_covariance);
  const std::vector<PhaseVector> grid = config.grid.points();

  double modulus_defect_at_last = 0.0;
  for (const std::int64_t n : config.n_list) {
    const Eigen::VectorXd scales = norming.at(n);
    const PhaseVector centering = centering_sequence(state, n);
    double sup = 0.0;
    double modulus_defect = 0.0;
    for (const PhaseVector& z : grid) {
      const Complex value = scheme_char(f, scales, centering, z, n);
      sup = std::max(sup, std::abs(value - target(z)));
      modulus_defect = std::max(modulus_defect, std::abs(std::abs(value) - 1.0));
    }
    report.errors.push_back({n, sup});
    modulus_defect_at_last = modulus_defect;
  }

  report.strictly_decreasing = true;
  for (std::size_t i = 1; i < report.errors.size(); ++i) {
    if (!(report.errors[i].sup_error < report.errors[i - 1].sup_error)) {
      report.strictly_decreasing = false;
    }
  }
  // |scheme values| ~ 1 across the whole grid means the would-be limit is a
  // point mass, not a Gaussian probability operator
  report.degenerate_limit = modulus_defect_at_last < 0.01;
  const double final_error = report.errors.back().sup_error;
  // a run that starts at the limit (fixed point) has nothing left to decrease
  const bool decreased = report.errors.size() < 2 ||
                         final_error < report.errors.front().sup_error ||
                         final_error <= 1e-10;
  report.pass = final_error < config.threshold && decreased;
  return report;
}

// ---------------------------------------------------------------------------
// Classical diagnostics.
// ---------------------------------------------------------------------------

double truncated_second_moment(const ClassicalMeasure& nu, double x) {
  if (x <= 0.0) throw std::invalid_argument("truncation point must be positive");
  return std::visit(
      [x](const auto& family) -> double {
        using F = std::decay_t<decltype(family)>;
        if constexpr (std::is_same_v<F, DiscreteMeasure>) {
          double acc = 0.0;
          for (const auto& atom : family.atoms) {
            if (std::abs(atom.value) <= x) acc += atom.weight * atom.value * atom.value;
          }
          return acc;
        } else if constexpr (std::is_same_v<F, RademacherFamily>) {
          return x >= 1.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<F, UniformFamily>) {
          const double h = family.halfwidth;
          if (h <= 0.0) throw std::invalid_argument("uniform halfwidth must be positive");
          const double clip = std::min(x, h);
          return clip * clip * clip / (3.0 * h);
        } else {
          static_assert(std::is_same_v<F, ParetoFamily>);
          const double a = family.tail_index;
          const double s = family.scale;
          if (a <= 0.0 || s <= 0.0) {
            throw std::invalid_argument("pareto needs positive tail index and scale");
          }
          if (x <= s) return 0.0;
          if (a == 2.0) return 2.0 * s * s * std::log(x / s);
          return a * std::pow(s, a) * (std::pow(x, 2.0 - a) - std::pow(s, 2.0 - a)) /
                 (2.0 - a);
        }
      },
      nu);
}

ScalingDiagnostic truncated_moment_scaling(const ClassicalMeasure& nu,
                                           const NormingSequence& b, double x,
                                           std::span<const std::int64_t> n_list) {
  if (n_list.empty()) throw std::invalid_argument("diagnostic needs a nonempty n list");
  if (b.modes() != 1) throw std::invalid_argument("the norming rule for b_n is scalar");
  ScalingDiagnostic diag;
  for (const std::int64_t n : n_list) {
    const double bn = b.at(n)[0];
    const double value =
        static_cast<double>(n) * bn * bn * truncated_second_moment(nu, x / bn);
    diag.rows.push_back({n, value});
  }
  if (diag.rows.size() < 2) {
    diag.stabilized = true;
  } else {
    const double last = diag.rows.back().value;
    const double prev = diag.rows[diag.rows.size() - 2].value;
    diag.stabilized = std::abs(last - prev) <= 0.01 * std::max(1.0, std::abs(last));
  }
  return diag;
}

namespace {

struct ClassicalTransform {
  std::function<Complex(double)> char_fn;
  double mean;
  double variance;
};

ClassicalTransform classical_transform(const ClassicalMeasure& nu) {
  return std::visit(
      [](const auto& family) -> ClassicalTransform {
        using F = std::decay_t<decltype(family)>;
        if constexpr (std::is_same_v<F, DiscreteMeasure>) {
          const double total = family.total_weight();
          if (std::abs(total - 1.0) > 1e-10) {
            throw std::invalid_argument("atomic measure is not probability-normalized");
          }
          double m1 = 0.0, m2 = 0.0;
          for (const auto& atom : family.atoms) {
            m1 += atom.weight * atom.value;
            m2 += atom.weight * atom.value * atom.value;
          }
          const DiscreteMeasure atoms = family;
          return {[atoms](double t) {
                    Complex acc(0.0, 0.0);
                    for (const auto& atom : atoms.atoms) {
                      acc += atom.weight * std::exp(Complex(0.0, t * atom.value));
                    }
                    return acc;
                  },
                  m1, m2 - m1 * m1};
        } else if constexpr (std::is_same_v<F, RademacherFamily>) {
          return {[](double t) { return Complex(std::cos(t), 0.0); }, 0.0, 1.0};
        } else if constexpr (std::is_same_v<F, UniformFamily>) {
          const double h = family.halfwidth;
          return {[h](double t) {
                    const double ht = h * t;
                    return Complex(std::abs(ht) < 1e-8 ? 1.0 - ht * ht / 6.0
                                                       : std::sin(ht) / ht,
                                   0.0);
                  },
                  0.0, h * h / 3.0};
        } else {
          static_assert(std::is_same_v<F, ParetoFamily>);
          throw std::invalid_argument(
              "pareto has no finite variance here; use the truncated-moment "
              "scaling diagnostic instead");
        }
      },
      nu);
}

Complex integer_power(Complex v, std::int64_t n) {
  if (v == Complex(0.0, 0.0)) return v;
  return std::exp(static_cast<double>(n) * std::log(v));
}

}  // namespace

ClassicalCltResult classical_clt_check(const ClassicalMeasure& nu,
                                       std::span<const std::int64_t> n_list,
                                       std::span<const double> t_grid) {
  if (n_list.empty() || t_grid.empty()) {
    throw std::invalid_argument("classical clt check needs n and t grids");
  }
  const ClassicalTransform transform = classical_transform(nu);
  ClassicalCltResult result;
  result.mean = transform.mean;
  result.variance = transform.variance;
  result.degenerate = transform.variance <= 0.0;

  for (const std::int64_t n : n_list) {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    double sup = 0.0;
    for (const double t : t_grid) {
      const Complex value = std::exp(Complex(0.0, -t * transform.mean * sqrt_n)) *
                            integer_power(transform.char_fn(t / sqrt_n), n);
      const double target = std::exp(-0.5 * transform.variance * t * t);
      sup = std::max(sup, std::abs(value - target));
    }
    result.rows.push_back({n, sup});
  }
  return result;
}

}  // namespace weylclt
