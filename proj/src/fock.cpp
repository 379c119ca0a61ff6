#include "weylclt/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

#include "weylclt/rng.hpp"

namespace weylclt {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd ladder(int cutoff) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

/// Embeds a single-mode operator at position `mode`, identities elsewhere.
Eigen::MatrixXcd embed(const FockSpaceSpec& spec, const Eigen::MatrixXcd& op, int mode) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(spec.cutoff, spec.cutoff);
  for (int k = 0; k < spec.modes; ++k) {
    out = kron(out, k == mode ? op : id);
  }
  return out;
}

void require_modes(const FockSpaceSpec& spec, const PhaseVector& z) {
  if (z.modes() != spec.modes) {
    throw std::invalid_argument("phase vector has " + std::to_string(z.modes()) +
                                " modes, space has " + std::to_string(spec.modes));
  }
}

constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kTraceTol = 1e-10;

}  // namespace

FockSpaceSpec::FockSpaceSpec(int modes_in, int cutoff_in, long max_dim)
    : modes(modes_in), cutoff(cutoff_in) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
  long d = 1;
  for (int k = 0; k < modes; ++k) {
    d *= cutoff;
    if (d > max_dim) {
      std::ostringstream msg;
      msg << "total dimension " << cutoff << "^" << modes << " exceeds the cap " << max_dim;
      throw std::invalid_argument(msg.str());
    }
  }
}

long FockSpaceSpec::dim() const {
  long d = 1;
  for (int k = 0; k < modes; ++k) d *= cutoff;
  return d;
}

FockOperator::FockOperator(FockSpaceSpec spec, Eigen::MatrixXcd matrix)
    : spec_(spec), matrix_(std::move(matrix)) {
  if (matrix_.rows() != spec_.dim() || matrix_.cols() != spec_.dim()) {
    throw std::invalid_argument("operator matrix does not match the space dimension");
  }
}

ModeOperators mode_operators(const FockSpaceSpec& spec, int mode) {
  if (mode < 0 || mode >= spec.modes) {
    throw std::invalid_argument("mode index " + std::to_string(mode) + " out of range");
  }
  const Eigen::MatrixXcd a = ladder(spec.cutoff);
  const Eigen::MatrixXcd ad = a.adjoint();
  const Eigen::MatrixXcd q = (a + ad) / std::sqrt(2.0);
  const Eigen::MatrixXcd p = Complex(0.0, -1.0) * (a - ad) / std::sqrt(2.0);
  return {FockOperator(spec, embed(spec, p, mode)), FockOperator(spec, embed(spec, q, mode))};
}

FockOperator canonical_observable(const FockSpaceSpec& spec, const PhaseVector& z) {
  require_modes(spec, z);
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(spec.dim(), spec.dim());
  for (int k = 0; k < spec.modes; ++k) {
    if (z.x(k) == 0.0 && z.y(k) == 0.0) continue;
    const auto [p, q] = mode_operators(spec, k);
    r += z.x(k) * p.matrix() + z.y(k) * q.matrix();
  }
  return FockOperator(spec, std::move(r));
}

FockOperator weyl_operator(const FockSpaceSpec& spec, const PhaseVector& z) {
  const FockOperator r = canonical_observable(spec, z);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition of the canonical observable failed");
  }
  const Eigen::VectorXcd phases =
      (Complex(0.0, 1.0) * solver.eigenvalues().cast<Complex>()).array().exp();
  Eigen::MatrixXcd v = solver.eigenvectors() * phases.asDiagonal() *
                       solver.eigenvectors().adjoint();
  return FockOperator(spec, std::move(v));
}

double weyl_relation_residual(int modes, int cutoff, const PhaseVector& z,
                              const PhaseVector& w, int window) {
  const FockSpaceSpec spec(modes, cutoff);
  if (window < 1 || window > spec.dim()) {
    throw std::invalid_argument("residual window out of range");
  }
  const Eigen::MatrixXcd lhs = weyl_operator(spec, z).matrix() * weyl_operator(spec, w).matrix();
  const Complex phase = std::exp(Complex(0.0, 0.5 * symplectic_form(z, w)));
  const Eigen::MatrixXcd rhs = phase * weyl_operator(spec, z + w).matrix();
  return (lhs - rhs).topLeftCorner(window, window).cwiseAbs().maxCoeff();
}

Complex displacement_amplitude(double x, double y) {
  return Complex(-x, y) / std::sqrt(2.0);
}

Complex displacement_element(int m, int n, Complex alpha) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative number-state index");
  const double a2 = std::norm(alpha);
  const int lo = std::min(m, n);
  const int hi = std::max(m, n);
  const int k = hi - lo;
  // generalized Laguerre L_lo^(k)(a2) by upward recurrence
  double lag = 1.0;
  if (lo >= 1) {
    double prev = 1.0;
    lag = 1.0 + k - a2;
    for (int i = 1; i < lo; ++i) {
      const double next = ((2.0 * i + k + 1.0 - a2) * lag - (i + k) * prev) / (i + 1.0);
      prev = lag;
      lag = next;
    }
  }
  // sqrt(lo!/hi!) alpha^k accumulated as a product of base/sqrt(lo+i), which
  // stays within e^{|alpha|^2/2} instead of overflowing factor by factor
  const Complex base = (m >= n) ? alpha : -std::conj(alpha);
  Complex scaled_power(1.0, 0.0);
  for (int i = 1; i <= k; ++i) {
    scaled_power *= base / std::sqrt(static_cast<double>(lo + i));
  }
  return scaled_power * std::exp(-a2 / 2.0) * lag;
}

Eigen::MatrixXcd displacement_block(int cutoff, Complex alpha) {
  Eigen::MatrixXcd d(cutoff, cutoff);
  for (int m = 0; m < cutoff; ++m) {
    for (int n = 0; n < cutoff; ++n) {
      d(m, n) = displacement_element(m, n, alpha);
    }
  }
  return d;
}

std::string DensityValidation::describe() const {
  std::ostringstream msg;
  if (ok()) return "valid probability operator";
  msg << "invalid probability operator:";
  if (!hermitian) msg << " hermitian defect " << hermitian_defect << " > " << kHermitianTol << ";";
  if (!positive) msg << " min eigenvalue " << min_eigenvalue << " < -" << kPsdTol << ";";
  if (!unit_trace) msg << " trace defect " << trace_defect << " > " << kTraceTol << ";";
  return msg.str();
}

DensityValidation validate_density(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw std::invalid_argument("density candidate must be square and nonempty");
  }
  DensityValidation report{};
  report.hermitian_defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  report.hermitian = report.hermitian_defect <= kHermitianTol;

  const Eigen::MatrixXcd sym = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.positive = report.min_eigenvalue >= -kPsdTol;

  report.trace_defect = std::abs(matrix.trace() - Complex(1.0, 0.0));
  report.unit_trace = report.trace_defect <= kTraceTol;
  return report;
}

ProbabilityOperator::ProbabilityOperator(FockSpaceSpec spec, Eigen::MatrixXcd matrix)
    : spec_(spec), matrix_(std::move(matrix)) {
  if (matrix_.rows() != spec_.dim() || matrix_.cols() != spec_.dim()) {
    throw std::invalid_argument("density matrix does not match the space dimension");
  }
  const DensityValidation report = validate_density(matrix_);
  if (!report.ok()) {
    throw std::invalid_argument(report.describe());
  }
}

namespace {

Eigen::VectorXcd pure_mode_vector(const FockSpaceSpec& spec,
                                  const std::function<Complex(int)>& amplitude) {
  Eigen::VectorXcd v(spec.cutoff);
  for (int n = 0; n < spec.cutoff; ++n) v[n] = amplitude(n);
  return v;
}

Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

template <typename T>
std::vector<T> per_mode(const FockSpaceSpec& spec, const std::vector<T>& values,
                        const char* what) {
  if (static_cast<int>(values.size()) != spec.modes) {
    throw std::invalid_argument(std::string(what) + ": need one parameter per mode");
  }
  return values;
}

ProbabilityOperator from_pure_modes(const FockSpaceSpec& spec,
                                    const std::vector<Eigen::VectorXcd>& modes) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& v : modes) psi = kron_vec(psi, v);
  const double norm = psi.norm();
  if (norm <= 0.0) throw std::invalid_argument("state vector vanished after truncation");
  psi /= norm;
  return ProbabilityOperator(spec, psi * psi.adjoint());
}

}  // namespace

ProbabilityOperator make_state(const FockSpaceSpec& spec, const StateParams& params) {
  return std::visit(
      [&](const auto& p) -> ProbabilityOperator {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, VacuumParams>) {
          Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(spec.dim(), spec.dim());
          m(0, 0) = 1.0;
          return ProbabilityOperator(spec, std::move(m));
        } else if constexpr (std::is_same_v<P, NumberParams>) {
          const auto occ = per_mode(spec, p.occupation, "number state");
          long index = 0;
          for (int k = 0; k < spec.modes; ++k) {
            if (occ[k] < 0 || occ[k] >= spec.cutoff) {
              throw std::invalid_argument("occupation " + std::to_string(occ[k]) +
                                          " outside the cutoff " + std::to_string(spec.cutoff));
            }
            index = index * spec.cutoff + occ[k];
          }
          Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(spec.dim(), spec.dim());
          m(index, index) = 1.0;
          return ProbabilityOperator(spec, std::move(m));
        } else if constexpr (std::is_same_v<P, CoherentParams>) {
          const auto alphas = per_mode(spec, p.alpha, "coherent state");
          std::vector<Eigen::VectorXcd> modes;
          for (const Complex alpha : alphas) {
            // |alpha>: amplitudes alpha^n / sqrt(n!), renormalized after truncation
            modes.push_back(pure_mode_vector(spec, [alpha](int n) {
              Complex amp(1.0, 0.0);
              for (int i = 1; i <= n; ++i) amp *= alpha / std::sqrt(static_cast<double>(i));
              return amp;
            }));
          }
          return from_pure_modes(spec, modes);
        } else if constexpr (std::is_same_v<P, ThermalParams>) {
          const auto nbars = per_mode(spec, p.mean_occupation, "thermal state");
          Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
          for (const double nbar : nbars) {
            if (nbar <= 0.0) throw std::invalid_argument("thermal nbar must be positive");
            const double ratio = nbar / (nbar + 1.0);
            Eigen::VectorXd w(spec.cutoff);
            for (int j = 0; j < spec.cutoff; ++j) w[j] = std::pow(ratio, j);
            w /= w.sum();  // truncate, then renormalize to unit trace
            m = kron(m, w.cast<Complex>().asDiagonal());
          }
          return ProbabilityOperator(spec, std::move(m));
        } else if constexpr (std::is_same_v<P, GinibreParams>) {
          Rng rng(p.seed);
          const long dim = spec.dim();
          Eigen::MatrixXcd g(dim, dim);
          for (long i = 0; i < dim; ++i) {
            for (long j = 0; j < dim; ++j) {
              g(i, j) = Complex(rng.normal(), rng.normal());
            }
          }
          Eigen::MatrixXcd m = g * g.adjoint();
          m /= m.trace().real();
          m = 0.5 * (m + m.adjoint());  // scrub rounding asymmetry
          return ProbabilityOperator(spec, std::move(m));
        } else {
          static_assert(std::is_same_v<P, ExplicitParams>);
          return ProbabilityOperator(spec, p.matrix);
        }
      },
      params);
}

}  // namespace weylclt
