#include "weylclt/char_fn.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

namespace weylclt {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_modes(int have, int want, const char* what) {
  if (have != want) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(want) +
                                " modes, got " + std::to_string(have));
  }
}

}  // namespace

GridSpec::GridSpec(std::vector<Axis> axes_in) : axes(std::move(axes_in)) {
  if (axes.empty() || axes.size() % 2 != 0) {
    throw std::invalid_argument("grid needs 2d axes");
  }
  for (const Axis& axis : axes) {
    if (axis.count < 1) throw std::invalid_argument("grid axis needs at least one point");
    if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi) || axis.lo > axis.hi) {
      throw std::invalid_argument("grid axis bounds must be finite and ordered");
    }
  }
}

GridSpec GridSpec::cube(int modes, double halfwidth, int points_per_axis) {
  return GridSpec(std::vector<Axis>(2 * modes, Axis{-halfwidth, halfwidth, points_per_axis}));
}

long GridSpec::total_points() const {
  long total = 1;
  for (const Axis& axis : axes) total *= axis.count;
  return total;
}

std::vector<PhaseVector> GridSpec::points() const {
  const long total = total_points();
  std::vector<PhaseVector> pts;
  pts.reserve(total);
  const int n_axes = static_cast<int>(axes.size());
  std::vector<long> index(n_axes, 0);
  Eigen::VectorXd coords(n_axes);
  for (long flat = 0; flat < total; ++flat) {
    for (int a = 0; a < n_axes; ++a) {
      const Axis& axis = axes[a];
      coords[a] = axis.count == 1
                      ? axis.lo
                      : axis.lo + (axis.hi - axis.lo) * index[a] / (axis.count - 1);
    }
    pts.emplace_back(coords);
    for (int a = n_axes - 1; a >= 0; --a) {  // last axis fastest
      if (++index[a] < axes[a].count) break;
      index[a] = 0;
    }
  }
  return pts;
}

CharFn::CharFn(int modes, Form form)
    : modes_(modes), form_(std::make_shared<const Form>(std::move(form))) {}

CharFn CharFn::gaussian(PhaseVector center, Eigen::MatrixXd covariance) {
  const int modes = center.modes();
  if (covariance.rows() != 2 * modes || covariance.cols() != 2 * modes) {
    throw std::invalid_argument("covariance must be 2d x 2d");
  }
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw std::invalid_argument("covariance must be symmetric");
  }
  return CharFn(modes, GaussianForm{std::move(center), std::move(covariance)});
}

CharFn CharFn::isotropic_gaussian(int modes, double a) {
  return gaussian(PhaseVector::zero(modes),
                  a * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

CharFn CharFn::from_state(ProbabilityOperator state) {
  return from_state(std::make_shared<const ProbabilityOperator>(std::move(state)));
}

CharFn CharFn::from_state(std::shared_ptr<const ProbabilityOperator> state) {
  if (!state) throw std::invalid_argument("null state");
  const int modes = state->spec().modes;
  return CharFn(modes, OperatorForm{std::move(state)});
}

CharFn CharFn::product(std::vector<CharFn> factors) {
  if (factors.empty()) throw std::invalid_argument("empty product");
  const int modes = factors.front().modes();
  for (const CharFn& f : factors) require_modes(f.modes(), modes, "char fn product");
  return CharFn(modes, ProductForm{std::move(factors)});
}

namespace {

Complex eval_gaussian(const CharFn::GaussianForm& g, const PhaseVector& z) {
  const double phase = inner(g.center, z);
  const double quad = z.coords().dot(g.covariance * z.coords());
  return std::exp(Complex(-0.5 * quad, phase));
}

Complex eval_operator_truncated(const CharFn::OperatorForm& op, const PhaseVector& z) {
  const Eigen::MatrixXcd v = weyl_operator(op.state->spec(), z).matrix();
  // tr(T V) without forming the product
  return op.state->matrix().transpose().cwiseProduct(v).sum();
}

Complex eval_operator_exact(const CharFn::OperatorForm& op, const PhaseVector& z) {
  const FockSpaceSpec& spec = op.state->spec();
  const int d = spec.modes;
  const int n = spec.cutoff;
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(d);
  for (int k = 0; k < d; ++k) {
    blocks.push_back(displacement_block(n, displacement_amplitude(z.x(k), z.y(k))));
  }
  if (d == 1) {
    return op.state->matrix().transpose().cwiseProduct(blocks[0]).sum();
  }
  // tr(T (D_1 x ... x D_d)) by digit decomposition of the row/column indices
  const long dim = spec.dim();
  const Eigen::MatrixXcd& t = op.state->matrix();
  Complex acc(0.0, 0.0);
  std::vector<int> di(d), dj(d);
  for (long i = 0; i < dim; ++i) {
    long rest = i;
    for (int k = d - 1; k >= 0; --k) {
      di[k] = static_cast<int>(rest % n);
      rest /= n;
    }
    for (long j = 0; j < dim; ++j) {
      rest = j;
      for (int k = d - 1; k >= 0; --k) {
        dj[k] = static_cast<int>(rest % n);
        rest /= n;
      }
      Complex elem(1.0, 0.0);
      for (int k = 0; k < d; ++k) elem *= blocks[k](dj[k], di[k]);
      acc += t(i, j) * elem;
    }
  }
  return acc;
}

template <typename OperatorEval>
Complex eval_impl(const CharFn::Form& form, const PhaseVector& z, OperatorEval&& op_eval) {
  return std::visit(
      [&](const auto& f) -> Complex {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, CharFn::GaussianForm>) {
          return eval_gaussian(f, z);
        } else if constexpr (std::is_same_v<F, CharFn::OperatorForm>) {
          return op_eval(f, z);
        } else if constexpr (std::is_same_v<F, CharFn::ProductForm>) {
          Complex acc(1.0, 0.0);
          for (const CharFn& factor : f.factors) {
            acc *= eval_impl(factor.form(), z, op_eval);
          }
          return acc;
        } else {
          static_assert(std::is_same_v<F, CharFn::TranslatedForm>);
          return std::exp(Complex(0.0, inner(f.shift, z))) *
                 eval_impl(f.base->form(), z, op_eval);
        }
      },
      form);
}

}  // namespace

Complex CharFn::operator()(const PhaseVector& z) const {
  require_modes(z.modes(), modes_, "char fn evaluation");
  return eval_impl(*form_, z, eval_operator_truncated);
}

Complex CharFn::eval_exact(const PhaseVector& z) const {
  require_modes(z.modes(), modes_, "char fn evaluation");
  return eval_impl(*form_, z, eval_operator_exact);
}

namespace {

Complex log_eval_impl(const CharFn::Form& form, const PhaseVector& z) {
  return std::visit(
      [&](const auto& f) -> Complex {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, CharFn::GaussianForm>) {
          return Complex(-0.5 * z.coords().dot(f.covariance * z.coords()),
                         inner(f.center, z));
        } else if constexpr (std::is_same_v<F, CharFn::OperatorForm>) {
          return std::log(eval_operator_truncated(f, z));
        } else if constexpr (std::is_same_v<F, CharFn::ProductForm>) {
          Complex acc(0.0, 0.0);
          for (const CharFn& factor : f.factors) acc += log_eval_impl(factor.form(), z);
          return acc;
        } else {
          static_assert(std::is_same_v<F, CharFn::TranslatedForm>);
          return log_eval_impl(f.base->form(), z) + Complex(0.0, inner(f.shift, z));
        }
      },
      form);
}

}  // namespace

Complex CharFn::log_eval(const PhaseVector& z) const {
  require_modes(z.modes(), modes_, "char fn evaluation");
  return log_eval_impl(*form_, z);
}

CharFn CharFn::translated(CharFn base, PhaseVector shift) {
  require_modes(shift.modes(), base.modes(), "translate");
  const int modes = base.modes();
  return CharFn(modes,
                TranslatedForm{std::make_shared<const CharFn>(std::move(base)),
                               std::move(shift)});
}

CharFn translate(const CharFn& f, const PhaseVector& shift) {
  require_modes(shift.modes(), f.modes(), "translate");
  if (shift.is_zero()) return f;
  return CharFn::translated(f, shift);
}

CharFn convolve(const CharFn& f, const CharFn& g) {
  require_modes(g.modes(), f.modes(), "convolve");
  return CharFn::product({f, g});
}

Eigen::MatrixXcd twisted_pd_matrix(const CharFn& f, std::span<const PhaseVector> points) {
  if (points.empty()) throw std::invalid_argument("twisted pd matrix needs points");
  const auto count = static_cast<Eigen::Index>(points.size());
  for (const PhaseVector& z : points) require_modes(z.modes(), f.modes(), "twisted pd matrix");
  Eigen::MatrixXcd m(count, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    for (Eigen::Index k = 0; k < count; ++k) {
      const Complex twist =
          std::exp(Complex(0.0, 0.5 * symplectic_form(points[j], points[k])));
      m(j, k) = f(points[j] - points[k]) * twist;
    }
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return m;
}

TwistedPdResult twisted_pd_check(const CharFn& f, std::span<const PhaseVector> points,
                                 double tol) {
  const Eigen::MatrixXcd m = twisted_pd_matrix(f, points);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  const double norm = std::max(std::abs(lo), std::abs(hi));
  return {lo, norm, lo >= -tol * norm};
}

double sup_norm(const CharFn& f, const GridSpec& grid) {
  require_modes(grid.modes(), f.modes(), "sup norm");
  double sup = 0.0;
  for (const PhaseVector& z : grid.points()) {
    sup = std::max(sup, std::abs(f(z)));
  }
  return sup;
}

PlancherelResult plancherel_norm(const CharFn& f, const QuadratureSpec& quad) {
  if (quad.points_per_axis < 2) throw std::invalid_argument("quadrature needs >= 2 points");
  if (quad.halfwidth <= 0.0) throw std::invalid_argument("quadrature box must be positive");
  const int n_axes = 2 * f.modes();
  const int m = quad.points_per_axis;
  const double h = 2.0 * quad.halfwidth / (m - 1);

  std::vector<long> index(n_axes, 0);
  Eigen::VectorXd coords(n_axes);
  long total = 1;
  for (int a = 0; a < n_axes; ++a) total *= m;

  double sum = 0.0;
  double boundary_max = 0.0;
  for (long flat = 0; flat < total; ++flat) {
    double weight = 1.0;
    bool on_boundary = false;
    for (int a = 0; a < n_axes; ++a) {
      coords[a] = -quad.halfwidth + h * index[a];
      if (index[a] == 0 || index[a] == m - 1) {
        weight *= 0.5;
        on_boundary = true;
      }
    }
    const double f2 = std::norm(f.eval_exact(PhaseVector(coords)));
    sum += weight * f2;
    if (on_boundary) boundary_max = std::max(boundary_max, f2);
    for (int a = n_axes - 1; a >= 0; --a) {
      if (++index[a] < m) break;
      index[a] = 0;
    }
  }
  double cell = 1.0;
  for (int a = 0; a < n_axes; ++a) cell *= h;
  const double integral = sum * cell / std::pow(2.0 * M_PI, f.modes());
  return {std::sqrt(integral), boundary_max, boundary_max < quad.boundary_tol};
}

double hs_norm(const ProbabilityOperator& state) {
  return state.matrix().norm();  // Frobenius = sqrt(tr(T^dag T))
}

}  // namespace weylclt
