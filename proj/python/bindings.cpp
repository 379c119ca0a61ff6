#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylclt/char_fn.hpp"
#include "weylclt/clt.hpp"
#include "weylclt/gaussian.hpp"
#include "weylclt/measures.hpp"
#include "weylclt/phase_space.hpp"

namespace py = pybind11;
using namespace weylclt;

namespace {

PhaseVector as_phase_vector(const Eigen::VectorXd& coords) { return PhaseVector(coords); }

NormingSequence norming_from_name(const std::string& rule, int modes, double exponent) {
  if (rule == "sqrt") return NormingSequence::inverse_sqrt(modes);
  if (rule == "harmonic") return NormingSequence::harmonic(modes);
  if (rule == "power") return NormingSequence::power(modes, exponent);
  throw std::invalid_argument("unknown norming rule '" + rule + "'");
}

ClassicalMeasure measure_from_name(const std::string& family, double a, double b) {
  if (family == "rademacher") return RademacherFamily{};
  if (family == "uniform") return UniformFamily{a <= 0.0 ? 1.0 : a};
  if (family == "pareto") return ParetoFamily{a, b <= 0.0 ? 1.0 : b};
  throw std::invalid_argument("unknown measure family '" + family + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weyl operators, quantum characteristic functions, and central-limit "
            "diagnostics on truncated Fock spaces";

  // --- phase space ---
  m.def("symplectic_form",
        [](const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
          return symplectic_form(as_phase_vector(z), as_phase_vector(w));
        },
        py::arg("z"), py::arg("w"),
        "The form sum_k (x_k y'_k - y_k x'_k) on interleaved coordinates.");
  m.def("symplectic_matrix", &symplectic_matrix, py::arg("modes"));
  m.def("apply_norming",
        [](const Eigen::VectorXd& scales, const Eigen::VectorXd& z) {
          return apply_norming(scales, as_phase_vector(z)).coords();
        },
        py::arg("scales"), py::arg("z"));
  m.def("check_admissibility_bound",
        [](const std::string& rule, int modes, double exponent, std::int64_t n_max) {
          const auto violations =
              check_admissibility_bound(norming_from_name(rule, modes, exponent), n_max);
          std::vector<std::tuple<std::int64_t, int, double>> out;
          out.reserve(violations.size());
          for (const auto& v : violations) out.emplace_back(v.n, v.mode, v.value);
          return out;
        },
        py::arg("rule"), py::arg("modes") = 1, py::arg("exponent") = 0.5,
        py::arg("n_max") = 1000,
        "Scan a_k^(n) < 1/sqrt(n); returns the (n, mode, value) violations.");

  // --- Fock space ---
  py::class_<FockSpaceSpec>(m, "FockSpaceSpec")
      .def(py::init<int, int>(), py::arg("modes"), py::arg("cutoff"))
      .def_readonly("modes", &FockSpaceSpec::modes)
      .def_readonly("cutoff", &FockSpaceSpec::cutoff)
      .def_property_readonly("dim", &FockSpaceSpec::dim)
      .def("__repr__", [](const FockSpaceSpec& s) {
        return "FockSpaceSpec(modes=" + std::to_string(s.modes) +
               ", cutoff=" + std::to_string(s.cutoff) + ")";
      });

  py::class_<ProbabilityOperator>(m, "ProbabilityOperator")
      .def(py::init<FockSpaceSpec, Eigen::MatrixXcd>(), py::arg("spec"), py::arg("matrix"))
      .def_property_readonly("matrix", &ProbabilityOperator::matrix)
      .def_property_readonly("spec", &ProbabilityOperator::spec);

  m.def("vacuum_state",
        [](const FockSpaceSpec& spec) { return make_state(spec, VacuumParams{}); },
        py::arg("spec"));
  m.def("number_state",
        [](const FockSpaceSpec& spec, const std::vector<int>& n) {
          return make_state(spec, NumberParams{n});
        },
        py::arg("spec"), py::arg("occupation"));
  m.def("coherent_state",
        [](const FockSpaceSpec& spec, const std::vector<Complex>& alpha) {
          return make_state(spec, CoherentParams{alpha});
        },
        py::arg("spec"), py::arg("alpha"));
  m.def("thermal_state",
        [](const FockSpaceSpec& spec, const std::vector<double>& nbar) {
          return make_state(spec, ThermalParams{nbar});
        },
        py::arg("spec"), py::arg("nbar"));
  m.def("ginibre_state",
        [](const FockSpaceSpec& spec, std::uint64_t seed) {
          return make_state(spec, GinibreParams{seed});
        },
        py::arg("spec"), py::arg("seed"));
  m.def("canonical_observable",
        [](const FockSpaceSpec& spec, const Eigen::VectorXd& z) {
          return canonical_observable(spec, as_phase_vector(z)).matrix();
        },
        py::arg("spec"), py::arg("z"), "R(z) as a dense matrix.");
  m.def("weyl_operator",
        [](const FockSpaceSpec& spec, const Eigen::VectorXd& z) {
          return weyl_operator(spec, as_phase_vector(z)).matrix();
        },
        py::arg("spec"), py::arg("z"), "V(z) = exp(i R(z)) as a dense matrix.");
  m.def("validate_density", [](const Eigen::MatrixXcd& matrix) {
    const auto report = validate_density(matrix);
    py::dict out;
    out["ok"] = report.ok();
    out["hermitian_defect"] = report.hermitian_defect;
    out["min_eigenvalue"] = report.min_eigenvalue;
    out["trace_defect"] = report.trace_defect;
    return out;
  });

  // --- characteristic functions ---
  py::class_<CharFn>(m, "CharFn")
      .def_static("gaussian",
                  [](const Eigen::VectorXd& center, const Eigen::MatrixXd& covariance) {
                    return CharFn::gaussian(as_phase_vector(center), covariance);
                  },
                  py::arg("center"), py::arg("covariance"))
      .def_static("isotropic_gaussian", &CharFn::isotropic_gaussian, py::arg("modes"),
                  py::arg("a"))
      .def_static("from_state",
                  [](const ProbabilityOperator& state) { return CharFn::from_state(state); },
                  py::arg("state"))
      .def_property_readonly("modes", &CharFn::modes)
      .def("__call__",
           [](const CharFn& f, const Eigen::VectorXd& z) { return f(as_phase_vector(z)); },
           py::arg("z"))
      .def("eval_exact", [](const CharFn& f, const Eigen::VectorXd& z) {
        return f.eval_exact(as_phase_vector(z));
      });

  m.def("translate",
        [](const CharFn& f, const Eigen::VectorXd& shift) {
          return translate(f, as_phase_vector(shift));
        },
        py::arg("f"), py::arg("shift"));
  m.def("convolve", &convolve, py::arg("f"), py::arg("g"));
  m.def("twisted_pd_check",
        [](const CharFn& f, const std::vector<Eigen::VectorXd>& points, double tol) {
          std::vector<PhaseVector> pts;
          pts.reserve(points.size());
          for (const auto& p : points) pts.push_back(as_phase_vector(p));
          const auto result = twisted_pd_check(f, pts, tol);
          return py::make_tuple(result.min_eigenvalue, result.pass);
        },
        py::arg("f"), py::arg("points"), py::arg("tol") = 1e-8,
        "Returns (min_eigenvalue, pass) of the twisted positive-definiteness matrix.");
  m.def("hs_norm", &hs_norm, py::arg("state"));
  m.def("plancherel_norm",
        [](const CharFn& f, double halfwidth, int points_per_axis) {
          const auto result = plancherel_norm(f, {halfwidth, points_per_axis, 1e-10});
          return py::make_tuple(result.value, result.converged);
        },
        py::arg("f"), py::arg("halfwidth") = 8.0, py::arg("points_per_axis") = 161);

  // --- Gaussian admissibility ---
  m.def("covariance_admissible",
        [](const Eigen::MatrixXd& q) {
          const auto result = covariance_admissible(CovarianceMatrix(q));
          return py::make_tuple(result.min_eigenvalue, result.admissible);
        },
        py::arg("q"), "Returns (min_eigenvalue of Q + iJ/2, admissible).");
  m.def("isotropic_spectrum", &isotropic_spectrum, py::arg("a"));
  m.def("covariance_sample_check",
        [](const Eigen::MatrixXd& q, int trials, std::uint64_t seed) {
          const auto result = covariance_sample_check(CovarianceMatrix(q), trials, seed);
          return py::make_tuple(result.worst, result.witness.z.coords(),
                                result.witness.w.coords());
        },
        py::arg("q"), py::arg("trials") = 10000, py::arg("seed") = 1);

  // --- induced measures and moments ---
  m.def("spectral_measure",
        [](const ProbabilityOperator& state, const Eigen::VectorXd& z) {
          const auto mu = spectral_measure(state, as_phase_vector(z));
          std::vector<std::pair<double, double>> atoms;
          atoms.reserve(mu.atoms.size());
          for (const auto& atom : mu.atoms) atoms.emplace_back(atom.value, atom.weight);
          return atoms;
        },
        py::arg("state"), py::arg("z"), "Atoms (value, weight) of the induced measure.");
  m.def("moments",
        [](const ProbabilityOperator& state, const Eigen::VectorXd& z) {
          const auto mu = spectral_measure(state, as_phase_vector(z));
          return py::make_tuple(mean(mu), second_moment(mu), variance(mu));
        },
        py::arg("state"), py::arg("z"), "(mean, second moment, variance) along z.");
  m.def("mean_vector",
        [](const ProbabilityOperator& state) { return mean_vector(state).coords(); },
        py::arg("state"));
  m.def("moment_inequality_check",
        [](const ProbabilityOperator& state, const Eigen::VectorXd& z) {
          const auto result = moment_inequality_check(state, as_phase_vector(z));
          return py::make_tuple(result.lhs, result.rhs, result.pass);
        },
        py::arg("state"), py::arg("z"));

  // --- the limit scheme ---
  m.def("scheme_char",
        [](const CharFn& f, const Eigen::VectorXd& scales, const Eigen::VectorXd& centering,
           const Eigen::VectorXd& z, std::int64_t n) {
          return scheme_char(f, scales, as_phase_vector(centering), as_phase_vector(z), n);
        },
        py::arg("f"), py::arg("scales"), py::arg("centering"), py::arg("z"), py::arg("n"));
  m.def("recovered_covariance", &recovered_covariance, py::arg("state"));
  m.def("clt_convergence_report",
        [](const ProbabilityOperator& state, const std::string& norming,
           const std::vector<std::int64_t>& n_list, double halfwidth, int points_per_axis,
           double threshold) {
          const auto report = clt_convergence_report(
              state, norming_from_name(norming, state.spec().modes, 0.5),
              CltRunConfig{n_list, GridSpec::cube(state.spec().modes, halfwidth,
                                                  points_per_axis),
                           threshold});
          py::dict out;
          py::list errors;
          for (const auto& rec : report.errors) {
            errors.append(py::make_tuple(rec.n, rec.sup_error));
          }
          out["errors"] = errors;
          out["target_q"] = report.target_covariance;
          out["covariance_admissible"] = report.covariance_admissible;
          out["strictly_decreasing"] = report.strictly_decreasing;
          out["degenerate_limit"] = report.degenerate_limit;
          out["pass"] = report.pass;
          return out;
        },
        py::arg("state"), py::arg("norming") = "sqrt",
        py::arg("n_list") = std::vector<std::int64_t>{25, 100, 400},
        py::arg("halfwidth") = 1.4, py::arg("points_per_axis") = 5,
        py::arg("threshold") = 0.05);
  m.def("truncated_second_moment",
        [](const std::string& family, double a, double b, double x) {
          return truncated_second_moment(measure_from_name(family, a, b), x);
        },
        py::arg("family"), py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("truncated_moment_scaling",
        [](const std::string& family, double a, double b, const std::string& b_rule,
           double exponent, double x, const std::vector<std::int64_t>& n_list) {
          const auto diag =
              truncated_moment_scaling(measure_from_name(family, a, b),
                                       norming_from_name(b_rule, 1, exponent), x, n_list);
          std::vector<std::pair<std::int64_t, double>> rows;
          for (const auto& row : diag.rows) rows.emplace_back(row.n, row.value);
          return py::make_tuple(rows, diag.stabilized);
        },
        py::arg("family"), py::arg("a") = 0.0, py::arg("b") = 0.0,
        py::arg("b_rule") = "sqrt", py::arg("exponent") = 0.5, py::arg("x") = 1.0,
        py::arg("n_list") = std::vector<std::int64_t>{100, 10000, 1000000});
  m.def("classical_clt_check",
        [](const std::string& family, double a, double b,
           const std::vector<std::int64_t>& n_list, const std::vector<double>& t_grid) {
          const auto result = classical_clt_check(measure_from_name(family, a, b), n_list,
                                                  t_grid);
          std::vector<std::pair<std::int64_t, double>> rows;
          for (const auto& row : result.rows) rows.emplace_back(row.n, row.sup_error);
          return py::make_tuple(rows, result.variance, result.degenerate);
        },
        py::arg("family"), py::arg("a") = 0.0, py::arg("b") = 0.0,
        py::arg("n_list") = std::vector<std::int64_t>{25, 100, 400},
        py::arg("t_grid") = std::vector<double>{-3, -2, -1, 0, 1, 2, 3});

#ifdef WEYLCLT_VERSION
  m.attr("__version__") = WEYLCLT_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
