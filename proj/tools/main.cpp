// weylclt: phase-space quantum probability toolkit, command-line front end.
//
// Exit codes: 0 = pass, 1 = negative mathematical verdict, 2 = usage or
// input error. Setting precedence: command-line flags, then WEYLCLT_*
// environment variables, then the --config JSON file, then built-in
// defaults.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylclt/char_fn.hpp"
#include "weylclt/clt.hpp"
#include "weylclt/gaussian.hpp"
#include "weylclt/io.hpp"
#include "weylclt/measures.hpp"
#include "weylclt/phase_space.hpp"
#include "weylclt/rng.hpp"

namespace {

using namespace weylclt;
using io::json;
using io::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

json g_config;  // from --config, may stay null

template <typename T>
T from_string(const std::string& text) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value)) throw std::runtime_error("cannot parse setting value '" + text + "'");
  return value;
}

// flags > environment > config file > default
template <typename T>
T resolve_setting(const CLI::Option* opt, T parsed, const char* env_name,
                  const char* config_key) {
  if (opt != nullptr && opt->count() > 0) return parsed;
  if (const char* env = std::getenv(env_name)) return from_string<T>(env);
  if (g_config.is_object() && g_config.contains(config_key)) {
    return g_config.at(config_key).get<T>();
  }
  return parsed;  // still holds the built-in default
}

std::vector<std::int64_t> parse_n_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(from_string<std::int64_t>(item));
  }
  if (out.empty()) throw std::runtime_error("empty n list");
  return out;
}

NormingSequence parse_norming_rule(const std::string& rule, int modes) {
  if (rule == "sqrt") return NormingSequence::inverse_sqrt(modes);
  if (rule == "harmonic") return NormingSequence::harmonic(modes);
  if (rule.rfind("power:", 0) == 0) {
    return NormingSequence::power(modes, from_string<double>(rule.substr(6)));
  }
  if (rule.rfind("file:", 0) == 0) {
    const json table = io::load_json_file(rule.substr(5));
    std::vector<Eigen::VectorXd> rows;
    for (const json& row : table) {
      const auto values = row.get<std::vector<double>>();
      rows.emplace_back(Eigen::Map<const Eigen::VectorXd>(
          values.data(), static_cast<Eigen::Index>(values.size())));
    }
    return NormingSequence::from_table(std::move(rows));
  }
  throw std::runtime_error("unknown norming rule '" + rule +
                           "' (expected sqrt, harmonic, power:G, or file:PATH)");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

// the input of `bochner`: a state spec, or a closed-form Gaussian
CharFn parse_char_fn_spec(const json& spec) {
  if (spec.is_object() && spec.contains("gaussian")) {
    const int d = spec.at("d").get<int>();
    const json& g = spec.at("gaussian");
    if (g.contains("a")) return CharFn::isotropic_gaussian(d, g.at("a").get<double>());
    Eigen::MatrixXd q = io::parse_covariance(g.at("q")).matrix();
    PhaseVector center = PhaseVector::zero(d);
    if (g.contains("z0")) {
      const auto coords = g.at("z0").get<std::vector<double>>();
      center = PhaseVector(Eigen::Map<const Eigen::VectorXd>(
          coords.data(), static_cast<Eigen::Index>(coords.size())));
    }
    return CharFn::gaussian(std::move(center), std::move(q));
  }
  const io::StateSpec state = io::parse_state_spec(spec);
  return CharFn::from_state(make_state(state.space, state.params));
}

std::vector<PhaseVector> random_point_set(Rng& rng, int count, int modes, double scale) {
  std::vector<PhaseVector> points;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd c(2 * modes);
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = scale * rng.normal();
    points.emplace_back(c);
  }
  return points;
}

ordered_json points_to_json(const std::vector<PhaseVector>& points) {
  ordered_json list = ordered_json::array();
  for (const PhaseVector& z : points) {
    ordered_json coords = ordered_json::array();
    for (Eigen::Index i = 0; i < z.size(); ++i) coords.push_back(z[i]);
    list.push_back(coords);
  }
  return list;
}

// ---------------------------------------------------------------------------

struct GaussCheckArgs {
  std::string q_path;
  int trials = 10000;
  std::uint64_t seed = 1;
  std::string out_path;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int run_gauss_check(const GaussCheckArgs& args) {
  const CovarianceMatrix q = io::parse_covariance(io::load_json_file(args.q_path));
  const int trials = resolve_setting(args.trials_opt, args.trials, "WEYLCLT_TRIALS", "trials");
  const auto seed =
      resolve_setting(args.seed_opt, args.seed, "WEYLCLT_SEED", "seed");

  const AdmissibilityResult verdict = covariance_admissible(q);
  ordered_json out;
  out["admissible"] = verdict.admissible;
  out["min_eigenvalue"] = verdict.min_eigenvalue;
  out["seed"] = seed;
  if (!verdict.admissible) {
    const auto sampled = covariance_sample_check(q, trials, seed);
    if (sampled.worst < 0.0) {
      ordered_json witness;
      witness["z"] = points_to_json({sampled.witness.z})[0];
      witness["z2"] = points_to_json({sampled.witness.w})[0];
      witness["value"] = sampled.witness.value;
      out["witness"] = witness;
    }
  }
  emit(out.dump(2) + "\n", args.out_path);
  return verdict.admissible ? kExitPass : kExitFail;
}

struct BochnerArgs {
  std::string spec_path;
  std::string points_path;
  int random_points = 0;
  int trials = 1;
  std::uint64_t seed = 1;
  double scale = 1.0;
  double tol = 1e-8;
  std::string out_path;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
};

int run_bochner(const BochnerArgs& args) {
  const CharFn f = parse_char_fn_spec(io::load_json_file(args.spec_path));
  const auto seed = resolve_setting(args.seed_opt, args.seed, "WEYLCLT_SEED", "seed");
  const int trials = resolve_setting(args.trials_opt, args.trials, "WEYLCLT_TRIALS", "trials");

  ordered_json out;
  out["seed"] = seed;
  double min_eig = 0.0;
  bool pass = true;
  std::vector<PhaseVector> offending;

  if (!args.points_path.empty()) {
    const auto points = io::parse_points(io::load_json_file(args.points_path));
    if (points.front().modes() != f.modes()) {
      throw std::runtime_error("points dimension does not match the function");
    }
    const auto result = twisted_pd_check(f, points, args.tol);
    min_eig = result.min_eigenvalue;
    pass = result.pass;
    offending = points;
  } else {
    if (args.random_points < 1) {
      throw std::runtime_error("need --points FILE or --random K");
    }
    Rng rng(seed);
    min_eig = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
      const double scale = trials > 1 ? rng.uniform(0.5, 3.0) * args.scale : args.scale;
      const auto points = random_point_set(rng, args.random_points, f.modes(), scale);
      const auto result = twisted_pd_check(f, points, args.tol);
      if (result.min_eigenvalue < min_eig) {
        min_eig = result.min_eigenvalue;
        offending = points;
      }
      if (!result.pass) pass = false;
    }
  }

  out["min_eigenvalue"] = min_eig;
  out["pass"] = pass;
  if (!pass) out["points"] = points_to_json(offending);
  emit(out.dump(2) + "\n", args.out_path);
  return pass ? kExitPass : kExitFail;
}

struct GridArgs {
  std::string state_path;
  double halfwidth = 2.0;
  int points_per_axis = 21;
  long max_points = 1000000;
  std::string out_path;
  CLI::Option* halfwidth_opt = nullptr;
  CLI::Option* points_opt = nullptr;
  CLI::Option* max_points_opt = nullptr;
};

int run_charfn_grid(const GridArgs& args) {
  const io::StateSpec spec = io::parse_state_spec(io::load_json_file(args.state_path));
  const double halfwidth =
      resolve_setting(args.halfwidth_opt, args.halfwidth, "WEYLCLT_HALFWIDTH", "halfwidth");
  const int points = resolve_setting(args.points_opt, args.points_per_axis,
                                     "WEYLCLT_POINTS_PER_AXIS", "points_per_axis");
  const long cap = resolve_setting(args.max_points_opt, args.max_points,
                                   "WEYLCLT_MAX_POINTS", "max_points");

  const GridSpec grid = GridSpec::cube(spec.space.modes, halfwidth, points);
  if (grid.total_points() > cap) {
    throw std::runtime_error("grid has " + std::to_string(grid.total_points()) +
                             " points, above the cap " + std::to_string(cap));
  }
  const CharFn f = CharFn::from_state(make_state(spec.space, spec.params));
  std::ostringstream csv;
  io::write_grid_csv(csv, f, grid);
  emit(csv.str(), args.out_path);
  return kExitPass;
}

struct CltArgs {
  std::string state_path;
  std::string n_list = "25,100,400";
  std::string norming = "sqrt";
  double halfwidth = 1.4;
  int points_per_axis = 5;
  double threshold = 0.05;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string dump_dir;
  CLI::Option* halfwidth_opt = nullptr;
  CLI::Option* points_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void dump_scheme_grids(const std::string& dir, const ProbabilityOperator& state,
                       const NormingSequence& norming, const GridSpec& grid,
                       const std::vector<std::int64_t>& n_list) {
  const CharFn f = CharFn::from_state(state);
  for (const std::int64_t n : n_list) {
    const Eigen::VectorXd scales = norming.at(n);
    const PhaseVector centering = centering_sequence(state, n);
    std::ofstream out(dir + "/scheme_n" + std::to_string(n) + ".csv");
    if (!out) throw std::runtime_error("cannot write grid dumps under " + dir);
    for (int k = 0; k < grid.modes(); ++k) out << "x" << (k + 1) << ",y" << (k + 1) << ",";
    out << "re,im\n";
    for (const PhaseVector& z : grid.points()) {
      const Complex value = scheme_char(f, scales, centering, z, n);
      for (Eigen::Index i = 0; i < z.size(); ++i) out << io::format_double(z[i]) << ",";
      out << io::format_double(value.real()) << "," << io::format_double(value.imag())
          << "\n";
    }
  }
}

int run_clt(const CltArgs& args) {
  const io::StateSpec spec = io::parse_state_spec(io::load_json_file(args.state_path));
  const double halfwidth =
      resolve_setting(args.halfwidth_opt, args.halfwidth, "WEYLCLT_HALFWIDTH", "halfwidth");
  const int points = resolve_setting(args.points_opt, args.points_per_axis,
                                     "WEYLCLT_POINTS_PER_AXIS", "points_per_axis");
  const double threshold = resolve_setting(args.threshold_opt, args.threshold,
                                           "WEYLCLT_THRESHOLD", "threshold");
  const auto seed = resolve_setting(args.seed_opt, args.seed, "WEYLCLT_SEED", "seed");

  const auto n_list = parse_n_list(args.n_list);
  const NormingSequence norming = parse_norming_rule(args.norming, spec.space.modes);

  // the bound is a necessary condition, not a validity gate for the run
  const auto violations = check_admissibility_bound(norming, n_list.back());
  if (!violations.empty()) {
    std::cerr << "warning: norming violates a_k >= 1/sqrt(n) at " << violations.size()
              << " indices (first at n = " << violations.front().n << "); proceeding\n";
  }

  const auto state = make_state(spec.space, spec.params);
  const GridSpec grid = GridSpec::cube(spec.space.modes, halfwidth, points);
  const CltReport report =
      clt_convergence_report(state, norming, CltRunConfig{n_list, grid, threshold});
  if (!args.dump_dir.empty()) {
    dump_scheme_grids(args.dump_dir, state, norming, grid, n_list);
  }

  ordered_json out = io::clt_report_json(report, grid, seed);
  out["norming"] = args.norming;
  out["threshold"] = threshold;
  emit(out.dump(2) + "\n", args.out_path);
  return report.pass ? kExitPass : kExitFail;
}

struct LemmaLArgs {
  std::string measure_path;
  std::string b_rule = "sqrt";
  double x = 1.0;
  std::string n_list = "100,10000,1000000";
  std::string out_path;
};

int run_lemma_l(const LemmaLArgs& args) {
  const ClassicalMeasure nu = io::parse_classical_measure(io::load_json_file(args.measure_path));
  if (args.x <= 0.0) throw std::runtime_error("--x must be positive");
  const NormingSequence b = parse_norming_rule(args.b_rule, 1);
  const auto n_list = parse_n_list(args.n_list);
  const ScalingDiagnostic diag = truncated_moment_scaling(nu, b, args.x, n_list);

  std::ostringstream csv;
  csv << "n,value\n";
  for (const auto& row : diag.rows) {
    csv << row.n << "," << io::format_double(row.value) << "\n";
  }
  csv << "# summary: " << (diag.stabilized ? "stabilized" : "diverging") << "\n";
  emit(csv.str(), args.out_path);
  return kExitPass;
}

struct AdmissibleArgs {
  std::string rule = "sqrt";
  int modes = 1;
  std::int64_t n_max = 1000000;
  CLI::Option* n_max_opt = nullptr;
};

int run_admissible(const AdmissibleArgs& args) {
  const NormingSequence seq = parse_norming_rule(args.rule, args.modes);
  const auto n_max =
      resolve_setting(args.n_max_opt, args.n_max, "WEYLCLT_N_MAX", "n_max");
  const auto violations = check_admissibility_bound(seq, n_max);
  ordered_json out;
  out["n_max"] = n_max;
  out["violations"] = violations.size();
  if (!violations.empty()) {
    ordered_json first = ordered_json::array();
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
      first.push_back({{"n", violations[i].n},
                       {"mode", violations[i].mode + 1},
                       {"value", violations[i].value}});
    }
    out["first_violations"] = first;
  }
  std::cout << out.dump(2) << "\n";
  return violations.empty() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylclt: Weyl operators, quantum characteristic functions, and "
               "central-limit diagnostics on truncated Fock spaces"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default settings");

  GaussCheckArgs gauss;
  auto* gauss_cmd = app.add_subcommand(
      "gauss-check", "Decide covariance admissibility for a Gaussian limit");
  gauss_cmd->add_option("q-file", gauss.q_path, "covariance JSON (row-major)")->required();
  gauss.trials_opt = gauss_cmd->add_option("--trials", gauss.trials,
                                           "witness search trials when inadmissible");
  gauss.seed_opt = gauss_cmd->add_option("--seed", gauss.seed, "witness search seed");
  gauss_cmd->add_option("-o,--out", gauss.out_path, "write the verdict JSON here");

  BochnerArgs bochner;
  auto* bochner_cmd = app.add_subcommand(
      "bochner", "Twisted positive-definiteness test of a characteristic function");
  bochner_cmd->add_option("spec", bochner.spec_path,
                          "state spec JSON, or {d, gaussian:{a|q,z0}}")->required();
  bochner_cmd->add_option("--points", bochner.points_path, "points JSON file");
  bochner_cmd->add_option("--random", bochner.random_points, "draw K random points");
  bochner.trials_opt = bochner_cmd->add_option(
      "--trials", bochner.trials, "random point sets to search (worst set reported)");
  bochner.seed_opt = bochner_cmd->add_option("--seed", bochner.seed, "point sampling seed");
  bochner_cmd->add_option("--scale", bochner.scale, "point sampling scale");
  bochner_cmd->add_option("--tol", bochner.tol, "relative eigenvalue tolerance");
  bochner_cmd->add_option("-o,--out", bochner.out_path, "write the result JSON here");

  GridArgs grid;
  auto* grid_cmd = app.add_subcommand("charfn-grid",
                                      "Evaluate a characteristic function on a lattice");
  grid_cmd->add_option("state", grid.state_path, "state spec JSON")->required();
  grid.halfwidth_opt = grid_cmd->add_option("--halfwidth", grid.halfwidth, "box halfwidth");
  grid.points_opt =
      grid_cmd->add_option("--points-per-axis", grid.points_per_axis, "lattice resolution");
  grid.max_points_opt =
      grid_cmd->add_option("--max-points", grid.max_points, "largest allowed lattice");
  grid_cmd->add_option("-o,--out", grid.out_path, "write CSV here instead of stdout");

  CltArgs clt;
  auto* clt_cmd = app.add_subcommand("clt-run",
                                     "Convergence of the normed convolution powers");
  clt_cmd->add_option("state", clt.state_path, "state spec JSON")->required();
  clt_cmd->add_option("--n", clt.n_list, "comma-separated increasing n values");
  clt_cmd->add_option("--norming", clt.norming, "sqrt | harmonic | power:G | file:PATH");
  clt.halfwidth_opt = clt_cmd->add_option("--halfwidth", clt.halfwidth, "grid halfwidth");
  clt.points_opt =
      clt_cmd->add_option("--points-per-axis", clt.points_per_axis, "grid resolution");
  clt.threshold_opt =
      clt_cmd->add_option("--threshold", clt.threshold, "final sup-error threshold");
  clt.seed_opt = clt_cmd->add_option("--seed", clt.seed, "seed recorded in the report");
  clt_cmd->add_option("--dump-grid", clt.dump_dir,
                      "also write per-n CSV grids of the scheme values here");
  clt_cmd->add_option("-o,--out", clt.out_path, "write the report JSON here");

  LemmaLArgs lemma;
  auto* lemma_cmd = app.add_subcommand("lemma-l",
                                       "Truncated-moment scaling diagnostic");
  lemma_cmd->add_option("measure", lemma.measure_path, "measure spec JSON")->required();
  lemma_cmd->add_option("--b-rule", lemma.b_rule, "sqrt | harmonic | power:G");
  lemma_cmd->add_option("--x", lemma.x, "truncation point");
  lemma_cmd->add_option("--n", lemma.n_list, "comma-separated n values");
  lemma_cmd->add_option("-o,--out", lemma.out_path, "write CSV here instead of stdout");

  AdmissibleArgs adm;
  auto* adm_cmd = app.add_subcommand("admissible",
                                     "Check the necessary norming bound a_k >= 1/sqrt(n)");
  adm_cmd->add_option("--rule", adm.rule, "sqrt | harmonic | power:G | file:PATH");
  adm_cmd->add_option("--d", adm.modes, "mode count");
  adm.n_max_opt = adm_cmd->add_option("--n-max", adm.n_max, "scan range");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (!config_path.empty()) g_config = io::load_json_file(config_path);
    if (gauss_cmd->parsed()) return run_gauss_check(gauss);
    if (bochner_cmd->parsed()) return run_bochner(bochner);
    if (grid_cmd->parsed()) return run_charfn_grid(grid);
    if (clt_cmd->parsed()) return run_clt(clt);
    if (lemma_cmd->parsed()) return run_lemma_l(lemma);
    if (adm_cmd->parsed()) return run_admissible(adm);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
