#include "weylclt/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace weylclt::io {

namespace {

Complex parse_complex_pair(const json& value, const char* what) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
      !value[1].is_number()) {
    throw std::runtime_error(std::string(what) + ": expected a [re, im] pair");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json parsed;
  try {
    in >> parsed;
  } catch (const json::parse_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  return parsed;
}

StateSpec parse_state_spec(const json& spec) {
  if (!spec.is_object()) throw std::runtime_error("state spec must be a JSON object");
  if (!spec.contains("d") || !spec.contains("cutoff") || !spec.contains("state")) {
    throw std::runtime_error("state spec needs keys d, cutoff, state");
  }
  const int d = spec.at("d").get<int>();
  const int cutoff = spec.at("cutoff").get<int>();
  const FockSpaceSpec space(d, cutoff);

  const json& state = spec.at("state");
  const std::string kind = state.at("kind").get<std::string>();

  const auto per_mode_doubles = [&](const char* key) {
    const json& value = state.at(key);
    std::vector<double> out;
    if (value.is_number()) {
      out.assign(static_cast<std::size_t>(d), value.get<double>());
    } else {
      out = value.get<std::vector<double>>();
    }
    return out;
  };

  if (kind == "vacuum") {
    return {space, VacuumParams{}};
  }
  if (kind == "number") {
    const json& value = state.at("n");
    std::vector<int> occ;
    if (value.is_number_integer()) {
      occ.assign(static_cast<std::size_t>(d), value.get<int>());
    } else {
      occ = value.get<std::vector<int>>();
    }
    return {space, NumberParams{std::move(occ)}};
  }
  if (kind == "coherent") {
    const json& value = state.at("alpha");
    std::vector<Complex> alpha;
    if (value.is_array() && value.size() == 2 && value[0].is_number()) {
      alpha.assign(static_cast<std::size_t>(d), parse_complex_pair(value, "alpha"));
    } else if (value.is_array()) {
      for (const json& entry : value) alpha.push_back(parse_complex_pair(entry, "alpha"));
    } else {
      throw std::runtime_error("coherent state needs alpha as [re, im] or a list of pairs");
    }
    return {space, CoherentParams{std::move(alpha)}};
  }
  if (kind == "thermal") {
    return {space, ThermalParams{per_mode_doubles("nbar")}};
  }
  if (kind == "ginibre_random") {
    return {space, GinibreParams{state.at("seed").get<std::uint64_t>()}};
  }
  if (kind == "explicit") {
    const json& rows = state.at("matrix");
    if (!rows.is_array() || rows.empty()) {
      throw std::runtime_error("explicit matrix must be a nonempty array of rows");
    }
    const auto dim = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
        throw std::runtime_error("explicit matrix must be square");
      }
      for (Eigen::Index j = 0; j < dim; ++j) {
        m(i, j) = parse_complex_pair(row[static_cast<std::size_t>(j)], "matrix entry");
      }
    }
    return {space, ExplicitParams{std::move(m)}};
  }
  throw std::runtime_error("unknown state kind '" + kind + "'");
}

CovarianceMatrix parse_covariance(const json& spec) {
  std::vector<double> flat;
  if (spec.is_array() && !spec.empty() && spec[0].is_array()) {
    for (const json& row : spec) {
      for (const json& value : row) flat.push_back(value.get<double>());
    }
  } else if (spec.is_array()) {
    flat = spec.get<std::vector<double>>();
  } else if (spec.is_object() && spec.contains("q")) {
    return parse_covariance(spec.at("q"));
  } else {
    throw std::runtime_error("covariance input must be an array or an object with key q");
  }
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(flat.size()))));
  if (dim * dim != static_cast<Eigen::Index>(flat.size())) {
    throw std::runtime_error("covariance array length is not a perfect square");
  }
  Eigen::MatrixXd q(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      q(i, j) = flat[static_cast<std::size_t>(i * dim + j)];  // row-major
    }
  }
  return CovarianceMatrix(std::move(q));
}

std::vector<PhaseVector> parse_points(const json& spec) {
  const json& list = spec.is_object() && spec.contains("points") ? spec.at("points") : spec;
  if (!list.is_array() || list.empty()) {
    throw std::runtime_error("points input must be a nonempty array of coordinate arrays");
  }
  std::vector<PhaseVector> points;
  for (const json& entry : list) {
    const auto coords = entry.get<std::vector<double>>();
    points.emplace_back(
        Eigen::Map<const Eigen::VectorXd>(coords.data(),
                                          static_cast<Eigen::Index>(coords.size())));
    if (points.back().modes() != points.front().modes()) {
      throw std::runtime_error("points have inconsistent dimensions");
    }
  }
  return points;
}

ClassicalMeasure parse_classical_measure(const json& spec) {
  if (!spec.is_object() || !spec.contains("family")) {
    throw std::runtime_error("measure spec needs a family key");
  }
  const std::string family = spec.at("family").get<std::string>();
  if (family == "rademacher") return RademacherFamily{};
  if (family == "uniform") {
    UniformFamily uniform;
    if (spec.contains("halfwidth")) uniform.halfwidth = spec.at("halfwidth").get<double>();
    return uniform;
  }
  if (family == "pareto") {
    ParetoFamily pareto{spec.at("alpha").get<double>(), 1.0};
    if (spec.contains("scale")) pareto.scale = spec.at("scale").get<double>();
    return pareto;
  }
  if (family == "atoms") {
    DiscreteMeasure atoms;
    for (const json& entry : spec.at("atoms")) {
      if (!entry.is_array() || entry.size() != 2) {
        throw std::runtime_error("atoms must be [value, weight] pairs");
      }
      atoms.atoms.push_back({entry[0].get<double>(), entry[1].get<double>()});
    }
    if (atoms.atoms.empty()) throw std::runtime_error("atoms list is empty");
    return atoms;
  }
  throw std::runtime_error("unknown measure family '" + family + "'");
}

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void write_grid_csv(std::ostream& out, const CharFn& f, const GridSpec& grid) {
  for (int k = 0; k < grid.modes(); ++k) {
    out << "x" << (k + 1) << ",y" << (k + 1) << ",";
  }
  out << "re,im\n";
  for (const PhaseVector& z : grid.points()) {
    const Complex value = f(z);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      out << format_double(z[i]) << ",";
    }
    out << format_double(value.real()) << "," << format_double(value.imag()) << "\n";
  }
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu) {
  out << "value,weight\n";
  for (const auto& atom : mu.atoms) {
    out << format_double(atom.value) << "," << format_double(atom.weight) << "\n";
  }
}

ordered_json clt_report_json(const CltReport& report, const GridSpec& grid,
                             std::uint64_t seed) {
  ordered_json out;
  out["seed"] = seed;
  ordered_json grid_json;
  grid_json["axes"] = ordered_json::array();
  for (const auto& axis : grid.axes) {
    grid_json["axes"].push_back({{"lo", axis.lo}, {"hi", axis.hi}, {"count", axis.count}});
  }
  out["grid"] = grid_json;
  out["errors"] = ordered_json::array();
  for (const auto& rec : report.errors) {
    out["errors"].push_back({{"n", rec.n}, {"sup_error", rec.sup_error}});
  }
  out["target_q"] = ordered_json::array();
  for (Eigen::Index i = 0; i < report.target_covariance.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < report.target_covariance.cols(); ++j) {
      row.push_back(report.target_covariance(i, j));
    }
    out["target_q"].push_back(row);
  }
  out["covariance_min_eigenvalue"] = report.covariance_min_eigenvalue;
  out["covariance_admissible"] = report.covariance_admissible;
  out["strictly_decreasing"] = report.strictly_decreasing;
  out["degenerate_limit"] = report.degenerate_limit;
  out["pass"] = report.pass;
  return out;
}

}  // namespace weylclt::io
