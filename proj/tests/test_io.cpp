#include <doctest.h>

#include <sstream>

#include "weylclt/io.hpp"

using namespace weylclt;
using io::json;

TEST_CASE("state spec: vacuum, number, coherent") {
  const auto vac = io::parse_state_spec(json::parse(
      R"({"d": 1, "cutoff": 8, "state": {"kind": "vacuum"}})"));
  CHECK(vac.space.modes == 1);
  CHECK(vac.space.cutoff == 8);
  CHECK(std::holds_alternative<VacuumParams>(vac.params));

  const auto num = io::parse_state_spec(json::parse(
      R"({"d": 2, "cutoff": 4, "state": {"kind": "number", "n": [1, 2]}})"));
  CHECK(std::get<NumberParams>(num.params).occupation == std::vector<int>{1, 2});

  const auto coh = io::parse_state_spec(json::parse(
      R"({"d": 1, "cutoff": 16, "state": {"kind": "coherent", "alpha": [0.5, -0.25]}})"));
  CHECK(std::get<CoherentParams>(coh.params).alpha[0] == Complex(0.5, -0.25));
}

TEST_CASE("state spec: explicit matrices use [re, im] pairs") {
  const auto spec = io::parse_state_spec(json::parse(R"({
    "d": 1, "cutoff": 2,
    "state": {"kind": "explicit", "matrix": [[[0.5, 0], [0, 0.1]], [[0, -0.1], [0.5, 0]]]}
  })"));
  const auto& m = std::get<ExplicitParams>(spec.params).matrix;
  CHECK(m(0, 1) == Complex(0.0, 0.1));
  CHECK(m(1, 0) == Complex(0.0, -0.1));
  CHECK_NOTHROW(make_state(spec.space, spec.params));
}

TEST_CASE("state spec: malformed inputs throw with context") {
  CHECK_THROWS(io::parse_state_spec(json::parse(R"({"d": 1})")));
  CHECK_THROWS(io::parse_state_spec(json::parse(
      R"({"d": 1, "cutoff": 8, "state": {"kind": "unknown"}})")));
  CHECK_THROWS(io::parse_state_spec(json::parse(
      R"({"d": 1, "cutoff": 8, "state": {"kind": "explicit", "matrix": [[1, 0]]}})")));
}

TEST_CASE("covariance: bare arrays, nested rows, and objects") {
  const auto flat = io::parse_covariance(json::parse("[0.5, 0, 0, 0.5]"));
  CHECK(flat.matrix()(0, 0) == 0.5);
  const auto nested = io::parse_covariance(json::parse("[[0.5, 0], [0, 0.5]]"));
  CHECK(nested.matrix()(1, 1) == 0.5);
  const auto object = io::parse_covariance(json::parse(R"({"q": [1, 0, 0, 1]})"));
  CHECK(object.modes() == 1);
  CHECK_THROWS(io::parse_covariance(json::parse("[1, 2, 3]")));
}

TEST_CASE("points: bare list or wrapped") {
  const auto pts = io::parse_points(json::parse("[[0, 0], [1, 0.5]]"));
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].y(0) == 0.5);
  CHECK_THROWS(io::parse_points(json::parse("[]")));
  CHECK_THROWS(io::parse_points(json::parse("[[0, 0], [1, 0, 0, 0]]")));
}

TEST_CASE("classical measures parse") {
  CHECK(std::holds_alternative<RademacherFamily>(
      io::parse_classical_measure(json::parse(R"({"family": "rademacher"})"))));
  const auto uniform =
      io::parse_classical_measure(json::parse(R"({"family": "uniform", "halfwidth": 2})"));
  CHECK(std::get<UniformFamily>(uniform).halfwidth == 2.0);
  const auto pareto = io::parse_classical_measure(
      json::parse(R"({"family": "pareto", "alpha": 1.5})"));
  CHECK(std::get<ParetoFamily>(pareto).tail_index == 1.5);
  const auto atoms = io::parse_classical_measure(
      json::parse(R"({"family": "atoms", "atoms": [[0, 1]]})"));
  CHECK(std::get<DiscreteMeasure>(atoms).atoms.size() == 1);
  CHECK_THROWS(io::parse_classical_measure(json::parse(R"({"family": "cauchy"})")));
}

TEST_CASE("grid csv: header, row count, center value") {
  const auto vac = make_state(FockSpaceSpec(1, 8), VacuumParams{});
  std::ostringstream out;
  io::write_grid_csv(out, CharFn::from_state(vac), GridSpec::cube(1, 1.0, 3));
  const std::string text = out.str();
  CHECK(text.substr(0, 12) == "x1,y1,re,im\n");
  int rows = 0;
  for (const char c : text) rows += (c == '\n');
  CHECK(rows == 10);  // header + 9 lattice points
  CHECK(text.find("0,0,1,0\n") != std::string::npos);  // f(0) = 1 at the center
}

TEST_CASE("measure csv") {
  DiscreteMeasure mu;
  mu.atoms = {{-1.0, 0.5}, {1.0, 0.5}};
  std::ostringstream out;
  io::write_measure_csv(out, mu);
  CHECK(out.str() == "value,weight\n-1,0.5\n1,0.5\n");
}

TEST_CASE("clt report json is stable and ordered") {
  CltReport report;
  report.errors = {{25, 0.5}, {100, 0.25}};
  report.target_covariance = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  report.covariance_min_eigenvalue = 0.0;
  report.covariance_admissible = true;
  report.strictly_decreasing = true;
  report.degenerate_limit = false;
  report.pass = false;
  const auto j1 = io::clt_report_json(report, GridSpec::cube(1, 1.4, 5), 42);
  const auto j2 = io::clt_report_json(report, GridSpec::cube(1, 1.4, 5), 42);
  CHECK(j1.dump(2) == j2.dump(2));
  CHECK(j1.at("seed") == 42);
  CHECK(j1.at("errors").size() == 2);
}
