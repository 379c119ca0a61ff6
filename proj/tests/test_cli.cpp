#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct CommandResult {
  int exit_code;
  std::string stdout_text;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string temp_dir() {
  static const std::string dir = [] {
    std::string tmpl = "/tmp/weylclt_cli_XXXXXX";
    char* made = mkdtemp(tmpl.data());
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir;
}

CommandResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = temp_dir() + "/stdout.txt";
  const std::string command =
      env + " " + std::string(WEYLCLT_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int raw = std::system(command.c_str());
  return {WEXITSTATUS(raw), slurp(out_path)};
}

std::string write_file(const std::string& name, const std::string& content) {
  const std::string path = temp_dir() + "/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("cli: gauss-check verdicts and exit codes") {
  const std::string half = write_file("half.json", "[0.5, 0, 0, 0.5]");
  const auto pass = run_cli("gauss-check " + half);
  CHECK(pass.exit_code == 0);
  const auto verdict = nlohmann::json::parse(pass.stdout_text);
  CHECK(verdict.at("admissible") == true);

  const std::string narrow = write_file("narrow.json", "[0.3, 0, 0, 0.3]");
  const auto fail = run_cli("gauss-check " + narrow + " --trials 2000 --seed 5");
  CHECK(fail.exit_code == 1);
  const auto failed = nlohmann::json::parse(fail.stdout_text);
  CHECK(failed.at("admissible") == false);
  REQUIRE(failed.contains("witness"));
  CHECK(failed.at("witness").at("value").get<double>() < 0.0);

  const std::string broken = write_file("broken.json", "[0.5, 0, 0");
  CHECK(run_cli("gauss-check " + broken).exit_code == 2);
  const std::string ragged = write_file("ragged.json", "[1, 2, 3]");
  CHECK(run_cli("gauss-check " + ragged).exit_code == 2);
}

TEST_CASE("cli: bochner pass, witness search, and input errors") {
  const std::string vacuum = write_file(
      "vacuum.json", R"({"d": 1, "cutoff": 16, "state": {"kind": "vacuum"}})");
  const auto pass = run_cli("bochner " + vacuum + " --random 5 --seed 3");
  CHECK(pass.exit_code == 0);

  const std::string narrow_fn = write_file("narrow_fn.json", R"({"d": 1, "gaussian": {"a": 0.3}})");
  const auto fail = run_cli("bochner " + narrow_fn + " --random 6 --trials 500 --seed 7");
  CHECK(fail.exit_code == 1);
  const auto failed = nlohmann::json::parse(fail.stdout_text);
  CHECK(failed.at("min_eigenvalue").get<double>() < -1e-4);
  CHECK(failed.contains("points"));

  const std::string empty_points = write_file("empty_points.json", "[]");
  CHECK(run_cli("bochner " + vacuum + " --points " + empty_points).exit_code == 2);
  const std::string wrong_dim = write_file("wrong_dim.json", "[[0, 0, 0, 0]]");
  CHECK(run_cli("bochner " + vacuum + " --points " + wrong_dim).exit_code == 2);
}

TEST_CASE("cli: charfn-grid emits the CSV lattice") {
  const std::string vacuum = write_file(
      "vacuum_grid.json", R"({"d": 1, "cutoff": 12, "state": {"kind": "vacuum"}})");
  const auto result = run_cli("charfn-grid " + vacuum + " --halfwidth 1 --points-per-axis 3");
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.stdout_text);
  std::string line;
  int rows = 0;
  bool center_found = false;
  while (std::getline(lines, line)) {
    if (rows == 0) CHECK(line == "x1,y1,re,im");
    if (line == "0,0,1,0") center_found = true;
    ++rows;
  }
  CHECK(rows == 10);
  CHECK(center_found);

  CHECK(run_cli("charfn-grid " + vacuum + " --points-per-axis 2000 --max-points 100").exit_code ==
        2);
  CHECK(run_cli("charfn-grid /nonexistent.json").exit_code == 2);
}

TEST_CASE("cli: clt-run passes for the vacuum and reports errors") {
  const std::string vacuum = write_file(
      "vacuum_clt.json", R"({"d": 1, "cutoff": 16, "state": {"kind": "vacuum"}})");
  const std::string report_path = temp_dir() + "/report.json";
  const auto result = run_cli("clt-run " + vacuum + " --n 25,100 -o " + report_path);
  CHECK(result.exit_code == 0);
  const auto report = nlohmann::json::parse(slurp(report_path));
  CHECK(report.at("pass") == true);
  for (const auto& rec : report.at("errors")) {
    CHECK(rec.at("sup_error").get<double>() <= 1e-10);
  }
}

TEST_CASE("cli: clt-run with harmonic norming flags the degenerate limit") {
  const std::string vacuum = write_file(
      "vacuum_deg.json", R"({"d": 1, "cutoff": 16, "state": {"kind": "vacuum"}})");
  const auto result = run_cli("clt-run " + vacuum + " --norming harmonic --n 25,100,400");
  CHECK(result.exit_code == 1);
  const auto report = nlohmann::json::parse(result.stdout_text);
  CHECK(report.at("degenerate_limit") == true);
  CHECK(report.at("pass") == false);
}

TEST_CASE("cli: clt-run per-n grid dumps on request") {
  const std::string vacuum = write_file(
      "vacuum_dump.json", R"({"d": 1, "cutoff": 12, "state": {"kind": "vacuum"}})");
  const std::string dump_dir = temp_dir() + "/dumps";
  REQUIRE(std::system(("mkdir -p " + dump_dir).c_str()) == 0);
  const auto result =
      run_cli("clt-run " + vacuum + " --n 25,100 --dump-grid " + dump_dir);
  CHECK(result.exit_code == 0);
  const std::string grid25 = slurp(dump_dir + "/scheme_n25.csv");
  CHECK(grid25.substr(0, 12) == "x1,y1,re,im\n");
  int rows = 0;
  for (const char c : grid25) rows += (c == '\n');
  CHECK(rows == 26);  // header + 5x5 lattice
  CHECK(!slurp(dump_dir + "/scheme_n100.csv").empty());
}

TEST_CASE("cli: clt-run is byte-identical across reruns") {
  const std::string state = write_file(
      "ginibre_clt.json",
      R"({"d": 1, "cutoff": 12, "state": {"kind": "ginibre_random", "seed": 9}})");
  const std::string first = temp_dir() + "/first.json";
  const std::string second = temp_dir() + "/second.json";
  CHECK(run_cli("clt-run " + state + " --n 25,100 --seed 11 -o " + first).exit_code == 0);
  CHECK(run_cli("clt-run " + state + " --n 25,100 --seed 11 -o " + second).exit_code == 0);
  const std::string a = slurp(first);
  CHECK(a == slurp(second));
  CHECK(!a.empty());
}

TEST_CASE("cli: lemma-l diagnostic CSV and summary") {
  const std::string rademacher = write_file("rademacher.json", R"({"family": "rademacher"})");
  const auto result = run_cli("lemma-l " + rademacher + " --n 1,100,10000");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("n,value\n1,1\n100,1\n10000,1\n") != std::string::npos);
  CHECK(result.stdout_text.find("# summary: stabilized") != std::string::npos);

  const std::string pareto = write_file("pareto.json", R"({"family": "pareto", "alpha": 1.5})");
  const auto heavy = run_cli("lemma-l " + pareto + " --n 100,10000,1000000");
  CHECK(heavy.exit_code == 0);
  CHECK(heavy.stdout_text.find("# summary: diverging") != std::string::npos);

  const std::string bad = write_file("bad_family.json", R"({"family": "pareto", "alpha": -1})");
  CHECK(run_cli("lemma-l " + bad).exit_code == 2);
}

TEST_CASE("cli: admissible subcommand") {
  CHECK(run_cli("admissible --rule sqrt --n-max 100000").exit_code == 0);
  const auto result = run_cli("admissible --rule harmonic --n-max 100");
  CHECK(result.exit_code == 1);
  const auto report = nlohmann::json::parse(result.stdout_text);
  CHECK(report.at("violations").get<int>() == 99);
}

TEST_CASE("cli: usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("gauss-check").exit_code == 2);  // missing required argument
}

TEST_CASE("cli: setting precedence is flags > environment > config") {
  // admissible with n_max from three sources; violations counted reveal which won
  const std::string config = write_file("config.json", R"({"n_max": 10})");

  // config only
  const auto from_config =
      run_cli("--config " + config + " admissible --rule harmonic");
  CHECK(nlohmann::json::parse(from_config.stdout_text).at("n_max").get<int>() == 10);

  // environment beats config
  const auto from_env = run_cli("--config " + config + " admissible --rule harmonic",
                                "WEYLCLT_N_MAX=20");
  CHECK(nlohmann::json::parse(from_env.stdout_text).at("n_max").get<int>() == 20);

  // flag beats both
  const auto from_flag = run_cli(
      "--config " + config + " admissible --rule harmonic --n-max 30", "WEYLCLT_N_MAX=20");
  CHECK(nlohmann::json::parse(from_flag.stdout_text).at("n_max").get<int>() == 30);
}
