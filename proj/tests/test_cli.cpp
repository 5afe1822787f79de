// End-to-end checks of the installed command-line binary. The test runner
// provides BRWRE_CLI (binary path) and LAWS_DIR via the environment.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "brwre/criteria.hpp"
#include "laws.hpp"

namespace {

std::string cli_path() {
  const char* p = std::getenv("BRWRE_CLI");
  REQUIRE_MESSAGE(p != nullptr, "BRWRE_CLI must point at the CLI binary");
  return p;
}

std::string laws_dir() { return LAWS_DIR; }

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_test_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd = cli_path() + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(status), buf.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("classify reports the three-regime thresholds") {
  const RunResult r =
      run_cli("classify " + laws_dir() + "/figure1.json --format json --tol 1e-10");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["h_ls"].get<double>() - 0.1) <= 1e-15);
  CHECK(j["h_gs"].get<double>() > 0.19);
  CHECK(j["h_gs"].get<double>() < 0.20);
  CHECK(j["case"] == "a");
  CHECK(j["case_label"] == "GS_only");
}

TEST_CASE("classify encodes an infinite global threshold") {
  const RunResult r = run_cli("classify " + laws_dir() + "/figure2.json --format json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["h_gs"] == "inf");
  CHECK(j["case"] == "c");
}

TEST_CASE("phase diagram splits the drift axis into two regimes") {
  const RunResult r =
      run_cli("phase-diagram " + laws_dir() + "/figure2.json --h-grid 0.01:0.99:99");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  bool labels_ok = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("h,", 0) == 0) continue;
    const auto comma = line.find(',');
    const double h = std::stod(line.substr(0, comma));
    const std::string regime = line.substr(comma + 1);
    labels_ok = labels_ok && regime == (h < 0.5 ? "I" : "II");
    ++rows;
  }
  CHECK(rows == 99);
  CHECK(labels_ok);
}

TEST_CASE("phase diagram agrees with the library regimes") {
  const RunResult r =
      run_cli("phase-diagram " + laws_dir() + "/example2.json --h-grid 0.1:1.0:10");
  REQUIRE(r.exit_code == 0);
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  const auto direct = brwre::classify_regimes(testlaws::example2(), grid);
  std::istringstream in(r.out);
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("h,", 0) == 0) continue;
    REQUIRE(i < direct.size());
    CHECK(line.substr(line.find(',') + 1) == brwre::to_string(direct[i]));
    ++i;
  }
  CHECK(i == direct.size());
}

TEST_CASE("phi sweep emits explicit infinity tokens and no NaNs") {
  const RunResult r = run_cli("phi-sweep " + laws_dir() + "/figure1.json --h-grid 0.05:1.0:20");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("inf") != std::string::npos);   // below the local threshold
  CHECK(r.out.find("nan") == std::string::npos);
}

TEST_CASE("byte-identical reruns for a fixed seed") {
  const std::string args = "beta " + laws_dir() + "/figure2.json --n 60 --replicas 6 "
                           "--grid 0.2:1.0:5 --seed 31";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const RunResult c = run_cli("beta " + laws_dir() + "/figure2.json --n 60 --replicas 6 "
                              "--grid 0.2:1.0:5 --seed 32");
  CHECK(a.out != c.out);
}

TEST_CASE("simulate writes trajectories with saturation flags") {
  const RunResult r = run_cli("simulate " + laws_dir() + "/figure2.json --horizon 25 "
                              "--replicas 4 --seed 12");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("replica,survived,extinct_at,saturated_at,rate") != std::string::npos);
  CHECK(r.out.find("nan") == std::string::npos);
}

TEST_CASE("embedded emits stage samples") {
  const RunResult r = run_cli("embedded " + laws_dir() + "/figure2.json --k 2 --runs 3 --seed 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("j,xi_j") != std::string::npos);
}

TEST_CASE("exit codes distinguish failure classes") {
  // config: bad flag value
  CHECK(run_cli("simulate " + laws_dir() + "/figure2.json --replicas 0").exit_code == 2);
  // config: unparseable law document
  CHECK(run_cli("classify " + laws_dir() + "/missing.json").exit_code == 2);
  // law validation: weights sum to 0.9
  const std::string bad = "cli_test_bad_law.json";
  {
    std::ofstream f(bad);
    f << R"({"kind":"atomic","atoms":[
          {"pmf":[0.5,0.0,0.5],"drift":0.5,"weight":0.6},
          {"pmf":[0.2,0.0,0.8],"drift":0.5,"weight":0.3}]})";
  }
  CHECK(run_cli("classify " + bad).exit_code == 3);
  std::remove(bad.c_str());
  // runtime insufficiency: subcritical law leaves no survivors
  const std::string dead = "cli_test_dead_law.json";
  {
    std::ofstream f(dead);
    f << R"({"kind":"atomic","atoms":[{"pmf":[0.75,0.0,0.25],"drift":0.5,"weight":1.0}]})";
  }
  CHECK(run_cli("simulate " + dead + " --horizon 60 --replicas 8 --seed 2").exit_code == 4);
  std::remove(dead.c_str());
  // unknown command is a config failure
  CHECK(run_cli("no-such-command x.json").exit_code == 2);
  // validate itself reports rather than fails
  {
    std::ofstream f(bad);
    f << R"({"kind":"atomic","atoms":[
          {"pmf":[0.5,0.0,0.5],"drift":0.5,"weight":0.6},
          {"pmf":[0.2,0.0,0.8],"drift":0.5,"weight":0.3}]})";
  }
  const RunResult v = run_cli("validate " + bad);
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("# ok=0") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_SUITE_END();
