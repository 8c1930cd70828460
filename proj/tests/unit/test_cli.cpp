#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(RTSS_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("rtss-cli-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("generate writes a parseable instance") {
  const fs::path dir = scratch();
  const auto r = run("generate --length 8 --max-altitude 3 --p-obs 0.5 --seed 1");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(fs::path(RTSS_DATA_DIR) / "golden" / "airspace-s1-L8-A3-p0.5.txt"));
  CHECK(run("generate --length 8 --max-altitude 3 --p-obs 1.5 --seed 1").code == 2);
  fs::remove_all(dir);
}

TEST_CASE("ad hoc runs") {
  const fs::path dir = scratch();
  const std::string inst = (dir / "sky.txt").string();
  REQUIRE(run("generate --length 200 --max-altitude 10 --p-obs 0.3 --seed 2 --out " + inst).code == 0);

  const auto ok = run("run --domain " + inst + " --algorithm rtfs --bound 100");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("GoalReached") != std::string::npos);

  // plain LSS-LRTA* with one expansion per step flies into an obstacle
  const auto dead = run("run --domain " + inst + " --algorithm lss-lrta --bound 1");
  CHECK(dead.code == 1);
  CHECK(dead.out.find("DeadEndEntered") != std::string::npos);

  CHECK(run("run --domain " + inst + " --algorithm rtfs --ratio 1.0").code == 2);
  CHECK(run("run --domain " + inst + " --algorithm teleport").code == 2);
  CHECK(run("run --domain " + (dir / "missing.txt").string()).code == 2);
  CHECK(run("frobnicate").code == 2);
  fs::remove_all(dir);
}

TEST_CASE("grid run writes CSV and SVG") {
  const fs::path dir = scratch();
  {
    std::ofstream cfg(dir / "grid.json");
    cfg << R"({"airspace": {"length": 300, "maxAltitude": 10, "pObs": 0.05},
               "algorithms": ["safe-rts", "rtfs"], "bounds": [30, 100], "repetitions": 2,
               "output": {"csv": "out.csv", "svg": "out.svg"}})";
  }
  const auto r = run("run --config " + (dir / "grid.json").string());
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "out.csv");
  CHECK(csv.rfind("instanceId,algorithm,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  CHECK(slurp(dir / "out.svg").find("<svg") == 0);

  const auto p = run("plot --csv " + (dir / "out.csv").string() + " --x iterationBound --y gat --series algorithm");
  CHECK(p.code == 0);
  CHECK(p.out.find("data-name=\"rtfs\"") != std::string::npos);
  CHECK(run("plot --csv " + (dir / "out.csv").string() + " --x nothing --y gat").code == 2);
  fs::remove_all(dir);
}

TEST_CASE("stats reproduces the low-altitude safety probability") {
  const fs::path dir = scratch();
  const std::string inst = (dir / "big.txt").string();
  REQUIRE(run("generate --length 10000 --max-altitude 20 --p-obs 0.05 --seed 1 --out " + inst).code == 0);
  const auto r = run("stats --instance " + inst + " --samples 2000 --seed 1");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::string row3;
  std::getline(lines, header);
  std::getline(lines, row3);
  REQUIRE(row3.rfind("3,2000,", 0) == 0);
  std::stringstream cells(row3);
  std::string cell;
  for (int i = 0; i < 4; ++i) std::getline(cells, cell, ',');
  CHECK(std::abs(std::stod(cell) - 0.95) <= 0.03);
  fs::remove_all(dir);
}

TEST_CASE("verify") {
  const auto r = run("verify --suite theorems --seeds 20");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS theorem4-identical-marked-sets") != std::string::npos);
  // the golden file and tracks are missing under a bogus data dir
  CHECK(run("verify --suite oracles --data-dir /nonexistent-rtss-data").code == 3);
  CHECK(run("verify --suite everything").code == 2);
}
