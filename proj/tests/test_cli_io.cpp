#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fmns/cli.hpp"
#include "fmns/config.hpp"
#include "fmns/error.hpp"
#include "fmns/io.hpp"

using namespace fmns;
namespace fs = std::filesystem;

namespace {

const std::string kMinimal = R"({
  "params": {"L": 1.0},
  "grid": {"N": 2},
  "time": {"t_end": 0.1, "dt_initial": 0.05, "dt_max": 0.05},
  "initial_data": {"profile": "constant"}
})";

std::string config_path(const char* name) { return std::string(FMNS_CONFIG_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("fmns_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const auto c = parse_config_text(kMinimal);
  CHECK(c.cells == 2);
  CHECK(c.params.mu == 1.0);
  CHECK(c.params.eps == 0.0);
  CHECK(c.bc == ThetaBC::NeumannNeumann);
  CHECK(c.scheme.scheme == Scheme::ImexEuler);
  CHECK(c.audit.mass_rel_tol == 1e-12);
  CHECK(c.output.timeseries == "timeseries.csv");
}

TEST_CASE("config errors name the offending key") {
  auto with = [](const std::string& from, const std::string& to) {
    auto s = kMinimal;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK(error_of(with(R"("L": 1.0)", R"("L": 1.0, "mu": -1.0)")).find("mu") != std::string::npos);
  CHECK(error_of(with(R"("L": 1.0)", R"("L": 1.0, "viscosity": 1.0)")).find("params.viscosity") != std::string::npos);
  CHECK(error_of(with(R"("params": {"L": 1.0},)", "")).find("params") != std::string::npos);
  CHECK(error_of(with(R"("N": 2)", R"("N": "two")")).find("grid.N") != std::string::npos);
  CHECK(error_of(with(R"("N": 2)", R"("N": 0)")).find("grid.N") != std::string::npos);
  CHECK(error_of(with(R"("t_end": 0.1)", R"("t_end": -1)")).find("time.t_end") != std::string::npos);
  CHECK_THROWS_AS(parse_config_text("{ not json"), ConfigError);
}

TEST_CASE("boundary condition names map to the enum") {
  auto s = kMinimal;
  s.insert(s.rfind('}'), R"(, "bc": "dirichlet-neumann")");
  CHECK(parse_config_text(s).bc == ThetaBC::DirichletNeumann);
  s.replace(s.find("dirichlet-neumann"), 17, "periodic");
  CHECK(error_of(s).find("bc") != std::string::npos);
}

TEST_CASE("echoed config is a fixed point") {
  for (const char* name : {"stationary.json", "vacuum.json", "mms.json", "continuation.json"}) {
    CAPTURE(name);
    const auto c = load_config(config_path(name));
    const auto echo = to_json(c);
    CHECK(to_json(parse_config(nlohmann::json::parse(echo.dump()))) == echo);
  }
}

TEST_CASE("timeseries CSV has one row per cell per snapshot") {
  const auto c = parse_config_text(kMinimal);
  const auto pr = problem_of(c);
  RunRequest req;
  req.t_end = c.t_end;
  req.snapshot_times = c.snapshot_times;
  const auto traj = run(pr, scheme_of(c), req);
  const auto csv = timeseries_csv(traj, pr);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "t,cell,y,J,v,theta,G,eta");
  CHECK(lines[1].rfind("0,0,0.25,1,0,1,-1,0.25", 0) == 0);
}

TEST_CASE("audit JSON at t = 0 records zero errors") {
  const auto c = parse_config_text(kMinimal);
  const auto pr = problem_of(c);
  RunRequest req;
  req.t_end = c.t_end;
  req.snapshot_times = {0.0};
  const auto report = audit_trajectory(run(pr, scheme_of(c), req), pr, c.audit);
  const auto j = audit_json(report);
  const auto& graded = j["records"][0]["graded"];
  CHECK(graded["mass_error"]["value"].get<double>() == 0.0);
  CHECK(graded["energy_error"]["value"].get<double>() == 0.0);
  CHECK(graded["ks_residual_sup"]["value"].get<double>() == 0.0);
  CHECK(graded["mass_error"]["verdict"] == "pass");
  CHECK(j["passed"] == true);
}

TEST_CASE("numbers round-trip through format_number") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_number(x)) == x);
  CHECK(format_number(0.0) == "0");
}

TEST_CASE("reruns are byte identical") {
  const auto a = scratch("rerun_a"), b = scratch("rerun_b");
  REQUIRE(cli({"run", "--config", config_path("smooth.json"), "--out", a.string(), "--quiet"}) == kExitOk);
  REQUIRE(cli({"run", "--config", config_path("smooth.json"), "--out", b.string(), "--quiet"}) == kExitOk);
  for (const char* f : {"timeseries.csv", "audit.json"}) {
    CAPTURE(f);
    const auto x = slurp(a / f);
    CHECK_FALSE(x.empty());
    CHECK(x == slurp(b / f));
  }
}

TEST_CASE("exit codes") {
  const auto dir = scratch("exit");
  CHECK(cli({"run", "--config", config_path("stationary.json"), "--out", dir.string(), "--quiet"}) == kExitOk);
  CHECK(fs::exists(dir / "timeseries.csv"));
  CHECK(fs::exists(dir / "audit.json"));
  CHECK(cli({"euler-export", "--config", config_path("stationary.json"), "--out", dir.string(), "--quiet"}) ==
        kExitOk);
  CHECK(fs::exists(dir / "euler.csv"));

  const auto bad = dir / "bad.json";
  std::ofstream(bad) << R"({"params": {"L": 1.0}, "grid": {"N": 0}, "time": {"t_end": 1.0},
                            "initial_data": {"profile": "constant"}})";
  CHECK(cli({"run", "--config", bad.string(), "--out", dir.string(), "--quiet"}) == kExitStructural);
  CHECK(cli({"run", "--config", (dir / "missing.json").string(), "--quiet"}) == kExitStructural);
  CHECK(cli({"frobnicate"}) == kExitStructural);
}
