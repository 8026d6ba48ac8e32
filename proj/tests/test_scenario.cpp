#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "growthlab/scenario.hpp"
#include "test_support.hpp"

using namespace growthlab;
namespace fs = std::filesystem;

namespace {

const char* kSteadyRef = R"(# reference point
command = steady
variant = main

[params]
a = 26.826957952797257
alpha = 0.3
eps = 0
eta = 0.5
delta = 1
theta = 0.1
theta_x = 0.2
mu = 0.1
)";

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("growthlab_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal steady scenario parses with defaults") {
  const ScenarioConfig cfg = parse_scenario(kSteadyRef);
  CHECK(cfg.command == Command::Steady);
  CHECK(cfg.variant == Variant::Main);
  CHECK(cfg.seed == 0);
  CHECK(cfg.format == OutFormat::Csv);
  REQUIRE(cfg.params.has_value());
  CHECK(cfg.params->theta_x == 0.2);
}

TEST_CASE("params and box are mutually exclusive") {
  std::string text = kSteadyRef;
  text += "\n[box]\na = 20 30\nalpha = 0.3\neps = 0\neta = 0.5\ndelta = 1\n"
          "theta = 0.1\ntheta_x = 0.2\nmu = 0.1\n";
  CHECK_THROWS_AS(parse_scenario(text), ConfigError);
}

TEST_CASE("unknown keys and malformed lines are hard errors") {
  CHECK_THROWS_WITH_AS(parse_scenario(std::string(kSteadyRef) + "bogus = 1\n"),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_scenario("command = steady\nnot a key value\n"),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("command = warp\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(""), ConfigError);  // no command anywhere
}

TEST_CASE("cli command must agree with the file") {
  CHECK_NOTHROW(parse_scenario(kSteadyRef, Command::Steady));
  CHECK_THROWS_AS(parse_scenario(kSteadyRef, Command::Sweep), ConfigError);
  // a file without a command picks it up from the invocation
  std::string text = kSteadyRef;
  text.erase(text.find("command = steady\n"), 17);
  const ScenarioConfig cfg = parse_scenario(text, Command::Steady);
  CHECK(cfg.command == Command::Steady);
}

TEST_CASE("round trip through the canonical form") {
  ScenarioConfig cfg = parse_scenario(kSteadyRef);
  cfg.years_per_period = 30.0;
  CHECK(parse_scenario(print_scenario(cfg)) == cfg);

  ScenarioConfig sweep = cfg;
  sweep.command = Command::Sweep;
  sweep.sweep_axis = "mu";
  sweep.sweep_grid = {0.0, 0.05, 0.1};
  CHECK(parse_scenario(print_scenario(sweep)) == sweep);

  ScenarioConfig verify = cfg;
  verify.command = Command::Verify;
  verify.params.reset();
  verify.box = test::main_box(0.0, 0.12, 0.15, 0.3, 1e-3);
  verify.n = 50;
  verify.seed = 9;
  verify.props = {PropId::P3, PropId::P8};
  CHECK(parse_scenario(print_scenario(verify)) == verify);

  ScenarioConfig sim = cfg;
  sim.command = Command::Simulate;
  sim.horizon = 25;
  sim.phi0 = 0.1;
  sim.r0 = 2.7;
  CHECK(parse_scenario(print_scenario(sim)) == sim);

  ScenarioConfig labor = cfg;
  labor.command = Command::Labor;
  labor.labor_rho = 0.4;
  labor.labor_mobility = LaborMobility::Immobile;
  labor.labor_nx = 0.3;
  CHECK(parse_scenario(print_scenario(labor)) == labor);
}

TEST_CASE("steady run reproduces the reference solution") {
  const RunReport rep = run(parse_scenario(kSteadyRef));
  CHECK(rep.exit_status == 0);
  CHECK(rep.results["solution"]["phi_star"].get<double>() ==
        doctest::Approx(0.11121794871794872).epsilon(1e-13));
  CHECK(rep.results["solution"]["g_gross"].get<double>() ==
        doctest::Approx(2.9625).epsilon(1e-13));
  CHECK(rep.results["solution"]["r_gross"].get<double>() ==
        doctest::Approx(2.6931818181818182).epsilon(1e-13));
  CHECK(rep.results["diagnostics"]["credit_gdp"].get<double>() ==
        doctest::Approx(0.057467948717948718).epsilon(1e-12));
  CHECK(format_report(rep).find("phi_star") != std::string::npos);
}

TEST_CASE("assumption violations exit with status 2") {
  std::string text = kSteadyRef;
  const auto pos = text.find("theta_x = 0.2");
  text.replace(pos, 13, "theta_x = 0.9");
  const auto pos2 = text.find("mu = 0.1");
  text.replace(pos2, 8, "mu = 0.2");
  const ScenarioConfig cfg = parse_scenario(text);  // parses fine
  const RunReport rep = run(cfg);
  CHECK(rep.exit_status == 2);
}

TEST_CASE("sweep emits one ordered row per grid point") {
  std::string text = kSteadyRef;
  text.replace(text.find("command = steady"), 16, "command = sweep");
  text += "\n[sweep]\naxis = mu\ngrid = 0 0.05 0.1\n";
  ScenarioConfig cfg = parse_scenario(text);
  const fs::path dir = temp_dir("sweep");
  cfg.out_dir = dir.string();

  const RunReport rep = run(cfg);
  CHECK(rep.exit_status == 0);
  const auto& rows = rep.results["sweep"]["rows"];
  REQUIRE(rows.size() == 3);
  // faster money growth slows growth when land is the better collateral
  CHECK(rows[0]["g_gross"].get<double>() > rows[1]["g_gross"].get<double>());
  CHECK(rows[1]["g_gross"].get<double>() > rows[2]["g_gross"].get<double>());

  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(fs::exists(dir / "sweep_curve.dat"));
  const std::string csv = read_file(dir / "sweep.csv");
  CHECK(csv.find("mu,phi_star,g_gross,r_gross,credit_gdp,money_share,ordering_ok") !=
        std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate run writes the trajectory") {
  std::string text = kSteadyRef;
  text.replace(text.find("command = steady"), 16, "command = simulate");
  text += "\n[simulate]\nhorizon = 12\n";
  ScenarioConfig cfg = parse_scenario(text);
  const fs::path dir = temp_dir("sim");
  cfg.out_dir = dir.string();
  const RunReport rep = run(cfg);
  CHECK(rep.exit_status == 0);
  CHECK(rep.results["trajectory"]["flag"].get<std::string>() == "converged");
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(fs::exists(dir / "trajectory.dat"));

  // a balanced-growth run plots constant phi and rate columns
  std::istringstream dat(read_file(dir / "trajectory.dat"));
  std::string line, first_phi, first_r;
  std::getline(dat, line);  // header
  int rows = 0;
  while (std::getline(dat, line)) {
    std::istringstream cells(line);
    std::string t, phi, r;
    cells >> t >> phi >> r;
    if (rows == 0) {
      first_phi = phi;
      first_r = r;
    } else {
      CHECK(phi == first_phi);
      CHECK(r == first_r);
    }
    ++rows;
  }
  CHECK(rows == 12);
  fs::remove_all(dir);
}

TEST_CASE("verify run with an empty proposition set succeeds vacuously") {
  std::string text = kSteadyRef;
  text.replace(text.find("command = steady"), 16, "command = verify");
  text += "\n[verify]\nprops =\n";
  const RunReport rep = run(parse_scenario(text));
  CHECK(rep.exit_status == 0);
  CHECK(rep.results["verify"]["counts"].empty());
}

TEST_CASE("verify run certifies the reference point") {
  std::string text = kSteadyRef;
  text.replace(text.find("command = steady"), 16, "command = verify");
  text += "\n[verify]\nprops = P2i P2ii P3 P8 PA1 L1\n";
  const RunReport rep = run(parse_scenario(text));
  CHECK(rep.exit_status == 0);
  for (const auto& [prop, c] : rep.results["verify"]["counts"].items()) {
    CHECK(c["pass"].get<int>() == 1);
    CHECK(c["fail"].get<int>() == 0);
  }
}

TEST_CASE("a failed claim exits with status 1 and a witness") {
  // overriding the mu > 0 regime certifies P2ii where its derivative is
  // genuinely negative, so the run must fail loudly
  std::string text = kSteadyRef;
  text.replace(text.find("command = steady"), 16, "command = verify");
  text.replace(text.find("mu = 0.1"), 8, "mu = -0.05");
  text += "\n[verify]\nprops = P2ii\nallow_nonpositive_mu = true\n";
  const RunReport rep = run(parse_scenario(text));
  CHECK(rep.exit_status == 1);
  CHECK(rep.results["verify"]["counts"]["P2ii"]["fail"].get<int>() == 1);
  REQUIRE(rep.results["verify"]["failures"].size() == 1);
  CHECK(rep.results["verify"]["failures"][0]["witness"].contains("dg_dtheta"));
}

TEST_CASE("an infeasible sampling box surfaces as a numerical failure") {
  const std::string text = R"(command = verify
variant = main
n = 5
seed = 0

[box]
a = 20 30
alpha = 0.25 0.35
eps = 0
eta = 0.4 0.6
delta = 0.8 1
theta = 0 0.12
theta_x = 0.95 1
mu = 0.2 0.5

[verify]
props = P3
)";
  CHECK_THROWS_AS(run(parse_scenario(text)), NumericalError);
}

TEST_CASE("shock run reports the boom checks") {
  std::string text = kSteadyRef;
  text.replace(text.find("command = steady"), 16, "command = shock");
  text += "\n[shock]\neps_new = 0.01\nperiod = 5\nhorizon = 25\n";
  const RunReport rep = run(parse_scenario(text));
  CHECK(rep.exit_status == 0);
  const auto& checks = rep.results["shock"]["checks"];
  CHECK(checks["price_boom"].get<bool>());
  CHECK(checks["output_boom"].get<bool>());
  CHECK(checks["growth_lower"].get<bool>());
  CHECK(checks["k_crossover"].get<int>() == 6);
}

TEST_CASE("labor run") {
  std::string text = kSteadyRef;
  text.replace(text.find("command = steady"), 16, "command = labor");
  const auto pos = text.find("eps = 0\n");
  text.replace(pos, 8, "eps = 0.2609315604220458\n");  // eps*a = 7
  text += "\n[labor]\nrho = 0.5\nmobility = mobile\n";
  const RunReport rep = run(parse_scenario(text));
  CHECK(rep.exit_status == 0);
  CHECK(rep.results["labor"]["nx"].get<double>() ==
        doctest::Approx(0.21603239440465351).epsilon(1e-8));
}

TEST_CASE("identical configs give byte-identical outputs") {
  const std::string text = R"(command = verify
variant = main
n = 20
seed = 3

[box]
a = 20 30
alpha = 0.25 0.35
eps = 0 0.001
eta = 0.4 0.6
delta = 0.8 1
theta = 0 0.12
theta_x = 0.15 0.3
mu = 0.02 0.25

[verify]
props = P3 P8
)";
  ScenarioConfig cfg = parse_scenario(text);
  const fs::path d1 = temp_dir("det1");
  const fs::path d2 = temp_dir("det2");
  cfg.out_dir = d1.string();
  run(cfg);
  cfg.out_dir = d2.string();
  run(cfg);
  CHECK(read_file(d1 / "verdicts.json") == read_file(d2 / "verdicts.json"));
  CHECK(read_file(d1 / "report.json") == read_file(d2 / "report.json"));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("plot emitter rejects mismatched payloads") {
  const RunReport rep = run(parse_scenario(kSteadyRef));
  CHECK_THROWS_AS(emit_plot_data(rep, PlotKind::SweepCurve, "/tmp/unused.dat"),
                  ConfigError);
}
