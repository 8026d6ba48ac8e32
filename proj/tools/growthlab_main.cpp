#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "growthlab/scenario.hpp"
#include "growthlab/version.hpp"

namespace gl = growthlab;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string format;
  long long seed = -1;
  double tol = -1.0;
};

int run_command(gl::Command cmd, const CommonOpts& opts) {
  std::ifstream is(opts.config_path, std::ios::binary);
  if (!is) {
    std::cerr << "error: cannot read config " << opts.config_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << is.rdbuf();

  gl::ScenarioConfig cfg = gl::parse_scenario(buf.str(), cmd);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (!opts.format.empty())
    cfg.format = opts.format == "json" ? gl::OutFormat::Json : gl::OutFormat::Csv;
  if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.tol > 0.0) cfg.tol.solver_residual = opts.tol;

  const gl::RunReport report = gl::run(cfg);
  std::cout << gl::format_report(report);
  return report.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balanced growth paths, dynamics, and comparative-statics "
               "certification for a two-sector OLG economy with credit, land, "
               "and fiat money"};
  app.set_version_flag("--version", std::string(gl::kToolName) + " " + gl::kVersion);
  app.require_subcommand(1);

  CommonOpts opts;
  std::unordered_map<CLI::App*, gl::Command> dispatch;
  for (gl::Command cmd :
       {gl::Command::Steady, gl::Command::Sweep, gl::Command::Simulate,
        gl::Command::Shock, gl::Command::Verify, gl::Command::Labor}) {
    CLI::App* sub = app.add_subcommand(gl::to_string(cmd));
    sub->add_option("--config", opts.config_path, "scenario file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opts.seed, "override the scenario seed");
    sub->add_option("--tol", opts.tol, "override the solver residual tolerance");
    dispatch[sub] = cmd;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run_command(dispatch.at(app.get_subcommands().front()), opts);
  } catch (const gl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gl::AssumptionError& e) {
    std::cerr << "assumption error: " << e.what() << "\n";
    return 2;
  } catch (const gl::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const gl::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
}
