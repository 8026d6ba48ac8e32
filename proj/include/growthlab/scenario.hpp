#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "growthlab/comparative_statics.hpp"
#include "growthlab/dynamics.hpp"
#include "growthlab/labor.hpp"
#include "growthlab/model.hpp"
#include "growthlab/sampling.hpp"
#include "growthlab/steady_state.hpp"

namespace growthlab {

enum class Command { Steady, Sweep, Simulate, Shock, Verify, Labor };
enum class OutFormat { Csv, Json };

const char* to_string(Command c);
const char* to_string(OutFormat f);

// A fully resolved run description. Exactly one of params/box is set
// (verify accepts either; a point is promoted to a degenerate box).
struct ScenarioConfig {
  Command command = Command::Steady;
  Variant variant = Variant::Main;
  std::optional<ModelParams> params;
  std::optional<ParamBox> box;

  int n = 1;
  std::uint64_t seed = 0;

  // sweep
  std::string sweep_axis;
  std::vector<double> sweep_grid;

  // simulate / shock
  int horizon = 50;
  double k0 = 1.0;
  double m0 = 1.0;
  std::optional<double> phi0;  // initial jump; defaults to the steady state
  std::optional<double> r0;
  double shock_eps_new = 0.0;
  int shock_period = 0;

  // verify
  std::vector<PropId> props;
  VerifyOptions verify;

  // labor
  double labor_rho = 0.5;
  LaborMobility labor_mobility = LaborMobility::Mobile;
  std::optional<double> labor_nx;

  Tolerances tol;
  std::optional<double> years_per_period;  // annualized rates as extra columns

  std::string out_dir;
  OutFormat format = OutFormat::Csv;
  bool plot = true;

  bool operator==(const ScenarioConfig&) const = default;
};

// Parses the flat key = value scenario format ('#' comments, [section]
// headers). Unknown keys are hard errors; messages carry the line number.
// cli_command, when given, fills a missing `command` key and must agree with
// an explicit one.
ScenarioConfig parse_scenario(const std::string& text,
                              std::optional<Command> cli_command = std::nullopt);

// Canonical text form; parse_scenario(print_scenario(cfg)) == cfg.
std::string print_scenario(const ScenarioConfig& cfg);

struct RunReport {
  ScenarioConfig config;            // resolved
  AssumptionReport assumptions;     // at the point for point commands
  nlohmann::json results;           // payload, shape depends on the command
  std::vector<std::string> files;   // paths written under out_dir
  double wall_seconds = 0.0;        // console only, never written to files
  int exit_status = 0;              // 0 ok, 1 proposition/invariant failure,
                                    // 2 config/assumptions, 3 numerical
  std::string message;
};

// Dispatches to the solvers / simulator / certifier and, when out_dir is set,
// emits CSV/JSON data files plus plot-ready files. Deterministic: the same
// config yields byte-identical files.
RunReport run(const ScenarioConfig& cfg);

enum class PlotKind { SweepCurve, Trajectory, ShockComparison };

// Writes a plot-ready whitespace-separated text file for the matching
// payload; throws ConfigError when the report carries a different payload.
void emit_plot_data(const RunReport& report, PlotKind kind, const std::string& path);

// Console rendering of a report (tables for point commands).
std::string format_report(const RunReport& report);

}  // namespace growthlab
