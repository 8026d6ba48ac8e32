#include "growthlab/scenario.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "growthlab/labor.hpp"
#include "growthlab/version.hpp"

namespace growthlab {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(Command c) {
  switch (c) {
    case Command::Steady: return "steady";
    case Command::Sweep: return "sweep";
    case Command::Simulate: return "simulate";
    case Command::Shock: return "shock";
    case Command::Verify: return "verify";
    case Command::Labor: return "labor";
  }
  return "?";
}

const char* to_string(OutFormat f) { return f == OutFormat::Csv ? "csv" : "json"; }

namespace {

Command command_from_string(const std::string& s) {
  for (Command c : {Command::Steady, Command::Sweep, Command::Simulate,
                    Command::Shock, Command::Verify, Command::Labor})
    if (s == to_string(c)) return c;
  throw ConfigError("unknown command '" + s + "'");
}

std::string fmt(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt(bool v) { return v ? "true" : "false"; }

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e)
    throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" +
                      tok + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

struct RawEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct RawConfig {
  std::map<std::string, RawEntry> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  const RawEntry* get(const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto ltrim = line.find_first_not_of(" \t\r");
    if (ltrim == std::string::npos) continue;
    auto rtrim = line.find_last_not_of(" \t\r");
    line = line.substr(ltrim, rtrim - ltrim + 1);

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ", column " +
                        std::to_string(line.size() + 1) + ": expected 'key = value'");
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (raw.kv.count(full))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        full + "'");
    raw.kv[full] = {value, lineno, false};
  }
  return raw;
}

const std::map<std::string, double ModelParams::*>& param_fields() {
  static const std::map<std::string, double ModelParams::*> m = {
      {"a", &ModelParams::a},         {"alpha", &ModelParams::alpha},
      {"eps", &ModelParams::eps},     {"eta", &ModelParams::eta},
      {"delta", &ModelParams::delta}, {"theta", &ModelParams::theta},
      {"theta_x", &ModelParams::theta_x}, {"mu", &ModelParams::mu}};
  return m;
}

const std::map<std::string, Interval ParamBox::*>& box_fields() {
  static const std::map<std::string, Interval ParamBox::*> m = {
      {"a", &ParamBox::a},         {"alpha", &ParamBox::alpha},
      {"eps", &ParamBox::eps},     {"eta", &ParamBox::eta},
      {"delta", &ParamBox::delta}, {"theta", &ParamBox::theta},
      {"theta_x", &ParamBox::theta_x}, {"mu", &ParamBox::mu}};
  return m;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text,
                              std::optional<Command> cli_command) {
  RawConfig raw = tokenize(text);
  ScenarioConfig cfg;

  if (const auto* e = raw.get("command")) {
    const Command file_cmd = command_from_string(e->value);
    if (cli_command && *cli_command != file_cmd)
      throw ConfigError("config says command = " + std::string(to_string(file_cmd)) +
                        " but the CLI invoked " + to_string(*cli_command));
    cfg.command = file_cmd;
  } else if (cli_command) {
    cfg.command = *cli_command;
  } else {
    throw ConfigError("missing required key 'command'");
  }

  if (const auto* e = raw.get("variant")) cfg.variant = variant_from_string(e->value);
  if (const auto* e = raw.get("seed")) {
    const double v = parse_double(e->value, e->line);
    if (v < 0 || v != std::floor(v))
      throw ConfigError("line " + std::to_string(e->line) + ": seed must be a "
                        "non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  if (const auto* e = raw.get("n")) {
    cfg.n = static_cast<int>(parse_double(e->value, e->line));
    if (cfg.n < 1)
      throw ConfigError("line " + std::to_string(e->line) + ": n must be >= 1");
  }

  // [params] / [box]
  bool has_params = false, has_box = false;
  for (const auto& kv : param_fields())
    if (raw.has("params." + kv.first)) has_params = true;
  for (const auto& kv : box_fields())
    if (raw.has("box." + kv.first)) has_box = true;
  if (has_params && has_box)
    throw ConfigError("params and box are mutually exclusive");
  if (has_params) {
    ModelParams p;
    p.variant = cfg.variant;
    for (const auto& [name, field] : param_fields()) {
      const auto* e = raw.get("params." + name);
      if (!e) throw ConfigError("missing key params." + name);
      p.*field = parse_double(e->value, e->line);
    }
    cfg.params = p;
  }
  if (has_box) {
    ParamBox b;
    b.variant = cfg.variant;
    for (const auto& [name, field] : box_fields()) {
      const auto* e = raw.get("box." + name);
      if (!e) throw ConfigError("missing key box." + name);
      const auto toks = split_ws(e->value);
      if (toks.empty() || toks.size() > 2)
        throw ConfigError("line " + std::to_string(e->line) +
                          ": box entries take one or two numbers");
      Interval iv;
      iv.lo = parse_double(toks.front(), e->line);
      iv.hi = parse_double(toks.back(), e->line);
      if (iv.hi < iv.lo)
        throw ConfigError("line " + std::to_string(e->line) + ": empty interval");
      b.*field = iv;
    }
    cfg.box = b;
  }

  if (const auto* e = raw.get("sweep.axis")) {
    if (!param_fields().count(e->value))
      throw ConfigError("line " + std::to_string(e->line) + ": unknown sweep axis '" +
                        e->value + "'");
    cfg.sweep_axis = e->value;
  }
  if (const auto* e = raw.get("sweep.grid"))
    for (const auto& t : split_ws(e->value))
      cfg.sweep_grid.push_back(parse_double(t, e->line));
  if (raw.has("sweep.from") || raw.has("sweep.to") || raw.has("sweep.points")) {
    const auto* ef = raw.get("sweep.from");
    const auto* et = raw.get("sweep.to");
    const auto* ep = raw.get("sweep.points");
    if (!ef || !et || !ep)
      throw ConfigError("sweep.from/to/points must be given together");
    if (!cfg.sweep_grid.empty())
      throw ConfigError("give either sweep.grid or sweep.from/to/points, not both");
    const double lo = parse_double(ef->value, ef->line);
    const double hi = parse_double(et->value, et->line);
    const int k = static_cast<int>(parse_double(ep->value, ep->line));
    if (k < 2) throw ConfigError("sweep.points must be >= 2");
    for (int i = 0; i < k; ++i)
      cfg.sweep_grid.push_back(lo + (hi - lo) * i / (k - 1));
  }

  if (const auto* e = raw.get("simulate.horizon"))
    cfg.horizon = static_cast<int>(parse_double(e->value, e->line));
  if (const auto* e = raw.get("shock.horizon"))
    cfg.horizon = static_cast<int>(parse_double(e->value, e->line));
  if (const auto* e = raw.get("simulate.k0")) cfg.k0 = parse_double(e->value, e->line);
  if (const auto* e = raw.get("simulate.m0")) cfg.m0 = parse_double(e->value, e->line);
  if (const auto* e = raw.get("simulate.phi0"))
    cfg.phi0 = parse_double(e->value, e->line);
  if (const auto* e = raw.get("simulate.r0")) cfg.r0 = parse_double(e->value, e->line);
  if (const auto* e = raw.get("shock.eps_new"))
    cfg.shock_eps_new = parse_double(e->value, e->line);
  if (const auto* e = raw.get("shock.period"))
    cfg.shock_period = static_cast<int>(parse_double(e->value, e->line));

  if (const auto* e = raw.get("verify.props")) {
    const auto toks = split_ws(e->value);
    if (toks.size() == 1 && toks[0] == "all") {
      cfg.props = all_props();
    } else {
      for (const auto& t : toks) cfg.props.push_back(prop_from_string(t));
    }
  } else if (cfg.command == Command::Verify) {
    cfg.props = all_props();
  }
  if (const auto* e = raw.get("verify.eps_small"))
    cfg.verify.eps_small = parse_double(e->value, e->line);
  if (const auto* e = raw.get("verify.degeneracy_floor"))
    cfg.verify.degeneracy_floor = parse_double(e->value, e->line);
  if (const auto* e = raw.get("verify.noise_floor"))
    cfg.verify.noise_floor = parse_double(e->value, e->line);
  if (const auto* e = raw.get("verify.allow_nonpositive_mu")) {
    if (e->value != "true" && e->value != "false")
      throw ConfigError("line " + std::to_string(e->line) + ": expected true|false");
    cfg.verify.require_positive_mu = e->value != "true";
  }

  if (const auto* e = raw.get("labor.rho")) cfg.labor_rho = parse_double(e->value, e->line);
  if (const auto* e = raw.get("labor.mobility")) {
    if (e->value == "mobile") cfg.labor_mobility = LaborMobility::Mobile;
    else if (e->value == "immobile") cfg.labor_mobility = LaborMobility::Immobile;
    else
      throw ConfigError("line " + std::to_string(e->line) +
                        ": expected mobile|immobile");
  }
  if (const auto* e = raw.get("labor.nx")) cfg.labor_nx = parse_double(e->value, e->line);

  if (const auto* e = raw.get("output.dir")) cfg.out_dir = e->value;
  if (const auto* e = raw.get("output.format")) {
    if (e->value == "csv") cfg.format = OutFormat::Csv;
    else if (e->value == "json") cfg.format = OutFormat::Json;
    else
      throw ConfigError("line " + std::to_string(e->line) + ": expected csv|json");
  }
  if (const auto* e = raw.get("output.plot")) {
    if (e->value != "true" && e->value != "false")
      throw ConfigError("line " + std::to_string(e->line) + ": expected true|false");
    cfg.plot = e->value == "true";
  }
  if (const auto* e = raw.get("output.years_per_period"))
    cfg.years_per_period = parse_double(e->value, e->line);

  if (const auto* e = raw.get("tolerances.solver"))
    cfg.tol.solver_residual = parse_double(e->value, e->line);
  if (const auto* e = raw.get("tolerances.identity"))
    cfg.tol.identity = parse_double(e->value, e->line);
  if (const auto* e = raw.get("tolerances.fixed_point"))
    cfg.tol.fixed_point = parse_double(e->value, e->line);

  // hard error on anything unrecognized
  for (const auto& [key, entry] : raw.kv)
    if (!entry.used)
      throw ConfigError("line " + std::to_string(entry.line) + ": unknown key '" +
                        key + "'");

  // per-command requirements
  const bool needs_params = cfg.command == Command::Steady ||
                            cfg.command == Command::Sweep ||
                            cfg.command == Command::Simulate ||
                            cfg.command == Command::Shock ||
                            cfg.command == Command::Labor;
  if (needs_params && !cfg.params)
    throw ConfigError(std::string("command ") + to_string(cfg.command) +
                      " needs a [params] section");
  if (cfg.command == Command::Verify && !cfg.params && !cfg.box)
    throw ConfigError("command verify needs [params] or [box]");
  if (cfg.command == Command::Sweep) {
    if (cfg.sweep_axis.empty()) throw ConfigError("command sweep needs sweep.axis");
    if (cfg.sweep_grid.empty()) throw ConfigError("command sweep needs a grid");
  }
  if (cfg.command == Command::Labor && cfg.labor_mobility == LaborMobility::Immobile &&
      !cfg.labor_nx)
    throw ConfigError("immobile labor needs labor.nx");
  if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");
  return cfg;
}

std::string print_scenario(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "command = " << to_string(cfg.command) << "\n";
  os << "variant = " << to_string(cfg.variant) << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "n = " << cfg.n << "\n";
  if (cfg.params) {
    os << "\n[params]\n";
    for (const auto& [name, field] : param_fields())
      os << name << " = " << fmt((*cfg.params).*field) << "\n";
  }
  if (cfg.box) {
    os << "\n[box]\n";
    for (const auto& [name, field] : box_fields()) {
      const Interval iv = (*cfg.box).*field;
      os << name << " = " << fmt(iv.lo);
      if (!iv.degenerate()) os << " " << fmt(iv.hi);
      os << "\n";
    }
  }
  if (!cfg.sweep_axis.empty() || !cfg.sweep_grid.empty()) {
    os << "\n[sweep]\n";
    if (!cfg.sweep_axis.empty()) os << "axis = " << cfg.sweep_axis << "\n";
    os << "grid =";
    for (double v : cfg.sweep_grid) os << " " << fmt(v);
    os << "\n";
  }
  os << "\n[simulate]\n";
  os << "horizon = " << cfg.horizon << "\n";
  os << "k0 = " << fmt(cfg.k0) << "\n";
  os << "m0 = " << fmt(cfg.m0) << "\n";
  if (cfg.phi0) os << "phi0 = " << fmt(*cfg.phi0) << "\n";
  if (cfg.r0) os << "r0 = " << fmt(*cfg.r0) << "\n";
  os << "\n[shock]\n";
  os << "eps_new = " << fmt(cfg.shock_eps_new) << "\n";
  os << "period = " << cfg.shock_period << "\n";
  os << "\n[verify]\n";
  os << "props =";
  for (PropId id : cfg.props) os << " " << to_string(id);
  os << "\n";
  os << "eps_small = " << fmt(cfg.verify.eps_small) << "\n";
  os << "degeneracy_floor = " << fmt(cfg.verify.degeneracy_floor) << "\n";
  os << "noise_floor = " << fmt(cfg.verify.noise_floor) << "\n";
  os << "allow_nonpositive_mu = " << fmt(!cfg.verify.require_positive_mu) << "\n";
  os << "\n[labor]\n";
  os << "rho = " << fmt(cfg.labor_rho) << "\n";
  os << "mobility = " << to_string(cfg.labor_mobility) << "\n";
  if (cfg.labor_nx) os << "nx = " << fmt(*cfg.labor_nx) << "\n";
  os << "\n[output]\n";
  if (!cfg.out_dir.empty()) os << "dir = " << cfg.out_dir << "\n";
  os << "format = " << to_string(cfg.format) << "\n";
  os << "plot = " << fmt(cfg.plot) << "\n";
  if (cfg.years_per_period)
    os << "years_per_period = " << fmt(*cfg.years_per_period) << "\n";
  os << "\n[tolerances]\n";
  os << "solver = " << fmt(cfg.tol.solver_residual) << "\n";
  os << "identity = " << fmt(cfg.tol.identity) << "\n";
  os << "fixed_point = " << fmt(cfg.tol.fixed_point) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// payload builders and writers

namespace {

json params_json(const ModelParams& p) {
  json j;
  for (const auto& [name, field] : param_fields()) j[name] = p.*field;
  j["variant"] = to_string(p.variant);
  return j;
}

json assumptions_json(const AssumptionReport& rep) {
  json j;
  j["all_ok"] = rep.all_ok;
  j["variant"] = to_string(rep.variant);
  auto put = [&](const char* name, bool ok, double margin) {
    if (std::isnan(margin)) return;
    j[name] = {{"ok", ok}, {"margin", margin}};
  };
  put("a1", rep.a1_ok, rep.a1_margin);
  put("a2_left", rep.a2_left_ok, rep.a2_left_margin);
  put("a2_right", rep.a2_right_ok, rep.a2_right_margin);
  put("a3", rep.a3_ok, rep.a3_margin);
  put("a4", rep.a4_ok, rep.a4_margin);
  put("money", rep.money_ok, rep.money_margin);
  return j;
}

json solution_json(const SteadyStateSolution& s) {
  return json{{"phi_star", s.phi_star},
              {"g_gross", s.g_gross},
              {"r_gross", s.r_gross},
              {"rx_star", s.rx_star},
              {"lambda_star", s.lambda_star},
              {"lev_capital", s.lev_capital},
              {"downpayment_land", s.downpayment_land},
              {"variant", to_string(s.variant)}};
}

json diagnostics_json(const SteadyDiagnostics& dg) {
  json j{{"credit_gdp", dg.credit_gdp},
         {"money_share", dg.money_share},
         {"ordering_ok", dg.ordering_ok},
         {"lambda1", dg.lambda1},
         {"price_rent_finite", dg.price_rent_finite},
         {"full_participation_exists", dg.full_participation_exists}};
  if (dg.price_rent_finite) j["price_rent_model"] = dg.price_rent_model;
  if (dg.full_participation_exists)
    j["price_rent_full_participation"] = dg.price_rent_full_participation;
  return j;
}

json config_json(const ScenarioConfig& cfg) {
  // the canonical text is itself the resolved config; keep it verbatim so the
  // run can be reproduced from the report alone. The output directory is an
  // execution detail, not part of the result: dropping it keeps reports
  // byte-identical wherever they are written.
  ScenarioConfig echo = cfg;
  echo.out_dir.clear();
  return json{{"canonical", print_scenario(echo)}};
}

json verdict_json(const PropositionVerdict& v) {
  json w(v.witness);
  return json{{"prop", to_string(v.prop)},
              {"verdict", to_string(v.verdict)},
              {"claimed_sign", v.claimed_sign},
              {"estimate", v.estimate},
              {"reason", v.reason},
              {"point", params_json(v.point)},
              {"witness", w}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os << content;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += cells[i];
  }
  out += "\n";
  return out;
}

std::string levels_csv(const Trajectory& traj, const LevelPath& lp) {
  std::string csv = csv_row({"t", "phi", "r_gross", "K", "P", "Q", "M", "w", "Y",
                             "T", "C_budget", "C_goods", "g"});
  for (size_t i = 0; i < lp.size(); ++i) {
    const auto& s = traj.states[i];
    csv += csv_row({std::to_string(s.t), fmt(s.phi), fmt(s.r_gross), fmt(lp.K[i]),
                    fmt(lp.P[i]), fmt(lp.Q[i]), fmt(lp.M[i]), fmt(lp.w[i]),
                    fmt(lp.Y[i]), fmt(lp.T[i]), fmt(lp.C_budget[i]),
                    fmt(lp.C_goods[i]), fmt(lp.g[i])});
  }
  return csv;
}

json levels_json(const LevelPath& lp) {
  return json{{"K", lp.K}, {"P", lp.P}, {"Q", lp.Q}, {"M", lp.M},
              {"w", lp.w}, {"Y", lp.Y}, {"T", lp.T},
              {"C_budget", lp.C_budget}, {"C_goods", lp.C_goods}, {"g", lp.g}};
}

}  // namespace

RunReport run(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.config = cfg;

  const bool emit = !cfg.out_dir.empty();
  if (emit) fs::create_directories(cfg.out_dir);
  auto out_path = [&](const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
  };
  auto emit_file = [&](const std::string& name, const std::string& content) {
    if (!emit) return;
    const std::string path = out_path(name);
    write_file(path, content);
    rep.files.push_back(path);
  };

  ModelParams p;
  if (cfg.params) {
    p = *cfg.params;
    p.variant = cfg.variant;
    rep.assumptions = check_assumptions(p);
  }

  rep.results["tool"] = {{"name", kToolName}, {"version", kVersion}};
  rep.results["config"] = config_json(cfg);
  if (cfg.params) rep.results["assumptions"] = assumptions_json(rep.assumptions);

  switch (cfg.command) {
    case Command::Steady: {
      if (!rep.assumptions.all_ok) {
        rep.exit_status = 2;
        rep.message = "assumption " + rep.assumptions.first_failure() + " violated";
        break;
      }
      const SteadyStateSolution sol = solve_steady(p, cfg.tol);
      const SteadyDiagnostics dg = diagnostics(sol, p);
      rep.results["solution"] = solution_json(sol);
      rep.results["diagnostics"] = diagnostics_json(dg);
      std::vector<std::string> head{"phi_star", "g_gross", "r_gross", "rx_star",
                                    "lambda_star", "lev_capital", "downpayment_land",
                                    "credit_gdp", "money_share", "ordering_ok"};
      std::vector<std::string> row{fmt(sol.phi_star), fmt(sol.g_gross),
                                   fmt(sol.r_gross), fmt(sol.rx_star),
                                   fmt(sol.lambda_star), fmt(sol.lev_capital),
                                   fmt(sol.downpayment_land), fmt(dg.credit_gdp),
                                   fmt(dg.money_share), fmt(dg.ordering_ok)};
      if (cfg.years_per_period) {
        const double y = *cfg.years_per_period;
        const double r_a = std::pow(sol.r_gross, 1.0 / y) - 1.0;
        const double g_a = std::pow(sol.g_gross, 1.0 / y) - 1.0;
        rep.results["annualized"] = {{"r_net", r_a}, {"g_net", g_a}, {"years", y}};
        head.insert(head.end(), {"r_net_annual", "g_net_annual"});
        row.insert(row.end(), {fmt(r_a), fmt(g_a)});
      }
      if (cfg.format == OutFormat::Csv)
        emit_file("steady.csv", csv_row(head) + csv_row(row));
      else
        emit_file("steady.json", rep.results.dump(2) + "\n");
      break;
    }
    case Command::Sweep: {
      if (!rep.assumptions.all_ok) {
        rep.exit_status = 2;
        rep.message = "assumption " + rep.assumptions.first_failure() +
                      " violated at the base point";
        break;
      }
      auto field = param_fields().at(cfg.sweep_axis);
      json rows = json::array();
      std::string csv = csv_row({cfg.sweep_axis, "phi_star", "g_gross", "r_gross",
                                 "credit_gdp", "money_share", "ordering_ok"});
      for (double x : cfg.sweep_grid) {
        ModelParams q = p;
        q.*field = x;
        const AssumptionReport arep = check_assumptions(q);
        if (!arep.all_ok) {
          rep.exit_status = 2;
          rep.message = "assumption " + arep.first_failure() + " violated at " +
                        cfg.sweep_axis + " = " + fmt(x);
          break;
        }
        const SteadyStateSolution sol = solve_steady(q, cfg.tol);
        const SteadyDiagnostics dg = diagnostics(sol, q);
        rows.push_back({{cfg.sweep_axis, x},
                        {"phi_star", sol.phi_star},
                        {"g_gross", sol.g_gross},
                        {"r_gross", sol.r_gross},
                        {"credit_gdp", dg.credit_gdp},
                        {"money_share", dg.money_share},
                        {"ordering_ok", dg.ordering_ok}});
        csv += csv_row({fmt(x), fmt(sol.phi_star), fmt(sol.g_gross), fmt(sol.r_gross),
                        fmt(dg.credit_gdp), fmt(dg.money_share), fmt(dg.ordering_ok)});
      }
      if (rep.exit_status != 0) break;
      rep.results["sweep"] = {{"axis", cfg.sweep_axis}, {"rows", rows}};
      if (cfg.format == OutFormat::Csv)
        emit_file("sweep.csv", csv);
      else
        emit_file("sweep.json", rep.results.dump(2) + "\n");
      if (emit && cfg.plot) {
        emit_plot_data(rep, PlotKind::SweepCurve, out_path("sweep_curve.dat"));
        rep.files.push_back(out_path("sweep_curve.dat"));
      }
      break;
    }
    case Command::Simulate: {
      if (!rep.assumptions.all_ok) {
        rep.exit_status = 2;
        rep.message = "assumption " + rep.assumptions.first_failure() + " violated";
        break;
      }
      const SteadyStateSolution ss = solve_steady(p, cfg.tol);
      EconomyState s0;
      s0.phi = cfg.phi0.value_or(ss.phi_star);
      s0.r_gross = cfg.r0.value_or(ss.r_gross);
      const Trajectory traj = simulate(s0, cfg.horizon, p, cfg.tol);
      if (traj.states.empty()) {
        rep.exit_status = 2;
        rep.message = "initial state outside the economic domain: " + traj.note;
        break;
      }
      const LevelPath lp = reconstruct_levels(traj, cfg.k0, cfg.m0, p);
      json jt = json::array();
      for (const auto& s : traj.states)
        jt.push_back({{"t", s.t}, {"phi", s.phi}, {"r_gross", s.r_gross}});
      rep.results["trajectory"] = {{"states", jt},
                                   {"flag", to_string(traj.flag)},
                                   {"note", traj.note},
                                   {"rate_ambiguity", traj.rate_ambiguity},
                                   {"levels", levels_json(lp)}};
      if (cfg.format == OutFormat::Csv)
        emit_file("trajectory.csv", levels_csv(traj, lp));
      else
        emit_file("trajectory.json", rep.results.dump(2) + "\n");
      if (emit && cfg.plot) {
        emit_plot_data(rep, PlotKind::Trajectory, out_path("trajectory.dat"));
        rep.files.push_back(out_path("trajectory.dat"));
      }
      rep.message = std::string("trajectory flag: ") + to_string(traj.flag);
      break;
    }
    case Command::Shock: {
      if (!rep.assumptions.all_ok) {
        rep.exit_status = 2;
        rep.message = "assumption " + rep.assumptions.first_failure() + " violated";
        break;
      }
      const ShockResult sh = epsilon_shock(p, cfg.shock_eps_new, cfg.shock_period,
                                           cfg.horizon, cfg.k0, cfg.m0, cfg.tol);
      json checks{{"null_shock", sh.null_shock},
                  {"price_boom", sh.price_boom},
                  {"output_boom", sh.output_boom},
                  {"growth_lower", sh.growth_lower},
                  {"long_run_growth_gap", sh.long_run_growth_gap}};
      if (sh.k_crossover) checks["k_crossover"] = *sh.k_crossover;
      if (sh.y_crossover) checks["y_crossover"] = *sh.y_crossover;
      rep.results["shock"] = {{"before", solution_json(sh.before)},
                              {"after", solution_json(sh.after)},
                              {"period", sh.shock_period},
                              {"checks", checks},
                              {"baseline", levels_json(sh.baseline)},
                              {"shocked", levels_json(sh.shocked)}};
      std::string csv = csv_row({"t", "K_base", "K_shock", "P_base", "P_shock",
                                 "Q_base", "Q_shock", "Y_base", "Y_shock", "g_base",
                                 "g_shock"});
      for (size_t i = 0; i < sh.baseline.size(); ++i)
        csv += csv_row({std::to_string(i), fmt(sh.baseline.K[i]), fmt(sh.shocked.K[i]),
                        fmt(sh.baseline.P[i]), fmt(sh.shocked.P[i]),
                        fmt(sh.baseline.Q[i]), fmt(sh.shocked.Q[i]),
                        fmt(sh.baseline.Y[i]), fmt(sh.shocked.Y[i]),
                        fmt(sh.baseline.g[i]), fmt(sh.shocked.g[i])});
      if (cfg.format == OutFormat::Csv)
        emit_file("shock.csv", csv);
      else
        emit_file("shock.json", rep.results.dump(2) + "\n");
      if (emit && cfg.plot) {
        emit_plot_data(rep, PlotKind::ShockComparison, out_path("shock_comparison.dat"));
        rep.files.push_back(out_path("shock_comparison.dat"));
      }
      if (!sh.null_shock &&
          (!sh.price_boom || !sh.output_boom || !sh.growth_lower || !sh.k_crossover)) {
        rep.exit_status = 1;
        rep.message = "shock postconditions violated";
      }
      break;
    }
    case Command::Verify: {
      const ParamBox box = cfg.box ? *cfg.box : ParamBox::point(p);
      const VerdictSummary sum =
          batch_verify(box, cfg.n, cfg.seed, cfg.props, cfg.verify);
      json counts;
      bool any_fail = false;
      for (const auto& [id, c] : sum.counts) {
        counts[to_string(id)] = {{"pass", c.pass},
                                 {"fail", c.fail},
                                 {"out_of_regime", c.out_of_regime}};
        any_fail = any_fail || c.fail > 0;
      }
      json failures = json::array();
      for (const auto& v : sum.failures) failures.push_back(verdict_json(v));
      rep.results["verify"] = {{"counts", counts},
                               {"failures", failures},
                               {"n", sum.n},
                               {"seed", sum.seed},
                               {"rejection_rate", sum.rejection_rate}};
      emit_file("verdicts.json", rep.results.dump(2) + "\n");
      if (any_fail) {
        rep.exit_status = 1;
        rep.message = "proposition failure (witnesses in the report)";
      }
      break;
    }
    case Command::Labor: {
      if (!rep.assumptions.all_ok) {
        rep.exit_status = 2;
        rep.message = "assumption " + rep.assumptions.first_failure() + " violated";
        break;
      }
      LaborParams lp;
      lp.rho = cfg.labor_rho;
      lp.base = p;
      lp.mobility = cfg.labor_mobility;
      lp.nx_fixed = cfg.labor_nx.value_or(0.0);
      const LaborShare share = solve_labor_share(lp);
      const double coef = entrepreneur_income_coefficient(lp);
      rep.results["labor"] = {{"nx", share.nx},
                              {"eps_zero", share.eps_zero},
                              {"income_coefficient", coef},
                              {"mobility", to_string(lp.mobility)},
                              {"rho", lp.rho}};
      if (cfg.format == OutFormat::Csv)
        emit_file("labor.csv",
                  csv_row({"nx", "eps_zero", "income_coefficient"}) +
                      csv_row({fmt(share.nx), fmt(share.eps_zero), fmt(coef)}));
      else
        emit_file("labor.json", rep.results.dump(2) + "\n");
      break;
    }
  }

  if (emit) {
    // machine-readable report without wall time, so reruns are byte-identical
    emit_file("report.json", rep.results.dump(2) + "\n");
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void emit_plot_data(const RunReport& report, PlotKind kind, const std::string& path) {
  const json& res = report.results;
  std::ostringstream os;
  switch (kind) {
    case PlotKind::SweepCurve: {
      if (!res.contains("sweep"))
        throw ConfigError("report carries no sweep payload");
      const std::string axis = res["sweep"]["axis"].get<std::string>();
      os << "# " << axis << "  g_gross(per-period)\n";
      for (const auto& row : res["sweep"]["rows"])
        os << fmt(row[axis].get<double>()) << " "
           << fmt(row["g_gross"].get<double>()) << "\n";
      break;
    }
    case PlotKind::Trajectory: {
      if (!res.contains("trajectory"))
        throw ConfigError("report carries no trajectory payload");
      os << "# t  phi  r_gross  K  P  Q(per-period levels)\n";
      const auto& st = res["trajectory"]["states"];
      const auto& lv = res["trajectory"]["levels"];
      for (size_t i = 0; i < st.size(); ++i)
        os << st[i]["t"].get<int>() << " " << fmt(st[i]["phi"].get<double>()) << " "
           << fmt(st[i]["r_gross"].get<double>()) << " "
           << fmt(lv["K"][i].get<double>()) << " " << fmt(lv["P"][i].get<double>())
           << " " << fmt(lv["Q"][i].get<double>()) << "\n";
      break;
    }
    case PlotKind::ShockComparison: {
      if (!res.contains("shock"))
        throw ConfigError("report carries no shock payload");
      os << "# t  series  baseline  shocked\n";
      const auto& base = res["shock"]["baseline"];
      const auto& sh = res["shock"]["shocked"];
      for (const char* series : {"K", "P", "Q", "Y", "g"}) {
        const auto& b = base[series];
        const auto& s = sh[series];
        for (size_t i = 0; i < b.size(); ++i)
          os << i << " " << series << " " << fmt(b[i].get<double>()) << " "
             << fmt(s[i].get<double>()) << "\n";
      }
      break;
    }
  }
  write_file(path, os.str());
}

std::string format_report(const RunReport& report) {
  std::ostringstream os;
  os << kToolName << " " << kVersion << " - " << to_string(report.config.command)
     << " (" << to_string(report.config.variant) << ")\n";
  if (report.config.params) {
    const auto& rep = report.assumptions;
    os << "assumptions: " << (rep.all_ok ? "all hold" : "VIOLATED") << "\n";
  }
  if (report.results.contains("solution")) {
    const auto& s = report.results["solution"];
    for (const char* k : {"phi_star", "g_gross", "r_gross", "rx_star", "lambda_star",
                          "lev_capital", "downpayment_land"})
      os << "  " << k << " = " << fmt(s[k].get<double>()) << "\n";
    const auto& dg = report.results["diagnostics"];
    os << "  credit_gdp = " << fmt(dg["credit_gdp"].get<double>()) << "\n";
    os << "  money_share = " << fmt(dg["money_share"].get<double>()) << "\n";
    os << "  ordering_ok = " << fmt(dg["ordering_ok"].get<bool>()) << "\n";
  }
  if (report.results.contains("verify")) {
    for (const auto& [prop, c] : report.results["verify"]["counts"].items())
      os << "  " << prop << ": pass " << c["pass"].get<int>() << ", fail "
         << c["fail"].get<int>() << ", out-of-regime "
         << c["out_of_regime"].get<int>() << "\n";
  }
  if (report.results.contains("labor")) {
    os << "  nx = " << fmt(report.results["labor"]["nx"].get<double>()) << "\n"
       << "  income_coefficient = "
       << fmt(report.results["labor"]["income_coefficient"].get<double>()) << "\n";
  }
  if (report.results.contains("shock")) {
    const auto& c = report.results["shock"]["checks"];
    os << "  price_boom = " << fmt(c["price_boom"].get<bool>())
       << ", output_boom = " << fmt(c["output_boom"].get<bool>())
       << ", growth_lower = " << fmt(c["growth_lower"].get<bool>()) << "\n";
    if (c.contains("k_crossover"))
      os << "  k_crossover = " << c["k_crossover"].get<int>() << "\n";
  }
  if (report.results.contains("trajectory")) {
    os << "  flag = " << report.results["trajectory"]["flag"].get<std::string>()
       << "\n";
  }
  for (const auto& f : report.files) os << "wrote " << f << "\n";
  if (!report.message.empty()) os << report.message << "\n";
  os << "exit " << report.exit_status << " (" << fmt(report.wall_seconds) << " s)\n";
  return os.str();
}

}  // namespace growthlab
