#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "growthlab/comparative_statics.hpp"
#include "growthlab/dynamics.hpp"
#include "growthlab/labor.hpp"
#include "growthlab/model.hpp"
#include "growthlab/sampling.hpp"
#include "growthlab/steady_state.hpp"
#include "growthlab/version.hpp"

namespace py = pybind11;
using namespace growthlab;

PYBIND11_MODULE(_growthlab, m) {
  m.doc() = "balanced growth paths, dynamics, and comparative-statics "
            "certification for a two-sector OLG economy with credit, land, "
            "and fiat money";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "ModelDomainError", PyExc_ValueError);
  py::register_exception<AssumptionError>(m, "AssumptionViolation", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "SolverError", PyExc_RuntimeError);

  py::enum_<Variant>(m, "Variant")
      .value("Main", Variant::Main)
      .value("O3", Variant::O3)
      .value("Landless", Variant::Landless);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double a, double alpha, double eps, double eta, double delta,
                       double theta, double theta_x, double mu, Variant variant) {
             ModelParams p{a, alpha, eps, eta, delta, theta, theta_x, mu, variant};
             validate(p);
             return p;
           }),
           py::arg("a"), py::arg("alpha"), py::arg("eps") = 0.0,
           py::arg("eta") = 0.5, py::arg("delta") = 1.0, py::arg("theta") = 0.0,
           py::arg("theta_x") = 0.0, py::arg("mu") = 0.0,
           py::arg("variant") = Variant::Main)
      .def_readwrite("a", &ModelParams::a)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("eps", &ModelParams::eps)
      .def_readwrite("eta", &ModelParams::eta)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("theta", &ModelParams::theta)
      .def_readwrite("theta_x", &ModelParams::theta_x)
      .def_readwrite("mu", &ModelParams::mu)
      .def_readwrite("variant", &ModelParams::variant)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(a=" + std::to_string(p.a) +
               ", alpha=" + std::to_string(p.alpha) +
               ", eps=" + std::to_string(p.eps) +
               ", eta=" + std::to_string(p.eta) +
               ", delta=" + std::to_string(p.delta) +
               ", theta=" + std::to_string(p.theta) +
               ", theta_x=" + std::to_string(p.theta_x) +
               ", mu=" + std::to_string(p.mu) + ", variant=" +
               to_string(p.variant) + ")";
      });

  py::class_<DerivedConstants>(m, "DerivedConstants")
      .def_readonly("A", &DerivedConstants::A)
      .def_readonly("Rc", &DerivedConstants::Rc)
      .def_readonly("land_term", &DerivedConstants::land_term)
      .def_readonly("H", &DerivedConstants::H);
  m.def("derive_constants", &derive_constants, py::arg("params"));

  py::class_<AssumptionReport>(m, "AssumptionReport")
      .def_readonly("all_ok", &AssumptionReport::all_ok)
      .def_readonly("a1_ok", &AssumptionReport::a1_ok)
      .def_readonly("a2_left_ok", &AssumptionReport::a2_left_ok)
      .def_readonly("a2_right_ok", &AssumptionReport::a2_right_ok)
      .def_readonly("a3_ok", &AssumptionReport::a3_ok)
      .def_readonly("a4_ok", &AssumptionReport::a4_ok)
      .def_readonly("money_ok", &AssumptionReport::money_ok)
      .def_readonly("a1_margin", &AssumptionReport::a1_margin)
      .def_readonly("a2_left_margin", &AssumptionReport::a2_left_margin)
      .def_readonly("a2_right_margin", &AssumptionReport::a2_right_margin)
      .def_readonly("a3_margin", &AssumptionReport::a3_margin)
      .def_readonly("a4_margin", &AssumptionReport::a4_margin)
      .def_readonly("money_margin", &AssumptionReport::money_margin)
      .def("first_failure", &AssumptionReport::first_failure);
  m.def("check_assumptions", &check_assumptions, py::arg("params"));

  py::class_<SteadyStateSolution>(m, "SteadyStateSolution")
      .def_readonly("phi_star", &SteadyStateSolution::phi_star)
      .def_readonly("g_gross", &SteadyStateSolution::g_gross)
      .def_readonly("r_gross", &SteadyStateSolution::r_gross)
      .def_readonly("rx_star", &SteadyStateSolution::rx_star)
      .def_readonly("lambda_star", &SteadyStateSolution::lambda_star)
      .def_readonly("lev_capital", &SteadyStateSolution::lev_capital)
      .def_readonly("downpayment_land", &SteadyStateSolution::downpayment_land)
      .def_readonly("variant", &SteadyStateSolution::variant);

  py::class_<LeveragedReturns>(m, "LeveragedReturns")
      .def_readonly("lambda_", &LeveragedReturns::lambda)
      .def_readonly("rx", &LeveragedReturns::rx);
  m.def("leveraged_returns", &leveraged_returns, py::arg("params"),
        py::arg("r_gross"));

  m.def("solve_steady", [](const ModelParams& p) { return solve_steady(p); },
        py::arg("params"), "Solve the balanced growth path for params.variant.");
  m.def("solve_eps_zero", [](const ModelParams& p) { return solve_eps_zero(p); });
  m.def("solve_general", [](const ModelParams& p) { return solve_general(p); });
  m.def("solve_landless", [](const ModelParams& p) { return solve_landless(p); });
  m.def("solve_o3", [](const ModelParams& p) { return solve_o3(p); });

  py::class_<SteadyDiagnostics>(m, "SteadyDiagnostics")
      .def_readonly("credit_gdp", &SteadyDiagnostics::credit_gdp)
      .def_readonly("money_share", &SteadyDiagnostics::money_share)
      .def_readonly("price_rent_model", &SteadyDiagnostics::price_rent_model)
      .def_readonly("price_rent_finite", &SteadyDiagnostics::price_rent_finite)
      .def_readonly("price_rent_full_participation",
                    &SteadyDiagnostics::price_rent_full_participation)
      .def_readonly("full_participation_exists",
                    &SteadyDiagnostics::full_participation_exists)
      .def_readonly("ordering_ok", &SteadyDiagnostics::ordering_ok)
      .def_readonly("lambda1", &SteadyDiagnostics::lambda1);
  m.def("diagnostics", &diagnostics, py::arg("solution"), py::arg("params"));

  py::class_<EconomyState>(m, "EconomyState")
      .def(py::init([](int t, double phi, double r_gross) {
             return EconomyState{t, phi, r_gross};
           }),
           py::arg("t") = 0, py::arg("phi") = 0.0, py::arg("r_gross") = 0.0)
      .def_readonly("t", &EconomyState::t)
      .def_readonly("phi", &EconomyState::phi)
      .def_readonly("r_gross", &EconomyState::r_gross);

  py::enum_<TrajectoryFlag>(m, "TrajectoryFlag")
      .value("NONE", TrajectoryFlag::None)
      .value("CONVERGED", TrajectoryFlag::Converged)
      .value("DIVERGED", TrajectoryFlag::Diverged)
      .value("BOUNDARY", TrajectoryFlag::Boundary);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("states", &Trajectory::states)
      .def_readonly("flag", &Trajectory::flag)
      .def_readonly("note", &Trajectory::note)
      .def_readonly("rate_ambiguity", &Trajectory::rate_ambiguity);

  m.def("growth_factor", &growth_factor, py::arg("params"), py::arg("phi"),
        py::arg("r_gross"));
  m.def("money_bracket", &money_bracket, py::arg("params"), py::arg("phi"),
        py::arg("r_gross"));
  m.def("phi_step", &phi_step, py::arg("state"), py::arg("params"));
  m.def("simulate",
        [](const EconomyState& s0, int horizon, const ModelParams& p) {
          return simulate(s0, horizon, p);
        },
        py::arg("s0"), py::arg("horizon"), py::arg("params"));

  py::class_<LevelPath>(m, "LevelPath")
      .def_readonly("K", &LevelPath::K)
      .def_readonly("P", &LevelPath::P)
      .def_readonly("Q", &LevelPath::Q)
      .def_readonly("M", &LevelPath::M)
      .def_readonly("w", &LevelPath::w)
      .def_readonly("Y", &LevelPath::Y)
      .def_readonly("T", &LevelPath::T)
      .def_readonly("C_budget", &LevelPath::C_budget)
      .def_readonly("C_goods", &LevelPath::C_goods)
      .def_readonly("g", &LevelPath::g);
  m.def("reconstruct_levels", &reconstruct_levels, py::arg("trajectory"),
        py::arg("K0"), py::arg("M0"), py::arg("params"));

  py::class_<ShockResult>(m, "ShockResult")
      .def_readonly("before", &ShockResult::before)
      .def_readonly("after", &ShockResult::after)
      .def_readonly("baseline", &ShockResult::baseline)
      .def_readonly("shocked", &ShockResult::shocked)
      .def_readonly("shock_period", &ShockResult::shock_period)
      .def_readonly("null_shock", &ShockResult::null_shock)
      .def_readonly("price_boom", &ShockResult::price_boom)
      .def_readonly("output_boom", &ShockResult::output_boom)
      .def_readonly("growth_lower", &ShockResult::growth_lower)
      .def_readonly("k_crossover", &ShockResult::k_crossover)
      .def_readonly("y_crossover", &ShockResult::y_crossover)
      .def_readonly("long_run_growth_gap", &ShockResult::long_run_growth_gap);
  m.def("epsilon_shock",
        [](const ModelParams& p, double eps_new, int period, int horizon, double K0,
           double M0) { return epsilon_shock(p, eps_new, period, horizon, K0, M0); },
        py::arg("params"), py::arg("eps_new"), py::arg("period"), py::arg("horizon"),
        py::arg("K0") = 1.0, py::arg("M0") = 1.0);

  py::enum_<PropId>(m, "PropId")
      .value("P2i", PropId::P2i)
      .value("P2ii", PropId::P2ii)
      .value("P3", PropId::P3)
      .value("P4", PropId::P4)
      .value("P7", PropId::P7)
      .value("P8", PropId::P8)
      .value("PA1", PropId::PA1)
      .value("PA3i", PropId::PA3i)
      .value("PA3ii", PropId::PA3ii)
      .value("PA3iii", PropId::PA3iii)
      .value("L1", PropId::L1);

  py::enum_<Verdict>(m, "Verdict")
      .value("PASS", Verdict::Pass)
      .value("FAIL", Verdict::Fail)
      .value("OUT_OF_REGIME", Verdict::OutOfRegime);

  py::class_<PropositionVerdict>(m, "PropositionVerdict")
      .def_readonly("prop", &PropositionVerdict::prop)
      .def_readonly("point", &PropositionVerdict::point)
      .def_readonly("claimed_sign", &PropositionVerdict::claimed_sign)
      .def_readonly("estimate", &PropositionVerdict::estimate)
      .def_readonly("verdict", &PropositionVerdict::verdict)
      .def_readonly("reason", &PropositionVerdict::reason)
      .def_readonly("witness", &PropositionVerdict::witness);
  m.def("verify_proposition",
        [](const ModelParams& p, PropId id) { return verify_proposition(p, id); },
        py::arg("params"), py::arg("prop"));

  py::class_<Interval>(m, "Interval")
      .def(py::init([](double lo, double hi) { return Interval{lo, hi}; }),
           py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &Interval::lo)
      .def_readwrite("hi", &Interval::hi);

  py::class_<ParamBox>(m, "ParamBox")
      .def(py::init<>())
      .def_static("point", &ParamBox::point, py::arg("params"))
      .def_readwrite("a", &ParamBox::a)
      .def_readwrite("alpha", &ParamBox::alpha)
      .def_readwrite("eps", &ParamBox::eps)
      .def_readwrite("eta", &ParamBox::eta)
      .def_readwrite("delta", &ParamBox::delta)
      .def_readwrite("theta", &ParamBox::theta)
      .def_readwrite("theta_x", &ParamBox::theta_x)
      .def_readwrite("mu", &ParamBox::mu)
      .def_readwrite("variant", &ParamBox::variant);

  py::class_<SampleResult>(m, "SampleResult")
      .def_readonly("points", &SampleResult::points)
      .def_readonly("draws", &SampleResult::draws)
      .def_readonly("rejection_rate", &SampleResult::rejection_rate);
  m.def("sample_parameters",
        [](const ParamBox& box, int n, std::uint64_t seed, std::uint64_t budget) {
          return sample_parameters(box, n, seed, budget);
        },
        py::arg("box"), py::arg("n"), py::arg("seed") = 0,
        py::arg("budget") = 1000000);

  py::class_<VerdictSummary::Counts>(m, "VerdictCounts")
      .def_readonly("passes", &VerdictSummary::Counts::pass)
      .def_readonly("fails", &VerdictSummary::Counts::fail)
      .def_readonly("out_of_regime", &VerdictSummary::Counts::out_of_regime);

  py::class_<VerdictSummary>(m, "VerdictSummary")
      .def_readonly("counts", &VerdictSummary::counts)
      .def_readonly("failures", &VerdictSummary::failures)
      .def_readonly("n", &VerdictSummary::n)
      .def_readonly("seed", &VerdictSummary::seed)
      .def_readonly("rejection_rate", &VerdictSummary::rejection_rate);
  m.def("batch_verify",
        [](const ParamBox& box, int n, std::uint64_t seed,
           const std::vector<PropId>& props) {
          return batch_verify(box, n, seed, props);
        },
        py::arg("box"), py::arg("n"), py::arg("seed"), py::arg("props"));

  py::enum_<LaborMobility>(m, "LaborMobility")
      .value("MOBILE", LaborMobility::Mobile)
      .value("IMMOBILE", LaborMobility::Immobile);

  py::class_<LaborParams>(m, "LaborParams")
      .def(py::init([](double rho, const ModelParams& base, LaborMobility mobility,
                       double nx_fixed) {
             return LaborParams{rho, base, mobility, nx_fixed};
           }),
           py::arg("rho"), py::arg("base"),
           py::arg("mobility") = LaborMobility::Mobile, py::arg("nx_fixed") = 0.0)
      .def_readwrite("rho", &LaborParams::rho)
      .def_readwrite("base", &LaborParams::base)
      .def_readwrite("mobility", &LaborParams::mobility)
      .def_readwrite("nx_fixed", &LaborParams::nx_fixed);

  py::class_<LaborShare>(m, "LaborShare")
      .def_readonly("nx", &LaborShare::nx)
      .def_readonly("eps_zero", &LaborShare::eps_zero);
  m.def("solve_labor_share",
        [](const LaborParams& lp) { return solve_labor_share(lp); },
        py::arg("labor_params"));
  m.def("solve_labor_share",
        [](double alpha, double A, double rho, double eps_a) {
          return solve_labor_share(alpha, A, rho, eps_a);
        },
        py::arg("alpha"), py::arg("A"), py::arg("rho"), py::arg("eps_a"));
  m.def("entrepreneur_income_coefficient", &entrepreneur_income_coefficient,
        py::arg("labor_params"));
  m.def("entrepreneur_income", &entrepreneur_income, py::arg("labor_params"),
        py::arg("K"));
}
