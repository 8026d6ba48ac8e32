#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growthlab/model.hpp"
#include "growthlab/steady_state.hpp"

namespace growthlab {

struct EconomyState {
  int t = 0;
  double phi = 0.0;      // land value over A*K
  double r_gross = 0.0;  // 1 + r_t
};

// Growth factor K_{t+1}/K_t implied by the capital-investment function at
// (phi, 1+r). The O3 variant does not depend on the rate.
double growth_factor(const ModelParams& p, double phi, double r_gross);

// Real money balances over A*K implied by savings = capital + land + money.
double money_bracket(const ModelParams& p, double phi, double r_gross);

// One step of the land-speculation ratio:
// phi' = phi * Rx / (1+g) - eps*a^alpha. Throws NumericalError when the
// implied growth factor is not positive (state outside the economic domain).
double phi_step(const EconomyState& s, const ModelParams& p);

struct RateStepResult {
  double r_gross_next = 0.0;
  int sign_changes = 1;  // >1: the admissible bracket held several candidates
};

// Main variant: the next-period rate is defined only implicitly by the money
// market; solve for it on the admissible bracket (theta*Rc, Rc) by bisection
// with superlinear refinement. A 64-point scan counts candidate roots; more
// than one is reported, not silently resolved. Throws NumericalError when no
// root exists in the bracket (dynamic infeasibility of the state).
RateStepResult rate_step(const EconomyState& s, double phi_next, const ModelParams& p,
                         const Tolerances& tol = {});

// O3 variant: the rate at t implied by (phi_t, phi_{t+1}).
double o3_rate(const ModelParams& p, double phi_t, double phi_next);

enum class TrajectoryFlag { None, Converged, Diverged, Boundary };

const char* to_string(TrajectoryFlag f);

struct Trajectory {
  std::vector<EconomyState> states;
  TrajectoryFlag flag = TrajectoryFlag::None;
  std::string note;             // exit reason for Diverged / Boundary
  bool rate_ambiguity = false;  // some step saw multiple roots in the bracket
};

// Iterates the reduced system for `horizon` periods (states t = 0..horizon-1)
// or until the state exits the economic domain, which is recorded as a flag,
// never thrown. For the O3 variant the map is one-dimensional and implicit in
// phi_{t+1}; the rate of each state is the one implied by the map, and
// s0.r_gross is ignored. Converged means the final state is within the
// fixed-point tolerance of the variant's steady state.
Trajectory simulate(const EconomyState& s0, int horizon, const ModelParams& p,
                    const Tolerances& tol = {});

// Per-period levels along a trajectory. Consumption is computed twice, from
// cohort budgets and from goods-market clearing; both are recorded so callers
// can check that they agree.
struct LevelPath {
  std::vector<double> K;         // capital, K[0] = K0
  std::vector<double> P;         // land price, phi*A*K
  std::vector<double> Q;         // price of money
  std::vector<double> M;         // money stock, M0*(1+mu)^t
  std::vector<double> w;         // wage bill, (1-alpha)*A*K
  std::vector<double> Y;         // output including land rents
  std::vector<double> T;         // transfer to old savers, cohort aggregate
                                 // (split equally: divide by 1-eta per head)
  std::vector<double> C_budget;  // consumption from cohort budgets
  std::vector<double> C_goods;   // consumption from goods clearing
  std::vector<double> g;         // realized growth factor K_{t+1}/K_t
  size_t size() const { return K.size(); }
};

// Throws NumericalError if the money bracket turns non-positive along the
// path (Q would be negative, an assumption violation).
LevelPath reconstruct_levels(const Trajectory& traj, double K0, double M0,
                             const ModelParams& p);

// An unanticipated permanent rise of eps at date `shock_period`: the economy
// jumps to the new steady state's (phi*, 1+r*) at that date and stays there.
// Baseline and shocked paths share the capital history up to the shock date.
struct ShockResult {
  SteadyStateSolution before;
  SteadyStateSolution after;
  LevelPath baseline;
  LevelPath shocked;
  int shock_period = 0;
  bool null_shock = false;  // eps_new == eps: paths coincide, checks vacuous
  bool price_boom = false;     // P strictly higher on impact
  bool output_boom = false;    // Y strictly higher on impact
  bool growth_lower = false;   // growth factor strictly lower from the shock on
  std::optional<int> k_crossover;  // first t with shocked K below baseline K
  std::optional<int> y_crossover;  // first t with shocked Y below baseline Y
  double long_run_growth_gap = 0.0;  // |realized final growth - new 1+g*|
};

ShockResult epsilon_shock(const ModelParams& p, double eps_new, int shock_period,
                          int horizon, double K0 = 1.0, double M0 = 1.0,
                          const Tolerances& tol = {});

}  // namespace growthlab
