#pragma once

#include "growthlab/model.hpp"

namespace growthlab {

struct Tolerances {
  double solver_residual = 1e-10;  // relative residual accepted from solvers
  double identity = 1e-12;         // accounting / no-arbitrage identity checks
  double fixed_point = 1e-9;       // steady state as fixed point of the maps
  bool operator==(const Tolerances&) const = default;
};

// A balanced growth path. Leverage and down-payment factors are the ones of
// the variant's borrowing constraint: own-funds multiplier 1/(1-theta*Rc/(1+r))
// and land down-payment 1-theta_x*Rx/(1+r) for Main/Landless, 1/(1-theta) and
// 1-theta_x for O3.
struct SteadyStateSolution {
  Variant variant = Variant::Main;
  double phi_star = 0.0;          // land value over A*K
  double g_gross = 0.0;           // 1 + g*
  double r_gross = 0.0;           // 1 + r*
  double rx_star = 0.0;           // unleveraged land return
  double lambda_star = 0.0;       // leveraged return on capital
  double lev_capital = 0.0;       // own-funds multiplier on capital investment
  double downpayment_land = 0.0;  // own-funds cost per unit of land value
};

struct LeveragedReturns {
  double lambda;  // leveraged return on capital at the given rate
  double rx;      // land return that equalizes the two leveraged returns
};

// Main/Landless: lambda = Rc(1-theta)/(1 - theta*Rc/(1+r)), rx solves the
// no-arbitrage condition. O3: lambda = (Rc - (1+r)theta)/(1-theta) and
// rx = [Rc(1-theta_x) + (1+r)(theta_x-theta)]/(1-theta). Throws DomainError
// when leverage is undefined at the given rate.
LeveragedReturns leveraged_returns(const ModelParams& p, double r_gross);

// Closed forms for the Main variant with unproductive land (eps = 0).
SteadyStateSolution solve_eps_zero(const ModelParams& p, const Tolerances& tol = {});

// Main variant, any eps >= 0: phi* is the positive root of the steady-state
// quadratic, then 1+r* and 1+g* follow. For eps = 0 this agrees with
// solve_eps_zero to machine precision.
SteadyStateSolution solve_general(const ModelParams& p, const Tolerances& tol = {});

// Economy with no land: 1+r* = eta(1-alpha)A/(1+mu) + theta*Rc.
SteadyStateSolution solve_landless(const ModelParams& p, const Tolerances& tol = {});

// Alternative borrowing constraint (current-value collateral).
SteadyStateSolution solve_o3(const ModelParams& p, const Tolerances& tol = {});

// Dispatch on p.variant.
SteadyStateSolution solve_steady(const ModelParams& p, const Tolerances& tol = {});

struct SteadyDiagnostics {
  double credit_gdp = 0.0;
  double money_share = 0.0;             // real money balances over A*K
  double price_rent_model = 0.0;        // phi*/(eps*a^alpha)
  bool price_rent_finite = false;       // false when eps = 0
  double price_rent_full_participation = 0.0;  // (1+g)/((1+r)-(1+g))
  bool full_participation_exists = false;      // requires 1+r* > 1+g*
  bool ordering_ok = false;             // Rc > Rx* >= 1+g* > 1+r*
  double lambda1 = 0.0;                 // borrowing-constraint multiplier
};

// Degenerate cases are flagged, never thrown.
SteadyDiagnostics diagnostics(const SteadyStateSolution& sol, const ModelParams& p);

namespace detail {
// phi* and 1+g* for the O3 variant without the Q-positivity gate; used by
// check_assumptions, which needs the steady state to evaluate that very gate.
struct PhiG {
  double phi;
  double g;
};
PhiG solve_o3_phi_g(const ModelParams& p, const DerivedConstants& d,
                    double residual_tol = 1e-10);
}  // namespace detail

}  // namespace growthlab
