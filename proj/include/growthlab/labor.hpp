#pragma once

#include "growthlab/model.hpp"

namespace growthlab {

// Extension where real estate produces with labor and land. Feeds back into
// the core model solely as a replacement for the entrepreneur income
// coefficient eta*(1-alpha)*A; nothing else changes.
enum class LaborMobility { Mobile, Immobile };

const char* to_string(LaborMobility m);

struct LaborParams {
  double rho = 0.5;  // labor share in real estate, in (0,1)
  ModelParams base;
  LaborMobility mobility = LaborMobility::Mobile;
  double nx_fixed = 0.0;  // real-estate labor when it cannot move, in (0,1)
};

struct LaborShare {
  double nx = 0.0;        // labor employed in real estate
  bool eps_zero = false;  // base.eps == 0: no real-estate labor demand, nx = 0
};

// Wage-equalizing allocation: unique root of
// (1-alpha)*A*(1-N)^(-alpha) = rho*eps_a*N^(rho-1) on (0,1), by bisection.
double solve_labor_share(double alpha, double A, double rho, double eps_a);
LaborShare solve_labor_share(const LaborParams& lp);

// Total income of entrepreneurs, linear in aggregate capital.
double entrepreneur_income_coefficient(const LaborParams& lp);
double entrepreneur_income(const LaborParams& lp, double K);

}  // namespace growthlab
