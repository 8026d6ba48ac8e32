#include "growthlab/labor.hpp"

#include <cmath>

#include "growthlab/numerics.hpp"

namespace growthlab {

const char* to_string(LaborMobility m) {
  return m == LaborMobility::Mobile ? "mobile" : "immobile";
}

double solve_labor_share(double alpha, double A, double rho, double eps_a) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(A > 0.0))
    throw DomainError("labor share needs alpha in (0,1) and A > 0");
  if (!(rho > 0.0 && rho < 1.0))
    throw DomainError("labor share in real estate must lie in (0,1)");
  if (!(eps_a > 0.0))
    throw DomainError("real estate demands no labor at eps = 0");

  // left side rises from (1-alpha)A to infinity, right side falls from
  // infinity to rho*eps_a: exactly one crossing on (0,1)
  auto f = [&](double n) {
    return (1.0 - alpha) * A * std::pow(1.0 - n, -alpha) -
           rho * eps_a * std::pow(n, rho - 1.0);
  };
  // the root slides toward 0 as rho*eps_a vanishes; widen the bracket until
  // the real-estate wage dominates at the lower end, then bisect in log space
  // so tiny allocations are still resolved to full relative precision
  double lo = 1e-14;
  while (f(lo) > 0.0 && lo > 1e-280) lo *= 1e-4;
  if (f(lo) > 0.0)
    throw NumericalError("labor share indistinguishable from zero");
  auto g = [&](double u) { return f(std::exp(u)); };
  const double u = num::brent_root(g, std::log(lo), std::log1p(-1e-14), 1e-14, 0.0, 400);
  const double root = std::exp(u);
  const double scale = (1.0 - alpha) * A * std::pow(1.0 - root, -alpha);
  if (std::fabs(f(root)) > 1e-12 * scale)
    throw NumericalError("labor-share bisection did not converge");
  return root;
}

LaborShare solve_labor_share(const LaborParams& lp) {
  validate(lp.base);
  if (lp.mobility == LaborMobility::Immobile) {
    if (!(lp.nx_fixed > 0.0 && lp.nx_fixed < 1.0))
      throw DomainError("immobile labor allocation must lie in (0,1)");
    return {lp.nx_fixed, false};
  }
  if (lp.base.eps == 0.0) return {0.0, true};
  const DerivedConstants d = derive_constants(lp.base);
  return {solve_labor_share(lp.base.alpha, d.A, lp.rho, lp.base.eps * lp.base.a),
          false};
}

double entrepreneur_income_coefficient(const LaborParams& lp) {
  const DerivedConstants d = derive_constants(lp.base);
  const double one_m_al = 1.0 - lp.base.alpha;
  const LaborShare share = solve_labor_share(lp);
  if (share.eps_zero) return lp.base.eta * one_m_al * d.A;  // baseline economy
  const double nx = share.nx;
  if (!(nx > 0.0 && nx < 1.0))
    throw DomainError("labor allocation must lie strictly inside (0,1)");
  const double nk = 1.0 - nx;
  if (lp.mobility == LaborMobility::Mobile)
    return lp.base.eta * one_m_al * d.A * std::pow(nk, -lp.base.alpha);
  // sector wage bills weighted by the labor each sector employs
  const double eps_a = lp.base.eps * lp.base.a;
  return lp.base.eta * (lp.rho * eps_a * std::pow(nx, lp.rho) +
                        one_m_al * d.A * std::pow(nk, 1.0 - lp.base.alpha));
}

double entrepreneur_income(const LaborParams& lp, double K) {
  if (!(K > 0.0)) throw DomainError("capital must be positive");
  return entrepreneur_income_coefficient(lp) * K;
}

}  // namespace growthlab
