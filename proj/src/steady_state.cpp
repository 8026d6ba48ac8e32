#include "growthlab/steady_state.hpp"

#include <cmath>
#include <string>

#include "growthlab/numerics.hpp"

namespace growthlab {

namespace {

void require_assumptions(const ModelParams& p) {
  const AssumptionReport rep = check_assumptions(p);
  if (!rep.all_ok)
    throw AssumptionError("assumption " + rep.first_failure() +
                          " violated for variant " + to_string(p.variant));
}

// residual of qa*phi^2 + qb*phi + qc relative to the magnitude of its terms
void check_quadratic_residual(double qa, double qb, double qc, double phi,
                              double tol, const char* what) {
  const double resid = (qa * phi * phi + qb * phi) + qc;
  const double scale =
      std::fabs(qa) * phi * phi + std::fabs(qb) * std::fabs(phi) + std::fabs(qc);
  if (scale > 0.0 && std::fabs(resid) > tol * scale)
    throw NumericalError(std::string(what) + ": quadratic residual " +
                         std::to_string(resid) + " exceeds tolerance");
}

double fill_main(SteadyStateSolution& s, const ModelParams& p,
                 const DerivedConstants& d) {
  // leverage and down-payment factors at the solved rate
  s.lev_capital = 1.0 / (1.0 - p.theta * d.Rc / s.r_gross);
  s.downpayment_land = 1.0 - p.theta_x * s.rx_star / s.r_gross;
  s.lambda_star = d.Rc * (1.0 - p.theta) * s.lev_capital;
  return s.lambda_star;
}

}  // namespace

LeveragedReturns leveraged_returns(const ModelParams& p, double r_gross) {
  const DerivedConstants d = derive_constants(p);
  LeveragedReturns out{};
  if (p.variant == Variant::O3) {
    if (!(p.theta < 1.0) || !(p.theta_x < 1.0))
      throw DomainError("leveraged returns undefined for theta or theta_x at 1");
    out.lambda = (d.Rc - r_gross * p.theta) / (1.0 - p.theta);
    out.rx = (d.Rc * (1.0 - p.theta_x) + r_gross * (p.theta_x - p.theta)) /
             (1.0 - p.theta);
    return out;
  }
  if (!(r_gross > p.theta * d.Rc))
    throw DomainError("leverage undefined: 1+r must exceed theta*Rc");
  out.lambda = d.Rc * (1.0 - p.theta) / (1.0 - p.theta * d.Rc / r_gross);
  const double denom = 1.0 - p.theta_x + p.theta_x * out.lambda / r_gross;
  if (!(denom > 0.0))
    throw DomainError("land leverage undefined at this rate");
  out.rx = out.lambda / denom;
  return out;
}

SteadyStateSolution solve_eps_zero(const ModelParams& p, const Tolerances&) {
  if (p.variant != Variant::Main)
    throw DomainError("solve_eps_zero applies to the main variant");
  if (p.eps != 0.0) throw DomainError("solve_eps_zero requires eps = 0");
  require_assumptions(p);
  const DerivedConstants d = derive_constants(p);

  SteadyStateSolution s;
  s.variant = p.variant;
  const double one_m_thx = 1.0 - p.theta_x;
  s.r_gross = d.Rc / one_m_thx *
              ((1.0 - p.theta) / (1.0 + p.mu) - (p.theta_x - p.theta));
  s.g_gross = d.Rc / one_m_thx *
              (1.0 - p.theta - (p.theta_x - p.theta) * (1.0 + p.mu));
  s.phi_star = p.eta * (1.0 - p.alpha) / (1.0 - p.theta_x * (1.0 + p.mu)) -
               d.Rc * (1.0 - p.theta) / (d.A * one_m_thx);
  s.rx_star = s.g_gross;  // land return equals growth when land is unproductive
  fill_main(s, p, d);
  return s;
}

SteadyStateSolution solve_general(const ModelParams& p, const Tolerances& tol) {
  if (p.variant != Variant::Main)
    throw DomainError("solve_general applies to the main variant");
  require_assumptions(p);
  const DerivedConstants d = derive_constants(p);

  const double gm = 1.0 + p.mu;
  const double c = d.land_term;
  const double k1 = 1.0 - p.theta_x * gm;                          // a1 margin
  const double k2 = d.Rc * (1.0 - p.theta) / (1.0 - p.theta_x);
  const double qa = d.A * k1;
  const double qb = -p.eta * (1.0 - p.alpha) * d.A - d.A * p.theta_x * gm * c +
                    d.A * c * k1 + k2 * k1;
  const double qc =
      -c * (p.eta * (1.0 - p.alpha) * d.A + d.A * p.theta_x * gm * c +
            k2 * p.theta_x * gm);

  const auto roots = num::quadratic_roots(qa, qb, qc);
  if (!roots)
    throw NumericalError("steady-state quadratic has no real root");
  const double phi = std::max(roots->q_over_a, roots->c_over_q);
  const double other = std::min(roots->q_over_a, roots->c_over_q);
  if (!(phi > 0.0))
    throw NumericalError("steady-state quadratic has no positive root "
                         "(assumption violation)");
  if (c > 0.0 && !(other < 0.0))
    throw NumericalError("companion root not negative at eps > 0");
  check_quadratic_residual(qa, qb, qc, phi, tol.solver_residual, "solve_general");

  SteadyStateSolution s;
  s.variant = p.variant;
  s.phi_star = phi;
  s.r_gross = d.Rc / (1.0 - p.theta_x) *
              ((1.0 - p.theta) / (gm * (1.0 + c / phi)) - (p.theta_x - p.theta));
  s.g_gross = s.r_gross * gm;
  s.rx_star = s.g_gross * (1.0 + c / phi);
  fill_main(s, p, d);
  return s;
}

SteadyStateSolution solve_landless(const ModelParams& p, const Tolerances& tol) {
  if (p.variant != Variant::Landless)
    throw DomainError("solve_landless applies to the landless variant");
  require_assumptions(p);
  const DerivedConstants d = derive_constants(p);

  SteadyStateSolution s;
  s.variant = p.variant;
  s.phi_star = 0.0;
  s.r_gross = p.eta * (1.0 - p.alpha) * d.A / (1.0 + p.mu) + p.theta * d.Rc;
  s.g_gross = s.r_gross * (1.0 + p.mu);
  if (!(s.r_gross > p.theta * d.Rc))
    throw DomainError("landless rate does not exceed theta*Rc: leverage infinite");

  // consistency with the capital-investment route
  const double g_direct =
      p.eta * (1.0 - p.alpha) * d.A / (1.0 - p.theta * d.Rc / s.r_gross);
  if (std::fabs(g_direct - s.g_gross) > tol.identity * s.g_gross)
    throw NumericalError("landless growth routes disagree");

  s.rx_star = leveraged_returns(p, s.r_gross).rx;  // shadow value, no land held
  fill_main(s, p, d);
  return s;
}

namespace detail {

PhiG solve_o3_phi_g(const ModelParams& p, const DerivedConstants& d,
                    double residual_tol) {
  const double gm = 1.0 + p.mu;
  const double c = d.land_term;
  const double one_m_th = 1.0 - p.theta;
  const double one_m_thx = 1.0 - p.theta_x;
  const double income = p.eta * (1.0 - p.alpha);

  const double qa = d.A * one_m_thx * d.H / one_m_th;
  const double qb = -d.A * income * d.H / one_m_th + d.Rc * one_m_thx * gm +
                    d.A * one_m_thx * gm * c;
  const double qc = -d.A * income * gm * c;

  const auto roots = num::quadratic_roots(qa, qb, qc);
  if (!roots)
    throw NumericalError("o3 steady-state quadratic has no real root");
  const double phi = std::max(roots->q_over_a, roots->c_over_q);
  const double other = std::min(roots->q_over_a, roots->c_over_q);
  if (!(phi > 0.0))
    throw NumericalError("o3 steady-state quadratic has no positive root "
                         "(assumption violation)");
  if (c > 0.0 && !(other < 0.0))
    throw NumericalError("o3 companion root not negative at eps > 0");
  check_quadratic_residual(qa, qb, qc, phi, residual_tol, "solve_o3");
  PhiG out;
  out.phi = phi;
  out.g = d.A / one_m_th * (income - one_m_thx * phi);
  return out;
}

}  // namespace detail

SteadyStateSolution solve_o3(const ModelParams& p, const Tolerances& tol) {
  if (p.variant != Variant::O3)
    throw DomainError("solve_o3 applies to the o3 variant");
  require_assumptions(p);
  const DerivedConstants d = derive_constants(p);

  const auto pg = detail::solve_o3_phi_g(p, d, tol.solver_residual);
  SteadyStateSolution s;
  s.variant = p.variant;
  s.phi_star = pg.phi;
  s.g_gross = pg.g;
  s.r_gross = pg.g / (1.0 + p.mu);
  s.rx_star = leveraged_returns(p, s.r_gross).rx;
  // own-funds factors of the current-value constraint
  s.lev_capital = 1.0 / (1.0 - p.theta);
  s.downpayment_land = 1.0 - p.theta_x;
  s.lambda_star = (d.Rc - s.r_gross * p.theta) / (1.0 - p.theta);

  // money must keep positive value at the solution
  const double bracket = (1.0 - p.alpha) - s.g_gross / d.A - s.phi_star;
  if (!(bracket > 0.0))
    throw AssumptionError("o3 steady state has non-positive money value");
  return s;
}

SteadyStateSolution solve_steady(const ModelParams& p, const Tolerances& tol) {
  switch (p.variant) {
    case Variant::Main: return solve_general(p, tol);
    case Variant::O3: return solve_o3(p, tol);
    case Variant::Landless: return solve_landless(p, tol);
  }
  throw DomainError("unknown variant");
}

SteadyDiagnostics diagnostics(const SteadyStateSolution& sol, const ModelParams& p) {
  const DerivedConstants d = derive_constants(p);
  SteadyDiagnostics out;
  const double gm = 1.0 + p.mu;

  if (p.variant == Variant::O3) {
    // binding constraint: B = theta*K' + theta_x*P, output includes land rents
    out.credit_gdp = (p.theta * sol.g_gross + p.theta_x * sol.phi_star * d.A) /
                     ((1.0 + d.land_term) * d.A);
  } else {
    out.credit_gdp = p.theta * d.Rc * gm / d.A + p.theta_x * sol.phi_star * gm;
  }
  out.money_share = (1.0 - p.alpha) - sol.g_gross / d.A - sol.phi_star;

  out.price_rent_finite = d.land_term > 0.0;
  out.price_rent_model = out.price_rent_finite
                             ? sol.phi_star / d.land_term
                             : std::numeric_limits<double>::infinity();

  // discounting at the safe rate only works when 1+r* > 1+g*
  out.full_participation_exists = sol.r_gross > sol.g_gross;
  out.price_rent_full_participation =
      out.full_participation_exists
          ? sol.g_gross / (sol.r_gross - sol.g_gross)
          : std::numeric_limits<double>::quiet_NaN();

  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * sol.g_gross;
  out.ordering_ok = d.Rc > sol.rx_star && sol.rx_star >= sol.g_gross - slack &&
                    sol.g_gross > sol.r_gross;
  out.lambda1 = (d.Rc - sol.r_gross) / (sol.r_gross - p.theta * d.Rc);
  return out;
}

}  // namespace growthlab
