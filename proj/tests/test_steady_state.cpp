#include <cmath>

#include "doctest.h"
#include "growthlab/sampling.hpp"
#include "growthlab/steady_state.hpp"
#include "test_support.hpp"

using namespace growthlab;
using test::reference_point;

namespace {

// frozen reference-point values (exact rationals of the closed forms)
constexpr double kPhiRef = 0.11121794871794872;   // 347/3120
constexpr double kRRef = 2.6931818181818182;      // 296.25/110
constexpr double kGRef = 2.9625;
constexpr double kRLandless = 3.4818181818181818; // 383/110
constexpr double kGLandless = 3.83;
constexpr double kRO3 = 2.6966292134831461;       // 240/89
constexpr double kGO3 = 2.9662921348314607;       // 264/89
constexpr double kPhiO3 = 0.10379213483146067;    // 739/7120

// frozen outputs of the general solvers at eps = 0.01 (cross-checked below
// by hand-rolled bisection on the balanced-growth condition)
constexpr double kPhiMainEps = 0.17601145119542175;
constexpr double kRMainEps = 2.2873908983380585;
constexpr double kGMainEps = 2.5161299881718643;
constexpr double kPhiO3Eps = 0.15707008265730132;
constexpr double kGO3Eps = 2.4927103763795438;

// independent oracle: bisection on the balanced-growth residual
//   h(phi) = growth(phi, r(phi)) - (1+r(phi))(1+mu)
// with r(phi) from the no-arbitrage relation; reimplemented from the
// primitive formulas, no quadratic involved.
double main_ss_phi_by_bisection(const ModelParams& p) {
  const DerivedConstants d = derive_constants(p);
  const double c = d.land_term;
  auto r_of_phi = [&](double phi) {
    return d.Rc / (1.0 - p.theta_x) *
           ((1.0 - p.theta) / ((1.0 + p.mu) * (1.0 + c / phi)) -
            (p.theta_x - p.theta));
  };
  auto resid = [&](double phi) {
    const double r = r_of_phi(phi);
    const double lev = 1.0 / (1.0 - p.theta * d.Rc / r);
    const double rx = r * (1.0 + p.mu) * (1.0 + c / phi);
    const double g = d.A * lev *
                     (p.eta * (1.0 - p.alpha) - (1.0 - p.theta_x * rx / r) * phi);
    return g - r * (1.0 + p.mu);
  };
  double lo = 1e-6, hi = 0.9;
  while (resid(lo) * resid(hi) > 0.0 && lo > 1e-12) lo *= 0.5;
  REQUIRE(resid(lo) * resid(hi) <= 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (resid(lo) * resid(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double o3_ss_phi_by_bisection(const ModelParams& p) {
  const DerivedConstants d = derive_constants(p);
  const double c = d.land_term;
  auto resid = [&](double phi) {
    const double g = d.A / (1.0 - p.theta) *
                     (p.eta * (1.0 - p.alpha) - (1.0 - p.theta_x) * phi);
    const double r = g / (1.0 + p.mu);
    const double rx =
        (d.Rc * (1.0 - p.theta_x) + r * (p.theta_x - p.theta)) / (1.0 - p.theta);
    return g * (1.0 + c / phi) - rx;
  };
  double lo = 1e-6, hi = 0.4;
  while (resid(lo) * resid(hi) > 0.0 && lo > 1e-12) lo *= 0.5;
  REQUIRE(resid(lo) * resid(hi) <= 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (resid(lo) * resid(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// both sides of the no-arbitrage condition, evaluated from scratch
void check_no_arbitrage(const SteadyStateSolution& s, const ModelParams& p) {
  const DerivedConstants d = derive_constants(p);
  if (p.variant == Variant::O3) {
    const double cap = (d.Rc - s.r_gross * p.theta) / (1.0 - p.theta);
    const double land =
        (s.rx_star - s.r_gross * p.theta_x) / (1.0 - p.theta_x);
    CHECK(std::fabs(cap - land) < 1e-10 * std::fabs(cap));
    return;
  }
  const double cap =
      d.Rc * (1.0 - p.theta) / (1.0 - p.theta * d.Rc / s.r_gross);
  const double land = s.rx_star * (1.0 - p.theta_x) /
                      (1.0 - p.theta_x * s.rx_star / s.r_gross);
  CHECK(std::fabs(cap - land) < 1e-10 * std::fabs(cap));
}

}  // namespace

TEST_CASE("closed forms with unproductive land at the reference point") {
  const SteadyStateSolution s = solve_eps_zero(reference_point());
  CHECK(s.phi_star == doctest::Approx(kPhiRef).epsilon(1e-14));
  CHECK(s.r_gross == doctest::Approx(kRRef).epsilon(1e-14));
  CHECK(s.g_gross == doctest::Approx(kGRef).epsilon(1e-14));
  CHECK(s.rx_star == s.g_gross);  // exactly, when land is unproductive
  CHECK(s.lambda_star == doctest::Approx(3.0384615384615385).epsilon(1e-14));
  check_no_arbitrage(s, reference_point());
}

TEST_CASE("symmetric collateral removes the wedge") {
  ModelParams p = reference_point();
  p.theta_x = p.theta;
  const SteadyStateSolution s = solve_eps_zero(p);
  CHECK(s.g_gross == doctest::Approx(3.0).epsilon(1e-14));          // Rc
  CHECK(s.r_gross == doctest::Approx(3.0 / 1.1).epsilon(1e-14));    // Rc/(1+mu)
}

TEST_CASE("mu = 0 equalizes the rate and growth exactly") {
  ModelParams p = reference_point();
  p.mu = 0.0;
  const SteadyStateSolution s = solve_eps_zero(p);
  CHECK(s.r_gross == s.g_gross);
}

TEST_CASE("solve_eps_zero gates on the assumptions") {
  ModelParams p = reference_point();
  p.theta_x = 0.8;
  p.mu = 0.3;
  CHECK_THROWS_AS(solve_eps_zero(p), AssumptionError);
}

TEST_CASE("general solver agrees with the closed forms at eps = 0") {
  const ModelParams p = reference_point();
  const SteadyStateSolution a = solve_eps_zero(p);
  const SteadyStateSolution b = solve_general(p);
  CHECK(std::fabs(b.phi_star - a.phi_star) <= 1e-12 * a.phi_star);
  CHECK(std::fabs(b.r_gross - a.r_gross) <= 1e-12 * a.r_gross);
  CHECK(std::fabs(b.g_gross - a.g_gross) <= 1e-12 * a.g_gross);
}

TEST_CASE("continuity of the general solver as eps vanishes") {
  ModelParams p = reference_point();
  const SteadyStateSolution base = solve_eps_zero(p);

  p.eps = 1e-8;
  const SteadyStateSolution tiny = solve_general(p);
  CHECK(test::rel_gap(tiny.phi_star, base.phi_star) < 1e-6);
  CHECK(test::rel_gap(tiny.g_gross, base.g_gross) < 1e-6);
  CHECK(test::rel_gap(tiny.r_gross, base.r_gross) < 1e-6);

  // monotone shrinking gap through 1e-4, 1e-6, 1e-8
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    p.eps = eps;
    const SteadyStateSolution s = solve_general(p);
    const double gap = std::fabs(s.phi_star - base.phi_star) +
                       std::fabs(s.g_gross - base.g_gross);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("productive land raises speculation and lowers growth") {
  ModelParams p = reference_point();
  p.eps = 0.01;
  const SteadyStateSolution s = solve_general(p);
  CHECK(s.phi_star > kPhiRef);
  CHECK(s.g_gross < kGRef);
  CHECK(s.phi_star == doctest::Approx(kPhiMainEps).epsilon(1e-12));
  CHECK(s.r_gross == doctest::Approx(kRMainEps).epsilon(1e-12));
  CHECK(s.g_gross == doctest::Approx(kGMainEps).epsilon(1e-12));

  // independent bisection oracle on the balanced-growth condition
  const double phi_oracle = main_ss_phi_by_bisection(p);
  CHECK(s.phi_star == doctest::Approx(phi_oracle).epsilon(1e-10));

  // the speculation ratio is a fixed point of its own law of motion
  const DerivedConstants d = derive_constants(p);
  const double rx = leveraged_returns(p, s.r_gross).rx;
  CHECK(std::fabs(s.phi_star * rx / s.g_gross - d.land_term - s.phi_star) <
        1e-12 * s.phi_star);
  check_no_arbitrage(s, p);
}

TEST_CASE("landless economy") {
  const ModelParams p = reference_point(Variant::Landless);
  const SteadyStateSolution s = solve_landless(p);
  CHECK(s.r_gross == doctest::Approx(kRLandless).epsilon(1e-14));
  CHECK(s.g_gross == doctest::Approx(kGLandless).epsilon(1e-14));
  CHECK(s.phi_star == 0.0);

  ModelParams q = p;
  q.theta = 0.0;
  CHECK(solve_landless(q).r_gross == doctest::Approx(3.5 / 1.1).epsilon(1e-14));

  q = p;
  q.mu = 0.0;
  const SteadyStateSolution s0 = solve_landless(q);
  CHECK(s0.r_gross == s0.g_gross);
}

TEST_CASE("o3 closed forms at eps = 0") {
  const ModelParams p = reference_point(Variant::O3);
  const SteadyStateSolution s = solve_o3(p);
  CHECK(s.r_gross == doctest::Approx(kRO3).epsilon(1e-14));
  CHECK(s.g_gross == doctest::Approx(kGO3).epsilon(1e-14));
  CHECK(s.phi_star == doctest::Approx(kPhiO3).epsilon(1e-14));
  CHECK(s.rx_star == doctest::Approx(kGO3).epsilon(1e-14));
  CHECK(s.lev_capital == doctest::Approx(1.0 / 0.9).epsilon(1e-15));
  CHECK(s.downpayment_land == doctest::Approx(0.8).epsilon(1e-15));
  check_no_arbitrage(s, p);

  // symmetric collateral reproduces the main model's rate
  ModelParams q = p;
  q.theta_x = q.theta;
  CHECK(solve_o3(q).r_gross == doctest::Approx(3.0 / 1.1).epsilon(1e-13));
}

TEST_CASE("o3 with productive land") {
  ModelParams p = reference_point(Variant::O3);
  p.eps = 0.01;
  const SteadyStateSolution s = solve_o3(p);
  CHECK(s.phi_star == doctest::Approx(kPhiO3Eps).epsilon(1e-12));
  CHECK(s.g_gross == doctest::Approx(kGO3Eps).epsilon(1e-12));
  CHECK(s.phi_star == doctest::Approx(o3_ss_phi_by_bisection(p)).epsilon(1e-10));
  CHECK(s.rx_star > s.g_gross);  // strictly, once land pays rent
  check_no_arbitrage(s, p);
}

TEST_CASE("leveraged returns") {
  ModelParams p = reference_point();
  SUBCASE("no collateral, no credit channel") {
    p.theta = 0.0;
    p.theta_x = 0.0;
    const LeveragedReturns lr = leveraged_returns(p, 1.5);
    const double Rc = derive_constants(p).Rc;
    CHECK(lr.lambda == Rc);  // both returns collapse to the raw capital return
    CHECK(lr.rx == Rc);
  }
  SUBCASE("main variant at the reference rate") {
    const LeveragedReturns lr = leveraged_returns(p, kRRef);
    CHECK(lr.rx == doctest::Approx(kGRef).epsilon(1e-14));
  }
  SUBCASE("o3 variant at its reference rate") {
    p.variant = Variant::O3;
    const LeveragedReturns lr = leveraged_returns(p, kRO3);
    CHECK(lr.rx == doctest::Approx(kGO3).epsilon(1e-14));
  }
  SUBCASE("undefined leverage") {
    CHECK_THROWS_AS(leveraged_returns(p, 0.2), DomainError);  // below theta*Rc
  }
}

TEST_CASE("identities and inequalities over a sampled region") {
  const SampleResult sample =
      sample_parameters(test::main_box(0.0, 0.15, 0.0, 0.3, 1e-3), 100, 11);
  for (const ModelParams& p : sample.points) {
    const SteadyStateSolution s = solve_general(p);
    const DerivedConstants d = derive_constants(p);

    // Fisher-type link between money returns and growth
    CHECK(std::fabs(s.r_gross * (1.0 + p.mu) - s.g_gross) <= 1e-12 * s.g_gross);
    check_no_arbitrage(s, p);

    // both constraints bind: positive multiplier by either route
    CHECK(d.Rc > s.r_gross);
    CHECK(s.rx_star > s.r_gross);
    const double m1 = (d.Rc - s.r_gross) / (s.r_gross - p.theta * d.Rc);
    const double m2 = (s.rx_star - s.r_gross) /
                      (s.r_gross - p.theta_x * s.rx_star);
    CHECK(m1 > 0.0);
    CHECK(std::fabs(m1 - m2) <= 1e-9 * m1);

    // positive a1 margin implies positive leverage denominator
    CHECK(1.0 - p.theta * d.Rc / s.r_gross > 0.0);

    // money keeps positive value
    const SteadyDiagnostics dg = diagnostics(s, p);
    CHECK(dg.money_share > 0.0);
  }
}

TEST_CASE("return ordering when land collateral dominates") {
  const SampleResult sample =
      sample_parameters(test::main_box(0.0, 0.12, 0.15, 0.3, 1e-3), 100, 13);
  for (const ModelParams& p : sample.points) {
    const SteadyStateSolution s = solve_general(p);
    const DerivedConstants d = derive_constants(p);
    CHECK(d.Rc > s.rx_star);
    CHECK(s.g_gross > s.r_gross);
    if (p.eps == 0.0)
      CHECK(s.rx_star == s.g_gross);
    else
      CHECK(s.rx_star >= s.g_gross);
    CHECK(diagnostics(s, p).ordering_ok);
  }
}

TEST_CASE("diagnostics at the reference point") {
  const ModelParams p = reference_point();
  const SteadyStateSolution s = solve_eps_zero(p);
  const SteadyDiagnostics dg = diagnostics(s, p);
  CHECK(dg.credit_gdp == doctest::Approx(0.057467948717948718).epsilon(1e-13));
  CHECK(dg.money_share == doctest::Approx(0.2925320512820513).epsilon(1e-13));
  // cross-check the bracket the long way: (1-alpha) - (1+g*)/A - phi*
  CHECK(dg.money_share ==
        doctest::Approx(0.7 - 2.9625 / 10.0 - kPhiRef).epsilon(1e-13));
  CHECK(dg.ordering_ok);
  CHECK_FALSE(dg.price_rent_finite);
  CHECK(std::isinf(dg.price_rent_model));
  // growth outruns the safe rate, so the discounted-rent price has no value
  CHECK_FALSE(dg.full_participation_exists);
  CHECK(dg.lambda1 > 0.0);
}

TEST_CASE("price-rent diagnostics with productive land and tight money") {
  ModelParams p = reference_point();
  p.eps = 0.01;
  const SteadyStateSolution s = solve_general(p);
  const SteadyDiagnostics dg = diagnostics(s, p);
  CHECK(dg.price_rent_finite);
  const DerivedConstants d = derive_constants(p);
  CHECK(dg.price_rent_model == doctest::Approx(s.phi_star / d.land_term).epsilon(1e-15));

  // monetary contraction puts the safe rate above growth
  ModelParams q = reference_point();
  q.mu = -0.05;
  const SteadyStateSolution s2 = solve_eps_zero(q);
  CHECK(s2.r_gross > s2.g_gross);
  const SteadyDiagnostics dg2 = diagnostics(s2, q);
  CHECK(dg2.full_participation_exists);
  CHECK(dg2.price_rent_full_participation ==
        doctest::Approx(s2.g_gross / (s2.r_gross - s2.g_gross)).epsilon(1e-12));
}
