#include "growthlab/dynamics.hpp"

#include <cmath>
#include <string>

#include "growthlab/numerics.hpp"

namespace growthlab {

const char* to_string(TrajectoryFlag f) {
  switch (f) {
    case TrajectoryFlag::None: return "none";
    case TrajectoryFlag::Converged: return "converged";
    case TrajectoryFlag::Diverged: return "diverged";
    case TrajectoryFlag::Boundary: return "boundary";
  }
  return "?";
}

double growth_factor(const ModelParams& p, double phi, double r_gross) {
  const DerivedConstants d = derive_constants(p);
  const double income = p.eta * (1.0 - p.alpha);
  if (p.variant == Variant::O3)
    return d.A / (1.0 - p.theta) * (income - (1.0 - p.theta_x) * phi);
  const LeveragedReturns lr = leveraged_returns(p, r_gross);
  const double downpayment = 1.0 - p.theta_x * lr.rx / r_gross;
  return d.A / (1.0 - p.theta * d.Rc / r_gross) * (income - downpayment * phi);
}

double money_bracket(const ModelParams& p, double phi, double r_gross) {
  const DerivedConstants d = derive_constants(p);
  return (1.0 - p.alpha) - growth_factor(p, phi, r_gross) / d.A - phi;
}

double phi_step(const EconomyState& s, const ModelParams& p) {
  const DerivedConstants d = derive_constants(p);
  const double g = growth_factor(p, s.phi, s.r_gross);
  if (!(g > 0.0))
    throw NumericalError("non-positive growth at phi = " + std::to_string(s.phi) +
                         ": state outside the economic domain");
  const double rx = leveraged_returns(p, s.r_gross).rx;
  return s.phi * rx / g - d.land_term;
}

RateStepResult rate_step(const EconomyState& s, double phi_next,
                         const ModelParams& p, const Tolerances& tol) {
  if (p.variant == Variant::O3) {
    RateStepResult out;
    out.r_gross_next = o3_rate(p, s.phi, phi_next);
    out.sign_changes = 1;
    return out;
  }
  const DerivedConstants d = derive_constants(p);
  const double g = growth_factor(p, s.phi, s.r_gross);
  const double mb_now = money_bracket(p, s.phi, s.r_gross);
  if (!(g > 0.0) || !(mb_now > 0.0))
    throw NumericalError("rate step undefined: current state outside domain");
  const double target = s.r_gross * (1.0 + p.mu) * mb_now;

  // money-market residual as a function of the candidate next-period rate
  auto f = [&](double r_next) {
    return target - money_bracket(p, phi_next, r_next) * g;
  };

  // admissible bracket: borrowing constraint binds and leverage stays finite
  const double lo_raw = p.theta * d.Rc;
  const double hi_raw = d.Rc;
  const double margin = 1e-9 * (hi_raw - lo_raw);
  const double lo = lo_raw + margin;
  const double hi = hi_raw - margin;

  const auto scan = num::scan_for_root(f, lo, hi, 64);
  if (scan.sign_changes == 0)
    throw NumericalError("no root for the next-period rate in (" +
                         std::to_string(lo_raw) + ", " + std::to_string(hi_raw) +
                         "): dynamic infeasibility");
  RateStepResult out;
  out.sign_changes = scan.sign_changes;
  out.r_gross_next =
      num::brent_root(f, scan.lo, scan.hi, 1e-15, tol.identity * std::fabs(target));
  return out;
}

double o3_rate(const ModelParams& p, double phi_t, double phi_next) {
  if (p.variant != Variant::O3)
    throw DomainError("o3_rate applies to the o3 variant");
  const double g = growth_factor(p, phi_t, 0.0);
  const double mb_t = money_bracket(p, phi_t, 0.0);
  const double mb_next = money_bracket(p, phi_next, 0.0);
  if (!(g > 0.0) || !(mb_t > 0.0))
    throw NumericalError("o3 rate undefined: state outside domain");
  return mb_next / mb_t * g / (1.0 + p.mu);
}

namespace {

// one step of the implicit O3 map: find phi_{t+1} with
// phi_{t+1} = psi(phi_t, omega(phi_t, phi_{t+1}))
double o3_implicit_step(const ModelParams& p, const DerivedConstants& d,
                        double phi_t, const Tolerances& tol) {
  auto f = [&](double x) {
    const double r = o3_rate(p, phi_t, x);
    const double rx = leveraged_returns(p, r).rx;
    const double g = growth_factor(p, phi_t, 0.0);
    return x - (phi_t * rx / g - d.land_term);
  };
  const double phi_max = p.eta * (1.0 - p.alpha) / (1.0 - p.theta_x);
  const double lo = -d.land_term - phi_max;
  const double hi = phi_max * (1.0 - 1e-12);
  const auto scan = num::scan_for_root(f, lo, hi, 64);
  if (scan.sign_changes == 0)
    throw NumericalError("o3 map has no solution for the next state");
  return num::brent_root(f, scan.lo, scan.hi, 1e-15,
                         tol.identity * std::max(1.0, std::fabs(phi_t)));
}

}  // namespace

namespace {

// The reduced maps are unstable around the balanced growth path, so rounding
// noise of order 1e-16 compounds and leaves the domain within ~15 periods
// even when starting exactly at the fixed point. A computed next state within
// 1e-12 of the steady state is therefore replaced by the steady state itself;
// genuine off-path starts sit far outside this snap radius.
constexpr double kSnapTol = 1e-12;

bool near_fixed_point(double phi, double r, const SteadyStateSolution& ss) {
  return std::fabs(phi - ss.phi_star) < kSnapTol * std::max(1.0, ss.phi_star) &&
         std::fabs(r - ss.r_gross) < kSnapTol * ss.r_gross;
}

}  // namespace

Trajectory simulate(const EconomyState& s0, int horizon, const ModelParams& p,
                    const Tolerances& tol) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  const DerivedConstants d = derive_constants(p);

  Trajectory traj;
  traj.states.reserve(static_cast<size_t>(horizon));

  // steady state of the variant, for the convergence flag
  const SteadyStateSolution ss = solve_steady(p, tol);

  if (p.variant == Variant::O3) {
    double phi = s0.phi;
    traj.note = "o3: rate implied by the one-dimensional map; initial rate ignored";
    for (int t = 0; t < horizon; ++t) {
      if (!(phi >= 0.0) || !(money_bracket(p, phi, 0.0) > 0.0) ||
          !(growth_factor(p, phi, 0.0) > 0.0)) {
        traj.flag = TrajectoryFlag::Boundary;
        traj.note = "o3 state left the admissible domain at t = " + std::to_string(t);
        break;
      }
      double phi_next;
      try {
        phi_next = o3_implicit_step(p, d, phi, tol);
      } catch (const NumericalError& e) {
        traj.flag = TrajectoryFlag::Boundary;
        traj.note = e.what();
        break;
      }
      if (near_fixed_point(phi_next, ss.r_gross, ss)) phi_next = ss.phi_star;
      traj.states.push_back({t, phi, o3_rate(p, phi, phi_next)});
      phi = phi_next;
    }
    if (traj.flag == TrajectoryFlag::None && !traj.states.empty()) {
      const auto& last = traj.states.back();
      if (std::max(std::fabs(last.phi - ss.phi_star),
                   std::fabs(last.r_gross - ss.r_gross)) < tol.fixed_point)
        traj.flag = TrajectoryFlag::Converged;
    }
    return traj;
  }

  EconomyState s{0, s0.phi, s0.r_gross};
  for (int t = 0; t < horizon; ++t) {
    s.t = t;
    const bool in_domain = s.phi >= 0.0 && s.r_gross > p.theta * d.Rc &&
                           s.r_gross < d.Rc &&
                           growth_factor(p, s.phi, s.r_gross) > 0.0 &&
                           money_bracket(p, s.phi, s.r_gross) > 0.0;
    if (!in_domain) {
      traj.flag = TrajectoryFlag::Boundary;
      traj.note = "state left the admissible domain at t = " + std::to_string(t);
      break;
    }
    if (std::fabs(s.phi - ss.phi_star) > 1e6 ||
        std::fabs(s.r_gross - ss.r_gross) > 1e6) {
      traj.flag = TrajectoryFlag::Diverged;
      traj.note = "state unbounded at t = " + std::to_string(t);
      break;
    }
    traj.states.push_back(s);
    if (t + 1 == horizon) break;
    try {
      const double phi_next = phi_step(s, p);
      const RateStepResult r = rate_step(s, phi_next, p, tol);
      if (r.sign_changes > 1) traj.rate_ambiguity = true;
      if (near_fixed_point(phi_next, r.r_gross_next, ss)) {
        s.phi = ss.phi_star;
        s.r_gross = ss.r_gross;
      } else {
        s.phi = phi_next;
        s.r_gross = r.r_gross_next;
      }
    } catch (const NumericalError& e) {
      traj.flag = TrajectoryFlag::Boundary;
      traj.note = e.what();
      break;
    } catch (const DomainError& e) {
      traj.flag = TrajectoryFlag::Boundary;
      traj.note = e.what();
      break;
    }
  }
  if (traj.flag == TrajectoryFlag::None && !traj.states.empty()) {
    const auto& last = traj.states.back();
    if (std::max(std::fabs(last.phi - ss.phi_star),
                 std::fabs(last.r_gross - ss.r_gross)) < tol.fixed_point)
      traj.flag = TrajectoryFlag::Converged;
  }
  return traj;
}

LevelPath reconstruct_levels(const Trajectory& traj, double K0, double M0,
                             const ModelParams& p) {
  if (!(K0 > 0.0) || !(M0 > 0.0))
    throw DomainError("initial capital and money must be positive");
  const DerivedConstants d = derive_constants(p);
  const size_t n = traj.states.size();

  LevelPath lp;
  for (auto* v : {&lp.K, &lp.P, &lp.Q, &lp.M, &lp.w, &lp.Y, &lp.T, &lp.C_budget,
                  &lp.C_goods, &lp.g})
    v->reserve(n);

  double K = K0;
  double M = M0;
  for (size_t i = 0; i < n; ++i) {
    const auto& s = traj.states[i];
    const double g = growth_factor(p, s.phi, s.r_gross);
    const double mb = money_bracket(p, s.phi, s.r_gross);
    if (!(mb > 0.0))
      throw NumericalError("negative price of money at t = " + std::to_string(s.t) +
                           ": assumption violation along the path");
    const double AK = d.A * K;
    const double P = s.phi * AK;
    const double QM = mb * AK;
    const double D = p.eps * p.a * K;
    const double K_next = g * K;

    lp.K.push_back(K);
    lp.P.push_back(P);
    lp.M.push_back(M);
    lp.Q.push_back(QM / M);
    lp.w.push_back((1.0 - p.alpha) * AK);
    lp.Y.push_back((1.0 + d.land_term) * AK);
    // transfers at t pay the issuance handed to the previous cohort of savers
    lp.T.push_back(i == 0 ? 0.0 : p.mu * lp.M[i - 1] * lp.Q[i]);
    lp.C_budget.push_back(d.Rc * K + D + P + QM);
    lp.C_goods.push_back((1.0 + d.land_term) * AK + (1.0 - p.delta) * K - K_next);
    lp.g.push_back(g);

    K = K_next;
    M *= 1.0 + p.mu;
  }
  return lp;
}

ShockResult epsilon_shock(const ModelParams& p, double eps_new, int shock_period,
                          int horizon, double K0, double M0, const Tolerances& tol) {
  if (p.variant == Variant::Landless)
    throw DomainError("epsilon shock needs a variant with land");
  if (!(eps_new >= p.eps))
    throw DomainError("shock must not lower eps");
  if (shock_period < 0 || shock_period >= horizon)
    throw DomainError("shock period must lie inside the horizon");

  ModelParams p_new = p;
  p_new.eps = eps_new;

  ShockResult out;
  out.shock_period = shock_period;
  out.before = solve_steady(p, tol);
  out.after = solve_steady(p_new, tol);
  out.null_shock = eps_new == p.eps;

  // both economies sit on their balanced growth paths; the shocked one jumps
  // to the new (phi*, r*) at the shock date with capital predetermined
  Trajectory base;
  for (int t = 0; t < horizon; ++t)
    base.states.push_back({t, out.before.phi_star, out.before.r_gross});
  out.baseline = reconstruct_levels(base, K0, M0, p);

  Trajectory pre;
  for (int t = 0; t < shock_period; ++t)
    pre.states.push_back({t, out.before.phi_star, out.before.r_gross});
  Trajectory post;
  for (int t = shock_period; t < horizon; ++t)
    post.states.push_back({t, out.after.phi_star, out.after.r_gross});

  const LevelPath head = reconstruct_levels(pre, K0, M0, p);
  const double K_s = out.baseline.K[static_cast<size_t>(shock_period)];
  const double M_s = out.baseline.M[static_cast<size_t>(shock_period)];
  const LevelPath tail = reconstruct_levels(post, K_s, M_s, p_new);

  LevelPath& sh = out.shocked;
  auto append = [](std::vector<double>& dst, const std::vector<double>& a,
                   const std::vector<double>& b) {
    dst = a;
    dst.insert(dst.end(), b.begin(), b.end());
  };
  append(sh.K, head.K, tail.K);
  append(sh.P, head.P, tail.P);
  append(sh.Q, head.Q, tail.Q);
  append(sh.M, head.M, tail.M);
  append(sh.w, head.w, tail.w);
  append(sh.Y, head.Y, tail.Y);
  append(sh.T, head.T, tail.T);
  append(sh.C_budget, head.C_budget, tail.C_budget);
  append(sh.C_goods, head.C_goods, tail.C_goods);
  append(sh.g, head.g, tail.g);

  const size_t s = static_cast<size_t>(shock_period);
  // the tail reconstruction starts at the shock date, but money issuance did
  // not: the cohort retiring at s still collects its transfer, valued at the
  // shocked money price
  if (s >= 1) sh.T[s] = p.mu * sh.M[s - 1] * sh.Q[s];
  if (!out.null_shock) {
    out.price_boom = sh.P[s] > out.baseline.P[s];
    out.output_boom = sh.Y[s] > out.baseline.Y[s];
    out.growth_lower = out.after.g_gross < out.before.g_gross;
    for (size_t t = s; t < sh.size(); ++t) {
      if (!out.k_crossover && sh.K[t] < out.baseline.K[t])
        out.k_crossover = static_cast<int>(t);
      if (!out.y_crossover && sh.Y[t] < out.baseline.Y[t])
        out.y_crossover = static_cast<int>(t);
    }
  }
  out.long_run_growth_gap = std::fabs(sh.g.back() - out.after.g_gross);
  return out;
}

}  // namespace growthlab
