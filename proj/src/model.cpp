#include "growthlab/model.hpp"

#include <cmath>

#include "growthlab/steady_state.hpp"

namespace growthlab {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Main: return "main";
    case Variant::O3: return "o3";
    case Variant::Landless: return "landless";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  if (s == "main") return Variant::Main;
  if (s == "o3") return Variant::O3;
  if (s == "landless") return Variant::Landless;
  throw ConfigError("unknown variant '" + s + "' (expected main|o3|landless)");
}

void validate(const ModelParams& p) {
  auto bad = [](const std::string& field, double v, const std::string& range) {
    throw DomainError("parameter " + field + " = " + std::to_string(v) +
                      " outside " + range);
  };
  if (!(p.a > 0.0) || !std::isfinite(p.a)) bad("a", p.a, "(0, inf)");
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) bad("alpha", p.alpha, "(0, 1)");
  if (!(p.eps >= 0.0) || !std::isfinite(p.eps)) bad("eps", p.eps, "[0, inf)");
  if (!(p.eta > 0.0 && p.eta < 1.0)) bad("eta", p.eta, "(0, 1)");
  if (!(p.delta >= 0.0 && p.delta <= 1.0)) bad("delta", p.delta, "[0, 1]");
  if (!(p.theta >= 0.0 && p.theta <= 1.0)) bad("theta", p.theta, "[0, 1]");
  if (!(p.theta_x >= 0.0 && p.theta_x <= 1.0)) bad("theta_x", p.theta_x, "[0, 1]");
  if (!(p.mu > -1.0) || !std::isfinite(p.mu)) bad("mu", p.mu, "(-1, inf)");
  if (p.variant == Variant::Landless && p.eps != 0.0)
    throw DomainError("landless variant requires eps = 0");
}

DerivedConstants derive_constants(const ModelParams& p) {
  validate(p);
  DerivedConstants d;
  d.A = std::pow(p.a, 1.0 - p.alpha);
  d.Rc = p.alpha * d.A + 1.0 - p.delta;
  d.land_term = p.eps * std::pow(p.a, p.alpha);
  d.H = 1.0 - p.theta_x + p.mu * (1.0 - p.theta);
  return d;
}

std::string AssumptionReport::first_failure() const {
  if (!a1_ok) return "a1";
  if (!a2_left_ok) return "a2_left";
  if (!a2_right_ok) return "a2_right";
  if (!a3_ok) return "a3";
  if (!a4_ok) return "a4";
  if (!money_ok) return "money";
  return "";
}

namespace {

// margin > 0 with NaN treated as a failure
bool holds(double margin) { return margin > 0.0; }

}  // namespace

AssumptionReport check_assumptions(const ModelParams& p) {
  const DerivedConstants d = derive_constants(p);
  AssumptionReport rep;
  rep.variant = p.variant;

  const double one_m_thx = 1.0 - p.theta_x;
  const double gross_mu = 1.0 + p.mu;

  switch (p.variant) {
    case Variant::Main: {
      rep.a1_margin = 1.0 - p.theta_x * gross_mu;
      const double mid = p.eta * (1.0 - p.alpha) * d.A / rep.a1_margin;
      rep.a2_left_margin =
          d.A * (1.0 - p.alpha) + d.Rc * (p.theta_x - p.theta) * gross_mu / one_m_thx - mid;
      rep.a2_right_margin = mid - d.Rc * (1.0 - p.theta) / one_m_thx;
      rep.a1_ok = holds(rep.a1_margin);
      // the middle term flips sign once a1 fails; report the a2 margins as
      // not holding rather than propagating a misleading sign
      rep.a2_left_ok = rep.a1_ok && holds(rep.a2_left_margin);
      rep.a2_right_ok = rep.a1_ok && holds(rep.a2_right_margin);
      rep.all_ok = rep.a1_ok && rep.a2_left_ok && rep.a2_right_ok;
      break;
    }
    case Variant::O3: {
      rep.a3_margin = p.eta * (1.0 - p.alpha) * d.A / one_m_thx -
                      d.Rc * (1.0 - p.theta) * gross_mu / d.H;
      rep.a3_ok = p.theta < 1.0 && p.theta_x < 1.0 && d.H > 0.0 && holds(rep.a3_margin);
      if (p.eps == 0.0) {
        // closed form of the Q > 0 condition in the eps -> 0 limit
        rep.a4_margin = d.A * (1.0 - p.alpha) - p.eta * (1.0 - p.alpha) * d.A / one_m_thx;
        rep.a4_ok = holds(rep.a4_margin);
      } else if (rep.a3_ok) {
        // needs the solved steady state
        const auto ss = detail::solve_o3_phi_g(p, d);
        rep.a4_margin = d.A * (1.0 - p.alpha) - ss.g - d.A * ss.phi;
        rep.a4_ok = holds(rep.a4_margin);
      } else {
        rep.a4_ok = false;
      }
      rep.all_ok = rep.a3_ok && rep.a4_ok;
      break;
    }
    case Variant::Landless: {
      // value of money stays positive: savings exceed leveraged investment
      const double g = p.eta * (1.0 - p.alpha) * d.A + p.theta * d.Rc * gross_mu;
      rep.money_margin = d.A * (1.0 - p.alpha) - g;
      rep.money_ok = holds(rep.money_margin);
      rep.all_ok = rep.money_ok;
      break;
    }
  }
  return rep;
}

}  // namespace growthlab
