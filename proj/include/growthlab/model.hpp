#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace growthlab {

// Which borrowing constraint / economy the solvers should use.
//   Main     : debt limited by a fraction of next-period asset returns
//   O3       : debt limited by a fraction of current asset values
//   Landless : Main economy with land removed (phi = 0 throughout)
enum class Variant { Main, O3, Landless };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Invalid primitives or undefined leverage.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
// An existence condition fails; the message names the failing margin.
struct AssumptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Root finding failed or a residual came out too large.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Scenario parsing / validation.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The eight primitives of the economy. One model period is one generation;
// every rate is the per-period gross or net factor.
struct ModelParams {
  double a = 0.0;        // labor-productivity slope, chi(K) = a*K
  double alpha = 0.0;    // capital share, in (0,1)
  double eps = 0.0;      // land productivity relative to labor productivity, >= 0
  double eta = 0.0;      // entrepreneur fraction of each cohort, in (0,1)
  double delta = 1.0;    // capital depreciation, in [0,1]
  double theta = 0.0;    // collateral fraction on capital, in [0,1]
  double theta_x = 0.0;  // collateral fraction on land, in [0,1]
  double mu = 0.0;       // money growth rate, > -1
  Variant variant = Variant::Main;

  bool operator==(const ModelParams&) const = default;
};

// Composites that appear everywhere downstream. Always derived from the
// primitives, never supplied directly, so (a, A) pairs cannot disagree.
struct DerivedConstants {
  double A = 0.0;          // a^(1-alpha), output per unit of capital
  double Rc = 0.0;         // alpha*A + 1 - delta, total return per unit of capital
  double land_term = 0.0;  // eps * a^alpha, land rent per unit of A*K
  double H = 0.0;          // 1 - theta_x + mu*(1-theta), O3 composite
};

// Throws DomainError naming the offending field.
void validate(const ModelParams& p);

DerivedConstants derive_constants(const ModelParams& p);

// Existence conditions for the variant. A margin is the signed slack of the
// inequality (left minus right); a check holds iff its margin is strictly
// positive. Checks that do not apply to the variant stay true with NaN margin.
// This is a report, not a gate: callers decide what to do with it.
struct AssumptionReport {
  Variant variant = Variant::Main;

  bool a1_ok = true;        // 1 > theta_x*(1+mu): land leverage finite     (Main)
  bool a2_left_ok = true;   // money keeps positive value                   (Main)
  bool a2_right_ok = true;  // phi* > 0                                     (Main)
  bool a3_ok = true;        // phi* > 0                                     (O3)
  bool a4_ok = true;        // Q > 0, evaluated at the solved steady state  (O3)
  bool money_ok = true;     // Q > 0                                        (Landless)

  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  double a1_margin = kNaN;
  double a2_left_margin = kNaN;
  double a2_right_margin = kNaN;
  double a3_margin = kNaN;
  double a4_margin = kNaN;
  double money_margin = kNaN;

  bool all_ok = true;

  // Name of the first failing check, empty when all_ok.
  std::string first_failure() const;
};

AssumptionReport check_assumptions(const ModelParams& p);

}  // namespace growthlab
