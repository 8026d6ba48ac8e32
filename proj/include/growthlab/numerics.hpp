#pragma once

#include <functional>
#include <optional>

namespace growthlab::num {

struct QuadRoots {
  double q_over_a;  // -(b + sign(b)*sqrt(disc)) / (2a)
  double c_over_q;  // companion root, exact product c/a with the first
};

// Real roots of a*x^2 + b*x + c via the cancellation-safe pairing
// q = -(b + sign(b)*sqrt(disc))/2, roots {q/a, c/q}. The naive formula loses
// digits when the roots differ by orders of magnitude. Returns nullopt when
// the discriminant is negative or a == 0.
std::optional<QuadRoots> quadratic_roots(double a, double b, double c);

struct BracketScan {
  int sign_changes = 0;
  double lo = 0.0;  // first subinterval with a sign change
  double hi = 0.0;
};

// Evaluates f on a uniform grid and counts sign changes. Grid points where f
// is not finite are skipped.
BracketScan scan_for_root(const std::function<double(double)>& f, double lo,
                          double hi, int grid = 64);

// Safeguarded scalar root finding on a sign-changing bracket: bisection with
// secant / inverse-quadratic refinement (Brent). Stops once |f| <= ftol or
// the bracket collapses to xtol.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double xtol = 1e-15, double ftol = 0.0, int max_iter = 200);

}  // namespace growthlab::num
