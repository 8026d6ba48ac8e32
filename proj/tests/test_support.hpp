#pragma once

#include <cmath>

#include "growthlab/model.hpp"
#include "growthlab/sampling.hpp"

namespace growthlab::test {

// a = 10^(10/7) so that A = a^(1-alpha) = 10 at alpha = 0.3
inline constexpr double kRefA = 26.826957952797257;

inline ModelParams reference_point(Variant v = Variant::Main) {
  ModelParams p;
  p.a = kRefA;
  p.alpha = 0.3;
  p.eps = 0.0;
  p.eta = 0.5;
  p.delta = 1.0;
  p.theta = 0.1;
  p.theta_x = 0.2;
  p.mu = 0.1;
  p.variant = v;
  return p;
}

// boxes that keep every draw comfortably inside the existence conditions
inline ParamBox main_box(double theta_lo, double theta_hi, double thx_lo,
                         double thx_hi, double eps_hi = 0.0) {
  ParamBox b;
  b.a = {20.0, 30.0};
  b.alpha = {0.25, 0.35};
  b.eps = {0.0, eps_hi};
  b.eta = {0.4, 0.6};
  b.delta = {0.8, 1.0};
  b.theta = {theta_lo, theta_hi};
  b.theta_x = {thx_lo, thx_hi};
  b.mu = {0.02, 0.25};
  b.variant = Variant::Main;
  return b;
}

inline ParamBox o3_box(double theta_lo, double theta_hi, double thx_lo,
                       double thx_hi, double eps_hi = 0.0) {
  ParamBox b = main_box(theta_lo, theta_hi, thx_lo, thx_hi, eps_hi);
  b.variant = Variant::O3;
  return b;
}

inline ParamBox landless_box() {
  ParamBox b;
  b.a = {20.0, 30.0};
  b.alpha = {0.25, 0.35};
  b.eps = {0.0, 0.0};
  b.eta = {0.4, 0.6};
  b.delta = {0.8, 1.0};
  b.theta = {0.05, 0.3};
  b.theta_x = {0.0, 0.3};
  b.mu = {0.02, 0.25};
  b.variant = Variant::Landless;
  return b;
}

inline double rel_gap(double x, double ref) {
  return std::fabs(x - ref) / std::max(1.0, std::fabs(ref));
}

}  // namespace growthlab::test
