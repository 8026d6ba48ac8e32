#pragma once

#include <cstdint>
#include <vector>

#include "growthlab/model.hpp"

namespace growthlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate() const { return lo == hi; }
  bool operator==(const Interval&) const = default;
};

// Per-field sampling intervals. A degenerate interval pins the field.
struct ParamBox {
  Interval a{1.0, 1.0};
  Interval alpha{0.3, 0.3};
  Interval eps{0.0, 0.0};
  Interval eta{0.5, 0.5};
  Interval delta{1.0, 1.0};
  Interval theta{0.0, 0.0};
  Interval theta_x{0.0, 0.0};
  Interval mu{0.0, 0.0};
  Variant variant = Variant::Main;

  static ParamBox point(const ModelParams& p);
  bool operator==(const ParamBox&) const = default;
};

struct SampleResult {
  std::vector<ModelParams> points;
  std::uint64_t draws = 0;  // candidates drawn, accepted + rejected
  double rejection_rate = 0.0;
};

// Rejection sampling of parameter points that pass check_assumptions with
// strictly positive margins. Draw i is generated by a counter-based stream
// keyed on (seed, i), so the result is independent of evaluation order and
// bit-identical across runs. Throws NumericalError once `budget` candidate
// draws have been spent without collecting n points (infeasible box).
SampleResult sample_parameters(const ParamBox& box, int n, std::uint64_t seed,
                               std::uint64_t budget = 1'000'000);

}  // namespace growthlab
