#include "growthlab/sampling.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace growthlab {

namespace {

// splitmix64 step; the per-draw stream is keyed on (seed, draw index) so a
// draw's value never depends on evaluation order.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct DrawStream {
  std::uint64_t state;
  DrawStream(std::uint64_t seed, std::uint64_t index)
      : state(mix64(seed ^ 0x5851f42d4c957f2dULL) ^ mix64(index)) {}
  double u01() {
    state = mix64(state);
    // 53 random mantissa bits in [0, 1)
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
};

double draw_in(const Interval& iv, DrawStream& s) {
  if (iv.degenerate()) return iv.lo;
  return iv.lo + (iv.hi - iv.lo) * s.u01();
}

void validate_interval(const char* name, const Interval& iv, double lo, double hi,
                       bool open_lo, bool open_hi) {
  const bool lo_ok = open_lo ? iv.lo > lo : iv.lo >= lo;
  const bool hi_ok = open_hi ? iv.hi < hi : iv.hi <= hi;
  if (!lo_ok || !hi_ok || iv.lo > iv.hi)
    throw DomainError(std::string("sampling interval for ") + name + " [" +
                      std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                      "] outside the field range");
}

}  // namespace

ParamBox ParamBox::point(const ModelParams& p) {
  ParamBox b;
  b.a = {p.a, p.a};
  b.alpha = {p.alpha, p.alpha};
  b.eps = {p.eps, p.eps};
  b.eta = {p.eta, p.eta};
  b.delta = {p.delta, p.delta};
  b.theta = {p.theta, p.theta};
  b.theta_x = {p.theta_x, p.theta_x};
  b.mu = {p.mu, p.mu};
  b.variant = p.variant;
  return b;
}

SampleResult sample_parameters(const ParamBox& box, int n, std::uint64_t seed,
                               std::uint64_t budget) {
  if (n < 1) throw DomainError("sample count must be >= 1");
  validate_interval("a", box.a, 0.0, std::numeric_limits<double>::infinity(), true, true);
  validate_interval("alpha", box.alpha, 0.0, 1.0, true, true);
  validate_interval("eps", box.eps, 0.0, std::numeric_limits<double>::infinity(), false, true);
  validate_interval("eta", box.eta, 0.0, 1.0, true, true);
  validate_interval("delta", box.delta, 0.0, 1.0, false, false);
  validate_interval("theta", box.theta, 0.0, 1.0, false, false);
  validate_interval("theta_x", box.theta_x, 0.0, 1.0, false, false);
  validate_interval("mu", box.mu, -1.0, std::numeric_limits<double>::infinity(), true, true);
  if (box.variant == Variant::Landless && !(box.eps.lo == 0.0 && box.eps.hi == 0.0))
    throw DomainError("landless variant requires the eps interval pinned to 0");

  SampleResult out;
  out.points.reserve(static_cast<size_t>(n));
  std::uint64_t rejected = 0;
  for (std::uint64_t i = 0; out.points.size() < static_cast<size_t>(n); ++i) {
    if (out.draws >= budget)
      throw NumericalError("rejection budget of " + std::to_string(budget) +
                           " draws exhausted after accepting " +
                           std::to_string(out.points.size()) + " of " +
                           std::to_string(n) + " points; box looks infeasible");
    ++out.draws;
    DrawStream s(seed, i);
    ModelParams p;
    p.a = draw_in(box.a, s);
    p.alpha = draw_in(box.alpha, s);
    p.eps = draw_in(box.eps, s);
    p.eta = draw_in(box.eta, s);
    p.delta = draw_in(box.delta, s);
    p.theta = draw_in(box.theta, s);
    p.theta_x = draw_in(box.theta_x, s);
    p.mu = draw_in(box.mu, s);
    p.variant = box.variant;
    const AssumptionReport rep = check_assumptions(p);
    if (rep.all_ok)
      out.points.push_back(p);
    else
      ++rejected;
  }
  out.rejection_rate = out.draws > 0 ? static_cast<double>(rejected) / out.draws : 0.0;
  return out;
}

}  // namespace growthlab
