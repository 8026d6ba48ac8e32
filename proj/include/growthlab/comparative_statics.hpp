#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "growthlab/model.hpp"
#include "growthlab/sampling.hpp"

namespace growthlab {

struct DiffResult {
  double value = 0.0;  // central difference at step h/2
  double err = 0.0;    // |estimate(h) - estimate(h/2)|, Richardson indicator
  double step = 0.0;   // h actually used after boundary shrinking
};

// Central difference (f(x+h)-f(x-h))/(2h). When f throws AssumptionError,
// DomainError or NumericalError at x +- h the step is halved until both sides
// are admissible; a one-sided difference is never substituted silently.
// Throws NumericalError when no admissible step remains.
DiffResult central_diff(const std::function<double(double)>& f, double x, double h,
                        int max_shrink = 40);

// Sign-level claims certified point by point.
enum class PropId { P2i, P2ii, P3, P4, P7, P8, PA1, PA3i, PA3ii, PA3iii, L1 };

const char* to_string(PropId id);
PropId prop_from_string(const std::string& s);
std::vector<PropId> all_props();

enum class Verdict { Pass, Fail, OutOfRegime };

const char* to_string(Verdict v);

struct VerifyOptions {
  double eps_small = 1e-3;         // "eps sufficiently small" regime bound
  double degeneracy_floor = 1e-6;  // min |theta - theta_x| for sign-switch claims
  double noise_floor = 1e-8;       // |estimate| below floor*scale is a true zero
  bool require_positive_mu = true; // certify only on mu > 0 unless overridden
  double step_scale = 1e-6;        // finite-difference step h = step_scale*max(1,|x|)
  bool operator==(const VerifyOptions&) const = default;
};

struct PropositionVerdict {
  PropId prop = PropId::P3;
  ModelParams point;
  std::string claimed_sign;  // "+", "-", "sign(theta-theta_x)", ... or "ordering"
  double estimate = 0.0;     // headline derivative or margin
  Verdict verdict = Verdict::OutOfRegime;
  std::string reason;        // for OutOfRegime / Fail
  std::map<std::string, double> witness;  // named values backing the verdict
};

// Pass requires every claimed sign to hold with magnitude above the noise
// floor (so a degenerate true zero is distinguished from a sign failure).
// Points outside the proposition's stated regime are reported, not failed.
PropositionVerdict verify_proposition(const ModelParams& p, PropId prop,
                                      const VerifyOptions& opt = {});

struct VerdictSummary {
  struct Counts {
    int pass = 0;
    int fail = 0;
    int out_of_regime = 0;
  };
  std::map<PropId, Counts> counts;
  std::vector<PropositionVerdict> failures;  // capped at witness_cap
  int n = 0;
  std::uint64_t seed = 0;
  ParamBox box;
  double rejection_rate = 0.0;
};

// Samples n admissible points from the box and runs every requested
// proposition on each; deterministic given (box, n, seed).
VerdictSummary batch_verify(const ParamBox& box, int n, std::uint64_t seed,
                            const std::vector<PropId>& props,
                            const VerifyOptions& opt = {}, int witness_cap = 10);

}  // namespace growthlab
