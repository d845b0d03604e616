#pragma once

// Local operations that maximize the initial entanglement rate: the optimal
// phase rotation, the spin flip and its usefulness conditions, and the
// speed-up bookkeeping.

#include "tangle/tangle_metrics.hpp"

namespace tangle {

struct OptimalPhase {
  double varphi = 0.0;        // canonical [0, 2*pi)
  int branch = 1;             // 1 (b=0, phi < pi/4) or 2 (b=1, phi > pi/4)
  bool phi_boundary = false;  // phi in {0, pi/2}: rate is phase-independent at t=0
  bool zero_ratio = false;    // gamma_x = 0 (r = 0): outside the stated domain
};

// branch I: arctan r; branch II: arctan r + pi. phi = pi/4 is rejected (use
// the stationary phase); phi in {0, pi/2} returns the closure branch, flagged.
OptimalPhase optimal_phase(double phi, const HamiltonianParams& h);

// PhaseShift(varphi_op - varphi); tangle unchanged, rate_initial maximal
GHZState rotate_to_optimal(const GHZState& s, const HamiltonianParams& h);

// first time the optimally-rotated state reaches tau = 1:
// 1/2 - 2 phi/pi below pi/4, 2 phi/pi - 1/2 above, 0 at pi/4
double t_prime_max(double phi);

struct FlipDecision {
  bool useful = false;
  enum class Reason { cond_signo, cond2, not_useful } reason = Reason::not_useful;
  double gamma0_before = 0.0;
  double gamma0_flip = 0.0;
};

const char* to_string(FlipDecision::Reason r);

// useful iff Gamma0(flip(s)) > Gamma0(s); decided by the sign conditions
// (cot^2 varphi > r^2 with Gamma0 < 0, or cos varphi sin 4phi < 0), which are
// provably equivalent to the direct comparison (tests enforce it)
FlipDecision flip_decision(const GHZState& s, const HamiltonianParams& h);

struct PathReport {
  GHZState a, b, c, d;  // input, rotated, flipped, flipped-then-rotated
  double gamma0_a = 0.0, gamma0_b = 0.0, gamma0_c = 0.0, gamma0_d = 0.0;
  double tau = 0.0;           // common tangle of all four endpoints
  bool degenerate = false;    // p in {0,1}: zero tangle direction
};

// the two optimization paths A->B and A->C->D; B and D share tau and Gamma0
PathReport optimization_paths(const GHZState& s, const HamiltonianParams& h);

struct OptimizationReport {
  OptimalPhase phase;
  double gamma0_before = 0.0;
  double gamma0_after = 0.0;
  double t_max_before = 0.0;
  double t_max_after = 0.0;
  double ratio = 1.0;  // t_max_after / t_max_before, in (0,1]
  FlipDecision flip;
  PathReport paths;
};

OptimizationReport optimization_report(const GHZState& s, const HamiltonianParams& h);

}  // namespace tangle
