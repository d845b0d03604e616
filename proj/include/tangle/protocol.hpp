#pragma once

// Entanglement-maintenance protocols: the threshold-crossing solver, the
// sigma-z op sequence, and the stationary-state rotation (with the optional
// periodic-reset variant).

#include <limits>

#include "tangle/evolution.hpp"
#include "tangle/optimizer.hpp"

namespace tangle {

// maximally entangled eigenstate of H: p = 1/2, varphi_s with b(varphi_s) = 1/2
GHZState stationary_state(const HamiltonianParams& h);

enum class ThresholdStatus { Solved, NoOpsNeeded, Infeasible };

// tau(t~) = 1 - amp2 cos^2(pi t~ + chi); the threshold tau* is crossed twice
// per period. t1 < t2 are the two crossings in (0,1]; when tau(0) < tau*, t1
// is the rising (entering) crossing and t2 the falling one, so tau >= tau* on
// [t1, t2] and Gamma(t1) >= 0 >= Gamma(t2). A state starting above tau* meets
// its falling crossing first and the roles swap.
struct ThresholdSolution {
  ThresholdStatus status = ThresholdStatus::Solved;
  double tau_star = 0.0;
  double chi = 0.0;    // atan2(w sin 2phi, cos 2phi)
  double amp2 = 0.0;   // 1 - tau_min
  double t1 = 0.0;
  double t2 = 0.0;
  double delta_t = 0.0;  // t2 - t1
};

ThresholdSolution threshold_times(const GHZState& s, const HamiltonianParams& h, double tau_star);

struct OpEvent {
  double t_tilde = 0.0;
  LocalOp op;
  std::size_t point_index = 0;  // timeline sample carrying the post-op state
};

struct ProtocolTimeline {
  GHZState initial;            // pre-op input state (ops at t=0 come after it)
  HamiltonianParams params;
  std::vector<TrajectoryPoint> points;
  std::vector<OpEvent> ops;
  double tau_floor = 1.0;      // min tau over t~ >= guard_from
  double guard_from = 0.0;     // t~ from which the maintenance guarantee holds
  double delta_t = 0.0;        // op spacing (sigma-z) or repeat interval; NaN if n/a
  std::size_t op_count() const { return ops.size(); }
};

// rotate_to_optimal at t=0, then sigma_z at each falling threshold crossing
// (optionally margin*delta_t early, margin in [0, 0.5)); keeps tau >= tau*
// from the first band entry on
ProtocolTimeline run_sigma_z_protocol(const GHZState& s0, const HamiltonianParams& h,
                                      double tau_star, double horizon, double sample_dt,
                                      int target = 2, double margin = 0.0);

// rotate_to_optimal at t=0; at t~ = t'_max + delay shift the phase to the
// stationary value; afterwards tau stays 1 (delay = 0) or oscillates in
// [tau-at-application, 1]. repeat_interval > 0 re-applies the shift
// periodically (floors are monotone non-decreasing).
ProtocolTimeline run_stationary_protocol(const GHZState& s0, const HamiltonianParams& h,
                                         double delay, double horizon, double sample_dt,
                                         double repeat_interval = 0.0);

struct TimelineCheck {
  bool ok = true;
  double first_violation = std::numeric_limits<double>::quiet_NaN();
  double min_tau = 1.0;
};

// true iff tau_floor >= tau_star - 1e-9 over the guarantee window
TimelineCheck verify_timeline(const ProtocolTimeline& tl, double tau_star);

}  // namespace tangle
