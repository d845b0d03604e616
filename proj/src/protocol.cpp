#include "tangle/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tangle/tangle_metrics.hpp"

namespace tangle {

namespace {

// Reduce a crossing time (in periods) into the first period (0, 1].
double first_period(double x) {
  double y = std::fmod(x, 1.0);
  if (y <= 0.0) y += 1.0;
  return y;
}

bool is_stationary_input(const GHZState& s, const HamiltonianParams& h) {
  return detail::is_stationary(phi_of(s), phase_weight(s.varphi, h));
}

std::vector<double> sample_grid(double horizon, double dt) {
  const long n = static_cast<long>(std::floor(horizon / dt + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * dt);
  if (grid.back() < horizon - 1e-12 * std::max(1.0, horizon)) grid.push_back(horizon);
  return grid;
}

// Incrementally emits trajectory points, restarting the analytic segment at
// each local operation so every sample stays in closed form.
class TimelineBuilder {
 public:
  TimelineBuilder(const GHZState& s0, const HamiltonianParams& h, std::vector<double> grid)
      : h_(h), grid_(std::move(grid)), seg_(s0), seg_start_(0.0) {
    tl_.initial = s0;
    tl_.params = h;
    tl_.points.reserve(grid_.size());
  }

  GHZState state_at(double t_abs) const {
    return evolve(seg_, h_, (t_abs - seg_start_) * period(h_));
  }

  // Emit grid points strictly before t_abs.
  void advance_to(double t_abs) {
    while (gi_ < grid_.size() && grid_[gi_] < t_abs - 1e-12) {
      emit(grid_[gi_]);
      ++gi_;
    }
  }

  // Evolve to t_abs, apply op there, and emit the post-op sample.
  void apply_at(double t_abs, const LocalOp& op) {
    advance_to(t_abs);
    const double tau_here = tangle_closed_form(seg_, h_, (t_abs - seg_start_) * period(h_));
    seg_ = apply_local_op(state_at(t_abs), op);
    seg_start_ = t_abs;
    tl_.ops.push_back({t_abs, op, tl_.points.size()});
    TrajectoryPoint pt;
    pt.t_tilde = t_abs;
    pt.t = t_abs * period(h_);
    pt.state = seg_;
    pt.tau = tau_here;
    pt.gamma = rate(seg_, h_, 0.0);
    tl_.points.push_back(pt);
    if (gi_ < grid_.size() && std::abs(grid_[gi_] - t_abs) <= 1e-12) ++gi_;
  }

  ProtocolTimeline finish(double guard_from, double delta_t) {
    while (gi_ < grid_.size()) {
      emit(grid_[gi_]);
      ++gi_;
    }
    tl_.guard_from = guard_from;
    tl_.delta_t = delta_t;
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& pt : tl_.points)
      if (pt.t_tilde >= guard_from - 1e-12) floor = std::min(floor, pt.tau);
    tl_.tau_floor = floor;
    return std::move(tl_);
  }

 private:
  void emit(double t_abs) {
    const double t_rel = (t_abs - seg_start_) * period(h_);
    TrajectoryPoint pt;
    pt.t_tilde = t_abs;
    pt.t = t_abs * period(h_);
    pt.state = evolve(seg_, h_, t_rel);
    pt.tau = tangle_closed_form(seg_, h_, t_rel);
    pt.gamma = rate(seg_, h_, t_abs - seg_start_);
    tl_.points.push_back(pt);
  }

  HamiltonianParams h_;
  std::vector<double> grid_;
  std::size_t gi_ = 0;
  GHZState seg_;
  double seg_start_;
  ProtocolTimeline tl_;
};

}  // namespace

GHZState stationary_state(const HamiltonianParams& h) {
  validate(h);
  double vs = pi / 2.0;
  if (h.gamma_x != 0.0) vs = canonical_angle(std::atan(-1.0 / ratio(h)));
  return GHZState(0.5, vs);
}

ThresholdSolution threshold_times(const GHZState& s, const HamiltonianParams& h, double tau_star) {
  validate(h);
  require_finite(tau_star, "tau_star");
  ThresholdSolution sol;
  sol.tau_star = tau_star;

  const double phi = phi_of(s);
  const double w = phase_weight(s.varphi, h);
  const double s2 = std::sin(2.0 * phi);
  const double c2 = std::cos(2.0 * phi);

  if (detail::is_stationary(phi, w)) {
    sol.chi = 0.0;
    sol.amp2 = 0.0;
    sol.status = tau_star <= 1.0 ? ThresholdStatus::NoOpsNeeded : ThresholdStatus::Infeasible;
    return sol;
  }

  const double tau_min = (1.0 - w * w) * s2 * s2;
  sol.amp2 = 1.0 - tau_min;
  sol.chi = std::atan2(w * s2, c2);
  if (tau_star >= 1.0) {
    sol.status = ThresholdStatus::Infeasible;
    return sol;
  }
  if (tau_star <= tau_min) {
    sol.status = ThresholdStatus::NoOpsNeeded;
    return sol;
  }

  const double kappa = std::sqrt((1.0 - tau_star) / sol.amp2);
  const double beta = std::acos(std::min(1.0, kappa));
  const double rising = first_period((beta - sol.chi) / pi);
  const double falling = first_period((pi - beta - sol.chi) / pi);
  sol.t1 = std::min(rising, falling);
  sol.t2 = std::max(rising, falling);
  sol.delta_t = sol.t2 - sol.t1;
  sol.status = ThresholdStatus::Solved;
  return sol;
}

ProtocolTimeline run_sigma_z_protocol(const GHZState& s0, const HamiltonianParams& h,
                                      double tau_star, double horizon, double sample_dt,
                                      int target, double margin) {
  validate(h);
  require_finite(tau_star, "tau_star");
  require_finite(horizon, "horizon");
  require_finite(sample_dt, "sample_dt");
  require_finite(margin, "margin");
  if (tau_star <= 0.0) throw std::invalid_argument("tau_star must be positive");
  if (tau_star >= 1.0) throw std::domain_error("tau_star >= 1 cannot be maintained");
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be positive");
  if (sample_dt <= 0.0) throw std::invalid_argument("sample_dt must be positive");
  if (margin < 0.0 || margin >= 0.5)
    throw std::invalid_argument("margin must lie in [0, 0.5)");
  if (target < 0 || target > 2) throw std::invalid_argument("target must be 0, 1 or 2");

  TimelineBuilder builder(s0, h, sample_grid(horizon, sample_dt));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  if (is_stationary_input(s0, h)) return builder.finish(0.0, nan);

  const double phi0 = phi_of(s0);
  if (std::abs(phi0 - pi / 4.0) < 1e-12) {
    // Rate is phase-independent at phi = pi/4; one rotation onto the
    // stationary phase pins tau = 1 for good.
    const GHZState st = stationary_state(h);
    builder.apply_at(0.0, LocalOp::phase_shift(st.varphi - s0.varphi, target));
    return builder.finish(0.0, nan);
  }

  const GHZState opt = rotate_to_optimal(s0, h);
  builder.apply_at(0.0, LocalOp::phase_shift(opt.varphi - s0.varphi, target));

  const ThresholdSolution sol0 = threshold_times(opt, h, tau_star);
  const double kappa = std::sqrt(1.0 - tau_star);  // amp2 = 1 on the optimal orbit
  const double beta = std::acos(std::min(1.0, kappa));
  const double width = 1.0 - 2.0 * beta / pi;
  const double guard_from = tangle_of(opt) >= tau_star
                                ? 0.0
                                : (rate(opt, h, sol0.t1) >= 0.0 ? sol0.t1 : sol0.t2);

  GHZState seg = opt;
  double t_cur = 0.0;
  while (true) {
    const ThresholdSolution sol = threshold_times(seg, h, tau_star);
    if (sol.status != ThresholdStatus::Solved) break;
    const double falling = rate(seg, h, sol.t1) <= 0.0 ? sol.t1 : sol.t2;
    // margin never pushes the op before the segment start (wrapped first band)
    const double op_abs = std::max(t_cur + falling - margin * width, t_cur);
    if (op_abs > horizon + 1e-12) break;
    builder.apply_at(op_abs, LocalOp::sigma_z(target));
    seg = apply_local_op(evolve(seg, h, (op_abs - t_cur) * period(h)), LocalOp::sigma_z(target));
    t_cur = op_abs;
  }
  return builder.finish(guard_from, width);
}

ProtocolTimeline run_stationary_protocol(const GHZState& s0, const HamiltonianParams& h,
                                         double delay, double horizon, double sample_dt,
                                         double repeat_interval) {
  validate(h);
  require_finite(delay, "delay");
  require_finite(horizon, "horizon");
  require_finite(sample_dt, "sample_dt");
  require_finite(repeat_interval, "repeat_interval");
  if (delay < 0.0) throw std::invalid_argument("delay must be non-negative");
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be positive");
  if (sample_dt <= 0.0) throw std::invalid_argument("sample_dt must be positive");
  if (repeat_interval < 0.0) throw std::invalid_argument("repeat_interval must be non-negative");

  TimelineBuilder builder(s0, h, sample_grid(horizon, sample_dt));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  if (is_stationary_input(s0, h)) return builder.finish(0.0, nan);

  const GHZState st = stationary_state(h);
  GHZState seg = s0;
  double t_r = delay;
  if (std::abs(s0.p - 0.5) > 1e-12) {
    const GHZState opt = rotate_to_optimal(s0, h);
    builder.apply_at(0.0, LocalOp::phase_shift(opt.varphi - s0.varphi));
    seg = opt;
    t_r = t_prime_max(phi_of(s0)) + delay;
  }

  double t_cur = 0.0;
  double next = t_r;
  while (next <= horizon + 1e-12) {
    const GHZState before = evolve(seg, h, (next - t_cur) * period(h));
    builder.apply_at(next, LocalOp::phase_shift(st.varphi - before.varphi));
    seg = apply_local_op(before, LocalOp::phase_shift(st.varphi - before.varphi));
    t_cur = next;
    if (repeat_interval <= 0.0) break;
    next += repeat_interval;
  }

  const double guard = std::min(t_r, horizon);
  const double dt_field = repeat_interval > 0.0 ? repeat_interval : nan;
  return builder.finish(guard, dt_field);
}

TimelineCheck verify_timeline(const ProtocolTimeline& tl, double tau_star) {
  if (tl.points.empty()) throw std::invalid_argument("timeline has no samples");
  require_finite(tau_star, "tau_star");
  TimelineCheck chk;
  chk.min_tau = std::numeric_limits<double>::infinity();
  for (const auto& pt : tl.points) {
    if (pt.t_tilde < tl.guard_from - 1e-12) continue;
    chk.min_tau = std::min(chk.min_tau, pt.tau);
    if (chk.ok && pt.tau < tau_star - 1e-9) {
      chk.ok = false;
      chk.first_violation = pt.t_tilde;
    }
  }
  return chk;
}

}  // namespace tangle
