#include "tangle/optimizer.hpp"

namespace tangle {

OptimalPhase optimal_phase(double phi, const HamiltonianParams& h) {
  validate(h);
  require_finite(phi, "phi");
  if (phi < -1e-12 || phi > pi / 2.0 + 1e-12)
    throw std::invalid_argument("phi must lie in [0, pi/2]");
  if (std::abs(phi - pi / 4.0) < 1e-12)
    throw std::domain_error("phi = pi/4: rate is phase-independent; use stationary phase");
  OptimalPhase op;
  op.branch = phi < pi / 4.0 ? 1 : 2;
  op.phi_boundary = phi < 1e-12 || phi > pi / 2.0 - 1e-12;
  op.zero_ratio = h.gamma_x == 0.0;
  // w(varphi) = (gx sin + gy cos)/Omega peaks at atan2(gx, gy) (w = +1, b = 0)
  const double base = std::atan2(h.gamma_x, h.gamma_y);
  op.varphi = canonical_angle(op.branch == 1 ? base : base + pi);
  return op;
}

GHZState rotate_to_optimal(const GHZState& s, const HamiltonianParams& h) {
  const OptimalPhase op = optimal_phase(phi_of(s), h);
  return apply_local_op(s, LocalOp::phase_shift(op.varphi - s.varphi));
}

double t_prime_max(double phi) {
  require_finite(phi, "phi");
  if (phi < -1e-12 || phi > pi / 2.0 + 1e-12)
    throw std::invalid_argument("phi must lie in [0, pi/2]");
  if (std::abs(phi - pi / 4.0) < 1e-12) return 0.0;  // already maximal
  return phi < pi / 4.0 ? 0.5 - 2.0 * phi / pi : 2.0 * phi / pi - 0.5;
}

const char* to_string(FlipDecision::Reason r) {
  switch (r) {
    case FlipDecision::Reason::cond_signo: return "cond_signo";
    case FlipDecision::Reason::cond2: return "cond2";
    case FlipDecision::Reason::not_useful: return "not_useful";
  }
  return "?";
}

FlipDecision flip_decision(const GHZState& s, const HamiltonianParams& h) {
  validate(h);
  FlipDecision d;
  d.gamma0_before = rate_initial(s, h);
  d.gamma0_flip = rate_initial(apply_local_op(s, LocalOp::flip()), h);
  const double r = ratio(h);
  const double sv = std::sin(s.varphi), cv = std::cos(s.varphi);
  const double sin4 = std::sin(4.0 * phi_of(s));
  const double sgn = h.gamma_y > 0.0 ? 1.0 : -1.0;  // orientation carried by the b-form
  // cot^2(varphi) > r^2, written pole-free
  const bool cond_signo = cv * cv > r * r * sv * sv && d.gamma0_before < 0.0;
  const bool cond2 = sgn * cv * sin4 < 0.0;
  if (cond_signo)
    d.reason = FlipDecision::Reason::cond_signo;
  else if (cond2)
    d.reason = FlipDecision::Reason::cond2;
  else
    d.reason = FlipDecision::Reason::not_useful;
  d.useful = d.reason != FlipDecision::Reason::not_useful;
  return d;
}

PathReport optimization_paths(const GHZState& s, const HamiltonianParams& h) {
  if (std::abs(s.p - 0.5) < 1e-12)
    throw std::domain_error("p = 1/2: rate is phase-independent; use stationary phase");
  PathReport rep;
  rep.degenerate = s.p < 1e-12 || s.p > 1.0 - 1e-12;
  rep.a = s;
  rep.b = rotate_to_optimal(s, h);
  rep.c = apply_local_op(s, LocalOp::flip());
  rep.d = rotate_to_optimal(rep.c, h);
  rep.gamma0_a = rate_initial(rep.a, h);
  rep.gamma0_b = rate_initial(rep.b, h);
  rep.gamma0_c = rate_initial(rep.c, h);
  rep.gamma0_d = rate_initial(rep.d, h);
  rep.tau = tangle_of(s);
  if (std::abs(tangle_of(rep.b) - tangle_of(rep.d)) > 1e-10 ||
      std::abs(rep.gamma0_b - rep.gamma0_d) > 1e-10)
    throw std::logic_error("optimization paths B and D diverged");
  return rep;
}

OptimizationReport optimization_report(const GHZState& s, const HamiltonianParams& h) {
  OptimizationReport rep;
  rep.phase = optimal_phase(phi_of(s), h);
  rep.gamma0_before = rate_initial(s, h);
  rep.gamma0_after = rate_initial(rotate_to_optimal(s, h), h);
  rep.t_max_before = extrema(s, h).t_max_first;
  rep.t_max_after = t_prime_max(phi_of(s));
  rep.ratio = rep.t_max_after / rep.t_max_before;
  rep.flip = flip_decision(s, h);
  rep.paths = optimization_paths(s, h);
  return rep;
}

}  // namespace tangle
