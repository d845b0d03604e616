#include "tangle/ghz_state.hpp"

namespace tangle {

GHZState::GHZState(double p_, double varphi_) {
  require_finite(p_, "p");
  require_finite(varphi_, "varphi");
  if (p_ < -1e-12 || p_ > 1.0 + 1e-12)
    throw std::invalid_argument("p outside [0,1]");
  p = std::clamp(p_, 0.0, 1.0);
  varphi = canonical_angle(varphi_);
}

void validate(const HamiltonianParams& h) {
  require_finite(h.gamma_x, "gamma_x");
  require_finite(h.gamma_y, "gamma_y");
  require_finite(h.hbar, "hbar");
  if (h.gamma_y == 0.0) throw std::invalid_argument("gamma_y must be nonzero");
  if (h.hbar <= 0.0) throw std::invalid_argument("hbar must be positive");
}

double period(const HamiltonianParams& h) {
  validate(h);
  return pi * h.hbar / (2.0 * omega(h));
}

LocalOp LocalOp::phase_shift(double delta, int target) {
  require_finite(delta, "delta");
  if (target < 0 || target > 2) throw std::invalid_argument("target qubit index must be 0, 1 or 2");
  return {Kind::PhaseShift, delta, target};
}

LocalOp LocalOp::sigma_z(int target) {
  if (target < 0 || target > 2) throw std::invalid_argument("target qubit index must be 0, 1 or 2");
  return {Kind::SigmaZ, 0.0, target};
}

LocalOp LocalOp::flip() { return {Kind::Flip, 0.0, 0}; }

GHZState make_state(double phi, double varphi) {
  require_finite(phi, "phi");
  require_finite(varphi, "varphi");
  double s = std::sin(phi);
  double c = std::cos(phi);
  if (s < 0.0) { s = -s; c = -c; varphi += pi; }  // global sign
  if (c < 0.0) { varphi += pi; }                  // sign of |111> amplitude into the phase
  return GHZState(s * s, varphi);
}

GHZState apply_local_op(const GHZState& s, const LocalOp& op) {
  switch (op.kind) {
    case LocalOp::Kind::PhaseShift: return GHZState(s.p, s.varphi + op.delta);
    case LocalOp::Kind::SigmaZ:     return GHZState(s.p, s.varphi + pi);
    case LocalOp::Kind::Flip:       return GHZState(1.0 - s.p, -s.varphi);
  }
  throw std::logic_error("unreachable");
}

State8 to_amplitudes(const GHZState& s) {
  State8 v = State8::Zero();
  v(0) = std::sqrt(s.p);
  v(7) = std::polar(std::sqrt(1.0 - s.p), s.varphi);
  return v;
}

double b_parameter(double varphi, const HamiltonianParams& h) {
  validate(h);
  require_finite(varphi, "varphi");
  const double r = ratio(h);
  return 0.5 * (1.0 - (r * std::sin(varphi) + std::cos(varphi)) / std::sqrt(r * r + 1.0));
}

double phase_weight(double varphi, const HamiltonianParams& h) {
  validate(h);
  require_finite(varphi, "varphi");
  return (h.gamma_x * std::sin(varphi) + h.gamma_y * std::cos(varphi)) / omega(h);
}

}  // namespace tangle
