#pragma once

// GHZ-family state (population p of |000>, relative phase varphi), coupling
// parameters of H = gx*XXX + gy*YYY, and single-qubit operations expressed as
// parameter transformations.

#include "tangle/types.hpp"

namespace tangle {

struct GHZState {
  double p = 1.0;       // population of |000>, in [0,1]
  double varphi = 0.0;  // relative phase, canonical [0, 2*pi)

  GHZState() = default;
  GHZState(double p_, double varphi_);
};

// tau = 4 p (1-p); phase-independent on the GHZ family
inline double tangle_of(const GHZState& s) { return 4.0 * s.p * (1.0 - s.p); }

// population angle phi = arcsin(sqrt(p)) in [0, pi/2]
inline double phi_of(const GHZState& s) {
  return std::asin(std::clamp(std::sqrt(s.p), 0.0, 1.0));
}

struct HamiltonianParams {
  double gamma_x = 0.0;
  double gamma_y = 1.0;  // must be nonzero
  double hbar = 1.0;
};

void validate(const HamiltonianParams& h);

inline double ratio(const HamiltonianParams& h) { return h.gamma_x / h.gamma_y; }
inline double omega(const HamiltonianParams& h) { return std::hypot(h.gamma_x, h.gamma_y); }

// T = pi*hbar / (2*|gy|*sqrt(r^2+1)) = pi*hbar / (2*Omega); the tau period
double period(const HamiltonianParams& h);

struct LocalOp {
  enum class Kind { PhaseShift, SigmaZ, Flip };
  Kind kind = Kind::SigmaZ;
  double delta = 0.0;  // PhaseShift only
  int target = 2;      // qubit index for PhaseShift/SigmaZ; Flip hits all three

  static LocalOp phase_shift(double delta, int target = 2);
  static LocalOp sigma_z(int target = 2);
  static LocalOp flip();
};

// build a state from the population angle; phi is range-reduced into [0, pi/2]
// by absorbing amplitude signs into the relative/global phase
GHZState make_state(double phi, double varphi);

// PhaseShift(d): varphi += d. SigmaZ: varphi += pi. Flip: (p,varphi) -> (1-p,-varphi).
GHZState apply_local_op(const GHZState& s, const LocalOp& op);

// 8-amplitude form: sqrt(p)|000> + e^{i varphi} sqrt(1-p)|111>
State8 to_amplitudes(const GHZState& s);

// b = (1 - (r sin(varphi) + cos(varphi))/sqrt(r^2+1)) / 2, in [0,1]
double b_parameter(double varphi, const HamiltonianParams& h);

// orientation-aware phase weight w = (gx sin(varphi) + gy cos(varphi))/Omega.
// Equals 1-2b for gy > 0; it is the coefficient the dynamics actually carries,
// so closed forms built on w stay oracle-exact for either sign of gy.
double phase_weight(double varphi, const HamiltonianParams& h);

}  // namespace tangle
