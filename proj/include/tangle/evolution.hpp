#pragma once

// Closed-form time evolution on the GHZ family. The Hamiltonian closes on
// span{|000>,|111>}, so evolution reduces to a 2x2 Rabi-style propagator
// U(t) = cos(theta) I - i sin(theta) H2/Omega with theta = pi t~ / 2.

#include <vector>

#include "tangle/ghz_state.hpp"
#include "tangle/tangle_metrics.hpp"

namespace tangle {

// dimensionless time t~ = t / T and back
inline double dimensionless_time(const HamiltonianParams& h, double t) { return t / period(h); }
inline double physical_time(const HamiltonianParams& h, double t_tilde) { return t_tilde * period(h); }

// production path: population from the trig closed form (pole-free, exact at
// t=0), phase from the block-propagator amplitudes
GHZState evolve(const GHZState& s0, const HamiltonianParams& h, double t);

// pure 2-level propagator path; equals evolve up to phase canonicalization
GHZState evolve_block(const GHZState& s0, const HamiltonianParams& h, double t);

// varphi(t) = alpha2 - alpha1 mod 2*pi, each alpha resolved by atan2 on the
// tangent numerator/denominator pairs (cleared of tan-phi/tan-theta poles)
double relative_phase(const GHZState& s0, const HamiltonianParams& h, double t);

struct TrajectoryPoint {
  double t_tilde = 0.0;
  double t = 0.0;
  GHZState state;
  double tau = 0.0;
  double gamma = 0.0;  // dtau/dt~ at this instant
};

// one point per grid time (physical units); grid must be finite and ascending
std::vector<TrajectoryPoint> sample_trajectory(const GHZState& s0, const HamiltonianParams& h,
                                               const std::vector<double>& t_grid);

}  // namespace tangle
