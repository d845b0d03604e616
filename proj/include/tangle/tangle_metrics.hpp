#pragma once

// 3-tangle: hyperdeterminant form for arbitrary pure states, closed form on
// the GHZ family, extremal values/times, and the entanglement rate with its
// sign classification.

#include "tangle/ghz_state.hpp"

namespace tangle {

// tau = 4|d1 - 2 d2 + 4 d3| from the amplitudes (a_ij = c_{0ij}, b_ij = c_{1ij})
double tangle_general(const State8& psi);

// tau(t) = 1 - [w sin(2 phi) sin(pi t~) - cos(2 phi) cos(pi t~)]^2, t physical
double tangle_closed_form(const GHZState& s0, const HamiltonianParams& h, double t);

struct TangleExtrema {
  double tau_max = 1.0;
  double t_max_first = 0.0;  // t~ of first maximum, in (0,1]
  double tau_min = 0.0;
  double t_min_first = 0.0;  // t~ of first minimum, = t_max_first +- 1/2
  double loss = 0.0;         // tau_max attained - tau_min
  bool stationary = false;   // tau == 1 for all t; times are NaN
};

TangleExtrema extrema(const GHZState& s0, const HamiltonianParams& h);

// the full solution sets: k-th maximum/minimum time (period 1 in t~)
inline double t_max_at(const TangleExtrema& e, int k) { return e.t_max_first + k; }
inline double t_min_at(const TangleExtrema& e, int k) { return e.t_min_first + k; }

struct RateDecomposition {
  double A = 0.0;      // pi [cos(4 phi) + 4 b (1-b) sin^2(2 phi)]
  double B = 0.0;      // pi w sin(4 phi) = Gamma(0)
  double C = 0.0;      // sqrt(A^2 + B^2)
  double D = 0.0;      // 2 tau0 cos(4 phi) + 4 b (1-b) tau0^2 - sin^2(4 phi)
  double eta = 0.0;    // atan2(B, A) reduced to [0, 2*pi)
  int sigma = 1;       // with eta as above, sigma C sin(2 pi t~ + eta) == A sin + B cos
};

RateDecomposition decompose_rate(const GHZState& s0, const HamiltonianParams& h);

// Gamma(t~) = A sin(2 pi t~) + B cos(2 pi t~); |Gamma| <= pi
double rate(const GHZState& s0, const HamiltonianParams& h, double t_tilde);

// Gamma(0) = B
double rate_initial(const GHZState& s, const HamiltonianParams& h);

struct SignClass {
  int row = 1;   // 1: w >= 0 (r sin(varphi) + cos(varphi) >= 0 for gy>0); 2: w < 0
  int column = 1;  // 1: phi in (0, pi/4); 2: phi in (pi/4, pi/2)
  int sign = 0;  // +1, -1, or 0 on the Gamma0 = 0 boundaries
};

SignClass classify_sign(const GHZState& s, const HamiltonianParams& h);

// --- parametric core over (phi, b), the coordinates of the rate/time maps ---
// These treat b as the abstract orbit parameter (w = 1 - 2b).

double tau_min_of(double phi, double b);       // 4 b (1-b) sin^2(2 phi)
double t_max_first_of(double phi, double b);   // first t~ in (0,1] with tau = 1
double rate_initial_of(double phi, double b);  // pi (1-2b) sin(4 phi)

namespace detail {
// degenerate-case router shared by extrema/threshold code; w = orientation weight
double t_max_first_w(double phi, double w);
inline bool is_stationary(double phi, double w) {
  return std::abs(w) < 1e-12 && std::abs(std::cos(2.0 * phi)) < 1e-12;
}
}  // namespace detail

}  // namespace tangle
