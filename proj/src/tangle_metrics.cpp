#include "tangle/tangle_metrics.hpp"

#include <limits>

namespace tangle {

double tangle_general(const State8& psi) {
  const double norm2 = psi.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-8)
    throw std::invalid_argument("tangle_general: state norm deviates from 1 by more than 1e-8");
  // a_ij = c_{0ij}, b_ij = c_{1ij}
  const Complex a00 = psi(0), a01 = psi(1), a10 = psi(2), a11 = psi(3);
  const Complex b00 = psi(4), b01 = psi(5), b10 = psi(6), b11 = psi(7);
  const Complex d1 = a00 * a00 * b11 * b11 + a01 * a01 * b10 * b10 +
                     a10 * a10 * b01 * b01 + a11 * a11 * b00 * b00;
  const Complex d2 = a00 * a11 * b00 * b11 + a01 * a10 * b10 * b01 +
                     (a10 * b01 + a01 * b10) * (a00 * b11 + a11 * b00);
  const Complex d3 = a00 * a11 * b10 * b01 + a01 * a10 * b00 * b11;
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

namespace {

struct Orbit {
  double phi;     // population angle of the initial state
  double w;       // orientation weight (1-2b for gy > 0)
  double sin2phi;
  double cos2phi;
};

Orbit orbit_of(const GHZState& s, const HamiltonianParams& h) {
  const double phi = phi_of(s);
  const double w = phase_weight(s.varphi, h);
  return {phi, w, std::sin(2.0 * phi), std::cos(2.0 * phi)};
}

double clamp_unit(double x, const char* what) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw std::logic_error(std::string(what) + " left [0,1] beyond clamp tolerance");
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

double tangle_closed_form(const GHZState& s0, const HamiltonianParams& h, double t) {
  require_finite(t, "t");
  const Orbit o = orbit_of(s0, h);
  const double x = pi * t / period(h);
  const double d = o.w * o.sin2phi * std::sin(x) - o.cos2phi * std::cos(x);
  return clamp_unit(1.0 - d * d, "tau");
}

namespace detail {

double t_max_first_w(double phi, double w) {
  const double c2 = std::cos(2.0 * phi);
  const double s2 = std::sin(2.0 * phi);
  // degenerate branches first: exact-zero cases arrive from user input and the
  // generic arctangent misroutes their rounding dust
  if (std::abs(c2) < 1e-12) return 1.0;               // phi = pi/4, first positive k
  if (std::abs(s2) < 1e-12) return 0.5;               // phi in {0, pi/2}, (2k+1)/2
  if (std::abs(w) < 1e-12) return 0.5;                // b = 1/2 with cos(2 phi) != 0
  double x = std::atan2(c2, w * s2);                  // tan(pi t~) = cos2phi/(w sin2phi)
  if (x <= 0.0) x += pi;                              // smallest positive solution
  return x / pi;
}

}  // namespace detail

TangleExtrema extrema(const GHZState& s0, const HamiltonianParams& h) {
  const Orbit o = orbit_of(s0, h);
  TangleExtrema e;
  if (detail::is_stationary(o.phi, o.w)) {
    e.stationary = true;
    e.tau_min = 1.0;
    e.loss = 0.0;
    e.t_max_first = e.t_min_first = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  e.t_max_first = detail::t_max_first_w(o.phi, o.w);
  e.tau_min = (1.0 - o.w * o.w) * o.sin2phi * o.sin2phi;  // 4 b (1-b) tau(0)
  e.t_min_first = e.t_max_first > 0.5 ? e.t_max_first - 0.5 : e.t_max_first + 0.5;
  e.loss = 1.0 - e.tau_min;
  return e;
}

RateDecomposition decompose_rate(const GHZState& s0, const HamiltonianParams& h) {
  const Orbit o = orbit_of(s0, h);
  const double beta = 1.0 - o.w * o.w;  // 4 b (1-b)
  const double cos4 = std::cos(4.0 * o.phi);
  const double sin4 = std::sin(4.0 * o.phi);
  const double tau0 = o.sin2phi * o.sin2phi;
  RateDecomposition d;
  d.A = pi * (cos4 + beta * tau0);
  d.B = pi * o.w * sin4;
  d.C = std::hypot(d.A, d.B);
  d.D = 2.0 * tau0 * cos4 + beta * tau0 * tau0 - sin4 * sin4;
  d.eta = canonical_angle(std::atan2(d.B, d.A));
  d.sigma = 1;  // with eta from atan2, C cos(eta) = A and C sin(eta) = B exactly
  return d;
}

double rate(const GHZState& s0, const HamiltonianParams& h, double t_tilde) {
  require_finite(t_tilde, "t_tilde");
  const RateDecomposition d = decompose_rate(s0, h);
  return d.A * std::sin(two_pi * t_tilde) + d.B * std::cos(two_pi * t_tilde);
}

double rate_initial(const GHZState& s, const HamiltonianParams& h) {
  return decompose_rate(s, h).B;
}

SignClass classify_sign(const GHZState& s, const HamiltonianParams& h) {
  const Orbit o = orbit_of(s, h);
  SignClass c;
  c.row = o.w >= 0.0 ? 1 : 2;
  c.column = o.phi <= pi / 4.0 ? 1 : 2;
  const double gamma0 = rate_initial(s, h);
  c.sign = std::abs(gamma0) < 1e-12 ? 0 : (c.row == c.column ? 1 : -1);
  return c;
}

double tau_min_of(double phi, double b) {
  const double s2 = std::sin(2.0 * phi);
  return 4.0 * b * (1.0 - b) * s2 * s2;
}

double t_max_first_of(double phi, double b) {
  // the stationary cell falls on the cos(2 phi) = 0 line, which routes to 1,
  // keeping the map continuous (tau == 1 holds at t~ = 1 trivially there)
  return detail::t_max_first_w(phi, 1.0 - 2.0 * b);
}

double rate_initial_of(double phi, double b) {
  return pi * (1.0 - 2.0 * b) * std::sin(4.0 * phi);
}

}  // namespace tangle
