#include "tangle/evolution.hpp"

#include <limits>
#include <utility>

namespace tangle {

namespace {

// two-level block amplitudes (a', c') of e^{-iHt/hbar} on span{|000>,|111>};
// H2 = [[0, gx + i gy], [gx - i gy, 0]], H2^2 = Omega^2 I
std::pair<Complex, Complex> block_amplitudes(const GHZState& s0, const HamiltonianParams& h,
                                             double theta) {
  const Complex a0{std::sqrt(s0.p), 0.0};
  const Complex c0 = std::polar(std::sqrt(1.0 - s0.p), s0.varphi);
  const Complex n{h.gamma_x / omega(h), h.gamma_y / omega(h)};
  const double ct = std::cos(theta), st = std::sin(theta);
  const Complex i{0.0, 1.0};
  return {ct * a0 - i * st * n * c0, ct * c0 - i * st * std::conj(n) * a0};
}

double clamp_p(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw std::logic_error("evolved population left [0,1] beyond clamp tolerance");
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

GHZState evolve(const GHZState& s0, const HamiltonianParams& h, double t) {
  require_finite(t, "t");
  if (t == 0.0) { validate(h); return s0; }
  const double theta = 0.5 * pi * dimensionless_time(h, t);
  const double w = phase_weight(s0.varphi, h);
  const double ct = std::cos(theta), st = std::sin(theta);
  // p(t) = sin^2(theta+phi) - b sin(2 theta) sin(2 phi), expanded pole-free
  const double p = clamp_p(s0.p * ct * ct + (1.0 - s0.p) * st * st +
                           2.0 * w * st * ct * std::sqrt(s0.p * (1.0 - s0.p)));
  const auto [a, c] = block_amplitudes(s0, h, theta);
  return GHZState(p, std::arg(c * std::conj(a)));
}

GHZState evolve_block(const GHZState& s0, const HamiltonianParams& h, double t) {
  require_finite(t, "t");
  validate(h);
  const double theta = 0.5 * pi * dimensionless_time(h, t);
  const auto [a, c] = block_amplitudes(s0, h, theta);
  return GHZState(clamp_p(std::norm(a)), std::arg(c * std::conj(a)));
}

double relative_phase(const GHZState& s0, const HamiltonianParams& h, double t) {
  require_finite(t, "t");
  validate(h);
  const double theta = 0.5 * pi * dimensionless_time(h, t);
  const double gx = h.gamma_x, gy = h.gamma_y, om = omega(h);
  const double sphi = std::sqrt(s0.p), cphi = std::sqrt(1.0 - s0.p);
  const double sv = std::sin(s0.varphi), cv = std::cos(s0.varphi);
  const double ct = std::cos(theta), st = std::sin(theta);
  // tangent pairs of the two amplitude angles, multiplied through by
  // cos(theta) cos(phi) |gy|; the
  // joint sign of the common factor shifts both alphas by pi and cancels in
  // the difference
  const double n1 = st * cphi * (gy * sv - gx * cv);
  const double d1 = om * sphi * ct + st * cphi * (gx * sv + gy * cv);
  const double n2 = om * ct * cphi * sv - gx * st * sphi;
  const double d2 = om * ct * cphi * cv - gy * st * sphi;
  return canonical_angle(std::atan2(n2, d2) - std::atan2(n1, d1));
}

std::vector<TrajectoryPoint> sample_trajectory(const GHZState& s0, const HamiltonianParams& h,
                                               const std::vector<double>& t_grid) {
  const double T = period(h);
  std::vector<TrajectoryPoint> out;
  out.reserve(t_grid.size());
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    require_finite(t, "grid time");
    if (t < prev) throw std::invalid_argument("time grid must be sorted ascending");
    prev = t;
    TrajectoryPoint pt;
    pt.t = t;
    pt.t_tilde = t / T;
    pt.state = evolve(s0, h, t);
    pt.tau = tangle_closed_form(s0, h, t);
    pt.gamma = rate(s0, h, pt.t_tilde);
    out.push_back(pt);
  }
  return out;
}

}  // namespace tangle
