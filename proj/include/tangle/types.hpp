#pragma once

// Shared scalar/linear-algebra types and small angle utilities.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace tangle {

using Complex = std::complex<double>;
using State8 = Eigen::Vector<Complex, 8>;   // |nlm> amplitudes, index = 4n+2l+m
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Matrix4 = Eigen::Matrix<Complex, 4, 4>;
using Matrix8 = Eigen::Matrix<Complex, 8, 8>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// reduce an angle to [0, 2*pi)
inline double canonical_angle(double a) {
  double x = std::fmod(a, two_pi);
  if (x < 0.0) x += two_pi;
  if (x >= two_pi) x -= two_pi;   // fmod dust near the seam
  return x;
}

// smallest absolute difference between two angles (result in [0, pi])
inline double angle_distance(double a, double b) {
  double d = canonical_angle(a - b);
  return d > pi ? two_pi - d : d;
}

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace tangle
