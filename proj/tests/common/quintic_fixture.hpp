#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace hml::testing {

// ζ(3)
inline constexpr double kApery = 1.2020569031595942853997;

/// Integral basis (X0, X1, F0, F1) as combinations of the 2πi-normalized
/// Frobenius solutions w0..w3.
inline Eigen::Matrix4cd quintic_basis_change(double e_sign = 1.0) {
  using c = std::complex<double>;
  const double kappa = 5.0, a = -5.5, b = 25.0 / 12.0;
  const c e(0.0, -e_sign * 25.0 * kApery / std::pow(std::numbers::pi, 3));
  Eigen::Matrix4cd m;
  m << 1, 0, 0, 0,
       0, 1, 0, 0,
       e, b, 0, kappa,
       b, a, -kappa, 0;
  return m;
}

inline Eigen::Matrix4cd quintic_polarization() {
  Eigen::Matrix4cd q;
  q << 0, 0, -1, 0,
       0, 0, 0, -1,
       1, 0, 0, 0,
       0, 1, 0, 0;
  return q;
}

}  // namespace hml::testing
