#pragma once

#include <gmpxx.h>

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hml::pf {

using cplx = std::complex<double>;

struct SingularPoint {
  cplx value{};
  bool at_infinity = false;
};

/// Ordinary differential operator L = Σ_j c_j(z) θ^j with θ = z d/dz and
/// polynomial coefficients c_j with exact rational coefficients.
class PFOperator {
 public:
  /// theta_coefficients[j][i] is the coefficient of z^i θ^j.
  PFOperator(std::vector<std::vector<mpq_class>> theta_coefficients, std::vector<SingularPoint> singular_points);

  /// θ^4 − 5z(5θ+1)(5θ+2)(5θ+3)(5θ+4).
  static PFOperator quintic();

  int order() const { return static_cast<int>(theta_.size()) - 1; }
  /// Highest power of z appearing in any c_j.
  int z_degree() const { return z_degree_; }
  const std::vector<std::vector<mpq_class>>& theta_coefficients() const { return theta_; }
  const std::vector<SingularPoint>& singular_points() const { return singular_; }
  std::vector<cplx> finite_singular_points() const;
  /// Distance from z to the nearest finite singular point (0 included).
  double distance_to_singular(cplx z) const;

  /// c_j(z) for j = 0..order.
  Eigen::VectorXcd coefficients_at(cplx z) const;
  /// Coefficient of z^i θ^j as a double.
  double coefficient(int j, int i) const;

  /// Companion matrix C(z) with θY = C(z) Y for the jet Y = (y, θy, …, θ^{N−1}y).
  Eigen::MatrixXcd companion(cplx z) const;

 private:
  std::vector<std::vector<mpq_class>> theta_;
  std::vector<std::vector<double>> theta_d_;
  std::vector<SingularPoint> singular_;
  int z_degree_ = 0;
};

}  // namespace hml::pf
