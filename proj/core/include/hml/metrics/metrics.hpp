#pragma once

#include <string>
#include <vector>

#include "hml/vhs/engine.hpp"
#include "hml/vhs/wirtinger.hpp"

namespace hml::metrics {

using vhs::Point;

struct MetricOptions {
  vhs::FdSettings fd;
  double wp_route_tolerance = 1e-5;
  double transversality_threshold = 1e-8;
  /// Off: only the connection route is computed and the finite-difference fields stay empty.
  bool finite_differences = true;
};

/// All metric data at one point.  Matrices are raw Hermitian coefficient matrices
/// h_{αβ̄} (no 1/2π) in the reported coordinates of the family.
struct MetricPoint {
  Point z;
  Point t;
  int weight = 0;
  int moduli_dim = 0;
  long chi = 0;

  /// Connection route: contraction of A^n with the Gram matrices.
  Eigen::MatrixXcd h_wp;
  bool has_finite_differences = false;
  /// Potential route: −∂∂̄ log g_n by finite differences.
  Eigen::MatrixXcd h_wp_potential;
  /// h_PH[k] and h_H[k] for k = 0..n, connection route.
  std::vector<Eigen::MatrixXcd> h_ph, h_h;
  /// h_PH[k] as −∂∂̄ Σ_p p log det g_p by finite differences.
  std::vector<Eigen::MatrixXcd> h_ph_chern;
  /// −∂∂̄ log det h_WP.
  Eigen::MatrixXcd ric_wp;
  /// c₁(F^1) and c₁(F^n) of the degree-n filtration by finite differences.
  Eigen::MatrixXcd flag_chern_first, flag_chern_top;
  /// Chern forms of the degree-n blocks H^p: finite differences and curvature route.
  std::vector<Eigen::MatrixXcd> block_chern_fd, block_chern_connection;
  /// Σ_{i≥1} (−1)^i h_H[i] − (χ/12) h_WP, and the primitive route (−1)^n h_H[n] − (χ/12) h_WP.
  Eigen::MatrixXcd h_bcov, h_bcov_primitive;

  double transversality = 0.0;
  double commutation = 0.0;
};

MetricPoint evaluate_metrics(const vhs::Family& family, const Point& z, const MetricOptions& options = {});

/// Throws "WP route mismatch" when the two routes differ by more than the tolerance.
Eigen::MatrixXcd weil_petersson_at(const vhs::Family& family, const Point& z, const MetricOptions& options = {});

struct GeneralizedHodge {
  Eigen::MatrixXcd h_ph, h_h;
};
/// Throws "semidefiniteness violated" for an indefinite h_PH[k].
GeneralizedHodge generalized_hodge_at(const vhs::Family& family, const Point& z, int k, const MetricOptions& options = {});
Eigen::MatrixXcd hodge_metric_at(const vhs::Family& family, const Point& z, const MetricOptions& options = {});
Eigen::MatrixXcd ricci_wp_at(const vhs::Family& family, const Point& z, const MetricOptions& options = {});
/// Throws "primitivity route mismatch" when the family is primitive and the routes differ.
Eigen::MatrixXcd bcov_hessian_at(const vhs::Family& family, const Point& z, const MetricOptions& options = {});

/// Anti-Hermitian part relative to the matrix norm.
double skew_part(const Eigen::MatrixXcd& h);
/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Eigen::MatrixXcd& h);
/// ‖a − b‖ / max(‖scale‖, tiny).
double relative_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& scale);

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityTolerances {
  /// Identities that go through finite differences.
  double relative = 1e-5;
  /// Identities between connection-route quantities.
  double algebraic = 1e-8;
  double eigen = 1e-8;
  double primitivity = 1e-10;
  double hermitian = 1e-10;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
  const IdentityCheck* find(const std::string& name) const;
};

IdentityReport identity_suite(const MetricPoint& point, const IdentityTolerances& tolerances = {});
IdentityReport identity_suite_at(const vhs::Family& family, const Point& z, const MetricOptions& options = {},
                                 const IdentityTolerances& tolerances = {});

}  // namespace hml::metrics
