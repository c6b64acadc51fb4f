#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hml/picard_fuchs/operator.hpp"

namespace hml::pf {

using cplxl = std::complex<long double>;

/// Holomorphic solution Σ a_k z^k at z = 0 with a_0 = 1.
struct SeriesSolution {
  cplx basepoint{};
  std::vector<cplxl> coefficients;
  int truncation_order = 0;
  /// Radius of convergence estimated from the last ten coefficient ratios.
  double radius_estimate = 0.0;
  /// Estimated truncation error at half the radius estimate.
  double tail_bound = 0.0;

  cplx evaluate(cplx z) const;
  /// Geometric tail estimate Σ_{k>K} |a_k| r^k.
  double tail_bound_at(double r) const;
};

SeriesSolution series_seed(const PFOperator& op, int order = 200);

/// max_k |L(series) coefficient k| / scale: zero up to rounding for k ≤ order.
double recursion_residual(const PFOperator& op, const SeriesSolution& s);

enum class FrobeniusNormalization { kRaw, kTwoPiI };

/// Frobenius basis y_a = [ε^a] Σ_k a_k(ε) z^{k+ε} at a point of maximal unipotent
/// monodromy (indicial polynomial c·θ^N).  With kTwoPiI the a-th solution is
/// divided by (2πi)^a.
class FrobeniusBasis {
 public:
  static FrobeniusBasis build(const PFOperator& op, int order = 200,
                              FrobeniusNormalization normalization = FrobeniusNormalization::kTwoPiI);

  int order() const { return n_; }
  int truncation_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double radius_estimate() const { return radius_; }
  /// Largest radius used for direct evaluation (half the radius estimate).
  double handoff_radius() const { return 0.5 * radius_; }
  double tail_bound_at(double r) const;

  /// (rows × N) matrix: entry (j, a) = θ^j y_a(z), principal branch of log z.
  Eigen::MatrixXcd jet(cplx z, int rows) const;
  Eigen::MatrixXcd jet(cplx z) const { return jet(z, n_); }

 private:
  int n_ = 0;
  std::vector<std::vector<cplxl>> coeffs_;  // coeffs_[k][m] = [ε^m] a_k(ε)
  double radius_ = 0.0;
  FrobeniusNormalization normalization_ = FrobeniusNormalization::kTwoPiI;
};

}  // namespace hml::pf
