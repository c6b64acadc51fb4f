#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hml/metrics/metrics.hpp"

namespace hml::poincare {

using vhs::Point;

/// Polydisk chart (Δ*)^l × Δ^{m−l} around a boundary point.
struct PoincareChart {
  int l = 0;
  int m = 0;

  /// Throws std::invalid_argument unless 0 ≤ l ≤ m.
  void validate() const;
  /// Throws std::domain_error for a point on a puncture or outside the polydisk.
  void require_inside(const Point& z) const;
};

/// diag(1/(|z_i|² log²(1/|z_i|))) on the punctured factors, 1 elsewhere.
Eigen::MatrixXcd poincare_metric_at(const PoincareChart& chart, const Point& z);

/// trace(τ⁻¹ h).  Throws when τ is not positive definite.
double trace_f_at(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& tau);

/// Matrix absolute value (h†h)^{1/2} of a Hermitian matrix.
Eigen::MatrixXcd matrix_abs(const Eigen::MatrixXcd& h);

enum class SweepQuantity {
  kGeneralizedHodge,  // h_PH[k]
  kBcovAbs,           // |h_BCOV|
};
std::string quantity_name(SweepQuantity q, int k);

struct SweepSettings {
  int decade_start = 3;
  int decades = 6;
  int rays = 8;
  /// Values of the unpunctured coordinates l..m−1 (zero when empty).
  std::vector<std::complex<double>> fixed;
  metrics::MetricOptions metric_options = {.fd = {}, .wp_route_tolerance = 1e-5, .transversality_threshold = 1e-8,
                                           .finite_differences = false};
  int threads = 1;
};

struct SweepSample {
  Point z;
  int decade = 0;  // |z_i| = 10^{−decade} on punctured factors
  int ray = 0;
  double f = 0.0;
  bool ok = false;
  std::string error;
};

struct SweepTarget {
  SweepQuantity quantity = SweepQuantity::kGeneralizedHodge;
  int k = 0;
};

struct DominationReport {
  std::string quantity;
  std::vector<SweepSample> samples;
  /// Max of f per decade, outermost first.
  std::vector<double> decade_max;
  double sup_f = 0.0;
  /// Innermost over outermost decade maximum.
  double trend = 1.0;
  /// Innermost-decade max relative to the max over the other decades, minus one.
  double inner_excess = 0.0;
  /// Relative growth of the decade max across the innermost three decades.
  double inner_growth = 0.0;
  /// Every sample evaluated with f ≥ 0 and inner_excess ≤ 5%.
  bool pass = false;
  /// inner_growth ≤ 5%.  Stricter: slow 1/log convergence to a finite limit can trip it.
  bool bounded_growth = false;
};

/// Ray phases π(2j+1)/R on the full circle.
std::vector<double> sweep_phases(int rays);

/// Samples f = tr(τ⁻¹h) at rays × decades points toward the chart origin.
/// Pass: every sample evaluated, f ≥ 0 and inner_excess ≤ 5%.
DominationReport domination_sweep(const vhs::Family& family, const PoincareChart& chart, SweepQuantity quantity, int k,
                                  const SweepSettings& settings);
/// Several quantities from one metric evaluation per sample; reports in target order.
std::vector<DominationReport> domination_sweeps(const vhs::Family& family, const PoincareChart& chart,
                                                const std::vector<SweepTarget>& targets, const SweepSettings& settings);

constexpr double kDominationSlack = 0.05;

}  // namespace hml::poincare
