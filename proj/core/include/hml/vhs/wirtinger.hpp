#pragma once

#include <vector>

#include "hml/vhs/variation.hpp"

namespace hml::vhs {

struct FdSettings {
  double relative_step = 1e-3;
  double floor = 1e-6;
  /// Number of step sizes h, h/2, ...; the results are Richardson-extrapolated.
  int richardson_levels = 2;
};

/// Per-coordinate base steps max(relative·scale_γ, floor).
Eigen::VectorXd fd_steps(const Eigen::VectorXd& scale, const FdSettings& settings);

/// Central-difference stencil in the 2m real directions of a complex chart.
/// Evaluate the samples at points(), then call differentiate().
class WirtingerStencil {
 public:
  WirtingerStencil(Point center, Eigen::VectorXd steps, int levels);

  const std::vector<Point>& points() const { return points_; }

  struct Derivatives {
    /// d[c](γ) = ∂_γ f_c and dbar[c](γ) = ∂̄_γ f_c.
    std::vector<Eigen::VectorXcd> d, dbar;
    /// mixed[c](γ, δ) = ∂_γ ∂̄_δ f_c.
    std::vector<Eigen::MatrixXcd> mixed;
  };
  /// samples[i] holds the components f_c at points()[i].
  Derivatives differentiate(const std::vector<Eigen::VectorXcd>& samples) const;

 private:
  int index(int level, int u, int su, int v, int sv) const;

  Point center_;
  Eigen::VectorXd steps_;
  int levels_;
  int m_;
  std::vector<Point> points_;
  std::vector<std::vector<int>> lookup_;  // per level: flattened (u, su, v, sv) → point index
};

}  // namespace hml::vhs
