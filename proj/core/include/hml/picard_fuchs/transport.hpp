#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hml/picard_fuchs/operator.hpp"

namespace hml::pf {

/// Polyline in the z-plane; every segment keeps at least `clearance` from
/// the finite singular points.
struct PathPlan {
  std::vector<cplx> waypoints;
  double clearance = 0.0;
};

enum class DetourSide { kLeft, kRight };

/// Straight path from `from` to `to`, with rectangular detours inserted on the
/// chosen side of the direction of travel around offending singular points.
PathPlan plan_path(const PFOperator& op, cplx from, cplx to, double clearance, DetourSide side = DetourSide::kLeft);

/// Throws std::invalid_argument if a segment comes closer than the clearance.
void validate_path(const PFOperator& op, const PathPlan& path);

struct TransportOptions {
  double tolerance = 1e-12;
  double min_step = 1e-13;  // in the segment parameter s ∈ [0, 1]
  long max_steps = 2'000'000;
};

/// Adaptive RKF7(8) transport of solution jets (columns, N rows) along the path.
Eigen::MatrixXcd integrate_along(const PFOperator& op, const Eigen::MatrixXcd& jets, const PathPlan& path,
                                 const TransportOptions& options = {});
Eigen::VectorXcd integrate_along(const PFOperator& op, const Eigen::VectorXcd& jet, const PathPlan& path,
                                 const TransportOptions& options = {});

/// Continues jets from z0 to a nearby z1 by the Taylor expansion of the
/// companion system at z0.  |z1 − z0| must be below half the distance from z0
/// to the nearest singular point.
Eigen::MatrixXcd continue_locally(const PFOperator& op, cplx z0, const Eigen::MatrixXcd& jets, cplx z1);

/// Validated period frame at t: row j holds θ^j of every basis solution.
Eigen::MatrixXcd derivative_frame(const PFOperator& op, cplx t, const Eigen::MatrixXcd& jets);

/// θ^N of every basis solution, from the operator and the frame rows 0..N−1.
Eigen::RowVectorXcd theta_closure(const PFOperator& op, cplx z, const Eigen::MatrixXcd& frame);

}  // namespace hml::pf
