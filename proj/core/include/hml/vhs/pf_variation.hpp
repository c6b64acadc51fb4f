#pragma once

#include "hml/picard_fuchs/series.hpp"
#include "hml/picard_fuchs/transport.hpp"
#include "hml/vhs/variation.hpp"

namespace hml::vhs {

struct PicardFuchsSettings {
  int series_order = 200;
  pf::TransportOptions transport;
  double clearance = 1e-5;
  /// Seeds outside the Frobenius disk start at this radius on the ray of the target.
  double seed_radius = 5e-5;
};

/// Weight-n variation of a one-parameter Picard-Fuchs family, in the chart t with
/// z = exp(2πi t).  Frame rows are θ^j Ω in the flat basis flat = basis_change · w.
class PicardFuchsVariation final : public Variation {
 public:
  PicardFuchsVariation(pf::PFOperator op, Eigen::MatrixXcd basis_change, Eigen::MatrixXcd polarization,
                       PicardFuchsSettings settings);

  int weight() const override { return op_.order() - 1; }
  int moduli_dim() const override { return 1; }
  const std::vector<int>& hodge_numbers() const override { return hodge_; }
  const Eigen::MatrixXcd& polarization() const override { return q_; }
  HolomorphicFrame frame(const Point& t) const override;
  FrameEvaluator local(const Point& center) const override;

  const pf::PFOperator& op() const { return op_; }
  const pf::FrobeniusBasis& frobenius() const { return frobenius_; }
  /// Jets (rows θ^j, columns Frobenius solutions) at z, continued from the seed.
  Eigen::MatrixXcd jets_at(pf::cplx z) const;

 private:
  HolomorphicFrame from_jets(pf::cplx z, const Eigen::MatrixXcd& jets) const;

  pf::PFOperator op_;
  pf::FrobeniusBasis frobenius_;
  Eigen::MatrixXcd basis_change_;
  Eigen::MatrixXcd q_;
  PicardFuchsSettings settings_;
  std::vector<int> hodge_;
};

}  // namespace hml::vhs
