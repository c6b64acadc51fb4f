#include "hml/vhs/pf_variation.hpp"

#include <numbers>
#include <stdexcept>

namespace hml::vhs {
namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

pf::cplx z_of(const Point& t) {
  if (t.size() != 1) throw std::invalid_argument("point has the wrong dimension");
  return std::exp(kTwoPiI * t(0));
}

}  // namespace

PicardFuchsVariation::PicardFuchsVariation(pf::PFOperator op, Eigen::MatrixXcd basis_change,
                                           Eigen::MatrixXcd polarization, PicardFuchsSettings settings)
    : op_(std::move(op)),
      frobenius_(pf::FrobeniusBasis::build(op_, settings.series_order)),
      basis_change_(std::move(basis_change)),
      q_(std::move(polarization)),
      settings_(settings),
      hodge_(static_cast<std::size_t>(op_.order()), 1) {
  const int n = op_.order();
  if (basis_change_.rows() != n || basis_change_.cols() != n) throw std::invalid_argument("basis change must be order × order");
  if (q_.rows() != n || q_.cols() != n) throw std::invalid_argument("polarization must be order × order");
  if (std::abs(basis_change_.determinant()) == 0.0) throw std::invalid_argument("basis change is singular");
  if (settings_.seed_radius >= frobenius_.handoff_radius())
    throw std::invalid_argument("seed radius must lie inside the Frobenius handoff radius");
}

Eigen::MatrixXcd PicardFuchsVariation::jets_at(pf::cplx z) const {
  if (z == pf::cplx(0.0, 0.0)) throw std::domain_error("the period frame is multivalued at z = 0");
  // z = 0 is handled by the Frobenius expansion; only the other points need clearance
  for (pf::cplx c : op_.finite_singular_points())
    if (c != pf::cplx(0.0, 0.0) && std::abs(z - c) < settings_.clearance)
      throw std::domain_error("point closer than the clearance to a singular point");
  if (std::abs(z) <= frobenius_.handoff_radius()) return frobenius_.jet(z);
  const pf::cplx seed = settings_.seed_radius * z / std::abs(z);
  const auto path = pf::plan_path(op_, seed, z, settings_.clearance);
  return pf::integrate_along(op_, Eigen::MatrixXcd(frobenius_.jet(seed)), path, settings_.transport);
}

HolomorphicFrame PicardFuchsVariation::from_jets(pf::cplx z, const Eigen::MatrixXcd& jets) const {
  const int n = weight();
  const Eigen::MatrixXcd frame = pf::derivative_frame(op_, z, jets);
  const Eigen::MatrixXcd bt = basis_change_.transpose();
  HolomorphicFrame f;
  f.blocks.resize(n + 1);
  f.derivatives.assign(1, std::vector<Eigen::MatrixXcd>(n + 1));
  for (int j = 0; j <= n; ++j) f.blocks[n - j] = frame.row(j) * bt;
  // ∂_t θ^j Ω = 2πi θ^{j+1} Ω
  for (int j = 0; j < n; ++j) f.derivatives[0][n - j] = kTwoPiI * f.blocks[n - j - 1];
  f.derivatives[0][0] = kTwoPiI * (pf::theta_closure(op_, z, frame) * bt);
  return f;
}

HolomorphicFrame PicardFuchsVariation::frame(const Point& t) const {
  const pf::cplx z = z_of(t);
  return from_jets(z, jets_at(z));
}

FrameEvaluator PicardFuchsVariation::local(const Point& center) const {
  const pf::cplx z0 = z_of(center);
  Eigen::MatrixXcd jets0 = jets_at(z0);
  return [this, z0, jets0 = std::move(jets0)](const Point& t) {
    const pf::cplx z = z_of(t);
    return from_jets(z, pf::continue_locally(op_, z0, jets0, z));
  };
}

}  // namespace hml::vhs
