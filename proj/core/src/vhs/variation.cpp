#include "hml/vhs/variation.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hml::vhs {

cplx hodge_sign(int k, int p) {
  const int q = k - p;
  const double sign = ((k * (k + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return sign * powers[(((q - p) % 4) + 4) % 4];
}

FrameEvaluator Variation::local(const Point&) const {
  return [this](const Point& t) { return frame(t); };
}

Eigen::VectorXd Variation::length_scale(const Point& t) const {
  return t.cwiseAbs().cwiseMax(1.0);
}

int Variation::rank() const {
  const auto& h = hodge_numbers();
  return std::accumulate(h.begin(), h.end(), 0);
}

ClosedFormVariation::ClosedFormVariation(int weight, int moduli_dim, std::vector<int> hodge_numbers,
                                         Eigen::MatrixXcd polarization, FrameEvaluator frames, bool constant,
                                         LengthScale scale)
    : weight_(weight),
      moduli_dim_(moduli_dim),
      hodge_(std::move(hodge_numbers)),
      q_(std::move(polarization)),
      frames_(std::move(frames)),
      constant_(constant),
      scale_(std::move(scale)) {
  if (weight_ < 0 || static_cast<int>(hodge_.size()) != weight_ + 1)
    throw std::invalid_argument("Hodge numbers must be listed for p = 0..k");
  if (q_.rows() != rank() || q_.cols() != rank()) throw std::invalid_argument("polarization size does not match rank");
}

std::shared_ptr<const Variation> constant_variation(int weight, int moduli_dim, const std::vector<int>& hodge) {
  if (static_cast<int>(hodge.size()) != weight + 1) throw std::invalid_argument("Hodge numbers must be listed for p = 0..k");
  for (int p = 0; p <= weight; ++p)
    if (hodge[p] != hodge[weight - p]) throw std::invalid_argument("Hodge numbers must be symmetric");
  const int n = std::accumulate(hodge.begin(), hodge.end(), 0);
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
  std::vector<Eigen::MatrixXcd> blocks(weight + 1);
  for (int p = 0; p <= weight; ++p) blocks[p] = Eigen::MatrixXcd::Zero(hodge[p], n);

  int next = 0;
  for (int p = weight; 2 * p >= weight; --p) {
    const int conj_p = weight - p;
    for (int i = 0; i < hodge[p]; ++i) {
      if (p == conj_p) {
        blocks[p](i, next) = 1.0;
        q(next, next) = hodge_sign(weight, p).real();
        ++next;
        continue;
      }
      // Ω_p = e_a + i e_b and Ω_{k−p} = e_a − i e_b.
      const int a = next, b = next + 1;
      next += 2;
      blocks[p](i, a) = 1.0;
      blocks[p](i, b) = cplx(0, 1);
      blocks[conj_p](i, a) = 1.0;
      blocks[conj_p](i, b) = cplx(0, -1);
      Eigen::Matrix2cd m;
      if (weight % 2 == 1)
        m << 0, 1, -1, 0;
      else
        m << 1, 0, 0, 1;
      const Eigen::RowVector2cd u(blocks[p](i, a), blocks[p](i, b));
      const cplx value = hodge_sign(weight, p) * (u * m * u.adjoint())(0, 0);
      const double s = value.real() > 0 ? 1.0 : -1.0;
      q.block(a, a, 2, 2) = s * m;
    }
  }
  HolomorphicFrame frame;
  frame.blocks = blocks;
  frame.derivatives.assign(moduli_dim, std::vector<Eigen::MatrixXcd>(weight + 1));
  for (auto& d : frame.derivatives)
    for (int p = 0; p <= weight; ++p) d[p] = Eigen::MatrixXcd::Zero(hodge[p], n);
  return std::make_shared<ClosedFormVariation>(
      weight, moduli_dim, hodge, q, [frame](const Point&) { return frame; }, true);
}

Family::Family(std::string name, int weight, long euler_characteristic,
               std::vector<std::shared_ptr<const Variation>> degrees, std::vector<ChartKind> chart)
    : name_(std::move(name)), weight_(weight), euler_(euler_characteristic), degrees_(std::move(degrees)),
      chart_(std::move(chart)) {
  if (static_cast<int>(degrees_.size()) != weight_ + 1) throw std::invalid_argument("one variation per degree 0..n");
  for (int k = 0; k <= weight_; ++k) {
    if (!degrees_[k]) throw std::invalid_argument("missing variation");
    if (degrees_[k]->weight() != k) throw std::invalid_argument("variation weight does not match its degree");
    if (degrees_[k]->moduli_dim() != moduli_dim()) throw std::invalid_argument("moduli dimension mismatch");
  }
}

Point Family::to_model(const Point& z) const {
  if (z.size() != moduli_dim()) throw std::invalid_argument("point has the wrong dimension");
  Point t = z;
  for (int a = 0; a < moduli_dim(); ++a) {
    if (chart_[a] != ChartKind::kPuncture) continue;
    if (z(a) == cplx(0.0, 0.0)) throw std::domain_error("point lies on the puncture");
    t(a) = std::log(z(a)) / cplx(0, 2 * std::numbers::pi);
  }
  return t;
}

Eigen::VectorXcd Family::jacobian(const Point& z) const {
  Eigen::VectorXcd j = Eigen::VectorXcd::Ones(moduli_dim());
  for (int a = 0; a < moduli_dim(); ++a)
    if (chart_[a] == ChartKind::kPuncture) j(a) = 1.0 / (cplx(0, 2 * std::numbers::pi) * z(a));
  return j;
}

Eigen::MatrixXcd Family::to_reported(const Eigen::MatrixXcd& h, const Point& z) const {
  const Eigen::VectorXcd j = jacobian(z);
  return j.asDiagonal() * h * j.conjugate().asDiagonal();
}

namespace {

class RescaledVariation final : public Variation {
 public:
  RescaledVariation(std::shared_ptr<const Variation> base, cplx c) : base_(std::move(base)), c_(c) {}
  int weight() const override { return base_->weight(); }
  int moduli_dim() const override { return base_->moduli_dim(); }
  const std::vector<int>& hodge_numbers() const override { return base_->hodge_numbers(); }
  const Eigen::MatrixXcd& polarization() const override { return base_->polarization(); }
  bool is_constant() const override { return base_->is_constant(); }
  Eigen::VectorXd length_scale(const Point& s) const override { return base_->length_scale(c_ * s) / std::abs(c_); }
  HolomorphicFrame frame(const Point& s) const override { return scale(base_->frame(c_ * s)); }
  FrameEvaluator local(const Point& center) const override {
    auto inner = base_->local(c_ * center);
    return [inner, c = c_](const Point& s) {
      HolomorphicFrame f = inner(c * s);
      for (auto& d : f.derivatives)
        for (auto& block : d) block *= c;
      return f;
    };
  }

 private:
  HolomorphicFrame scale(HolomorphicFrame f) const {
    for (auto& d : f.derivatives)
      for (auto& block : d) block *= c_;
    return f;
  }
  std::shared_ptr<const Variation> base_;
  cplx c_;
};

}  // namespace

std::shared_ptr<const Family> rescaled(std::shared_ptr<const Family> base, cplx c) {
  if (c == cplx(0.0, 0.0)) throw std::invalid_argument("scale must be nonzero");
  for (auto kind : base->chart())
    if (kind != ChartKind::kIdentity) throw std::invalid_argument("rescaling needs an identity chart");
  std::vector<std::shared_ptr<const Variation>> degrees;
  for (int k = 0; k <= base->weight(); ++k) {
    // Holding the base family keeps the wrapped variation alive.
    std::shared_ptr<const Variation> v(base, &base->variation(k));
    degrees.push_back(std::make_shared<RescaledVariation>(v, c));
  }
  return std::make_shared<Family>(base->name() + "-rescaled", base->weight(), base->euler_characteristic(),
                                  std::move(degrees), base->chart());
}

std::shared_ptr<const Family> with_punctures(std::shared_ptr<const Family> base, int punctured) {
  if (punctured < 0 || punctured > base->moduli_dim()) throw std::invalid_argument("puncture count out of range");
  std::vector<ChartKind> chart = base->chart();
  for (int a = 0; a < punctured; ++a) chart[a] = ChartKind::kPuncture;
  std::vector<std::shared_ptr<const Variation>> degrees;
  for (int k = 0; k <= base->weight(); ++k) degrees.emplace_back(base, &base->variation(k));
  return std::make_shared<Family>(base->name(), base->weight(), base->euler_characteristic(), std::move(degrees),
                                  std::move(chart));
}

}  // namespace hml::vhs
