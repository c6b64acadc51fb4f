#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hml::vhs {

using cplx = std::complex<double>;
/// Point of the moduli chart, one complex number per coordinate.
using Point = Eigen::VectorXcd;

/// Sign making (p, k−p) classes positive: c = (−1)^{k(k+1)/2} (√−1)^{k−2p}.
cplx hodge_sign(int k, int p);

/// Holomorphic frame of the Hodge filtration at one point.
/// blocks[p] has h^{p,k−p} rows in the flat basis and spans F^p modulo F^{p+1}.
struct HolomorphicFrame {
  std::vector<Eigen::MatrixXcd> blocks;
  /// derivatives[α][p] = ∂blocks[p]/∂t_α.
  std::vector<std::vector<Eigen::MatrixXcd>> derivatives;
};

using FrameEvaluator = std::function<HolomorphicFrame(const Point&)>;
/// Per-coordinate length over which the frame changes appreciably near t.
using LengthScale = std::function<Eigen::VectorXd(const Point&)>;

/// Polarized variation of Hodge structure of weight k over an m-dimensional chart.
class Variation {
 public:
  virtual ~Variation() = default;

  virtual int weight() const = 0;
  virtual int moduli_dim() const = 0;
  /// h^{p,k−p} for p = 0..k.
  virtual const std::vector<int>& hodge_numbers() const = 0;
  virtual const Eigen::MatrixXcd& polarization() const = 0;
  virtual HolomorphicFrame frame(const Point& t) const = 0;
  /// Evaluator for points close to `center`.  The default calls frame().
  virtual FrameEvaluator local(const Point& center) const;
  virtual bool is_constant() const { return false; }
  /// Sets finite-difference steps.  Default: |t_γ|, at least 1.
  virtual Eigen::VectorXd length_scale(const Point& t) const;

  int rank() const;
};

/// Variation given by a closed-form frame function.
class ClosedFormVariation final : public Variation {
 public:
  ClosedFormVariation(int weight, int moduli_dim, std::vector<int> hodge_numbers, Eigen::MatrixXcd polarization,
                      FrameEvaluator frames, bool constant = false, LengthScale scale = {});

  int weight() const override { return weight_; }
  int moduli_dim() const override { return moduli_dim_; }
  const std::vector<int>& hodge_numbers() const override { return hodge_; }
  const Eigen::MatrixXcd& polarization() const override { return q_; }
  HolomorphicFrame frame(const Point& t) const override { return frames_(t); }
  bool is_constant() const override { return constant_; }
  Eigen::VectorXd length_scale(const Point& t) const override { return scale_ ? scale_(t) : Variation::length_scale(t); }

 private:
  int weight_;
  int moduli_dim_;
  std::vector<int> hodge_;
  Eigen::MatrixXcd q_;
  FrameEvaluator frames_;
  bool constant_;
  LengthScale scale_;
};

/// Constant pure-type variation of weight k with the given h^{p,k−p}.
std::shared_ptr<const Variation> constant_variation(int weight, int moduli_dim, const std::vector<int>& hodge_numbers);

/// Coordinates on which a family is reported.  Puncture coordinates z relate to the
/// model coordinate by z = exp(2πi t).
enum class ChartKind { kIdentity, kPuncture };

/// A family: one variation per degree k = 0..n (degree n carries the moduli
/// dependence), plus the chart between reported and model coordinates.
class Family {
 public:
  Family(std::string name, int weight, long euler_characteristic, std::vector<std::shared_ptr<const Variation>> degrees,
         std::vector<ChartKind> chart);

  const std::string& name() const { return name_; }
  int weight() const { return weight_; }
  int moduli_dim() const { return static_cast<int>(chart_.size()); }
  long euler_characteristic() const { return euler_; }
  const Variation& variation(int k) const { return *degrees_.at(static_cast<std::size_t>(k)); }
  const Variation& top() const { return *degrees_.back(); }
  const std::vector<ChartKind>& chart() const { return chart_; }

  /// Model coordinate t of the reported point z.
  Point to_model(const Point& z) const;
  /// Diagonal entries of dt/dz.
  Eigen::VectorXcd jacobian(const Point& z) const;
  /// Hermitian coefficient matrix in model coordinates pulled back to reported ones.
  Eigen::MatrixXcd to_reported(const Eigen::MatrixXcd& h_model, const Point& z) const;

 private:
  std::string name_;
  int weight_;
  long euler_;
  std::vector<std::shared_ptr<const Variation>> degrees_;
  std::vector<ChartKind> chart_;
};

/// Same variations, reported in q_a = exp(2πi t_a) for the first `punctured`
/// coordinates.  The base chart must be the identity there.
std::shared_ptr<const Family> with_punctures(std::shared_ptr<const Family> base, int punctured);

/// Family with t = c·s: frames at s are those of `base` at c·s.
std::shared_ptr<const Family> rescaled(std::shared_ptr<const Family> base, cplx c);

}  // namespace hml::vhs
