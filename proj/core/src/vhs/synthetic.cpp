#include "hml/vhs/synthetic.hpp"

#include <algorithm>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace hml::vhs {
namespace {

void require_upper_half_plane(cplx t) {
  if (!(t.imag() > 0.0)) throw std::domain_error("point outside the upper half-plane");
}

std::vector<std::shared_ptr<const Variation>> constant_lower_degrees(int n, int m) {
  std::vector<std::shared_ptr<const Variation>> out;
  for (int k = 0; k < n; ++k) {
    std::vector<int> h(k + 1, 0);
    if (k == 0) h[0] = 1;
    out.push_back(constant_variation(k, m, h));
  }
  return out;
}

std::shared_ptr<const Family> with_lower_degrees(const std::string& name, std::shared_ptr<const Variation> top) {
  auto degrees = constant_lower_degrees(top->weight(), top->moduli_dim());
  degrees.push_back(std::move(top));
  const int n = static_cast<int>(degrees.size()) - 1;
  return std::make_shared<Family>(name, n, 0, std::move(degrees),
                                  std::vector<ChartKind>(degrees.back()->moduli_dim(), ChartKind::kIdentity));
}

// Distance to the boundary of the period domain, per coordinate.
Eigen::VectorXd imaginary_parts(const Point& t) { return t.imag(); }

Eigen::Matrix2cd q1() {
  Eigen::Matrix2cd q;
  q << 0, 1, -1, 0;
  return q;
}

HolomorphicFrame upper_half_plane_frame(const Point& t) {
  require_upper_half_plane(t(0));
  HolomorphicFrame f;
  f.blocks = {Eigen::MatrixXcd(1, 2), Eigen::MatrixXcd(1, 2)};
  f.blocks[1] << 1.0, t(0);
  f.blocks[0] << 0.0, 1.0;
  f.derivatives = {{Eigen::MatrixXcd::Zero(1, 2), Eigen::MatrixXcd(1, 2)}};
  f.derivatives[0][1] << 0.0, 1.0;
  return f;
}

std::shared_ptr<const Family> upper_half_plane() {
  return with_lower_degrees("upper-half-plane",
                            std::make_shared<ClosedFormVariation>(1, 1, std::vector<int>{1, 1}, q1(), upper_half_plane_frame,
                                                                  false, imaginary_parts));
}

std::shared_ptr<const Family> constant_family() {
  Point at_i(1);
  at_i << cplx(0, 1);
  HolomorphicFrame f = upper_half_plane_frame(at_i);
  f.derivatives[0][1].setZero();
  auto top = std::make_shared<ClosedFormVariation>(
      1, 1, std::vector<int>{1, 1}, q1(), [f](const Point&) { return f; }, true);
  return with_lower_degrees("constant", top);
}

// Sym² of (1, t) in the basis e₁e₁, e₁e₂ + e₂e₁, e₂e₂ with Q = −Sym²Q₁.
std::shared_ptr<const Family> sym2() {
  Eigen::MatrixXcd q(3, 3);
  q << 0, 0, -1, 0, 2, 0, -1, 0, 0;
  auto frames = [](const Point& t) {
    const cplx s = t(0);
    require_upper_half_plane(s);
    HolomorphicFrame f;
    f.blocks.assign(3, Eigen::MatrixXcd(1, 3));
    f.blocks[2] << 1.0, s, s * s;
    f.blocks[1] << 0.0, 1.0, 2.0 * s;
    f.blocks[0] << 0.0, 0.0, 1.0;
    f.derivatives.assign(1, std::vector<Eigen::MatrixXcd>(3, Eigen::MatrixXcd(1, 3)));
    f.derivatives[0][2] << 0.0, 1.0, 2.0 * s;
    f.derivatives[0][1] << 0.0, 0.0, 2.0;
    f.derivatives[0][0] << 0.0, 0.0, 0.0;
    return f;
  };
  return with_lower_degrees("sym2", std::make_shared<ClosedFormVariation>(2, 1, std::vector<int>{1, 1, 1}, q, frames,
                                                                                        false, imaginary_parts));
}

// Abelian surface with period matrix τ = [[t₁, t₂], [t₂, t₁]].
std::shared_ptr<const Family> two_param_abelian() {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(4, 4);
  q.block(0, 2, 2, 2).setIdentity();
  q.block(2, 0, 2, 2) = -Eigen::MatrixXcd::Identity(2, 2);
  auto frames = [](const Point& t) {
    Eigen::Matrix2cd tau;
    tau << t(0), t(1), t(1), t(0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(tau.imag());
    if (!(eig.eigenvalues().minCoeff() > 0.0)) throw std::domain_error("Im τ is not positive definite");
    HolomorphicFrame f;
    f.blocks.assign(2, Eigen::MatrixXcd::Zero(2, 4));
    f.blocks[1].block(0, 0, 2, 2).setIdentity();
    f.blocks[1].block(0, 2, 2, 2) = tau;
    f.blocks[0].block(0, 2, 2, 2).setIdentity();
    f.derivatives.assign(2, std::vector<Eigen::MatrixXcd>(2, Eigen::MatrixXcd::Zero(2, 4)));
    f.derivatives[0][1].block(0, 2, 2, 2).setIdentity();
    f.derivatives[1][1](0, 3) = 1.0;
    f.derivatives[1][1](1, 2) = 1.0;
    return f;
  };
  return with_lower_degrees("two-param-abelian",
                            std::make_shared<ClosedFormVariation>(1, 2, std::vector<int>{2, 2}, q, frames, false,
                                                                  [](const Point& t) {
                                                                    const double y = std::min(t(0).imag() - std::abs(t(1).imag()),
                                                                                              t(0).imag() + std::abs(t(1).imag()));
                                                                    return Eigen::VectorXd::Constant(2, y).eval();
                                                                  }));
}

}  // namespace

std::shared_ptr<const Variation> tensor_product_variation(int r) {
  if (r < 1 || r > 6) throw std::invalid_argument("factor count out of range");
  const int dim = 1 << r;
  // subsets[p]: factors carrying e₂, of size r − p, in increasing bitmask order.
  std::vector<std::vector<unsigned>> subsets(r + 1);
  for (unsigned mask = 0; mask < static_cast<unsigned>(dim); ++mask)
    subsets[r - __builtin_popcount(mask)].push_back(mask);
  std::vector<int> hodge;
  for (int p = 0; p <= r; ++p) hodge.push_back(static_cast<int>(subsets[p].size()));

  Eigen::MatrixXcd q = Eigen::MatrixXcd::Ones(1, 1);
  for (int a = 0; a < r; ++a) q = Eigen::kroneckerProduct(q, q1()).eval();
  if (((r * (r + 3) / 2) % 2) != 0) q = -q;

  auto frames = [r, dim, subsets](const Point& t) {
    for (int a = 0; a < r; ++a) require_upper_half_plane(t(a));
    auto row = [&](unsigned mask) {
      Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
      for (int a = 0; a < r; ++a) {
        Eigen::RowVector2cd factor;
        if (mask & (1u << a))
          factor << 0.0, 1.0;
        else
          factor << 1.0, t(a);
        Eigen::RowVectorXcd next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(2 * i, 2) = v(i) * factor;
        v = next;
      }
      return v;
    };
    HolomorphicFrame f;
    f.blocks.resize(r + 1);
    f.derivatives.assign(r, std::vector<Eigen::MatrixXcd>(r + 1));
    for (int p = 0; p <= r; ++p) {
      const auto n_rows = static_cast<Eigen::Index>(subsets[p].size());
      f.blocks[p].resize(n_rows, dim);
      for (int a = 0; a < r; ++a) f.derivatives[a][p] = Eigen::MatrixXcd::Zero(n_rows, dim);
      for (Eigen::Index i = 0; i < n_rows; ++i) {
        const unsigned mask = subsets[p][i];
        f.blocks[p].row(i) = row(mask);
        for (int a = 0; a < r; ++a)
          if (!(mask & (1u << a))) f.derivatives[a][p].row(i) = row(mask | (1u << a));
      }
    }
    return f;
  };
  return std::make_shared<ClosedFormVariation>(r, r, hodge, q, frames, false, imaginary_parts);
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"upper-half-plane", "constant", "sym2", "two-param-abelian",
                                                 "triple-product", "quadruple-product"};
  return names;
}

bool is_builtin(const std::string& name) {
  const auto& names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::shared_ptr<const Family> builtin_family(const std::string& name) {
  if (name == "upper-half-plane") return upper_half_plane();
  if (name == "constant") return constant_family();
  if (name == "sym2") return sym2();
  if (name == "two-param-abelian") return two_param_abelian();
  if (name == "triple-product") return with_lower_degrees(name, tensor_product_variation(3));
  if (name == "quadruple-product") return with_lower_degrees(name, tensor_product_variation(4));
  throw std::invalid_argument("unknown built-in family '" + name + "'");
}

}  // namespace hml::vhs
