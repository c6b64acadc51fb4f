#include "hml/vhs/wirtinger.hpp"

#include <cmath>
#include <stdexcept>

namespace hml::vhs {
namespace {

// Real direction u < m moves Re t_u, u ≥ m moves Im t_{u−m}.
cplx direction(int u, int m) { return u < m ? cplx(1, 0) : cplx(0, 1); }

}  // namespace

Eigen::VectorXd fd_steps(const Eigen::VectorXd& scale, const FdSettings& settings) {
  if (!(settings.relative_step > 0.0) || !(settings.floor > 0.0)) throw std::invalid_argument("fd steps must be positive");
  Eigen::VectorXd h(scale.size());
  for (Eigen::Index a = 0; a < scale.size(); ++a) h(a) = std::max(settings.relative_step * scale(a), settings.floor);
  return h;
}

WirtingerStencil::WirtingerStencil(Point center, Eigen::VectorXd steps, int levels)
    : center_(std::move(center)), steps_(std::move(steps)), levels_(levels), m_(static_cast<int>(center_.size())) {
  if (levels_ < 1) throw std::invalid_argument("at least one stencil level is required");
  if (steps_.size() != m_) throw std::invalid_argument("one step per coordinate");
  const int r = 2 * m_;
  points_.push_back(center_);
  lookup_.assign(levels_, std::vector<int>(static_cast<std::size_t>(r * 2 * r * 2), -1));
  for (int level = 0; level < levels_; ++level) {
    const double scale = std::ldexp(1.0, -level);
    auto shift = [&](int u, int s) {
      Point p = Point::Zero(m_);
      p(u % m_) = static_cast<double>(s) * scale * steps_(u % m_) * direction(u, m_);
      return p;
    };
    for (int u = 0; u < r; ++u) {
      for (int su = 0; su < 2; ++su) {
        points_.push_back(center_ + shift(u, su ? 1 : -1));
        lookup_[level][((u * 2 + su) * r + u) * 2 + 0] = static_cast<int>(points_.size()) - 1;
      }
      for (int v = u + 1; v < r; ++v)
        for (int su = 0; su < 2; ++su)
          for (int sv = 0; sv < 2; ++sv) {
            points_.push_back(center_ + shift(u, su ? 1 : -1) + shift(v, sv ? 1 : -1));
            lookup_[level][((u * 2 + su) * r + v) * 2 + sv] = static_cast<int>(points_.size()) - 1;
          }
    }
  }
}

int WirtingerStencil::index(int level, int u, int su, int v, int sv) const {
  const int r = 2 * m_;
  return lookup_[level][((u * 2 + su) * r + v) * 2 + sv];
}

WirtingerStencil::Derivatives WirtingerStencil::differentiate(const std::vector<Eigen::VectorXcd>& samples) const {
  if (samples.size() != points_.size()) throw std::invalid_argument("one sample per stencil point");
  const Eigen::Index nc = samples[0].size();
  const int r = 2 * m_;
  const Eigen::VectorXcd& f0 = samples[0];

  // Per level: real gradient and Hessian, then Richardson over levels.
  std::vector<std::vector<Eigen::VectorXcd>> grad(levels_, std::vector<Eigen::VectorXcd>(r));
  std::vector<std::vector<std::vector<Eigen::VectorXcd>>> hess(
      levels_, std::vector<std::vector<Eigen::VectorXcd>>(r, std::vector<Eigen::VectorXcd>(r)));
  for (int level = 0; level < levels_; ++level) {
    const double scale = std::ldexp(1.0, -level);
    for (int u = 0; u < r; ++u) {
      const double hu = scale * steps_(u % m_);
      const auto& plus = samples[index(level, u, 1, u, 0)];
      const auto& minus = samples[index(level, u, 0, u, 0)];
      grad[level][u] = (plus - minus) / (2.0 * hu);
      hess[level][u][u] = (plus - 2.0 * f0 + minus) / (hu * hu);
      for (int v = u + 1; v < r; ++v) {
        const double hv = scale * steps_(v % m_);
        const Eigen::VectorXcd cross = samples[index(level, u, 1, v, 1)] - samples[index(level, u, 1, v, 0)] -
                                       samples[index(level, u, 0, v, 1)] + samples[index(level, u, 0, v, 0)];
        hess[level][u][v] = cross / (4.0 * hu * hv);
        hess[level][v][u] = hess[level][u][v];
      }
    }
  }
  auto extrapolate = [&](auto get) {
    std::vector<Eigen::VectorXcd> table;
    for (int level = 0; level < levels_; ++level) table.push_back(get(level));
    for (int j = 1; j < levels_; ++j) {
      const double factor = std::pow(4.0, j) - 1.0;
      for (int level = levels_ - 1; level >= j; --level)
        table[level] = table[level] + (table[level] - table[level - 1]) / factor;
    }
    return table.back();
  };
  std::vector<Eigen::VectorXcd> g(r);
  std::vector<std::vector<Eigen::VectorXcd>> hs(r, std::vector<Eigen::VectorXcd>(r));
  for (int u = 0; u < r; ++u) {
    g[u] = extrapolate([&](int level) { return grad[level][u]; });
    for (int v = 0; v < r; ++v) hs[u][v] = extrapolate([&](int level) { return hess[level][u][v]; });
  }

  Derivatives out;
  const cplx i(0, 1);
  for (Eigen::Index c = 0; c < nc; ++c) {
    Eigen::VectorXcd d(m_), db(m_);
    Eigen::MatrixXcd mixed(m_, m_);
    for (int a = 0; a < m_; ++a) {
      d(a) = 0.5 * (g[a](c) - i * g[a + m_](c));
      db(a) = 0.5 * (g[a](c) + i * g[a + m_](c));
      for (int b = 0; b < m_; ++b)
        mixed(a, b) = 0.25 * (hs[a][b](c) + hs[a + m_][b + m_](c) + i * (hs[a][b + m_](c) - hs[a + m_][b](c)));
    }
    out.d.push_back(std::move(d));
    out.dbar.push_back(std::move(db));
    out.mixed.push_back(std::move(mixed));
  }
  return out;
}

}  // namespace hml::vhs
