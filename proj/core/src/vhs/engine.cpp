#include "hml/vhs/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hml::vhs {
namespace {

Eigen::MatrixXcd solve_right(const Eigen::MatrixXcd& rhs, const Eigen::MatrixXcd& g) {
  // X g = rhs
  return g.transpose().fullPivLu().solve(rhs.transpose()).transpose();
}

}  // namespace

Eigen::MatrixXcd FilteredFrame::component(const Eigen::MatrixXcd& v, int p) const {
  if (blocks[p].rows() == 0) return Eigen::MatrixXcd::Zero(v.rows(), 0);
  return solve_right(v * q_flat * blocks[p].adjoint(), raw_gram[p]);
}

FilteredFrame filter(const HolomorphicFrame& holomorphic, const Eigen::MatrixXcd& q_flat, int weight, const Point& t) {
  if (static_cast<int>(holomorphic.blocks.size()) != weight + 1) throw std::invalid_argument("frame has the wrong weight");
  FilteredFrame f;
  f.t = t;
  f.weight = weight;
  f.q_flat = q_flat;
  f.holomorphic = holomorphic;
  f.blocks.resize(weight + 1);
  f.raw_gram.resize(weight + 1);
  f.lift.assign(weight + 1, std::vector<Eigen::MatrixXcd>(weight + 1));
  for (int p = weight; p >= 0; --p) {
    Eigen::MatrixXcd omega = holomorphic.blocks[p];
    for (int pp = weight; pp > p; --pp) {
      f.lift[p][pp] = f.component(holomorphic.blocks[p], pp);
      if (f.lift[p][pp].size() > 0) omega -= f.lift[p][pp] * f.blocks[pp];
    }
    f.blocks[p] = omega;
    f.raw_gram[p] = omega * q_flat * omega.adjoint();
    if (omega.rows() > 0) {
      const double scale = omega.squaredNorm() * q_flat.norm();
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(f.raw_gram[p]);
      lu.setThreshold(1e-12);
      if (lu.rank() < omega.rows() || !(scale > 0)) {
        std::ostringstream os;
        os << "frame degenerate at t = " << t.transpose();
        throw std::runtime_error(os.str());
      }
    }
  }
  return f;
}

FilteredFrame frame_at(const Variation& v, const Point& t) {
  if (t.size() != v.moduli_dim()) throw std::invalid_argument("point has the wrong dimension");
  return filter(v.frame(t), v.polarization(), v.weight(), t);
}

GramMatrices gram_at(const FilteredFrame& frame) {
  GramMatrices out;
  for (int p = 0; p <= frame.weight; ++p) {
    Eigen::MatrixXcd g = hodge_sign(frame.weight, p) * frame.raw_gram[p];
    if (g.rows() > 0) {
      const double skew = (g - g.adjoint()).norm();
      if (skew > 1e-8 * g.norm()) throw std::runtime_error("polarization sign violated: Gram matrix not Hermitian");
      g = 0.5 * (g + g.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g, Eigen::EigenvaluesOnly);
      if (!(eig.eigenvalues().minCoeff() > 0.0)) {
        std::ostringstream os;
        os << "polarization sign violated in block p = " << p;
        throw std::runtime_error(os.str());
      }
    }
    out.g.push_back(std::move(g));
  }
  return out;
}

int ConnectionBlocks::moduli_dim() const {
  return A.size() > 1 ? static_cast<int>(A[1].size()) : (B.empty() ? 0 : static_cast<int>(B[0].size()));
}

ConnectionBlocks connection_at(const FilteredFrame& frame, double threshold) {
  const int k = frame.weight;
  const int m = frame.moduli_dim();
  ConnectionBlocks out;
  out.A.assign(k + 1, {});
  out.B.assign(k + 1, {});
  for (int p = 0; p <= k; ++p) {
    for (int a = 0; a < m; ++a) {
      const Eigen::MatrixXcd& ds = frame.holomorphic.derivatives[a][p];
      const Eigen::MatrixXcd& s = frame.holomorphic.blocks[p];
      Eigen::MatrixXcd remainder = ds;
      for (int pp = std::max(p - 1, 0); pp <= k; ++pp) {
        const Eigen::MatrixXcd c = frame.component(ds, pp);
        if (c.size() > 0) remainder -= c * frame.blocks[pp];
      }
      const double scale = std::max(ds.norm(), s.norm());
      if (scale > 0) out.transversality_residual = std::max(out.transversality_residual, remainder.norm() / scale);

      if (p >= 1) out.A[p].push_back(frame.component(ds, p - 1));
      // ∂Ω_p = ∂S_p − Σ_{p'>p} ∂(lift Ω_{p'}); only p' = p+1 reaches H^{p}.
      Eigen::MatrixXcd b = frame.component(ds, p);
      if (p + 1 <= k && frame.lift[p][p + 1].size() > 0 && b.size() > 0)
        b -= frame.lift[p][p + 1] * frame.component(frame.holomorphic.derivatives[a][p + 1], p);
      out.B[p].push_back(std::move(b));
    }
  }
  if (out.transversality_residual > threshold) {
    std::ostringstream os;
    os << "transversality violated (residual " << out.transversality_residual << ")";
    throw std::runtime_error(os.str());
  }
  return out;
}

ConnectionBlocks connection_at(const Variation& v, const Point& t, double threshold) {
  return connection_at(frame_at(v, t), threshold);
}

Eigen::MatrixXcd hodge_term(const ConnectionBlocks& blocks, const GramMatrices& gram, int p) {
  const int m = blocks.moduli_dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  if (p < 1 || p > blocks.weight() || gram.g[p].rows() == 0 || gram.g[p - 1].rows() == 0) return h;
  const Eigen::MatrixXcd g_inv = gram.g[p].inverse();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      h(a, b) = (g_inv * blocks.A[p][a] * gram.g[p - 1] * blocks.A[p][b].adjoint()).trace();
  return h;
}

Curvature curvature_via_connection(const ConnectionBlocks& blocks, const GramMatrices& gram) {
  const int k = blocks.weight();
  const int m = blocks.moduli_dim();
  if (static_cast<int>(gram.g.size()) != k + 1) throw std::invalid_argument("dimension mismatch");
  Curvature out;
  out.R.assign(k + 1, std::vector<std::vector<Eigen::MatrixXcd>>(m, std::vector<Eigen::MatrixXcd>(m)));
  for (int p = 0; p <= k; ++p) {
    const Eigen::Index h = gram.g[p].rows();
    const bool down = p >= 1 && gram.g[p - 1].rows() > 0;
    const bool up = p + 1 <= k && gram.g[p + 1].rows() > 0;
    const Eigen::MatrixXcd g_up_inv = up ? Eigen::MatrixXcd(gram.g[p + 1].inverse()) : Eigen::MatrixXcd();
    for (int c = 0; c < m; ++c) {
      for (int d = 0; d < m; ++d) {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(h, h);
        if (h > 0 && down) r += blocks.A[p][c] * gram.g[p - 1] * blocks.A[p][d].adjoint();
        if (h > 0 && up) r -= gram.g[p] * blocks.A[p + 1][d].adjoint() * g_up_inv * blocks.A[p + 1][c] * gram.g[p];
        out.R[p][c][d] = std::move(r);
      }
    }
  }
  return out;
}

Eigen::MatrixXcd Curvature::chern_form(const GramMatrices& gram, int p) const {
  const int m = static_cast<int>(R[p].size());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
  if (gram.g[p].rows() == 0) return c;
  const Eigen::MatrixXcd g_inv = gram.g[p].inverse();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) c(a, b) = (g_inv * R[p][a][b]).trace();
  return c;
}

double commutation_residual(const ConnectionBlocks& blocks) {
  const int k = blocks.weight();
  const int m = blocks.moduli_dim();
  double worst = 0.0;
  for (int p = 1; p + 1 <= k; ++p) {
    for (int a = 0; a < m; ++a) {
      for (int c = 0; c < m; ++c) {
        const auto& upper_a = blocks.A[p + 1][a];
        const auto& upper_c = blocks.A[p + 1][c];
        const auto& lower_a = blocks.A[p][a];
        const auto& lower_c = blocks.A[p][c];
        if (upper_a.size() == 0 || lower_c.size() == 0) continue;
        const double scale = upper_a.norm() * lower_c.norm() + upper_c.norm() * lower_a.norm();
        if (scale == 0.0) continue;
        worst = std::max(worst, (upper_a * lower_c - upper_c * lower_a).norm() / scale);
      }
    }
  }
  return worst;
}

double log_det(const Eigen::MatrixXcd& g) {
  if (g.rows() == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success) throw std::runtime_error("polarization sign violated: Gram matrix not positive");
  double s = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) s += std::log(llt.matrixL()(i, i).real());
  return 2.0 * s;
}

}  // namespace hml::vhs
