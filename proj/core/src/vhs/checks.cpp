#include "hml/vhs/checks.hpp"

#include <algorithm>
#include <limits>

namespace hml::vhs {
namespace {

double pairing_ratio(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& b, double scale_a) {
  if (a.rows() == 0 || b.rows() == 0) return 0.0;
  const double denom = scale_a * q.norm() * b.norm();
  if (!(denom > 0.0)) return 0.0;
  return (a * q * b.transpose()).norm() / denom;
}

// D_α Ω_p = A^p_α Ω_{p−1}, flattened over (p, α, row, column).
Eigen::VectorXcd projected_derivatives(const FilteredFrame& frame, const ConnectionBlocks& blocks) {
  std::vector<cplx> values;
  for (int p = 1; p <= frame.weight; ++p)
    for (const auto& a : blocks.A[p]) {
      const Eigen::MatrixXcd d = a * frame.blocks[p - 1];
      values.insert(values.end(), d.data(), d.data() + d.size());
    }
  return Eigen::Map<Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

FrameChecks frame_checks(const Variation& v, const Point& t, const FdSettings& fd, double threshold) {
  const int k = v.weight();
  const auto evaluator = v.local(t);
  const FilteredFrame frame = filter(evaluator(t), v.polarization(), k, t);
  const GramMatrices gram = gram_at(frame);
  const ConnectionBlocks blocks = connection_at(frame, threshold);
  const Eigen::MatrixXcd& q = frame.q_flat;

  FrameChecks out;
  out.transversality = blocks.transversality_residual;
  out.commutation = commutation_residual(blocks);
  out.positivity_margin = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= k; ++p) {
    if (gram.g[p].rows() == 0) continue;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram.g[p], Eigen::EigenvaluesOnly);
    out.positivity_margin = std::min(out.positivity_margin, eig.eigenvalues().minCoeff() / gram.g[p].norm());
    for (int p2 = 0; p2 <= k; ++p2) {
      if (p + p2 != k)
        out.riemann_hodge_first = std::max(
            out.riemann_hodge_first, pairing_ratio(frame.blocks[p], q, frame.blocks[p2], frame.blocks[p].norm()));
      if (p + p2 > k) {
        const auto& hp = frame.holomorphic.blocks;
        out.q_flatness = std::max(out.q_flatness, pairing_ratio(hp[p], q, hp[p2], hp[p].norm()));
      }
    }
  }
  if (!std::isfinite(out.positivity_margin)) out.positivity_margin = 1.0;
  if (v.is_constant() || k == 0) return out;

  // ∂̄_β D_α Ω_p by finite differences of the projected derivatives.
  const int m = v.moduli_dim();
  const Eigen::VectorXd scale = v.length_scale(t);
  const WirtingerStencil stencil(t, fd_steps(scale, fd), fd.richardson_levels);
  std::vector<Eigen::VectorXcd> samples;
  samples.reserve(stencil.points().size());
  for (const Point& w : stencil.points()) {
    const FilteredFrame f = filter(evaluator(w), v.polarization(), k, w);
    samples.push_back(projected_derivatives(f, connection_at(f, threshold)));
  }
  const Eigen::VectorXcd center = projected_derivatives(frame, blocks);
  const auto derivs = stencil.differentiate(samples);

  Eigen::Index offset = 0;
  for (int p = 1; p <= k; ++p) {
    const Eigen::Index rows = frame.blocks[p].rows(), cols = frame.blocks[p].cols();
    for (int alpha = 0; alpha < m; ++alpha) {
      const Eigen::Index size = rows * cols;
      const Eigen::MatrixXcd d = Eigen::Map<const Eigen::MatrixXcd>(center.data() + offset, rows, cols);
      for (int beta = 0; beta < m; ++beta) {
        Eigen::MatrixXcd dbar(rows, cols);
        for (Eigen::Index c = 0; c < size; ++c) dbar.data()[c] = derivs.dbar[offset + c](beta);
        const double ref = std::max(dbar.norm(), d.norm() / scale(beta));
        for (int p2 = 0; p2 <= k; ++p2)
          if (p2 != k - p) out.dbar_lemma = std::max(out.dbar_lemma, pairing_ratio(dbar, q, frame.blocks[p2], ref));
      }
      offset += size;
    }
  }
  return out;
}

}  // namespace hml::vhs
