#pragma once

#include <vector>

#include "hml/vhs/variation.hpp"

namespace hml::vhs {

/// Frames of the Hodge components H^{p,k−p} at one point.
struct FilteredFrame {
  Point t;
  int weight = 0;
  Eigen::MatrixXcd q_flat;
  /// blocks[p]: rows Ω_{p,i} spanning H^{p,k−p}.
  std::vector<Eigen::MatrixXcd> blocks;
  /// raw_gram[p](i, j) = Q(Ω_{p,i}, conj Ω_{p,j}).
  std::vector<Eigen::MatrixXcd> raw_gram;
  /// lift[p][p'] for p' > p: holomorphic block p = Ω_p + Σ_{p'} lift[p][p'] Ω_{p'}.
  std::vector<std::vector<Eigen::MatrixXcd>> lift;
  HolomorphicFrame holomorphic;

  int moduli_dim() const { return static_cast<int>(holomorphic.derivatives.size()); }
  /// Coefficients of the H^{p} component of row vectors v: v_p = C Ω_p.
  Eigen::MatrixXcd component(const Eigen::MatrixXcd& v, int p) const;
};

/// Removes from each holomorphic block its components along the higher blocks,
/// projecting with the pairing Q(·, conj ·).
FilteredFrame filter(const HolomorphicFrame& holomorphic, const Eigen::MatrixXcd& q_flat, int weight, const Point& t);
FilteredFrame frame_at(const Variation& v, const Point& t);

/// g_p = c(k,p) Q(Ω_{p,i}, conj Ω_{p,j}), Hermitian positive definite.
struct GramMatrices {
  std::vector<Eigen::MatrixXcd> g;
};

/// Throws "polarization sign violated" unless every g_p is Hermitian positive definite.
GramMatrices gram_at(const FilteredFrame& frame);

/// A[p][α] maps H^{p} to H^{p−1}: D_α Ω_{p,i} = Σ_l A[p][α](i, l) Ω_{p−1,l}.
/// B[p][α] is the H^{p} component of ∂_α Ω_p.  A[0] is empty.
struct ConnectionBlocks {
  std::vector<std::vector<Eigen::MatrixXcd>> A;
  std::vector<std::vector<Eigen::MatrixXcd>> B;
  /// Largest relative norm of ∂_α(holomorphic block p) outside F^{p−1}.
  double transversality_residual = 0.0;

  int weight() const { return static_cast<int>(A.size()) - 1; }
  int moduli_dim() const;
};

/// Throws "transversality violated" when the residual exceeds `threshold`.
ConnectionBlocks connection_at(const FilteredFrame& frame, double threshold = 1e-8);
ConnectionBlocks connection_at(const Variation& v, const Point& t, double threshold = 1e-8);

/// Contribution of H^{p} → H^{p−1} to the generalized Hodge metric:
/// P_p(α, β) = tr(g_p⁻¹ A^p_α g_{p−1} (A^p_β)*).
Eigen::MatrixXcd hodge_term(const ConnectionBlocks& blocks, const GramMatrices& gram, int p);

/// R[p][γ][δ] = A^p_γ g_{p−1} (A^p_δ)* − g_p (A^{p+1}_δ)* g_{p+1}⁻¹ A^{p+1}_γ g_p: the Chern
/// curvature of H^{p} in the frame Ω_p, with tr(g_p⁻¹ R) = −∂∂̄ log det g_p.
struct Curvature {
  std::vector<std::vector<std::vector<Eigen::MatrixXcd>>> R;
  /// m × m matrix tr(g_p⁻¹ R[p][γ][δ]).
  Eigen::MatrixXcd chern_form(const GramMatrices& gram, int p) const;
};

Curvature curvature_via_connection(const ConnectionBlocks& blocks, const GramMatrices& gram);

/// max over p, α, γ of ‖A^{p+1}_α A^p_γ − A^{p+1}_γ A^p_α‖ / (‖A^{p+1}_α‖‖A^p_γ‖ + ‖A^{p+1}_γ‖‖A^p_α‖).
double commutation_residual(const ConnectionBlocks& blocks);

/// log det of a Hermitian positive definite matrix (0 for an empty one).
double log_det(const Eigen::MatrixXcd& g);

}  // namespace hml::vhs
