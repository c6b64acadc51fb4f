#pragma once

#include <vector>

#include "hml/exterior/constant_form.hpp"
#include "hml/exterior/kahler_model.hpp"

namespace hml::exterior {

/// a = Σ_j L^j components[j], components[j] primitive of bidegree (p−j, q−j).
struct PrimitiveDecomposition {
  std::vector<ConstantForm> components;
};

struct DecomposeOptions {
  /// Allow total degree above n (components below degree 2p+2q−2n forced to zero).
  bool hard_lefschetz = false;
};

/// a ∧ ω.
ConstantForm lefschetz_L(const ConstantForm& a, const KahlerModel& model);
/// L^j a.
ConstantForm lefschetz_power(const ConstantForm& a, const KahlerModel& model, int j);

/// L^{n−k+1} a = 0 for a of degree k ≤ n.
bool is_primitive(const ConstantForm& a, const KahlerModel& model);

PrimitiveDecomposition lefschetz_decompose(const ConstantForm& a, const KahlerModel& model,
                                           DecomposeOptions options = {});

/// ∫ a ∧ b ∧ ω^{n−k} for a, b of total degree k ≤ n.
ComplexRational polarization_Q(const ConstantForm& a, const ConstantForm& b, const KahlerModel& model);

/// i^{q−p} Q(a, b̄), extended to arbitrary (not necessarily primitive) forms of bidegree (p,q).
ComplexRational riemann_pairing(const ConstantForm& a, const ConstantForm& b, const KahlerModel& model);

/// Hermitian inner product on primitive (p,q)-forms:
/// (−1)^{k(k+1)/2} i^{q−p} Q(a, b̄), positive definite on every primitive bidegree.
ComplexRational hodge_inner(const ConstantForm& a, const ConstantForm& b, const KahlerModel& model);

struct NormIdentityTerms {
  ComplexRational lhs;  // riemann_pairing(φ, φ)
  ComplexRational rhs;  // (−1)^{k(k+1)/2} Σ_j (−1)^j (n−k+2j)! ∫|φ_j|² dV
};

NormIdentityTerms norm_identity_terms(const ConstantForm& phi, const KahlerModel& model);
/// lhs − rhs; exactly zero when the identity holds.
ComplexRational norm_identity_residual(const ConstantForm& phi, const KahlerModel& model);

}  // namespace hml::exterior
