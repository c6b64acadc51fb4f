#pragma once

#include "hml/exterior/constant_form.hpp"
#include "hml/exterior/exact_linear.hpp"

namespace hml::exterior {

/// Flat Kähler torus C^n / Λ with ω = (i/2) Σ h_{jk} dz_j ∧ dz̄_k.
class KahlerModel {
 public:
  static KahlerModel standard(int n);
  /// h must be Hermitian positive definite (checked by exact leading minors).
  static KahlerModel from_hermitian(const ExactMatrix& h);
  /// Reads h off a (1,1)-form and validates it.
  static KahlerModel from_form(const ConstantForm& omega);

  int dim() const { return n_; }
  const ConstantForm& kahler_form() const { return omega_; }
  const ExactMatrix& hermitian() const { return h_; }
  /// ∫ dz_1∧…∧dz_n∧dz̄_1∧…∧dz̄_n, fixed so that ∫ω^n/n! = 1 for the standard ω.
  const ComplexRational& volume_normalization() const { return top_integral_; }

  ComplexRational integrate(const ConstantForm& top) const;
  /// ∫ω^n/n! = det h.
  ComplexRational volume() const;

  /// Pointwise flat-metric Hermitian product of two forms of equal bidegree.
  ComplexRational pointwise_inner(const ConstantForm& a, const ConstantForm& b) const;

 private:
  KahlerModel(int n, ExactMatrix h);

  int n_;
  ExactMatrix h_;
  ExactMatrix cotangent_gram_;  // <dz_a, dz_b>
  ConstantForm omega_;
  ComplexRational top_integral_;
};

}  // namespace hml::exterior
