#include "hml/exterior/kahler_model.hpp"

#include <stdexcept>

namespace hml::exterior {
namespace {

ConstantForm build_omega(int n, const ExactMatrix& h) {
  ConstantForm omega(n, 1, 1);
  const ComplexRational half_i(Rational(0), Rational(1, 2));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) omega.add({IndexMask{1} << j, IndexMask{1} << k}, half_i * h[j][k]);
  return omega;
}

ConstantForm power(const ConstantForm& a, int e) {
  ConstantForm out = ConstantForm::unit(a.dim());
  for (int i = 0; i < e; ++i) out = wedge(out, a);
  return out;
}

ComplexRational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

ComplexRational minor_det(const ExactMatrix& g, IndexMask rows, IndexMask cols) {
  const auto r = indices_of(rows);
  const auto c = indices_of(cols);
  ExactMatrix sub(r.size(), ExactVector(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) sub[i][j] = g[r[i] - 1][c[j] - 1];
  return determinant(std::move(sub));
}

}  // namespace

KahlerModel::KahlerModel(int n, ExactMatrix h) : n_(n), h_(std::move(h)), omega_(n, 1, 1) {
  if (n < 1 || n > ConstantForm::kMaxDim) throw std::invalid_argument("dimension out of range");
  if (h_.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("hermitian matrix has wrong size");
  for (int j = 0; j < n; ++j) {
    if (h_[j].size() != static_cast<std::size_t>(n)) throw std::invalid_argument("hermitian matrix has wrong size");
    for (int k = 0; k < n; ++k)
      if (h_[j][k] != h_[k][j].conj()) throw std::invalid_argument("kahler form is not Hermitian");
  }
  for (int k = 1; k <= n; ++k) {
    ExactMatrix lead(k, ExactVector(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) lead[a][b] = h_[a][b];
    const ComplexRational d = determinant(std::move(lead));
    if (!d.is_real() || sgn(d.real()) <= 0) throw std::invalid_argument("kahler form is not positive definite");
  }
  omega_ = build_omega(n, h_);

  // Normalization from the standard form: ∫ ω_std^n / n! = 1.
  const ConstantForm standard_top = power(build_omega(n, identity_matrix(n)), n);
  const ComplexRational coeff = top_coefficient(standard_top) / factorial(n);
  top_integral_ = ComplexRational(1) / coeff;

  auto inv = inverse(h_);
  if (!inv) throw std::invalid_argument("kahler form is degenerate");
  cotangent_gram_.assign(n, ExactVector(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cotangent_gram_[a][b] = ComplexRational(2) * (*inv)[b][a];
}

KahlerModel KahlerModel::standard(int n) { return KahlerModel(n, identity_matrix(n)); }

KahlerModel KahlerModel::from_hermitian(const ExactMatrix& h) {
  return KahlerModel(static_cast<int>(h.size()), h);
}

KahlerModel KahlerModel::from_form(const ConstantForm& omega) {
  if (omega.p() != 1 || omega.q() != 1) throw std::invalid_argument("kahler form must have bidegree (1,1)");
  const int n = omega.dim();
  const ComplexRational minus_two_i(Rational(0), Rational(-2));
  ExactMatrix h(n, ExactVector(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) h[j][k] = minus_two_i * omega.coefficient({IndexMask{1} << j, IndexMask{1} << k});
  return KahlerModel(n, std::move(h));
}

ComplexRational KahlerModel::integrate(const ConstantForm& top) const {
  if (top.dim() != n_) throw std::invalid_argument("dimension mismatch");
  return top_coefficient(top) * top_integral_;
}

ComplexRational KahlerModel::volume() const { return integrate(power(omega_, n_)) / factorial(n_); }

ComplexRational KahlerModel::pointwise_inner(const ConstantForm& a, const ConstantForm& b) const {
  if (a.dim() != n_ || b.dim() != n_ || a.p() != b.p() || a.q() != b.q())
    throw std::invalid_argument("bidegree mismatch");
  ExactMatrix conj_gram(n_, ExactVector(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) conj_gram[i][j] = cotangent_gram_[i][j].conj();
  ComplexRational sum;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const ComplexRational g = minor_det(cotangent_gram_, ma.holo, mb.holo) * minor_det(conj_gram, ma.anti, mb.anti);
      if (!g.is_zero()) sum += ca * cb.conj() * g;
    }
  }
  return sum;
}

}  // namespace hml::exterior
