#include "hml/exterior/lefschetz.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hml/exterior/exact_linear.hpp"

namespace hml::exterior {
namespace {

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

int sign_k(int k) { return (k * (k + 1) / 2) % 2 == 0 ? 1 : -1; }

bool fits(int n, int p, int q) { return p >= 0 && q >= 0 && p <= n && q <= n; }

}  // namespace

ConstantForm lefschetz_L(const ConstantForm& a, const KahlerModel& model) {
  if (a.dim() != model.dim()) throw std::invalid_argument("dimension mismatch");
  return wedge(a, model.kahler_form());
}

ConstantForm lefschetz_power(const ConstantForm& a, const KahlerModel& model, int j) {
  ConstantForm out = a;
  for (int i = 0; i < j; ++i) out = lefschetz_L(out, model);
  return out;
}

bool is_primitive(const ConstantForm& a, const KahlerModel& model) {
  const int n = model.dim();
  const int k = a.degree();
  if (k > n) throw std::domain_error("primitivity is defined for degree at most n");
  const int e = n - k + 1;
  if (!fits(n, a.p() + e, a.q() + e)) return true;
  return lefschetz_power(a, model, e).is_zero();
}

PrimitiveDecomposition lefschetz_decompose(const ConstantForm& a, const KahlerModel& model,
                                           DecomposeOptions options) {
  const int n = model.dim();
  if (a.dim() != n) throw std::invalid_argument("dimension mismatch");
  const int p = a.p(), q = a.q(), k = a.degree();
  if (k > n && !options.hard_lefschetz) throw std::domain_error("degree above n needs the hard Lefschetz option");
  const int r = std::min(p, q);
  const int jmin = std::max(0, k - n);

  PrimitiveDecomposition out;
  for (int j = 0; j <= r; ++j) out.components.emplace_back(n, p - j, q - j);
  if (jmin > r) {
    if (!a.is_zero()) throw std::runtime_error("model not polarized");
    return out;
  }

  // Unknowns: coefficients of φ_j for jmin ≤ j ≤ r, stacked.
  struct Unknown {
    int j;
    Monomial m;
  };
  std::vector<Unknown> unknowns;
  for (int j = jmin; j <= r; ++j)
    for (const Monomial& m : monomial_basis(n, p - j, q - j)) unknowns.push_back({j, m});

  // Equation rows: reconstruction in Λ^{p,q}, then the primitivity kernel of each φ_j.
  std::map<std::pair<int, Monomial>, std::size_t> row_of;  // (block, monomial)
  std::size_t rows = 0;
  for (const Monomial& m : monomial_basis(n, p, q)) row_of[{-1, m}] = rows++;
  std::vector<int> kernel_power(r + 1, -1);
  for (int j = jmin; j <= r; ++j) {
    const int e = n - (k - 2 * j) + 1;
    if (!fits(n, p - j + e, q - j + e)) continue;
    kernel_power[j] = e;
    for (const Monomial& m : monomial_basis(n, p - j + e, q - j + e)) row_of[{j, m}] = rows++;
  }

  ExactMatrix lhs(rows, ExactVector(unknowns.size()));
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& [j, m] = unknowns[u];
    ConstantForm basis_form(n, p - j, q - j);
    basis_form.set(m, 1);
    const ConstantForm image = lefschetz_power(basis_form, model, j);
    for (const auto& [mm, c] : image.terms()) lhs[row_of.at({-1, mm})][u] = c;
    if (kernel_power[j] >= 0) {
      const ConstantForm kernel_image = lefschetz_power(basis_form, model, kernel_power[j]);
      for (const auto& [mm, c] : kernel_image.terms()) lhs[row_of.at({j, mm})][u] = c;
    }
  }
  ExactVector rhs(rows);
  for (const auto& [m, c] : a.terms()) rhs[row_of.at({-1, m})] = c;

  auto solution = solve_unique(std::move(lhs), std::move(rhs));
  if (!solution) throw std::runtime_error("model not polarized");
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    out.components[unknowns[u].j].set(unknowns[u].m, (*solution)[u]);
  return out;
}

ComplexRational polarization_Q(const ConstantForm& a, const ConstantForm& b, const KahlerModel& model) {
  const int n = model.dim();
  if (a.dim() != n || b.dim() != n) throw std::invalid_argument("dimension mismatch");
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
  const int k = a.degree();
  if (k > n) throw std::domain_error("polarization is defined for degree at most n");
  if (a.p() + b.p() != k) return 0;  // not of complementary type, integrand vanishes
  return model.integrate(lefschetz_power(wedge(a, b), model, n - k));
}

ComplexRational riemann_pairing(const ConstantForm& a, const ConstantForm& b, const KahlerModel& model) {
  if (a.p() != b.p() || a.q() != b.q()) throw std::invalid_argument("bidegree mismatch");
  return ComplexRational::i_power(a.q() - a.p()) * polarization_Q(a, b.conj(), model);
}

ComplexRational hodge_inner(const ConstantForm& a, const ConstantForm& b, const KahlerModel& model) {
  if (a.p() != b.p() || a.q() != b.q()) throw std::invalid_argument("bidegree mismatch");
  if (!is_primitive(a, model) || !is_primitive(b, model))
    throw std::invalid_argument("inner product defined on primitive forms");
  return ComplexRational(sign_k(a.degree())) * riemann_pairing(a, b, model);
}

NormIdentityTerms norm_identity_terms(const ConstantForm& phi, const KahlerModel& model) {
  const int n = model.dim();
  const int p = phi.p(), q = phi.q(), k = phi.degree();
  if (phi.dim() != n || p < q || k > n) throw std::invalid_argument("bidegree out of range");
  NormIdentityTerms t;
  t.lhs = riemann_pairing(phi, phi, model);
  const auto decomposition = lefschetz_decompose(phi, model);
  const ComplexRational volume = model.volume();
  for (std::size_t j = 0; j < decomposition.components.size(); ++j) {
    const ConstantForm& c = decomposition.components[j];
    if (c.is_zero()) continue;
    ComplexRational term = ComplexRational(factorial(n - k + 2 * static_cast<int>(j))) *
                           model.pointwise_inner(c, c) * volume;
    t.rhs += j % 2 == 0 ? term : -term;
  }
  t.rhs *= ComplexRational(sign_k(k));
  return t;
}

ComplexRational norm_identity_residual(const ConstantForm& phi, const KahlerModel& model) {
  const auto t = norm_identity_terms(phi, model);
  return t.lhs - t.rhs;
}

}  // namespace hml::exterior
