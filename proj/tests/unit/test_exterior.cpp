#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hml/exterior/lefschetz.hpp"
#include "exterior_fixtures.hpp"

using namespace hml::exterior;
using hml::testing::random_form;
using hml::testing::skew_model;

namespace {

// Alternating-tensor oracle over the 2n covectors dz_1..dz_n, dz̄_1..dz̄_n.

int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) sign = -sign;
  return sign;
}

std::vector<int> flat_indices(const Monomial& m, int n) {
  std::vector<int> s;
  for (int i : indices_of(m.holo)) s.push_back(i - 1);
  for (int i : indices_of(m.anti)) s.push_back(n + i - 1);
  return s;
}

// Component A_{i1..ik} of the antisymmetric tensor.
ComplexRational component(const ConstantForm& f, const std::vector<int>& idx) {
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
  const int n = f.dim();
  for (const auto& [m, c] : f.terms()) {
    if (flat_indices(m, n) == sorted) return ComplexRational(permutation_sign(idx)) * c;
  }
  return 0;
}

ComplexRational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Coefficient of e_S in a ∧ b via (1/(k! l!)) Σ_σ sgn σ A(σ…) B(σ…).
ComplexRational brute_force_wedge_coefficient(const ConstantForm& a, const ConstantForm& b,
                                              const std::vector<int>& sorted_target) {
  const int k = a.degree(), l = b.degree();
  std::vector<int> perm(k + l);
  std::iota(perm.begin(), perm.end(), 0);
  ComplexRational sum;
  do {
    std::vector<int> ia, ib;
    for (int i = 0; i < k; ++i) ia.push_back(sorted_target[perm[i]]);
    for (int i = k; i < k + l; ++i) ib.push_back(sorted_target[perm[i]]);
    ComplexRational t = component(a, ia) * component(b, ib);
    if (!t.is_zero()) sum += ComplexRational(permutation_sign(perm)) * t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / (factorial(k) * factorial(l));
}

}  // namespace

TEST(Wedge, UnitIsNeutral) {
  const auto model = KahlerModel::standard(2);
  EXPECT_EQ(wedge(ConstantForm::unit(2), model.kahler_form()), model.kahler_form());
}

TEST(Wedge, DisjointMonomialsFollowOrderingConvention) {
  const auto a = ConstantForm::monomial(2, {1}, {1});
  const auto b = ConstantForm::monomial(2, {2}, {2});
  // dz1 dz̄1 dz2 dz̄2 = −dz1 dz2 dz̄1 dz̄2
  EXPECT_EQ(wedge(a, b), ConstantForm::monomial(2, {1, 2}, {1, 2}, -1));
}

TEST(Wedge, DegreeOverflowThrows) {
  const auto a = ConstantForm::monomial(1, {1}, {1});
  EXPECT_THROW(wedge(a, a), std::domain_error);
}

TEST(Wedge, MatchesPermutationSumOracle) {
  std::mt19937 rng(11);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const int p1 = static_cast<int>(rng() % 2), q1 = static_cast<int>(rng() % 2);
      const int p2 = 1, q2 = static_cast<int>(rng() % 2) + (n == 3 ? 1 : 0);
      const auto a = random_form(rng, n, p1, q1);
      const auto b = random_form(rng, n, p2, std::min(q2, n - q1));
      const auto w = wedge(a, b);
      for (const Monomial& m : monomial_basis(n, w.p(), w.q()))
        EXPECT_EQ(w.coefficient(m), brute_force_wedge_coefficient(a, b, flat_indices(m, n)));
    }
  }
}

TEST(Wedge, GradedCommutative) {
  std::mt19937 rng(5);
  const auto a = random_form(rng, 3, 1, 0);
  const auto b = random_form(rng, 3, 1, 1);
  const auto c = random_form(rng, 3, 0, 1);
  EXPECT_EQ(wedge(a, b), wedge(b, a));
  EXPECT_EQ(wedge(a, c), ComplexRational(-1) * wedge(c, a));
}

TEST(Lefschetz, PowersOfUnit) {
  for (int n = 1; n <= 3; ++n) {
    const auto model = KahlerModel::standard(n);
    EXPECT_EQ(lefschetz_L(ConstantForm::unit(n), model), model.kahler_form());
    EXPECT_FALSE(lefschetz_power(ConstantForm::unit(n), model, n).is_zero());
    EXPECT_THROW(lefschetz_power(ConstantForm::unit(n), model, n + 1), std::domain_error);
    EXPECT_EQ(model.volume(), ComplexRational(1));
  }
}

TEST(Lefschetz, PrimitiveElevenFormOnSurface) {
  const auto model = KahlerModel::standard(2);
  // η = dz1∧dz̄1 − dz2∧dz̄2 is primitive and L η = 0.
  auto eta = ConstantForm::monomial(2, {1}, {1}) - ConstantForm::monomial(2, {2}, {2});
  EXPECT_TRUE(is_primitive(eta, model));
  EXPECT_TRUE(lefschetz_L(eta, model).is_zero());
  // ∫ η∧η by hand: η∧η = −2 dz1 dz̄1 dz2 dz̄2 = 2 dz1dz2dz̄1dz̄2, ∫ = 2·4.
  EXPECT_EQ(polarization_Q(eta, eta, model), ComplexRational(8));
}

TEST(Lefschetz, DecomposeKahlerFormOnSurface) {
  const auto model = KahlerModel::standard(2);
  const auto d = lefschetz_decompose(model.kahler_form(), model);
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_TRUE(d.components[0].is_zero());
  EXPECT_EQ(d.components[1], ConstantForm::unit(2));
}

TEST(Lefschetz, PrimitiveInputIsItsOwnDecomposition) {
  const auto model = KahlerModel::standard(3);
  auto eta = ConstantForm::monomial(3, {1}, {2});
  const auto d = lefschetz_decompose(eta, model);
  EXPECT_EQ(d.components[0], eta);
  EXPECT_TRUE(d.components[1].is_zero());
}

TEST(Lefschetz, RandomReconstructionAndPrimitivity) {
  std::mt19937 rng(17);
  for (int n = 1; n <= 3; ++n) {
    const auto model = skew_model(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q)
        for (int trial = 0; trial < 10; ++trial) {
          const auto a = random_form(rng, n, p, q);
          const auto d = lefschetz_decompose(a, model);
          ConstantForm sum(n, p, q);
          for (std::size_t j = 0; j < d.components.size(); ++j) {
            EXPECT_TRUE(is_primitive(d.components[j], model));
            sum += lefschetz_power(d.components[j], model, static_cast<int>(j));
          }
          EXPECT_EQ(sum, a);
        }
  }
}

TEST(Lefschetz, HardLefschetzExtension) {
  const auto model = KahlerModel::standard(2);
  std::mt19937 rng(3);
  const auto a = random_form(rng, 2, 2, 1);
  EXPECT_THROW(lefschetz_decompose(a, model), std::domain_error);
  const auto d = lefschetz_decompose(a, model, {.hard_lefschetz = true});
  EXPECT_TRUE(d.components[0].is_zero());
  EXPECT_EQ(lefschetz_L(d.components[1], model), a);
}

TEST(Polarization, TorusIntegralOfDzDzbar) {
  // ∫ dz∧dz̄ = −2i ∫ dx∧dy = −2i on the unit-volume torus.
  const auto model = KahlerModel::standard(1);
  const auto q = polarization_Q(ConstantForm::monomial(1, {1}, {}), ConstantForm::monomial(1, {}, {1}), model);
  EXPECT_EQ(q, ComplexRational(0, -2));
}

TEST(Polarization, SymmetryAndOddVanishing) {
  std::mt19937 rng(23);
  for (int n = 1; n <= 3; ++n) {
    const auto model = skew_model(n);
    for (int k = 0; k <= n; ++k)
      for (int p = 0; p <= k; ++p) {
        const auto a = random_form(rng, n, p, k - p);
        const auto b = random_form(rng, n, k - p, p);
        const ComplexRational sign = k % 2 == 0 ? 1 : -1;
        EXPECT_EQ(polarization_Q(a, b, model), sign * polarization_Q(b, a, model));
        if (k % 2 == 1) EXPECT_TRUE(polarization_Q(a, a, model).is_zero());
      }
  }
}

TEST(Polarization, DegreeMismatchThrows) {
  const auto model = KahlerModel::standard(2);
  EXPECT_THROW(polarization_Q(ConstantForm::unit(2), ConstantForm::monomial(2, {1}, {}), model),
               std::invalid_argument);
}

TEST(HodgeInner, ExplicitSurfaceValue) {
  // a = dz1∧dz̄2: a∧ā = −dz1dz2dz̄1dz̄2 integrates to −4; the signed product is 4.
  const auto model = KahlerModel::standard(2);
  const auto a = ConstantForm::monomial(2, {1}, {2});
  EXPECT_EQ(hodge_inner(a, a, model), ComplexRational(4));
  EXPECT_TRUE(hodge_inner(ConstantForm(2, 1, 1), a, model).is_zero());
}

TEST(HodgeInner, RejectsNonPrimitive) {
  const auto model = KahlerModel::standard(2);
  EXPECT_THROW(hodge_inner(model.kahler_form(), model.kahler_form(), model), std::invalid_argument);
}

TEST(HodgeInner, SesquilinearAndHermitian) {
  std::mt19937 rng(29);
  const auto model = skew_model(3);
  const auto d1 = lefschetz_decompose(random_form(rng, 3, 2, 1), model);
  const auto d2 = lefschetz_decompose(random_form(rng, 3, 2, 1), model);
  const auto& a = d1.components[0];
  const auto& b = d2.components[0];
  const ComplexRational s(Rational(2, 3), Rational(-5, 7));
  EXPECT_EQ(hodge_inner(a * s, b, model), s * hodge_inner(a, b, model));
  EXPECT_EQ(hodge_inner(a, b * s, model), s.conj() * hodge_inner(a, b, model));
  EXPECT_EQ(hodge_inner(a, b, model), hodge_inner(b, a, model).conj());
}

TEST(NormIdentity, KahlerFormOnSurface) {
  const auto model = KahlerModel::standard(2);
  const auto t = norm_identity_terms(model.kahler_form(), model);
  EXPECT_EQ(t.lhs, ComplexRational(2));
  EXPECT_EQ(t.rhs, ComplexRational(2));
  EXPECT_TRUE(norm_identity_residual(ConstantForm(2, 1, 1), model).is_zero());
}

TEST(NormIdentity, HolomorphicOneFormOnCurve) {
  const auto model = KahlerModel::standard(1);
  const auto t = norm_identity_terms(ConstantForm::monomial(1, {1}, {}), model);
  EXPECT_EQ(t.lhs, ComplexRational(-2));
  EXPECT_EQ(t.rhs, ComplexRational(-2));
}

TEST(NormIdentity, RandomFormsExactlyZero) {
  std::mt19937 rng(31);
  for (int n = 1; n <= 3; ++n) {
    const auto model = skew_model(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= p && p + q <= n; ++q)
        for (int trial = 0; trial < 5; ++trial)
          EXPECT_TRUE(norm_identity_residual(random_form(rng, n, p, q), model).is_zero())
              << "n=" << n << " (" << p << "," << q << ")";
  }
}

TEST(NormIdentity, RejectsBadBidegree) {
  const auto model = KahlerModel::standard(2);
  EXPECT_THROW(norm_identity_residual(ConstantForm::monomial(2, {}, {1}), model), std::invalid_argument);
}

TEST(KahlerModel, RejectsIndefiniteForm) {
  ExactMatrix h = {{1, 2}, {2, 1}};
  EXPECT_THROW(KahlerModel::from_hermitian(h), std::invalid_argument);
  ExactMatrix nh = {{1, ComplexRational(0, 1)}, {ComplexRational(0, 1), 2}};
  EXPECT_THROW(KahlerModel::from_hermitian(nh), std::invalid_argument);
}

TEST(KahlerModel, FormRoundTrip) {
  const auto model = skew_model(3);
  const auto again = KahlerModel::from_form(model.kahler_form());
  EXPECT_EQ(again.hermitian(), model.hermitian());
}

TEST(RiemannHodge, FirstRelationOnPrimitivePieces) {
  std::mt19937 rng(37);
  for (int n = 2; n <= 3; ++n) {
    const auto model = skew_model(n);
    for (int k = 1; k <= n; ++k)
      for (int p1 = 0; p1 <= k; ++p1)
        for (int p2 = 0; p2 <= k; ++p2) {
          if (p1 == k - p2) continue;
          const auto e1 = lefschetz_decompose(random_form(rng, n, p1, k - p1), model).components[0];
          const auto e2 = lefschetz_decompose(random_form(rng, n, p2, k - p2), model).components[0];
          EXPECT_TRUE(polarization_Q(e1, e2, model).is_zero());
        }
  }
}

TEST(RiemannHodge, SecondRelationPositive) {
  std::mt19937 rng(41);
  for (int n = 1; n <= 3; ++n) {
    const auto model = skew_model(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q)
        for (int trial = 0; trial < 5; ++trial) {
          const auto eta = lefschetz_decompose(random_form(rng, n, p, q), model).components[0];
          if (eta.is_zero()) continue;
          const auto v = hodge_inner(eta, eta, model);
          EXPECT_TRUE(v.is_real());
          EXPECT_GT(sgn(v.real()), 0) << "n=" << n << " (" << p << "," << q << ")";
        }
  }
}
