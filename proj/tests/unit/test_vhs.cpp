#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hml/report/config.hpp"
#include "hml/vhs/checks.hpp"
#include "hml/vhs/engine.hpp"
#include "hml/vhs/synthetic.hpp"
#include "hml/vhs/wirtinger.hpp"

using namespace hml::vhs;

namespace {

Point pt(cplx a) {
  Point p(1);
  p << a;
  return p;
}

Point pt(cplx a, cplx b) {
  Point p(2);
  p << a, b;
  return p;
}

// −∂∂̄ log of the top Gram determinant by the connection route.
Eigen::MatrixXcd wp_from_connection(const Variation& v, const Point& t) {
  const auto frame = frame_at(v, t);
  const auto gram = gram_at(frame);
  const auto blocks = connection_at(frame);
  const int n = v.weight();
  return hodge_term(blocks, gram, n);
}

}  // namespace

TEST(HodgeSign, MatchesDefinition) {
  const cplx i(0, 1);
  EXPECT_EQ(hodge_sign(1, 1), i);
  EXPECT_EQ(hodge_sign(1, 0), -i);
  EXPECT_EQ(hodge_sign(2, 1), cplx(-1, 0));
  EXPECT_EQ(hodge_sign(2, 2), cplx(1, 0));
  EXPECT_EQ(hodge_sign(3, 3), i);  // (−1)^6 i^{−3}
  EXPECT_EQ(hodge_sign(0, 0), cplx(1, 0));
}

TEST(Wirtinger, PolynomialDerivatives) {
  // f = z² z̄ + 3 z̄²: ∂f = 2 z z̄, ∂̄f = z² + 6 z̄, ∂∂̄f = 2z.
  const cplx z0(0.3, -0.7);
  WirtingerStencil s(pt(z0), Eigen::VectorXd::Constant(1, 1e-2), 3);
  std::vector<Eigen::VectorXcd> samples;
  for (const auto& p : s.points()) {
    const cplx z = p(0);
    samples.push_back(Eigen::VectorXcd::Constant(1, z * z * std::conj(z) + 3.0 * std::conj(z) * std::conj(z)));
  }
  const auto d = s.differentiate(samples);
  EXPECT_NEAR(std::abs(d.d[0](0) - 2.0 * z0 * std::conj(z0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(d.dbar[0](0) - (z0 * z0 + 6.0 * std::conj(z0))), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(d.mixed[0](0, 0) - 2.0 * z0), 0.0, 1e-10);
}

TEST(Wirtinger, MixedPartialsTwoVariables) {
  // f = z₁ z̄₂ + |z₁|⁴: ∂₁∂̄₂ f = 1, ∂₁∂̄₁ f = 4|z₁|².
  const Point c = pt({0.2, 0.1}, {-0.4, 0.5});
  WirtingerStencil s(c, Eigen::VectorXd::Constant(2, 1e-2), 3);
  std::vector<Eigen::VectorXcd> samples;
  for (const auto& p : s.points())
    samples.push_back(Eigen::VectorXcd::Constant(1, p(0) * std::conj(p(1)) + std::pow(std::norm(p(0)), 2)));
  const auto d = s.differentiate(samples);
  EXPECT_NEAR(std::abs(d.mixed[0](0, 1) - 1.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(d.mixed[0](1, 0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(d.mixed[0](0, 0) - 4.0 * std::norm(c(0))), 0.0, 1e-9);
}

TEST(FdSteps, FloorAndScale) {
  FdSettings fd{0.1, 1e-3, 2};
  Eigen::VectorXd scale(2);
  scale << 2.0, 1e-4;
  const auto h = fd_steps(scale, fd);
  EXPECT_DOUBLE_EQ(h(0), 0.2);
  EXPECT_DOUBLE_EQ(h(1), 1e-3);
}

TEST(UpperHalfPlane, GramIsTwiceImaginaryPart) {
  const auto family = builtin_family("upper-half-plane");
  for (cplx t : {cplx(0.0, 1.0), cplx(-1.3, 0.4), cplx(2.0, 3.5)}) {
    const auto gram = gram_at(frame_at(family->top(), pt(t)));
    EXPECT_NEAR(gram.g[1](0, 0).real(), 2.0 * t.imag(), 1e-12);
    EXPECT_NEAR(gram.g[1](0, 0).imag(), 0.0, 1e-12);
    EXPECT_GT(gram.g[0](0, 0).real(), 0.0);
  }
}

TEST(UpperHalfPlane, ConnectionRouteGivesPoincareMetric) {
  const auto family = builtin_family("upper-half-plane");
  for (cplx t : {cplx(0.0, 1.0), cplx(0.7, 0.25), cplx(-3.0, 2.0)}) {
    const auto h = wp_from_connection(family->top(), pt(t));
    EXPECT_NEAR(h(0, 0).real(), 1.0 / (4.0 * t.imag() * t.imag()), 1e-12);
  }
}

TEST(UpperHalfPlane, RejectsLowerHalfPlane) {
  const auto family = builtin_family("upper-half-plane");
  EXPECT_THROW(frame_at(family->top(), pt({0.0, -1.0})), std::domain_error);
}

TEST(Sym2, MetricIsTwiceTheCurveMetric) {
  const auto family = builtin_family("sym2");
  for (cplx t : {cplx(0.0, 1.0), cplx(1.1, 0.6)}) {
    const double y = t.imag();
    const auto gram = gram_at(frame_at(family->top(), pt(t)));
    // det g_2 ∝ y², so −∂∂̄ log g_2 = 2/(4y²)
    EXPECT_NEAR(gram.g[2](0, 0).real() / (y * y), gram_at(frame_at(family->top(), pt({0.0, 1.0}))).g[2](0, 0).real(),
                1e-12);
    EXPECT_NEAR(wp_from_connection(family->top(), pt(t))(0, 0).real(), 1.0 / (2.0 * y * y), 1e-12);
  }
}

TEST(TwoParamAbelian, WeilPeterssonFromDeterminantOfImTau) {
  const auto family = builtin_family("two-param-abelian");
  const Point t = pt({0.3, 1.7}, {-0.2, 0.4});
  const double y1 = t(0).imag(), y2 = t(1).imag();
  // −∂∂̄ log((y1 − y2)(y1 + y2)) in t coordinates
  const double a = 1.0 / (4.0 * (y1 - y2) * (y1 - y2));
  const double b = 1.0 / (4.0 * (y1 + y2) * (y1 + y2));
  Eigen::Matrix2cd expected;
  expected << a + b, b - a, b - a, a + b;
  EXPECT_LT((wp_from_connection(family->top(), t) - expected).norm(), 1e-12);
  EXPECT_THROW(frame_at(family->top(), pt({0.0, 0.3}, {0.0, 0.5})), std::domain_error);
}

TEST(TensorProduct, HodgeNumbersAreBinomial) {
  const auto v = tensor_product_variation(4);
  EXPECT_EQ(v->hodge_numbers(), (std::vector<int>{1, 4, 6, 4, 1}));
  EXPECT_EQ(v->rank(), 16);
  EXPECT_THROW(tensor_product_variation(0), std::invalid_argument);
}

TEST(TensorProduct, MetricIsSumOfFactors) {
  const auto family = builtin_family("triple-product");
  Point t(3);
  t << cplx(0.1, 0.5), cplx(-0.4, 1.2), cplx(2.0, 0.9);
  const auto h = wp_from_connection(family->top(), t);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double expected = a == b ? 1.0 / (4.0 * t(a).imag() * t(a).imag()) : 0.0;
      EXPECT_NEAR(std::abs(h(a, b) - expected), 0.0, 1e-12) << a << b;
    }
}

TEST(TensorProduct, ConnectionCommutes) {
  const auto family = builtin_family("quadruple-product");
  Point t(4);
  t << cplx(0.1, 0.5), cplx(-0.4, 1.2), cplx(2.0, 0.9), cplx(0.0, 1.0);
  const auto blocks = connection_at(family->top(), t);
  EXPECT_LT(commutation_residual(blocks), 1e-13);
  EXPECT_LT(blocks.transversality_residual, 1e-13);
}

TEST(ConstantFamily, ConnectionVanishes) {
  const auto family = builtin_family("constant");
  const auto blocks = connection_at(family->top(), pt({0.4, 2.0}));
  EXPECT_EQ(blocks.A[1][0].norm(), 0.0);
}

TEST(Punctures, ReportedMetricPicksUpJacobian) {
  const auto family = with_punctures(builtin_family("upper-half-plane"), 1);
  const double r = 1e-3;
  const Point z = pt(std::polar(r, 0.4));
  const Point t = family->to_model(z);
  EXPECT_NEAR(t(0).imag(), -std::log(r) / (2.0 * std::numbers::pi), 1e-12);
  const auto h = family->to_reported(wp_from_connection(family->top(), t), z);
  // 1/(4y²) · |dt/dz|² with y = −log r / 2π
  EXPECT_NEAR(h(0, 0).real() * 4.0 * r * r * std::log(r) * std::log(r), 1.0, 1e-10);
}

TEST(Rescaled, MetricTransformsWithTheScale) {
  const cplx c(0.0, 2.0);
  const auto base = builtin_family("upper-half-plane");
  const auto family = rescaled(base, c);
  const Point s = pt({0.5, -0.5});  // t = c s = 1 + i
  const auto h = family->to_reported(wp_from_connection(family->top(), family->to_model(s)), s);
  EXPECT_NEAR(h(0, 0).real(), std::norm(c) / 4.0, 1e-12);
}

TEST(FrameChecks, SyntheticFamiliesSatisfyRiemannRelationsAndLemma) {
  const FdSettings fd{0.12, 1e-6, 4};
  for (const auto& name : builtin_names()) {
    const auto family = builtin_family(name);
    Point t(family->moduli_dim());
    for (int a = 0; a < t.size(); ++a) t(a) = cplx(0.2 - 0.3 * a, 1.0 - 0.2 * a);
    const auto c = frame_checks(family->top(), t, fd);
    EXPECT_LT(c.riemann_hodge_first, 1e-12) << name;
    EXPECT_GT(c.positivity_margin, 0.0) << name;
    EXPECT_LT(c.q_flatness, 1e-12) << name;
    EXPECT_LT(c.commutation, 1e-12) << name;
    EXPECT_LT(c.dbar_lemma, 1e-9) << name;
  }
}

TEST(PicardFuchs, QuinticFrameIsPolarized) {
  const auto config = hml::report::load_family(HML_SOURCE_DIR "/configs/quintic.json");
  const auto family = hml::report::build_family(config);
  for (double r : {1e-6, 1e-4}) {
    const Point z = pt(std::polar(r, 1.0));
    const Point t = family->to_model(z);
    const auto gram = gram_at(frame_at(family->top(), t));
    for (int p = 0; p <= 3; ++p) EXPECT_GT(gram.g[p](0, 0).real(), 0.0) << p;
    const auto c = frame_checks(family->top(), t, config.fd);
    EXPECT_LT(c.riemann_hodge_first, 1e-8);
    EXPECT_LT(c.q_flatness, 1e-8);
    EXPECT_LT(c.transversality, 1e-8);
    EXPECT_LT(c.dbar_lemma, 1e-5);
  }
}

TEST(PicardFuchs, QuinticLargeComplexStructureLimit) {
  // Cubic prepotential: h_WP → 3/(4y²) in t, up to O(1/y³) corrections.
  const auto config = hml::report::load_family(HML_SOURCE_DIR "/configs/quintic.json");
  const auto family = hml::report::build_family(config);
  const Point t = family->to_model(pt(1e-12));
  const double y = t(0).imag();
  const auto h = wp_from_connection(family->top(), t);
  EXPECT_NEAR(h(0, 0).real() * 4.0 * y * y / 3.0, 1.0, 0.05);
}

TEST(PicardFuchs, RefusesTheMaximalUnipotentPoint) {
  const auto config = hml::report::load_family(HML_SOURCE_DIR "/configs/quintic.json");
  const auto family = hml::report::build_family(config);
  const auto& v = dynamic_cast<const PicardFuchsVariation&>(family->top());
  EXPECT_THROW(v.jets_at(0.0), std::exception);
  EXPECT_THROW(v.jets_at(1.0 / 3125.0), std::exception);
}
