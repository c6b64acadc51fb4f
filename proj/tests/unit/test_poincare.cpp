#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hml/poincare/poincare.hpp"
#include "hml/util/parallel.hpp"
#include "hml/vhs/synthetic.hpp"

using namespace hml::poincare;
using hml::vhs::cplx;

namespace {

Point pt(cplx a) {
  Point p(1);
  p << a;
  return p;
}

SweepSettings quick(int decade_start = 1, int decades = 4, int rays = 4) {
  SweepSettings s;
  s.decade_start = decade_start;
  s.decades = decades;
  s.rays = rays;
  s.metric_options.fd = {0.12, 1e-6, 4};
  return s;
}

}  // namespace

TEST(Poincare, MetricOnPuncturedDisk) {
  const PoincareChart chart{1, 1};
  const double e = std::numbers::e;
  EXPECT_NEAR(poincare_metric_at(chart, pt(1.0 / e))(0, 0).real(), e * e, 1e-12);
  EXPECT_NEAR(poincare_metric_at(chart, pt(std::polar(std::exp(-10.0), 1.0)))(0, 0).real() / (std::exp(20.0) / 100.0),
              1.0, 1e-12);
}

TEST(Poincare, UnpuncturedFactorsAreEuclidean) {
  const PoincareChart chart{1, 2};
  Point z(2);
  z << 0.1, cplx(0.2, 0.3);
  const auto g = poincare_metric_at(chart, z);
  EXPECT_DOUBLE_EQ(g(1, 1).real(), 1.0);
  EXPECT_EQ(g(0, 1), cplx(0.0));
}

TEST(Poincare, ChartValidation) {
  EXPECT_THROW((PoincareChart{3, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((PoincareChart{-1, 2}.validate()), std::invalid_argument);
  EXPECT_THROW(PoincareChart({1, 1}).require_inside(pt(0.0)), std::domain_error);
  EXPECT_THROW(PoincareChart({1, 1}).require_inside(pt(1.5)), std::domain_error);
  EXPECT_NO_THROW(PoincareChart({1, 1}).require_inside(pt(0.5)));
}

TEST(Poincare, TraceOfRelativeMetric) {
  Eigen::MatrixXcd h(2, 2), tau(2, 2);
  h << 1, 0, 0, 2;
  tau << 2, 0, 0, 4;
  EXPECT_NEAR(trace_f_at(h, tau), 1.0, 1e-15);
  // tr(τ⁻¹ h) with τ = [[2,1],[1,2]] and h = I: τ⁻¹ = [[2,−1],[−1,2]]/3
  tau << 2, 1, 1, 2;
  EXPECT_NEAR(trace_f_at(Eigen::MatrixXcd::Identity(2, 2), tau), 4.0 / 3.0, 1e-15);
  tau << 1, 2, 2, 1;
  EXPECT_THROW(trace_f_at(h, tau), std::exception);
}

TEST(Poincare, MatrixAbsoluteValue) {
  Eigen::MatrixXcd h(2, 2);
  h << 0, 1, 1, 0;  // eigenvalues ±1
  EXPECT_LT((matrix_abs(h) - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-14);
  h << -3, 0, 0, 2;
  EXPECT_NEAR(matrix_abs(h)(0, 0).real(), 3.0, 1e-14);
}

TEST(Poincare, SweepPhasesAvoidTheRealAxis) {
  const auto phases = sweep_phases(4);
  ASSERT_EQ(phases.size(), 4u);
  EXPECT_NEAR(phases[0], std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(phases[3], 7 * std::numbers::pi / 4, 1e-15);
}

TEST(Poincare, UpperHalfPlaneRatioIsConstant) {
  const auto family = hml::vhs::with_punctures(hml::vhs::builtin_family("upper-half-plane"), 1);
  const auto report = domination_sweep(*family, PoincareChart{1, 1}, SweepQuantity::kGeneralizedHodge, 1, quick());
  // h_PH = 1/(4 r² log² r) against 1/(r² log² r)
  for (const auto& s : report.samples) {
    ASSERT_TRUE(s.ok) << s.error;
    EXPECT_NEAR(s.f, 0.25, 1e-9);
  }
  EXPECT_NEAR(report.sup_f, 0.25, 1e-9);
  EXPECT_NEAR(report.trend, 1.0, 1e-8);
  EXPECT_TRUE(report.pass);
  EXPECT_TRUE(report.bounded_growth);
}

TEST(Poincare, ConstantFamilyHasZeroRatio) {
  const auto family = hml::vhs::with_punctures(hml::vhs::builtin_family("constant"), 1);
  const auto report = domination_sweep(*family, PoincareChart{1, 1}, SweepQuantity::kGeneralizedHodge, 1, quick());
  EXPECT_EQ(report.sup_f, 0.0);
  EXPECT_TRUE(report.pass);
}

TEST(Poincare, Sym2SweepsBothQuantities) {
  // g_p ∝ y^{2p−2}, so h_PH[2] = −∂∂̄ Σ p log g_p = 4/(4y²), i.e. f = 1 against the puncture metric
  const auto family = hml::vhs::with_punctures(hml::vhs::builtin_family("sym2"), 1);
  const auto reports =
      domination_sweeps(*family, PoincareChart{1, 1},
                        {{SweepQuantity::kGeneralizedHodge, 2}, {SweepQuantity::kBcovAbs, 2}}, quick());
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].quantity, quantity_name(SweepQuantity::kGeneralizedHodge, 2));
  EXPECT_EQ(reports[1].quantity, "abs_bcov");
  for (const auto& s : reports[0].samples) EXPECT_NEAR(s.f, 1.0, 1e-9);
  EXPECT_TRUE(reports[1].pass);
}

TEST(Poincare, SweepRejectsBadSettings) {
  const auto family = hml::vhs::with_punctures(hml::vhs::builtin_family("upper-half-plane"), 1);
  EXPECT_THROW(domination_sweep(*family, PoincareChart{0, 1}, SweepQuantity::kGeneralizedHodge, 1, quick()), std::invalid_argument);
  EXPECT_THROW(domination_sweep(*family, PoincareChart{1, 1}, SweepQuantity::kGeneralizedHodge, 1, quick(1, 2)), std::invalid_argument);
  const auto unpunctured = hml::vhs::builtin_family("upper-half-plane");
  EXPECT_THROW(domination_sweep(*unpunctured, PoincareChart{1, 1}, SweepQuantity::kGeneralizedHodge, 1, quick()), std::invalid_argument);
}

TEST(Poincare, ThreadedSweepMatchesSerial) {
  const auto family = hml::vhs::with_punctures(hml::vhs::builtin_family("triple-product"), 3);
  auto serial = quick(1, 3, 2);
  auto threaded = serial;
  threaded.threads = 3;
  const auto a = domination_sweep(*family, PoincareChart{3, 3}, SweepQuantity::kGeneralizedHodge, 3, serial);
  const auto b = domination_sweep(*family, PoincareChart{3, 3}, SweepQuantity::kGeneralizedHodge, 3, threaded);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].f, b.samples[i].f);
  // r factors: g_mask = Π y_a^{±1}, giving h_PH[r] = 2^{r−1}/(4y_a²) per coordinate and f = r 2^{r−1}/4
  EXPECT_NEAR(a.sup_f, 3.0, 1e-9);
}

TEST(Parallel, PreservesOrder) {
  const auto out = hml::util::parallel_map<int>(50, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(out[i], i * i);
}

TEST(Poincare, TraceIsPositiveAndHomogeneous) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXcd a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = cplx(g(rng), g(rng));
        b(i, j) = cplx(g(rng), g(rng));
      }
    const Eigen::MatrixXcd h = a * a.adjoint();
    const Eigen::MatrixXcd tau = b * b.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(3, 3);
    const double f = trace_f_at(h, tau);
    EXPECT_GE(f, 0.0);
    EXPECT_NEAR(trace_f_at(2.5 * h, tau), 2.5 * f, 1e-12 * std::max(1.0, f));
  }
}
