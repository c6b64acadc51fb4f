#include <benchmark/benchmark.h>

#include <random>

#include "hml/exterior/lefschetz.hpp"
#include "hml/metrics/metrics.hpp"
#include "hml/picard_fuchs/series.hpp"
#include "hml/poincare/poincare.hpp"
#include "hml/report/verify.hpp"
#include "hml/vhs/engine.hpp"
#include "hml/vhs/synthetic.hpp"

namespace {

using hml::vhs::cplx;
using hml::vhs::Point;

Point at(cplx a) {
  Point p(1);
  p << a;
  return p;
}

const hml::report::FamilyConfig& quintic() {
  static const auto c = hml::report::load_family(HML_SOURCE_DIR "/configs/quintic.json");
  return c;
}

void BM_LefschetzDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto model = hml::exterior::KahlerModel::standard(n);
  std::mt19937 rng(7);
  const int p = n / 2 + n % 2, q = n / 2;
  hml::exterior::ConstantForm a(n, p, q);
  for (const auto& m : hml::exterior::monomial_basis(n, p, q))
    a.set(m, hml::exterior::ComplexRational(hml::exterior::Rational(static_cast<long>(rng() % 7) - 3)));
  for (auto _ : state) benchmark::DoNotOptimize(hml::exterior::lefschetz_decompose(a, model));
}
BENCHMARK(BM_LefschetzDecompose)->Arg(2)->Arg(3)->Arg(4);

void BM_QuinticSeries(benchmark::State& state) {
  const auto op = hml::pf::PFOperator::quintic();
  for (auto _ : state) benchmark::DoNotOptimize(hml::pf::series_seed(op, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_QuinticSeries)->Arg(50)->Arg(200);

void BM_QuinticFrame(benchmark::State& state) {
  const auto family = hml::report::build_family(quintic());
  const Point t = family->to_model(at(std::polar(1e-4, 1.0)));
  for (auto _ : state) benchmark::DoNotOptimize(hml::vhs::frame_at(family->top(), t));
}
BENCHMARK(BM_QuinticFrame);

void BM_EvaluateMetrics(benchmark::State& state, const std::string& name, bool fd) {
  const auto config = name == "quintic" ? quintic() : hml::report::load_family(name);
  const auto family = hml::report::build_family(config);
  hml::metrics::MetricOptions options;
  options.fd = config.fd;
  options.finite_differences = fd;
  Point z(family->moduli_dim());
  for (int a = 0; a < z.size(); ++a) z(a) = name == "quintic" ? std::polar(1e-4, 1.0) : cplx(0.1 * a, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(hml::metrics::evaluate_metrics(*family, z, options));
}
BENCHMARK_CAPTURE(BM_EvaluateMetrics, sym2_fd, std::string("sym2"), true);
BENCHMARK_CAPTURE(BM_EvaluateMetrics, quadruple_fd, std::string("quadruple-product"), true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvaluateMetrics, quintic_fd, std::string("quintic"), true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvaluateMetrics, quintic_connection_only, std::string("quintic"), false)->Unit(benchmark::kMillisecond);

void BM_QuinticSweep(benchmark::State& state) {
  const auto family = hml::report::build_family(quintic());
  hml::poincare::SweepSettings s;
  s.decades = 3;
  s.rays = 4;
  for (auto _ : state)
    benchmark::DoNotOptimize(hml::poincare::domination_sweep(*family, hml::poincare::PoincareChart{1, 1},
                                                             hml::poincare::SweepQuantity::kGeneralizedHodge, 3, s));
}
BENCHMARK(BM_QuinticSweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
