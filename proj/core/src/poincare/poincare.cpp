#include "hml/poincare/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hml/util/parallel.hpp"

namespace hml::poincare {

void PoincareChart::validate() const {
  if (m < 1 || l < 0 || l > m) throw std::invalid_argument("chart needs 0 <= l <= m and m >= 1");
}

void PoincareChart::require_inside(const Point& z) const {
  validate();
  if (z.size() != m) throw std::invalid_argument("point has the wrong dimension");
  for (int i = 0; i < m; ++i) {
    const double r = std::abs(z(i));
    if (!(r < 1.0)) throw std::domain_error("point outside the unit polydisk");
    if (i < l && r == 0.0) throw std::domain_error("point lies on a puncture");
  }
}

Eigen::MatrixXcd poincare_metric_at(const PoincareChart& chart, const Point& z) {
  chart.require_inside(z);
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Identity(chart.m, chart.m);
  for (int i = 0; i < chart.l; ++i) {
    const double r = std::abs(z(i));
    const double log_r = std::log(r);
    tau(i, i) = 1.0 / (r * r * log_r * log_r);
  }
  return tau;
}

double trace_f_at(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& tau) {
  if (h.rows() != tau.rows() || h.cols() != tau.cols() || tau.rows() != tau.cols())
    throw std::invalid_argument("h and tau must be square of equal size");
  const Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (tau + tau.adjoint()));
  if (llt.info() != Eigen::Success) throw std::domain_error("tau is not positive definite");
  return llt.solve(h).trace().real();
}

Eigen::MatrixXcd matrix_abs(const Eigen::MatrixXcd& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (h + h.adjoint()));
  return eig.eigenvectors() * eig.eigenvalues().cwiseAbs().asDiagonal() * eig.eigenvectors().adjoint();
}

std::string quantity_name(SweepQuantity q, int k) {
  return q == SweepQuantity::kBcovAbs ? "abs_bcov" : "h_ph_k" + std::to_string(k);
}

std::vector<double> sweep_phases(int rays) {
  if (rays < 1) throw std::invalid_argument("at least one ray is required");
  std::vector<double> out;
  for (int j = 0; j < rays; ++j) out.push_back(std::numbers::pi * (2 * j + 1) / rays);
  return out;
}

namespace {

void summarize(DominationReport& report, const SweepSettings& settings) {
  bool all_ok = true;
  report.decade_max.assign(settings.decades, 0.0);
  for (const auto& s : report.samples) {
    all_ok = all_ok && s.ok && s.f >= -1e-12 * std::max(1.0, std::abs(s.f));
    if (s.ok) {
      auto& slot = report.decade_max[s.decade - settings.decade_start];
      slot = std::max(slot, s.f);
    }
  }
  const auto& dm = report.decade_max;
  report.sup_f = *std::max_element(dm.begin(), dm.end());
  const double inner = dm.back();
  const double others = *std::max_element(dm.begin(), dm.end() - 1);
  const double third = dm[dm.size() - 3];
  auto ratio = [](double a, double b) { return b > 0.0 ? a / b : (a > 0.0 ? INFINITY : 1.0); };
  report.trend = ratio(inner, dm.front());
  report.inner_excess = ratio(inner, others) - 1.0;
  report.inner_growth = ratio(inner, third) - 1.0;
  report.pass = all_ok && report.inner_excess <= kDominationSlack;
  report.bounded_growth = all_ok && report.inner_growth <= kDominationSlack;
}

}  // namespace

std::vector<DominationReport> domination_sweeps(const vhs::Family& family, const PoincareChart& chart,
                                                const std::vector<SweepTarget>& targets, const SweepSettings& settings) {
  chart.validate();
  if (chart.m != family.moduli_dim()) throw std::invalid_argument("chart dimension does not match the family");
  if (chart.l < 1) throw std::invalid_argument("a sweep needs at least one punctured factor");
  for (int a = 0; a < chart.l; ++a)
    if (family.chart()[a] != vhs::ChartKind::kPuncture)
      throw std::invalid_argument("punctured chart factors must be puncture coordinates of the family");
  for (const auto& target : targets)
    if (target.k < 0 || target.k > family.weight()) throw std::invalid_argument("degree out of range");
  if (settings.decades < 3) throw std::invalid_argument("the growth test needs at least three decades");

  const auto phases = sweep_phases(settings.rays);
  std::vector<SweepSample> plan;
  for (int d = 0; d < settings.decades; ++d)
    for (int j = 0; j < settings.rays; ++j) {
      SweepSample s;
      s.decade = settings.decade_start + d;
      s.ray = j;
      s.z = Point::Zero(chart.m);
      for (int a = 0; a < chart.m; ++a) {
        if (a < chart.l)
          s.z(a) = std::polar(std::pow(10.0, -s.decade), phases[j]);
        else if (a < static_cast<int>(settings.fixed.size()))
          s.z(a) = settings.fixed[a];
      }
      plan.push_back(std::move(s));
    }

  // One metric evaluation per point, all targets read off it.
  const auto evaluated = util::parallel_map<std::vector<SweepSample>>(
      plan.size(),
      [&](std::size_t i) {
        std::vector<SweepSample> out(targets.size(), plan[i]);
        try {
          const auto mp = metrics::evaluate_metrics(family, plan[i].z, settings.metric_options);
          const Eigen::MatrixXcd tau = poincare_metric_at(chart, plan[i].z);
          for (std::size_t q = 0; q < targets.size(); ++q) {
            auto& s = out[q];
            try {
              const Eigen::MatrixXcd h = targets[q].quantity == SweepQuantity::kBcovAbs ? matrix_abs(mp.h_bcov)
                                                                                         : mp.h_ph[targets[q].k];
              s.f = trace_f_at(h, tau);
              s.ok = std::isfinite(s.f);
              if (!s.ok) s.error = "non-finite trace";
            } catch (const std::exception& e) {
              s.error = e.what();
            }
          }
        } catch (const std::exception& e) {
          for (auto& s : out) s.error = e.what();
        }
        return out;
      },
      settings.threads);

  std::vector<DominationReport> reports(targets.size());
  for (std::size_t q = 0; q < targets.size(); ++q) {
    reports[q].quantity = quantity_name(targets[q].quantity, targets[q].k);
    for (const auto& row : evaluated) reports[q].samples.push_back(row[q]);
    summarize(reports[q], settings);
  }
  return reports;
}

DominationReport domination_sweep(const vhs::Family& family, const PoincareChart& chart, SweepQuantity quantity, int k,
                                  const SweepSettings& settings) {
  return domination_sweeps(family, chart, {{quantity, k}}, settings).front();
}

}  // namespace hml::poincare
