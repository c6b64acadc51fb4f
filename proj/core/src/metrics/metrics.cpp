#include "hml/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hml::metrics {
namespace {

struct DegreeState {
  vhs::FilteredFrame frame;
  vhs::GramMatrices gram;
  vhs::ConnectionBlocks blocks;
};

DegreeState analyze(const vhs::Variation& v, const vhs::HolomorphicFrame& holomorphic, const Point& t,
                    double threshold) {
  DegreeState s{vhs::filter(holomorphic, v.polarization(), v.weight(), t), {}, {}};
  s.gram = vhs::gram_at(s.frame);
  s.blocks = vhs::connection_at(s.frame, threshold);
  return s;
}

Eigen::MatrixXcd sum_terms(const DegreeState& s) {
  const int m = s.blocks.moduli_dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  for (int p = 1; p <= s.blocks.weight(); ++p) h += vhs::hodge_term(s.blocks, s.gram, p);
  return h;
}

// Scalars sampled on the stencil.
struct Layout {
  int n = 0;
  int chern_sum(int k) const { return k; }
  int block(int p) const { return n + 1 + p; }
  int log_det_wp() const { return 2 * n + 2; }
  int flag_first() const { return 2 * n + 3; }
  int size() const { return 2 * n + 4; }
};

}  // namespace

MetricPoint evaluate_metrics(const vhs::Family& family, const Point& z, const MetricOptions& options) {
  const int n = family.weight();
  const int m = family.moduli_dim();
  MetricPoint out;
  out.z = z;
  out.t = family.to_model(z);
  out.weight = n;
  out.moduli_dim = m;
  out.chi = family.euler_characteristic();
  const Point& t = out.t;

  std::vector<vhs::FrameEvaluator> evaluators;
  for (int k = 0; k <= n; ++k) evaluators.push_back(family.variation(k).local(t));

  // Connection route at the center.
  std::vector<DegreeState> center;
  for (int k = 0; k <= n; ++k)
    center.push_back(analyze(family.variation(k), evaluators[k](t), t, options.transversality_threshold));
  const DegreeState& top = center[n];
  out.h_ph.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    out.h_ph[k] = sum_terms(center[k]);
    out.transversality = std::max(out.transversality, center[k].blocks.transversality_residual);
    out.commutation = std::max(out.commutation, vhs::commutation_residual(center[k].blocks));
  }
  out.h_wp = vhs::hodge_term(top.blocks, top.gram, n);
  const vhs::Curvature curvature = vhs::curvature_via_connection(top.blocks, top.gram);
  for (int p = 0; p <= n; ++p) out.block_chern_connection.push_back(curvature.chern_form(top.gram, p));

  // Finite-difference route.
  out.has_finite_differences = options.finite_differences;
  if (options.finite_differences) {
    const Layout layout{n};
    const vhs::WirtingerStencil stencil(t, vhs::fd_steps(family.top().length_scale(t), options.fd),
                                        options.fd.richardson_levels);
    std::vector<Eigen::VectorXcd> samples;
    samples.reserve(stencil.points().size());
    for (const Point& w : stencil.points()) {
      Eigen::VectorXcd s = Eigen::VectorXcd::Zero(layout.size());
      for (int k = 0; k <= n; ++k) {
        if (family.variation(k).is_constant()) continue;
        const DegreeState st = analyze(family.variation(k), evaluators[k](w), w, options.transversality_threshold);
        double chern_sum = 0.0;
        for (int p = 1; p <= k; ++p) chern_sum += p * vhs::log_det(st.gram.g[p]);
        s(layout.chern_sum(k)) = chern_sum;
        if (k != n) continue;
        double first = 0.0;
        for (int p = 0; p <= n; ++p) {
          const double l = vhs::log_det(st.gram.g[p]);
          s(layout.block(p)) = l;
          if (p >= 1) first += l;
        }
        s(layout.flag_first()) = first;
        const Eigen::MatrixXcd wp = vhs::hodge_term(st.blocks, st.gram, n);
        s(layout.log_det_wp()) = vhs::log_det(0.5 * (wp + wp.adjoint()));
      }
      samples.push_back(std::move(s));
    }
    const auto derivs = stencil.differentiate(samples);
    auto minus_ddbar = [&](int c) { return Eigen::MatrixXcd(-derivs.mixed[c]); };

    out.h_ph_chern.resize(n + 1);
    for (int k = 0; k <= n; ++k) out.h_ph_chern[k] = minus_ddbar(layout.chern_sum(k));
    out.h_wp_potential = minus_ddbar(layout.block(n));
    out.flag_chern_top = out.h_wp_potential;
    out.flag_chern_first = minus_ddbar(layout.flag_first());
    out.ric_wp = minus_ddbar(layout.log_det_wp());
    for (int p = 0; p <= n; ++p) out.block_chern_fd.push_back(minus_ddbar(layout.block(p)));
  }

  // Reported coordinates.
  auto report = [&](Eigen::MatrixXcd& h) {
    if (h.size() != 0) h = family.to_reported(h, z);
  };
  report(out.h_wp);
  report(out.h_wp_potential);
  report(out.flag_chern_top);
  report(out.flag_chern_first);
  report(out.ric_wp);
  for (auto& h : out.h_ph) report(h);
  for (auto& h : out.h_ph_chern) report(h);
  for (auto& h : out.block_chern_fd) report(h);
  for (auto& h : out.block_chern_connection) report(h);

  out.h_h.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    out.h_h[k] = Eigen::MatrixXcd::Zero(m, m);
    for (int j = k; j >= 0; j -= 2) out.h_h[k] += out.h_ph[j];
  }
  const double chi12 = static_cast<double>(out.chi) / 12.0;
  out.h_bcov = -chi12 * out.h_wp;
  for (int i = 1; i <= n; ++i) out.h_bcov += (i % 2 == 0 ? 1.0 : -1.0) * out.h_h[i];
  out.h_bcov_primitive = (n % 2 == 0 ? 1.0 : -1.0) * out.h_h[n] - chi12 * out.h_wp;
  return out;
}

double skew_part(const Eigen::MatrixXcd& h) {
  const double norm = h.norm();
  return norm == 0.0 ? 0.0 : 0.5 * (h - h.adjoint()).norm() / norm;
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return 0.0;
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double relative_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& scale) {
  const double s = std::max(scale.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / s;
}

Eigen::MatrixXcd weil_petersson_at(const vhs::Family& family, const Point& z, const MetricOptions& options) {
  const MetricPoint mp = evaluate_metrics(family, z, options);
  const double diff = relative_difference(mp.h_wp_potential, mp.h_wp, mp.h_wp);
  if (mp.h_wp.norm() > 0.0 && diff > options.wp_route_tolerance) {
    std::ostringstream os;
    os << "WP route mismatch (relative difference " << diff << ")";
    throw std::runtime_error(os.str());
  }
  return mp.h_wp_potential;
}

GeneralizedHodge generalized_hodge_at(const vhs::Family& family, const Point& z, int k, const MetricOptions& options) {
  if (k < 0 || k > family.weight()) throw std::invalid_argument("degree out of range");
  const MetricPoint mp = evaluate_metrics(family, z, options);
  const Eigen::MatrixXcd& h = mp.h_ph[k];
  const double trace = std::abs(h.trace().real());
  if (min_eigenvalue(h) < -1e-8 * std::max(trace, std::numeric_limits<double>::min()))
    throw std::runtime_error("semidefiniteness violated");
  return {mp.h_ph[k], mp.h_h[k]};
}

Eigen::MatrixXcd hodge_metric_at(const vhs::Family& family, const Point& z, const MetricOptions& options) {
  return generalized_hodge_at(family, z, family.weight(), options).h_ph;
}

Eigen::MatrixXcd ricci_wp_at(const vhs::Family& family, const Point& z, const MetricOptions& options) {
  return evaluate_metrics(family, z, options).ric_wp;
}

namespace {

double lower_degree_size(const MetricPoint& mp) {
  double worst = 0.0;
  for (int k = 0; k < mp.weight; ++k) worst = std::max(worst, mp.h_h[k].cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

Eigen::MatrixXcd bcov_hessian_at(const vhs::Family& family, const Point& z, const MetricOptions& options) {
  const MetricPoint mp = evaluate_metrics(family, z, options);
  if (lower_degree_size(mp) <= 1e-10) {
    const double diff = relative_difference(mp.h_bcov, mp.h_bcov_primitive, mp.h_bcov);
    if (mp.h_bcov.norm() > 0.0 && diff > 1e-8) throw std::runtime_error("primitivity route mismatch");
  }
  return mp.h_bcov;
}

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

const IdentityCheck* IdentityReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

IdentityReport identity_suite(const MetricPoint& mp, const IdentityTolerances& tol) {
  IdentityReport report;
  auto add = [&](std::string name, double residual, double tolerance) {
    const bool pass = std::isfinite(residual) && residual <= tolerance;
    report.checks.push_back({std::move(name), residual, tolerance, pass});
  };
  const int n = mp.weight;
  const double m = mp.moduli_dim;
  const Eigen::MatrixXcd& wp = mp.h_wp;
  const Eigen::MatrixXcd& hodge = mp.h_h[n];
  const double wp_trace = std::abs(wp.trace().real());

  const bool fd = mp.has_finite_differences;
  if (fd) {
    add("wp_routes", relative_difference(mp.h_wp_potential, wp, wp), tol.relative);
    for (int k = 0; k <= n; ++k) {
      const Eigen::MatrixXcd& scale = mp.h_ph[k].norm() > wp.norm() ? mp.h_ph[k] : wp;
      add("ph_routes_k" + std::to_string(k), relative_difference(mp.h_ph_chern[k], mp.h_ph[k], scale), tol.relative);
    }
  }
  for (int k = 0; k <= n; ++k) {
    const double trace = std::max({std::abs(mp.h_ph[k].trace().real()), wp_trace, std::numeric_limits<double>::min()});
    add("semidefinite_k" + std::to_string(k), std::max(0.0, -min_eigenvalue(mp.h_ph[k])) / trace, tol.eigen);
  }
  add("hermitian_wp", skew_part(wp), tol.hermitian);
  add("hermitian_hodge", skew_part(hodge), tol.hermitian);
  if (fd) add("hermitian_ric", skew_part(mp.ric_wp), tol.hermitian);

  if (n == 2) add("hodge_eq_2wp", relative_difference(hodge, 2.0 * wp, wp), tol.algebraic);
  if (n == 3 && fd)
    add("hodge_eq_m3wp_ric", relative_difference(hodge, (m + 3.0) * wp + mp.ric_wp, hodge), tol.relative);
  if (n == 4 && fd)
    add("hodge_eq_2m4wp_2ric", relative_difference(hodge, (2.0 * m + 4.0) * wp + 2.0 * mp.ric_wp, hodge),
        tol.relative);
  if (n >= 2) add("hodge_ge_2wp", std::max(0.0, -min_eigenvalue(hodge - 2.0 * wp)) / wp_trace, tol.eigen);

  if (n >= 1 && fd) {
    add("flag_chern_first", relative_difference(mp.flag_chern_first, wp, wp), tol.relative);
    add("flag_chern_top", relative_difference(mp.flag_chern_top, wp, wp), tol.relative);
  }
  for (int p = 0; p <= n && fd; ++p) {
    const Eigen::MatrixXcd& conn = mp.block_chern_connection[p];
    add("curvature_p" + std::to_string(p),
        relative_difference(mp.block_chern_fd[p], conn, conn.norm() > wp.norm() ? conn : wp), tol.relative);
  }

  Eigen::MatrixXcd alternating = Eigen::MatrixXcd::Zero(wp.rows(), wp.cols());
  for (int i = 1; i <= n; ++i) alternating += (i % 2 == 0 ? 1.0 : -1.0) * mp.h_h[i];
  const Eigen::MatrixXcd quillen = alternating - mp.h_bcov - (static_cast<double>(mp.chi) / 12.0) * wp;
  add("quillen_wiring", quillen.norm() / std::max(alternating.norm() + mp.h_bcov.norm(), 1e-300), tol.algebraic);

  const double lower = lower_degree_size(mp);
  add("primitivity", lower, tol.primitivity);
  if (lower <= tol.primitivity)
    add("bcov_routes", relative_difference(mp.h_bcov, mp.h_bcov_primitive, mp.h_bcov), tol.algebraic);
  add("transversality", mp.transversality, tol.algebraic);
  add("commutation", mp.commutation, tol.algebraic);
  return report;
}

IdentityReport identity_suite_at(const vhs::Family& family, const Point& z, const MetricOptions& options,
                                 const IdentityTolerances& tolerances) {
  return identity_suite(evaluate_metrics(family, z, options), tolerances);
}

}  // namespace hml::metrics
