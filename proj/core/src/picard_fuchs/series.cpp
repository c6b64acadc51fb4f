#include "hml/picard_fuchs/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hml::pf {
namespace {

using Eps = std::vector<cplxl>;  // truncated power series in ε

Eps mul(const Eps& a, const Eps& b) {
  Eps out(a.size(), cplxl(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Eps div(const Eps& a, const Eps& b) {
  Eps out(a.size(), cplxl(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    cplxl acc = a[i];
    for (std::size_t j = 1; j <= i; ++j) acc -= b[j] * out[i - j];
    out[i] = acc / b[0];
  }
  return out;
}

long double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// P_i(x + ε) as an ε-series of the given length, P_i(x) = Σ_j c_{j,i} x^j.
Eps shifted(const PFOperator& op, int i, long double x, std::size_t len) {
  Eps out(len, cplxl(0));
  for (int j = 0; j <= op.order(); ++j) {
    const long double c = op.coefficient(j, i);
    if (c == 0.0L) continue;
    for (std::size_t m = 0; m < len && static_cast<int>(m) <= j; ++m)
      out[m] += c * binom(j, static_cast<int>(m)) * std::pow(x, static_cast<long double>(j - static_cast<int>(m)));
  }
  return out;
}

mpq_class exact_indicial(const PFOperator& op, int i, long k) {
  mpq_class acc = 0, power = 1;
  for (int j = 0; j <= op.order(); ++j) {
    const auto& c = op.theta_coefficients()[j];
    if (i < static_cast<int>(c.size())) acc += c[i] * power;
    power *= k;
  }
  return acc;
}

long double ratio_radius(const std::vector<long double>& magnitudes) {
  // Mean of the last ten nonzero ratios |a_k| / |a_{k-1}|.
  long double sum = 0.0L;
  int count = 0;
  for (std::size_t k = magnitudes.size() - 1; k >= 1 && count < 10; --k) {
    if (magnitudes[k] == 0.0L || magnitudes[k - 1] == 0.0L) continue;
    sum += magnitudes[k] / magnitudes[k - 1];
    ++count;
  }
  if (count == 0 || sum == 0.0L) return std::numeric_limits<long double>::infinity();
  return count / sum;
}

long double geometric_tail(long double last_magnitude, int last_index, long double radius, long double r) {
  if (!std::isfinite(static_cast<double>(radius))) return 0.0L;
  const long double q = r / radius;
  if (q >= 1.0L) return std::numeric_limits<long double>::infinity();
  return last_magnitude * std::pow(r, static_cast<long double>(last_index)) * q / (1.0L - q);
}

}  // namespace

cplx SeriesSolution::evaluate(cplx z) const {
  const cplxl w(z.real() - basepoint.real(), z.imag() - basepoint.imag());
  cplxl acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * w + *it;
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double SeriesSolution::tail_bound_at(double r) const {
  return static_cast<double>(
      geometric_tail(std::abs(coefficients.back()), truncation_order, radius_estimate, r));
}

SeriesSolution series_seed(const PFOperator& op, int order) {
  if (order < 1) throw std::invalid_argument("series order must be positive");
  if (sgn(exact_indicial(op, 0, 0)) != 0) throw std::runtime_error("indicial obstruction at index 0");
  SeriesSolution s;
  s.truncation_order = order;
  s.coefficients.assign(order + 1, cplxl(0));
  s.coefficients[0] = 1;
  const int depth = op.z_degree();
  for (int k = 1; k <= order; ++k) {
    const mpq_class lead = exact_indicial(op, 0, k);
    cplxl num = 0;
    for (int i = 1; i <= std::min(k, depth); ++i)
      num -= static_cast<long double>(exact_indicial(op, i, k - i).get_d()) * s.coefficients[k - i];
    if (sgn(lead) == 0) throw std::runtime_error("recursion breaks down at index " + std::to_string(k));
    s.coefficients[k] = num / static_cast<long double>(lead.get_d());
  }
  std::vector<long double> mags;
  for (const auto& c : s.coefficients) mags.push_back(std::abs(c));
  s.radius_estimate = static_cast<double>(ratio_radius(mags));
  s.tail_bound = s.tail_bound_at(0.5 * s.radius_estimate);
  return s;
}

double recursion_residual(const PFOperator& op, const SeriesSolution& s) {
  const int depth = op.z_degree();
  double worst = 0.0;
  for (int k = 1; k <= s.truncation_order; ++k) {
    cplxl res = 0;
    long double scale = 0;
    for (int i = 0; i <= std::min(k, depth); ++i) {
      const cplxl t = static_cast<long double>(exact_indicial(op, i, k - i).get_d()) * s.coefficients[k - i];
      res += t;
      scale += std::abs(t);
    }
    if (scale > 0) worst = std::max(worst, static_cast<double>(std::abs(res) / scale));
  }
  return worst;
}

FrobeniusBasis FrobeniusBasis::build(const PFOperator& op, int order, FrobeniusNormalization normalization) {
  const int n = op.order();
  for (int j = 0; j < n; ++j)
    if (op.coefficient(j, 0) != 0.0)
      throw std::invalid_argument("z = 0 is not a point of maximal unipotent monodromy");
  if (order < 10) throw std::invalid_argument("series order must be at least 10");

  FrobeniusBasis b;
  b.n_ = n;
  b.normalization_ = normalization;
  const std::size_t len = static_cast<std::size_t>(n);
  b.coeffs_.assign(order + 1, Eps(len, cplxl(0)));
  b.coeffs_[0][0] = 1;
  const int depth = op.z_degree();
  for (int k = 1; k <= order; ++k) {
    Eps num(len, cplxl(0));
    for (int i = 1; i <= std::min(k, depth); ++i) {
      const Eps term = mul(shifted(op, i, static_cast<long double>(k - i), len), b.coeffs_[k - i]);
      for (std::size_t m = 0; m < len; ++m) num[m] -= term[m];
    }
    b.coeffs_[k] = div(num, shifted(op, 0, static_cast<long double>(k), len));
  }
  std::vector<long double> mags;
  for (const auto& c : b.coeffs_) {
    long double m = 0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    mags.push_back(m);
  }
  b.radius_ = static_cast<double>(ratio_radius(mags));
  return b;
}

double FrobeniusBasis::tail_bound_at(double r) const {
  long double m = 0;
  for (const auto& v : coeffs_.back()) m = std::max(m, std::abs(v));
  return static_cast<double>(geometric_tail(m, truncation_order(), radius_, r));
}

Eigen::MatrixXcd FrobeniusBasis::jet(cplx z, int rows) const {
  if (z == cplx(0.0, 0.0)) throw std::domain_error("Frobenius basis is singular at z = 0");
  if (std::abs(z) >= radius_) throw std::domain_error("point outside the Frobenius convergence disk");
  const std::size_t len = static_cast<std::size_t>(n_);
  const cplxl zl(z.real(), z.imag());
  const cplxl logz = std::log(zl);

  Eps zeta(len);  // z^ε
  cplxl power = 1;
  long double fact = 1;
  for (std::size_t m = 0; m < len; ++m) {
    zeta[m] = power / fact;
    power *= logz;
    fact *= static_cast<long double>(m + 1);
  }

  std::vector<Eps> sums(rows, Eps(len, cplxl(0)));
  cplxl zk = 1;
  int quiet = 0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    long double term_size = 0;
    for (int j = 0; j < rows; ++j) {
      Eps shift(len, cplxl(0));  // (k + ε)^j
      for (std::size_t m = 0; m < len && static_cast<int>(m) <= j; ++m)
        shift[m] = binom(j, static_cast<int>(m)) *
                   std::pow(static_cast<long double>(k), static_cast<long double>(j - static_cast<int>(m)));
      const Eps t = mul(shift, coeffs_[k]);
      for (std::size_t m = 0; m < len; ++m) {
        const cplxl v = zk * t[m];
        sums[j][m] += v;
        term_size = std::max(term_size, std::abs(v));
      }
    }
    long double total = 0;
    for (const auto& s : sums)
      for (const auto& v : s) total = std::max(total, std::abs(v));
    quiet = term_size <= 1e-22L * total ? quiet + 1 : 0;
    if (quiet >= 3) break;
    zk *= zl;
  }

  const cplxl two_pi_i(0.0L, 2.0L * std::numbers::pi_v<long double>);
  Eigen::MatrixXcd out(rows, n_);
  for (int j = 0; j < rows; ++j) {
    const Eps full = mul(zeta, sums[j]);
    cplxl scale = 1;
    for (int a = 0; a < n_; ++a) {
      const cplxl v = normalization_ == FrobeniusNormalization::kTwoPiI ? full[a] / scale : full[a];
      out(j, a) = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
      scale *= two_pi_i;
    }
  }
  return out;
}

}  // namespace hml::pf
