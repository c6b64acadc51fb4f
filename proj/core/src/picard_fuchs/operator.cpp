#include "hml/picard_fuchs/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hml::pf {

PFOperator::PFOperator(std::vector<std::vector<mpq_class>> theta_coefficients, std::vector<SingularPoint> singular_points)
    : theta_(std::move(theta_coefficients)), singular_(std::move(singular_points)) {
  if (theta_.size() < 2) throw std::invalid_argument("operator order must be at least 1");
  for (auto& c : theta_) {
    for (auto& v : c) v.canonicalize();
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    z_degree_ = std::max(z_degree_, static_cast<int>(c.size()) - 1);
  }
  const auto& lead = theta_.back();
  if (lead.empty()) throw std::invalid_argument("leading theta coefficient vanishes identically");
  theta_d_.resize(theta_.size());
  for (std::size_t j = 0; j < theta_.size(); ++j)
    for (const auto& v : theta_[j]) theta_d_[j].push_back(v.get_d());

  // Every root of the leading coefficient must be declared.
  const int deg = static_cast<int>(lead.size()) - 1;
  if (deg >= 1) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -theta_d_.back()[i] / theta_d_.back()[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    const auto finite = finite_singular_points();
    for (int r = 0; r < deg; ++r) {
      const cplx root = es.eigenvalues()(r);
      const bool listed = std::any_of(finite.begin(), finite.end(), [&](cplx s) {
        return std::abs(s - root) <= 1e-9 * std::max(1.0, std::abs(root));
      });
      if (!listed) {
        std::ostringstream os;
        os << "singular_points is missing the leading-coefficient root " << root;
        throw std::invalid_argument(os.str());
      }
    }
  }
}

PFOperator PFOperator::quintic() {
  // (5θ+1)(5θ+2)(5θ+3)(5θ+4) = 625θ⁴ + 1250θ³ + 875θ² + 250θ + 24
  std::vector<std::vector<mpq_class>> c = {
      {0, -120}, {0, -1250}, {0, -4375}, {0, -6250}, {1, -3125}};
  return PFOperator(std::move(c), {{cplx(0, 0)}, {cplx(1.0 / 3125.0, 0)}, {cplx(), true}});
}

std::vector<cplx> PFOperator::finite_singular_points() const {
  std::vector<cplx> out;
  for (const auto& s : singular_)
    if (!s.at_infinity) out.push_back(s.value);
  return out;
}

double PFOperator::distance_to_singular(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : singular_)
    if (!s.at_infinity) d = std::min(d, std::abs(z - s.value));
  return d;
}

Eigen::VectorXcd PFOperator::coefficients_at(cplx z) const {
  Eigen::VectorXcd out(theta_d_.size());
  for (std::size_t j = 0; j < theta_d_.size(); ++j) {
    cplx acc = 0.0;
    for (auto it = theta_d_[j].rbegin(); it != theta_d_[j].rend(); ++it) acc = acc * z + *it;
    out(static_cast<Eigen::Index>(j)) = acc;
  }
  return out;
}

double PFOperator::coefficient(int j, int i) const {
  if (j < 0 || j > order()) return 0.0;
  const auto& c = theta_d_[j];
  return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : 0.0;
}

Eigen::MatrixXcd PFOperator::companion(cplx z) const {
  const int n = order();
  const Eigen::VectorXcd c = coefficients_at(z);
  if (std::abs(c(n)) == 0.0) throw std::domain_error("leading coefficient vanishes");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) m(j, j + 1) = 1.0;
  for (int j = 0; j < n; ++j) m(n - 1, j) = -c(j) / c(n);
  return m;
}

}  // namespace hml::pf
