#include "hml/picard_fuchs/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace hml::pf {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<cplx>;

double segment_distance(cplx a, cplx b, cplx c) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(c - a);
  const double s = std::clamp(((c - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(a + s * d - c);
}

// Truncated power series in a scaled local variable.
using Series = std::vector<cplx>;

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Series series_div(const Series& a, const Series& b) {
  Series out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    cplx acc = a[i];
    for (std::size_t j = 1; j <= i; ++j) acc -= b[j] * out[i - j];
    out[i] = acc / b[0];
  }
  return out;
}

}  // namespace

PathPlan plan_path(const PFOperator& op, cplx from, cplx to, double clearance, DetourSide side) {
  if (!(clearance > 0.0)) throw std::invalid_argument("clearance must be positive");
  if (op.distance_to_singular(from) < clearance || op.distance_to_singular(to) < clearance)
    throw std::invalid_argument("path endpoint closer than the clearance to a singular point");
  PathPlan path{{from, to}, clearance};
  if (from == to) return path;
  const auto singular = op.finite_singular_points();
  const cplx turn = side == DetourSide::kLeft ? cplx(0, 1) : cplx(0, -1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool clean = true;
    for (std::size_t i = 0; i + 1 < path.waypoints.size() && clean; ++i) {
      const cplx a = path.waypoints[i], b = path.waypoints[i + 1];
      for (cplx c : singular) {
        if (segment_distance(a, b, c) >= clearance) continue;
        const cplx u = (b - a) / std::abs(b - a);
        const cplx v = turn * u;
        const double d = 2.0 * clearance;
        const cplx w1 = c - d * u + d * v;
        const cplx w2 = c + d * u + d * v;
        path.waypoints.insert(path.waypoints.begin() + static_cast<std::ptrdiff_t>(i) + 1, {w1, w2});
        clean = false;
        break;
      }
    }
    if (clean) return path;
  }
  throw std::runtime_error("cannot plan a path with the requested clearance");
}

void validate_path(const PFOperator& op, const PathPlan& path) {
  if (path.waypoints.empty()) throw std::invalid_argument("path has no waypoints");
  const auto singular = op.finite_singular_points();
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    const cplx a = path.waypoints[i];
    const cplx b = i + 1 < path.waypoints.size() ? path.waypoints[i + 1] : a;
    for (cplx c : singular) {
      if (segment_distance(a, b, c) < path.clearance) {
        std::ostringstream os;
        os << "path segment " << i << " violates the clearance around " << c;
        throw std::invalid_argument(os.str());
      }
    }
  }
}

Eigen::MatrixXcd integrate_along(const PFOperator& op, const Eigen::MatrixXcd& jets, const PathPlan& path,
                                 const TransportOptions& options) {
  const int n = op.order();
  if (jets.rows() != n) throw std::invalid_argument("jet dimension does not match operator order");
  validate_path(op, path);
  const Eigen::Index cols = jets.cols();
  State state(static_cast<std::size_t>(n * cols));
  for (Eigen::Index c = 0; c < cols; ++c)
    for (int j = 0; j < n; ++j) state[c * n + j] = jets(j, c);

  using Stepper = odeint::runge_kutta_fehlberg78<State, double, State, double>;
  auto controlled = odeint::make_controlled(options.tolerance, options.tolerance, Stepper());
  long steps = 0;
  for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
    const cplx a = path.waypoints[seg], b = path.waypoints[seg + 1];
    if (a == b) continue;
    const cplx delta = b - a;
    auto system = [&](const State& y, State& dy, double s) {
      const cplx z = a + s * delta;
      const Eigen::VectorXcd coeff = op.coefficients_at(z);
      const cplx factor = delta / z;
      for (Eigen::Index c = 0; c < cols; ++c) {
        const cplx* yc = &y[c * n];
        cplx* dc = &dy[c * n];
        cplx top = 0.0;
        for (int j = 0; j < n; ++j) top -= coeff(j) * yc[j];
        for (int j = 0; j + 1 < n; ++j) dc[j] = factor * yc[j + 1];
        dc[n - 1] = factor * top / coeff(n);
      }
    };
    double s = 0.0;
    double dt = std::min(0.05, 0.25 * op.distance_to_singular(a) / std::abs(delta));
    while (1.0 - s > 1e-15) {
      if (s + dt > 1.0) dt = 1.0 - s;
      if (controlled.try_step(system, state, s, dt) == odeint::fail && dt < options.min_step)
        throw std::runtime_error("path too close to singularity");
      if (++steps > options.max_steps) throw std::runtime_error("path too close to singularity");
    }
  }
  Eigen::MatrixXcd out(n, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (int j = 0; j < n; ++j) out(j, c) = state[c * n + j];
  return out;
}

Eigen::VectorXcd integrate_along(const PFOperator& op, const Eigen::VectorXcd& jet, const PathPlan& path,
                                 const TransportOptions& options) {
  return integrate_along(op, Eigen::MatrixXcd(jet), path, options).col(0);
}

Eigen::MatrixXcd continue_locally(const PFOperator& op, cplx z0, const Eigen::MatrixXcd& jets, cplx z1) {
  const int n = op.order();
  if (jets.rows() != n) throw std::invalid_argument("jet dimension does not match operator order");
  const double rho = std::min(op.distance_to_singular(z0), std::abs(z0));
  const cplx u1 = (z1 - z0) / rho;
  if (std::abs(u1) > 0.5) throw std::invalid_argument("local continuation step too large");
  if (z1 == z0) return jets;

  // Expand ρ·A(z0 + ρu) with A = C(z)/z in powers of u.
  constexpr std::size_t kTerms = 80;
  Series inv_z(kTerms);
  {
    const cplx ratio = rho / z0;
    cplx power = ratio;
    for (std::size_t r = 0; r < kTerms; ++r) {
      inv_z[r] = (r % 2 == 0 ? 1.0 : -1.0) * power;
      power *= ratio;
    }
  }
  std::vector<Series> poly(n + 1, Series(kTerms, 0.0));  // c_j(z0 + ρu)
  const Series linear = [&] {
    Series s(kTerms, 0.0);
    s[0] = z0;
    s[1] = rho;
    return s;
  }();
  for (int j = 0; j <= n; ++j) {
    Series power(kTerms, 0.0);
    power[0] = 1.0;
    for (int i = 0; i <= op.z_degree(); ++i) {
      const double c = op.coefficient(j, i);
      if (c != 0.0)
        for (std::size_t r = 0; r < kTerms; ++r) poly[j][r] += c * power[r];
      power = series_mul(power, linear);
    }
  }
  std::vector<Series> last_row(n);
  for (int j = 0; j < n; ++j) {
    Series neg = poly[j];
    for (auto& v : neg) v = -v;
    last_row[j] = series_mul(inv_z, series_div(neg, poly[n]));
  }

  std::vector<Eigen::MatrixXcd> coeffs{jets};
  Eigen::MatrixXcd result = jets;
  cplx upow = 1.0;
  int quiet = 0;
  for (std::size_t k = 0; k + 1 < kTerms; ++k) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(n, jets.cols());
    for (std::size_t r = 0; r <= k; ++r) {
      const Eigen::MatrixXcd& y = coeffs[k - r];
      for (int j = 0; j + 1 < n; ++j) next.row(j) += inv_z[r] * y.row(j + 1);
      for (int j = 0; j < n; ++j) next.row(n - 1) += last_row[j][r] * y.row(j);
    }
    next /= static_cast<double>(k + 1);
    upow *= u1;
    const Eigen::MatrixXcd term = upow * next;
    result += term;
    coeffs.push_back(std::move(next));
    quiet = term.norm() <= 1e-18 * result.norm() ? quiet + 1 : 0;
    if (quiet >= 2) return result;
  }
  throw std::runtime_error("local continuation did not converge");
}

Eigen::MatrixXcd derivative_frame(const PFOperator& op, cplx t, const Eigen::MatrixXcd& jets) {
  const int n = op.order();
  if (jets.rows() != n || jets.cols() != n) throw std::invalid_argument("frame must be order × order");
  double hadamard = 1.0;
  for (int j = 0; j < n; ++j) hadamard *= jets.row(j).norm();
  const double det = std::abs(jets.determinant());
  if (!std::isfinite(det) || !(det > 1e-12 * hadamard)) {
    std::ostringstream os;
    os << "frame degenerate at t = " << t;
    throw std::runtime_error(os.str());
  }
  return jets;
}

Eigen::RowVectorXcd theta_closure(const PFOperator& op, cplx z, const Eigen::MatrixXcd& frame) {
  const int n = op.order();
  const Eigen::VectorXcd c = op.coefficients_at(z);
  Eigen::RowVectorXcd top = Eigen::RowVectorXcd::Zero(frame.cols());
  for (int j = 0; j < n; ++j) top -= (c(j) / c(n)) * frame.row(j);
  return top;
}

}  // namespace hml::pf
