#include "hml/report/config.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "hml/picard_fuchs/series.hpp"
#include "hml/vhs/synthetic.hpp"

namespace hml::report {
namespace {

using json = nlohmann::json;
using cplx = std::complex<double>;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError("field '" + field + "': " + message);
}

const json& require(const json& j, const std::string& field) {
  if (!j.contains(field)) fail(field, "missing");
  return j.at(field);
}

int to_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

double to_double(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

mpq_class to_rational(const json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
      mpq_class q(j.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  fail(field, "expected an integer or a rational string");
}

cplx to_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) return {to_rational(j, field).get_d(), 0.0};
  fail(field, "expected a number or a [re, im] pair");
}

Eigen::MatrixXcd to_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) fail(field, "rows have different lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = to_complex(j[r][c], field);
  }
  return m;
}

std::vector<pf::SingularPoint> to_singular_points(const json& j) {
  if (!j.is_array()) fail("singular_points", "expected a list");
  std::vector<pf::SingularPoint> out;
  for (const auto& v : j) {
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
      out.push_back({cplx(0, 0), true});
    else
      out.push_back({to_complex(v, "singular_points"), false});
  }
  return out;
}

void parse_common(const json& j, FamilyConfig& c) {
  if (j.contains("fd")) {
    const auto& fd = j["fd"];
    if (fd.contains("relative_step")) c.fd.relative_step = to_double(fd["relative_step"], "fd.relative_step");
    if (fd.contains("floor")) c.fd.floor = to_double(fd["floor"], "fd.floor");
    if (fd.contains("richardson_levels")) c.fd.richardson_levels = to_int(fd["richardson_levels"], "fd.richardson_levels");
    if (!(c.fd.relative_step > 0) || !(c.fd.floor > 0) || c.fd.richardson_levels < 1)
      fail("fd", "steps must be positive and at least one level is required");
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    auto read = [&](const char* key, double& target) {
      if (t.contains(key)) target = to_double(t[key], std::string("tolerances.") + key);
    };
    read("relative", c.tolerances.relative);
    read("algebraic", c.tolerances.algebraic);
    read("eigen", c.tolerances.eigen);
    read("primitivity", c.tolerances.primitivity);
    read("hermitian", c.tolerances.hermitian);
  }
  c.grid = j.value("grid", std::string("log:1e-1:1:5"));
  c.grid_direction.assign(c.moduli_dim, cplx(1, 0));
  if (j.contains("grid_direction")) {
    const auto& d = j["grid_direction"];
    if (!d.is_array() || static_cast<int>(d.size()) != c.moduli_dim) fail("grid_direction", "one entry per coordinate");
    for (int a = 0; a < c.moduli_dim; ++a) c.grid_direction[a] = to_complex(d[a], "grid_direction");
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (s.contains("punctured")) c.sweep.punctured = to_int(s["punctured"], "sweep.punctured");
    if (s.contains("decade_start")) c.sweep.decade_start = to_int(s["decade_start"], "sweep.decade_start");
    if (s.contains("decades")) c.sweep.decades = to_int(s["decades"], "sweep.decades");
    if (s.contains("rays")) c.sweep.rays = to_int(s["rays"], "sweep.rays");
    if (c.sweep.punctured < 0 || c.sweep.punctured > c.moduli_dim) fail("sweep.punctured", "must lie in 0..m");
    if (c.sweep.decades < 1 || c.sweep.rays < 1) fail("sweep", "decades and rays must be positive");
  }
}

void parse_picard_fuchs(const json& j, FamilyConfig& c) {
  const auto& hodge = require(j, "hodge_numbers");
  if (!hodge.is_array()) fail("hodge_numbers", "expected a list of [p, q, h] triples");
  for (const auto& e : hodge) {
    if (!e.is_array() || e.size() != 3) fail("hodge_numbers", "expected [p, q, h] triples");
    const int p = to_int(e[0], "hodge_numbers"), q = to_int(e[1], "hodge_numbers");
    const long h = e[2].is_number_integer() ? e[2].get<long>() : -1;
    if (p < 0 || q < 0 || p > c.weight || q > c.weight || h < 0) fail("hodge_numbers", "entry out of range");
    c.hodge_numbers[{p, q}] = h;
  }
  c.euler_characteristic = require(j, "euler_characteristic").is_number_integer()
                               ? j["euler_characteristic"].get<long>()
                               : (fail("euler_characteristic", "expected an integer"), 0L);
  const auto& op = require(j, "pf_operator");
  if (!op.is_array() || op.size() < 2) fail("pf_operator", "expected a list of θ-power coefficient lists");
  for (const auto& poly : op) {
    if (!poly.is_array()) fail("pf_operator", "each θ power needs a coefficient list");
    std::vector<mpq_class> coeffs;
    for (const auto& v : poly) coeffs.push_back(to_rational(v, "pf_operator"));
    c.pf_operator.push_back(std::move(coeffs));
  }
  c.singular_points = to_singular_points(require(j, "singular_points"));
  c.basepoint = to_complex(require(j, "basepoint"), "basepoint");
  c.pf.series_order = to_int(require(j, "series_order"), "series_order");
  if (!j.contains("polarization_matrix")) fail("polarization_matrix", "missing; the flat pairing is required data");
  c.polarization = to_matrix(j["polarization_matrix"], "polarization_matrix");
  const auto& basis = require(j, "period_basis");
  c.basis_change = to_matrix(require(basis, "basis_change"), "period_basis.basis_change");
  if (j.contains("transport")) {
    const auto& t = j["transport"];
    if (t.contains("tolerance")) c.pf.transport.tolerance = to_double(t["tolerance"], "transport.tolerance");
    if (t.contains("clearance")) c.pf.clearance = to_double(t["clearance"], "transport.clearance");
  }
  c.pf.seed_radius = std::abs(c.basepoint);
}

void validate_picard_fuchs(FamilyConfig& c) {
  if (c.moduli_dim != 1) fail("moduli_dim", "Picard-Fuchs families are one-parameter");
  const int order = static_cast<int>(c.pf_operator.size()) - 1;
  long middle = 0;
  for (int p = 0; p <= c.weight; ++p) middle += c.hodge(p, c.weight - p);
  if (middle != order)
    fail("hodge_numbers", "middle Hodge numbers sum to " + std::to_string(middle) + " but the operator has order " +
                              std::to_string(order));
  const auto top = c.primitive_hodge(c.weight);
  if (std::accumulate(top.begin(), top.end(), 0) != order)
    fail("hodge_numbers", "primitive middle cohomology does not match the operator order");
  for (int p = 0; p <= c.weight; ++p)
    if (top[p] != 1) fail("hodge_numbers", "one-parameter families need h^{p,n-p} = 1 in middle degree");
  for (int k = 0; k <= c.weight; ++k)
    for (int v : c.primitive_hodge(k))
      if (v < 0) fail("hodge_numbers", "Hodge numbers violate the Lefschetz inequalities");
  if (c.weight == 3) {
    const long chi = 2 * (c.hodge(1, 1) - c.hodge(2, 1));
    if (chi != c.euler_characteristic)
      fail("euler_characteristic", "expected 2(h^{1,1} - h^{2,1}) = " + std::to_string(chi) + ", found " +
                                       std::to_string(c.euler_characteristic));
  }
  if (c.polarization.rows() != order || c.polarization.cols() != order)
    fail("polarization_matrix", "must be " + std::to_string(order) + " x " + std::to_string(order));
  const double sign = c.weight % 2 == 0 ? 1.0 : -1.0;
  if ((c.polarization.transpose() - sign * c.polarization).norm() > 1e-12 * c.polarization.norm())
    fail("polarization_matrix", c.weight % 2 == 0 ? "must be symmetric for even weight" : "must be antisymmetric for odd weight");
  if (c.basis_change.rows() != order || c.basis_change.cols() != order)
    fail("period_basis.basis_change", "must be " + std::to_string(order) + " x " + std::to_string(order));
  try {
    const pf::PFOperator op(c.pf_operator, c.singular_points);
    const auto series = pf::series_seed(op, c.pf.series_order);
    if (pf::recursion_residual(op, series) > 1e-12) fail("pf_operator", "series recursion is inconsistent");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail("pf_operator", e.what());
  }
}

}  // namespace

long FamilyConfig::hodge(int p, int q) const {
  const auto it = hodge_numbers.find({p, q});
  return it == hodge_numbers.end() ? 0 : it->second;
}

std::vector<int> FamilyConfig::primitive_hodge(int k) const {
  std::vector<int> out(k + 1, 0);
  for (int p = 0; p <= k; ++p) {
    const int q = k - p;
    const long lower = (p >= 1 && q >= 1) ? hodge(p - 1, q - 1) : 0;
    out[p] = static_cast<int>(hodge(p, q) - lower);
  }
  return out;
}

FamilyConfig parse_family(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("top level must be an object");
  FamilyConfig c;
  c.source = text;
  const auto& name = require(j, "name");
  if (!name.is_string() || name.get<std::string>().empty()) fail("name", "expected a non-empty string");
  c.name = name.get<std::string>();
  const auto& kind = require(j, "kind");
  if (!kind.is_string()) fail("kind", "expected a string");
  c.kind = kind.get<std::string>();
  c.weight = to_int(require(j, "weight"), "weight");
  c.moduli_dim = to_int(require(j, "moduli_dim"), "moduli_dim");
  if (c.weight < 1) fail("weight", "must be positive");
  if (c.moduli_dim < 1) fail("moduli_dim", "must be positive");
  parse_common(j, c);

  if (c.kind == "picard-fuchs") {
    parse_picard_fuchs(j, c);
    validate_picard_fuchs(c);
  } else if (c.kind == "synthetic") {
    const auto& id = require(j, "synthetic_id");
    if (!id.is_string() || !vhs::is_builtin(id.get<std::string>())) fail("synthetic_id", "unknown built-in family");
    c.synthetic_id = id.get<std::string>();
    const auto family = vhs::builtin_family(c.synthetic_id);
    if (family->weight() != c.weight) fail("weight", "does not match the built-in family");
    if (family->moduli_dim() != c.moduli_dim) fail("moduli_dim", "does not match the built-in family");
    c.euler_characteristic = j.value("euler_characteristic", 0L);
  } else {
    fail("kind", "expected 'picard-fuchs' or 'synthetic'");
  }
  return c;
}

std::string builtin_config_text(const std::string& name) {
  if (!vhs::is_builtin(name)) throw ConfigError("unknown built-in family '" + name + "'");
  const auto family = vhs::builtin_family(name);
  json j;
  j["name"] = name;
  j["kind"] = "synthetic";
  j["synthetic_id"] = name;
  j["weight"] = family->weight();
  j["moduli_dim"] = family->moduli_dim();
  j["euler_characteristic"] = 0;
  // steps are relative to the distance from the boundary of the period domain
  j["fd"] = {{"relative_step", name == "two-param-abelian" ? 0.08 : 0.12}, {"floor", 1e-6}, {"richardson_levels", 4}};
  j["tolerances"] = {{"relative", 1e-10}, {"algebraic", 1e-10}};
  j["grid"] = "log:0.5:2:5";
  json direction = json::array();
  for (int a = 0; a < family->moduli_dim(); ++a) direction.push_back(json::array({1.0 - 0.25 * a, 0.0}));
  j["grid_direction"] = direction;
  j["sweep"] = {{"punctured", name == "two-param-abelian" ? 1 : family->moduli_dim()}, {"decade_start", 1}, {"decades", 6}, {"rays", 8}};
  return j.dump(2) + "\n";
}

FamilyConfig load_family(const std::string& path_or_builtin) {
  if (vhs::is_builtin(path_or_builtin)) return parse_family(builtin_config_text(path_or_builtin));
  std::ifstream in(path_or_builtin, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open family file '" + path_or_builtin + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_family(buffer.str());
}

std::shared_ptr<const vhs::Family> build_family(const FamilyConfig& c) {
  if (c.kind == "synthetic") {
    auto base = vhs::builtin_family(c.synthetic_id);
    return std::make_shared<vhs::Family>(c.name, base->weight(), c.euler_characteristic,
                                         [&] {
                                           std::vector<std::shared_ptr<const vhs::Variation>> d;
                                           for (int k = 0; k <= base->weight(); ++k)
                                             d.emplace_back(base, &base->variation(k));
                                           return d;
                                         }(),
                                         base->chart());
  }
  pf::PFOperator op(c.pf_operator, c.singular_points);
  std::vector<std::shared_ptr<const vhs::Variation>> degrees;
  for (int k = 0; k < c.weight; ++k) degrees.push_back(vhs::constant_variation(k, 1, c.primitive_hodge(k)));
  degrees.push_back(std::make_shared<vhs::PicardFuchsVariation>(std::move(op), c.basis_change, c.polarization, c.pf));
  return std::make_shared<vhs::Family>(c.name, c.weight, c.euler_characteristic, std::move(degrees),
                                       std::vector<vhs::ChartKind>{vhs::ChartKind::kPuncture});
}

std::string git_blob_hash(const std::string& bytes) {
  const std::string header = "blob " + std::to_string(bytes.size()) + std::string(1, '\0');
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
    throw std::runtime_error("SHA-1 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

}  // namespace hml::report
