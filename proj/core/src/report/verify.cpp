#include "hml/report/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "hml/exterior/lefschetz.hpp"
#include "hml/poincare/poincare.hpp"
#include "hml/util/parallel.hpp"
#include "hml/vhs/checks.hpp"

namespace hml::report {
namespace {

using cplx = std::complex<double>;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Column helpers: one table row is built up in column order.
struct RowBuilder {
  std::vector<std::string>* columns;  // filled on the first row only
  std::vector<Cell> cells;
  bool record;

  void add(const std::string& name, Cell value) {
    if (record) columns->push_back(name);
    cells.push_back(std::move(value));
  }
  void add_point(const vhs::Point& z) {
    for (Eigen::Index a = 0; a < z.size(); ++a) {
      add("z" + std::to_string(a) + "_re", z(a).real());
      add("z" + std::to_string(a) + "_im", z(a).imag());
    }
  }
  // Row-major upper triangle.
  void add_matrix(const std::string& name, const Eigen::MatrixXcd& h, Eigen::Index m) {
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i; j < m; ++j) {
        const bool have = h.rows() == m && h.cols() == m;
        const std::string base = name + "_" + std::to_string(i) + std::to_string(j);
        add(base + "_re", have ? Cell(h(i, j).real()) : Cell());
        add(base + "_im", have ? Cell(h(i, j).imag()) : Cell());
      }
  }
};

// Non-diagonal positive-definite Kähler form, diagonally dominant.
exterior::KahlerModel exterior_model(int n) {
  using exterior::ComplexRational;
  using exterior::Rational;
  exterior::ExactMatrix h(n, exterior::ExactVector(n));
  for (int i = 0; i < n; ++i) {
    h[i][i] = ComplexRational(Rational(2 + i));
    for (int j = i + 1; j < n; ++j) {
      h[i][j] = ComplexRational(Rational(1, 2 + i + j), Rational(j - i, 5));
      h[j][i] = h[i][j].conj();
    }
  }
  return exterior::KahlerModel::from_hermitian(h);
}

exterior::ConstantForm random_form(std::mt19937& rng, int n, int p, int q) {
  auto part = [&] {
    exterior::Rational r(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1);
    r.canonicalize();
    return r;
  };
  exterior::ConstantForm f(n, p, q);
  for (const auto& mono : exterior::monomial_basis(n, p, q))
    if (rng() % 5 != 0) f.set(mono, exterior::ComplexRational(part(), part()));
  return f;
}

Table exterior_suite(const VerifyOptions& options) {
  struct Bidegree {
    int n, p, q;
  };
  std::vector<Bidegree> work;
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q) work.push_back({n, p, q});

  struct Counts {
    long samples = 0, reconstruction = 0, primitivity = 0, norm_identity = 0;
    long rh_first = 0, rh_first_pairs = 0, rh_second = 0, rh_second_tested = 0;
    std::string error;
  };
  const auto counts = util::parallel_map<Counts>(
      work.size(),
      [&](std::size_t i) {
        const auto [n, p, q] = work[i];
        Counts c;
        try {
          std::mt19937 rng(static_cast<unsigned>(1000 * n + 10 * p + q));
          const auto model = exterior_model(n);
          const int k = p + q;
          for (int trial = 0; trial < options.exterior_samples; ++trial) {
            ++c.samples;
            const auto a = random_form(rng, n, p, q);
            const auto d = exterior::lefschetz_decompose(a, model);
            exterior::ConstantForm sum(n, p, q);
            for (std::size_t j = 0; j < d.components.size(); ++j) {
              if (!exterior::is_primitive(d.components[j], model)) ++c.primitivity;
              sum += exterior::lefschetz_power(d.components[j], model, static_cast<int>(j));
            }
            if (!(sum == a)) ++c.reconstruction;
            // The norm identity is stated for p ≥ q; the other half goes through the conjugate.
            if (!exterior::norm_identity_residual(p >= q ? a : a.conj(), model).is_zero()) ++c.norm_identity;

            const auto& eta = d.components[0];
            if (!eta.is_zero()) {
              ++c.rh_second_tested;
              const auto v = exterior::hodge_inner(eta, eta, model);
              if (!v.is_real() || sgn(v.real()) <= 0) ++c.rh_second;
            }
            // Pair against a primitive form of a non-complementary bidegree of the same degree.
            std::vector<int> partners;
            for (int p2 = 0; p2 <= k; ++p2)
              if (p2 != q) partners.push_back(p2);
            if (!partners.empty()) {
              const int p2 = partners[static_cast<std::size_t>(trial) % partners.size()];
              const auto other = exterior::lefschetz_decompose(random_form(rng, n, p2, k - p2), model).components[0];
              ++c.rh_first_pairs;
              if (!exterior::polarization_Q(eta, other, model).is_zero()) ++c.rh_first;
            }
          }
        } catch (const std::exception& e) {
          c.error = e.what();
        }
        return c;
      },
      options.threads);

  Table table{"exterior", {}, {}, {}};
  for (std::size_t i = 0; i < work.size(); ++i) {
    const auto& c = counts[i];
    RowBuilder row{&table.columns, {}, i == 0};
    row.add("n", static_cast<long>(work[i].n));
    row.add("p", static_cast<long>(work[i].p));
    row.add("q", static_cast<long>(work[i].q));
    row.add("samples", c.samples);
    row.add("reconstruction_failures", c.reconstruction);
    row.add("primitivity_failures", c.primitivity);
    row.add("norm_identity_nonzero", c.norm_identity);
    row.add("rh_first_pairs", c.rh_first_pairs);
    row.add("rh_first_failures", c.rh_first);
    row.add("rh_second_tested", c.rh_second_tested);
    row.add("rh_second_failures", c.rh_second);
    const bool pass = c.error.empty() && c.samples >= options.exterior_samples && c.reconstruction == 0 &&
                      c.primitivity == 0 && c.norm_identity == 0 && c.rh_first == 0 && c.rh_second == 0;
    row.add("pass", pass);
    row.add("error", c.error);
    table.rows.push_back(std::move(row.cells));
    table.row_pass.push_back(pass);
  }
  return table;
}

vhs::FdSettings effective_fd(const FamilyConfig& config, const VerifyOptions& options) {
  vhs::FdSettings fd = config.fd;
  if (options.fd_step) fd.relative_step = *options.fd_step;
  return fd;
}

metrics::IdentityTolerances effective_tolerances(const FamilyConfig& config, const VerifyOptions& options) {
  metrics::IdentityTolerances tol = config.tolerances;
  if (options.tolerance) tol.relative = *options.tolerance;
  return tol;
}

Table vhs_suite(const FamilyConfig& config, const vhs::Family& family, const std::vector<vhs::Point>& points,
                const VerifyOptions& options) {
  const auto fd = effective_fd(config, options);
  const auto tol = effective_tolerances(config, options);
  struct Result {
    vhs::FrameChecks checks;
    std::string error;
  };
  const auto results = util::parallel_map<Result>(
      points.size(),
      [&](std::size_t i) {
        Result r;
        try {
          r.checks = vhs::frame_checks(family.top(), family.to_model(points[i]), fd, tol.algebraic);
        } catch (const std::exception& e) {
          r.error = e.what();
        }
        return r;
      },
      options.threads);

  Table table{"vhs", {}, {}, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = results[i];
    const bool ok = r.error.empty();
    RowBuilder row{&table.columns, {}, i == 0};
    row.add("index", static_cast<long>(i));
    row.add_point(points[i]);
    const std::vector<std::pair<std::string, std::pair<double, double>>> residuals = {
        {"riemann_hodge_first", {r.checks.riemann_hodge_first, tol.algebraic}},
        {"q_flatness", {r.checks.q_flatness, tol.algebraic}},
        {"transversality", {r.checks.transversality, tol.algebraic}},
        {"commutation", {r.checks.commutation, tol.algebraic}},
        {"dbar_lemma", {r.checks.dbar_lemma, tol.relative}},
    };
    for (const auto& [name, value] : residuals) row.add("res_" + name, ok ? Cell(value.first) : Cell());
    row.add("min_eig_ratio", ok ? Cell(r.checks.positivity_margin) : Cell());
    for (const auto& [name, value] : residuals) row.add("tol_" + name, value.second);
    bool pass = ok;
    for (const auto& [name, value] : residuals) {
      const bool p = ok && value.first <= value.second;
      row.add("pass_" + name, p);
      pass = pass && p;
    }
    const bool positive = ok && r.checks.positivity_margin > 0.0;
    row.add("pass_positivity", positive);
    pass = pass && positive;
    row.add("pass", pass);
    row.add("error", r.error);
    table.rows.push_back(std::move(row.cells));
    table.row_pass.push_back(pass);
  }
  return table;
}

Table metrics_suite(const FamilyConfig& config, const vhs::Family& family, const std::vector<vhs::Point>& points,
                    const VerifyOptions& options) {
  metrics::MetricOptions mopt;
  mopt.fd = effective_fd(config, options);
  mopt.transversality_threshold = config.tolerances.algebraic;
  const auto tol = effective_tolerances(config, options);
  struct Result {
    metrics::MetricPoint mp;
    metrics::IdentityReport report;
    std::string error;
  };
  const auto results = util::parallel_map<Result>(
      points.size(),
      [&](std::size_t i) {
        Result r;
        try {
          r.mp = metrics::evaluate_metrics(family, points[i], mopt);
          r.report = metrics::identity_suite(r.mp, tol);
        } catch (const std::exception& e) {
          r.error = e.what();
        }
        return r;
      },
      options.threads);

  // Identity columns: union in order of first appearance.
  std::vector<std::string> names;
  for (const auto& r : results)
    for (const auto& c : r.report.checks)
      if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);

  const int n = family.weight();
  const Eigen::Index m = family.moduli_dim();
  Table table{"metrics", {}, {}, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = results[i];
    const bool ok = r.error.empty();
    RowBuilder row{&table.columns, {}, i == 0};
    row.add("index", static_cast<long>(i));
    row.add_point(points[i]);
    const Eigen::MatrixXcd none;
    row.add_matrix("h_wp", ok ? r.mp.h_wp : none, m);
    for (int k = 0; k <= n; ++k) row.add_matrix("h_ph" + std::to_string(k), ok ? r.mp.h_ph[k] : none, m);
    row.add_matrix("ric_wp", ok ? r.mp.ric_wp : none, m);
    row.add_matrix("h_bcov", ok ? r.mp.h_bcov : none, m);
    for (const auto& name : names) {
      const auto* c = r.report.find(name);
      row.add("res_" + name, c ? Cell(c->residual) : Cell());
    }
    for (const auto& name : names) {
      const auto* c = r.report.find(name);
      row.add("tol_" + name, c ? Cell(c->tolerance) : Cell());
    }
    bool pass = ok;
    for (const auto& name : names) {
      const auto* c = r.report.find(name);
      const bool p = c != nullptr && c->pass;
      row.add("pass_" + name, p);
      pass = pass && p;
    }
    row.add("pass", pass);
    row.add("error", r.error);
    table.rows.push_back(std::move(row.cells));
    table.row_pass.push_back(pass);
  }
  return table;
}

std::vector<Table> poincare_suite(const FamilyConfig& config, std::shared_ptr<const vhs::Family> family,
                                  const VerifyOptions& options) {
  if (config.kind == "synthetic") family = vhs::with_punctures(family, config.sweep.punctured);
  poincare::SweepSettings settings;
  settings.decade_start = config.sweep.decade_start;
  settings.decades = options.decades.value_or(config.sweep.decades);
  settings.rays = config.sweep.rays;
  settings.fixed = config.grid_direction;
  settings.threads = options.threads;
  settings.metric_options.fd = effective_fd(config, options);
  const poincare::PoincareChart chart{config.sweep.punctured, config.moduli_dim};

  std::vector<poincare::SweepTarget> targets;
  for (int k = 0; k <= family->weight(); ++k) targets.push_back({poincare::SweepQuantity::kGeneralizedHodge, k});
  targets.push_back({poincare::SweepQuantity::kBcovAbs, family->weight()});
  const auto reports = poincare::domination_sweeps(*family, chart, targets, settings);

  Table samples{"poincare_samples", {}, {}, {}};
  Table summary{"poincare_summary", {}, {}, {}};
  for (std::size_t q = 0; q < reports.size(); ++q) {
    const auto& rep = reports[q];
    for (const auto& s : rep.samples) {
      RowBuilder row{&samples.columns, {}, samples.rows.empty()};
      row.add("quantity", rep.quantity);
      row.add("decade", static_cast<long>(s.decade));
      row.add("ray", static_cast<long>(s.ray));
      row.add_point(s.z);
      row.add("f", s.ok ? Cell(s.f) : Cell());
      row.add("ok", s.ok);
      row.add("error", s.error);
      samples.rows.push_back(std::move(row.cells));
      samples.row_pass.push_back(s.ok);
    }
    // The growth test is asserted for h_PH[k]; for |H| it is reported only.
    const bool growth_required = targets[q].quantity == poincare::SweepQuantity::kGeneralizedHodge;
    RowBuilder row{&summary.columns, {}, q == 0};
    row.add("quantity", rep.quantity);
    row.add("decade_start", static_cast<long>(settings.decade_start));
    row.add("decades", static_cast<long>(settings.decades));
    row.add("rays", static_cast<long>(settings.rays));
    row.add("sup_f", rep.sup_f);
    row.add("trend", rep.trend);
    for (int d = 0; d < settings.decades; ++d) row.add("max_f_d" + std::to_string(d), rep.decade_max[d]);
    row.add("inner_excess", rep.inner_excess);
    row.add("inner_growth", rep.inner_growth);
    row.add("slack", poincare::kDominationSlack);
    row.add("growth_required", growth_required);
    row.add("pass_domination", rep.pass);
    row.add("pass_growth", rep.bounded_growth);
    const bool pass = rep.pass && (!growth_required || rep.bounded_growth);
    row.add("pass", pass);
    summary.rows.push_back(std::move(row.cells));
    summary.row_pass.push_back(pass);
  }
  return {std::move(summary), std::move(samples)};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return "";
        else if constexpr (std::is_same_v<T, long>)
          return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "1" : "0";
        else
          return csv_escape(v);
      },
      c);
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("grid '" + text + "': expected kind:a:b:N");
  GridSpec g;
  if (parts[0] == "log")
    g.kind = Kind::kLog;
  else if (parts[0] == "lin")
    g.kind = Kind::kLinear;
  else
    throw ConfigError("grid '" + text + "': kind must be log or lin");
  try {
    std::size_t used = 0;
    g.a = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("a");
    g.b = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("b");
    g.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("N");
  } catch (const std::exception&) {
    throw ConfigError("grid '" + text + "': malformed number");
  }
  if (g.count < 1) throw ConfigError("grid '" + text + "': N must be positive");
  if (g.kind == Kind::kLog && !(g.a > 0.0 && g.b > 0.0)) throw ConfigError("grid '" + text + "': log grids need a, b > 0");
  return g;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double s = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(kind == Kind::kLog ? std::exp(std::log(a) + s * (std::log(b) - std::log(a))) : a + s * (b - a));
  }
  return out;
}

std::string GridSpec::str() const {
  return std::string(kind == Kind::kLog ? "log:" : "lin:") + format_double(a) + ":" + format_double(b) + ":" +
         std::to_string(count);
}

std::vector<double> grid_phases(int rays) {
  if (rays < 1) throw ConfigError("rays must be positive");
  std::vector<double> out;
  for (int j = 0; j < rays; ++j) out.push_back(std::numbers::pi * (2 * j + 1) / (2.0 * rays));
  return out;
}

std::vector<vhs::Point> grid_points(const FamilyConfig& config, const GridSpec& grid, int rays) {
  std::vector<vhs::Point> out;
  const auto phases = grid_phases(rays);
  for (double w : grid.values())
    for (double phi : phases) {
      vhs::Point z(config.moduli_dim);
      for (int a = 0; a < config.moduli_dim; ++a) z(a) = std::polar(w, phi) * config.grid_direction[a];
      out.push_back(std::move(z));
    }
  return out;
}

bool is_suite(const std::string& name) {
  return name == "exterior" || name == "vhs" || name == "metrics" || name == "poincare" || name == "all";
}

bool VerifyReport::all_pass() const { return failures() == 0; }

long VerifyReport::failures() const {
  long n = 0;
  for (const auto& t : tables) n += std::count(t.row_pass.begin(), t.row_pass.end(), false);
  return n;
}

VerifyReport run_verify(const std::optional<FamilyConfig>& config, const VerifyOptions& options) {
  if (!is_suite(options.suite)) throw ConfigError("unknown suite '" + options.suite + "'");
  const bool wants_family = options.suite != "exterior";
  if (wants_family && !config) throw ConfigError("suite '" + options.suite + "' needs --family");

  VerifyReport report;
  report.provenance.emplace_back("generator", "hml verify");
  report.provenance.emplace_back("suite", options.suite);
  if (options.suite == "exterior" || options.suite == "all") {
    report.provenance.emplace_back("exterior_samples_per_bidegree", std::to_string(options.exterior_samples));
    report.tables.push_back(exterior_suite(options));
  }
  if (!wants_family) return report;

  const auto family = build_family(*config);
  const GridSpec grid = GridSpec::parse(options.grid.value_or(config->grid));
  const auto fd = effective_fd(*config, options);
  const auto tol = effective_tolerances(*config, options);
  report.provenance.insert(report.provenance.begin() + 1,
                           {{"family", config->name},
                            {"kind", config->kind},
                            {"config_hash", git_blob_hash(config->source)},
                            {"grid", grid.str()},
                            {"rays", std::to_string(options.rays)},
                            {"fd_relative_step", format_double(fd.relative_step)},
                            {"fd_floor", format_double(fd.floor)},
                            {"fd_richardson_levels", std::to_string(fd.richardson_levels)},
                            {"tol_relative", format_double(tol.relative)},
                            {"tol_algebraic", format_double(tol.algebraic)},
                            {"tol_eigen", format_double(tol.eigen)},
                            {"tol_primitivity", format_double(tol.primitivity)},
                            {"tol_hermitian", format_double(tol.hermitian)}});
  const auto points = grid_points(*config, grid, options.rays);
  if (options.suite == "vhs" || options.suite == "all") report.tables.push_back(vhs_suite(*config, *family, points, options));
  if (options.suite == "metrics" || options.suite == "all")
    report.tables.push_back(metrics_suite(*config, *family, points, options));
  if (options.suite == "poincare" || options.suite == "all") {
    report.provenance.emplace_back("decades", std::to_string(options.decades.value_or(config->sweep.decades)));
    for (auto& t : poincare_suite(*config, family, options)) report.tables.push_back(std::move(t));
  }
  return report;
}

std::string to_csv(const VerifyReport& report) {
  std::string out;
  for (const auto& [key, value] : report.provenance) out += "# " + key + ": " + value + "\n";
  for (const auto& table : report.tables) {
    out += "# table: " + table.name + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
    out += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + cell_text(row[c]);
      out += "\n";
    }
  }
  return out;
}

std::string to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["provenance"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.provenance) j["provenance"][key] = value;
  j["tables"] = nlohmann::ordered_json::array();
  for (const auto& table : report.tables) {
    nlohmann::ordered_json t;
    t["name"] = table.name;
    t["columns"] = table.columns;
    t["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& cell : row)
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, std::monostate>)
                r.push_back(nullptr);
              else
                r.push_back(v);
            },
            cell);
      t["rows"].push_back(std::move(r));
    }
    j["tables"].push_back(std::move(t));
  }
  j["pass"] = report.all_pass();
  j["failures"] = report.failures();
  return j.dump(2) + "\n";
}

std::string csv_data_section(const std::string& csv) {
  const auto pos = csv.find("# table: ");
  return pos == std::string::npos ? std::string() : csv.substr(pos);
}

}  // namespace hml::report
