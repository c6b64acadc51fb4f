#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hml/report/verify.hpp"

using namespace hml::report;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quintic_text() { return read_file(HML_SOURCE_DIR "/configs/quintic.json"); }

// Quintic config with one field replaced.
std::string quintic_with(const std::string& field, const nlohmann::json& value) {
  auto j = nlohmann::json::parse(quintic_text());
  j[field] = value;
  return j.dump();
}

std::string quintic_without(const std::string& field) {
  auto j = nlohmann::json::parse(quintic_text());
  j.erase(field);
  return j.dump();
}

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    parse_family(text);
    ADD_FAILURE() << "expected a ConfigError mentioning " << fragment;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(GitBlobHash, KnownObjects) {
  // `printf 'hello\n' | git hash-object --stdin` and the empty blob
  EXPECT_EQ(git_blob_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
  EXPECT_EQ(git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST(Config, QuinticLoads) {
  const auto c = load_family(HML_SOURCE_DIR "/configs/quintic.json");
  EXPECT_EQ(c.name, "quintic");
  EXPECT_EQ(c.kind, "picard-fuchs");
  EXPECT_EQ(c.weight, 3);
  EXPECT_EQ(c.euler_characteristic, 200);
  EXPECT_EQ(c.hodge(1, 1), 101);
  EXPECT_EQ(c.hodge(2, 1), 1);
  EXPECT_EQ(c.primitive_hodge(3), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(c.primitive_hodge(2), (std::vector<int>{0, 100, 0}));
  EXPECT_EQ(c.pf_operator.size(), 5u);
  EXPECT_EQ(c.pf_operator[4][1], mpq_class(-3125));
  EXPECT_NEAR(c.pf.seed_radius, 5e-5, 1e-20);
  EXPECT_EQ(c.source, quintic_text());
  const auto family = build_family(c);
  EXPECT_EQ(family->weight(), 3);
  EXPECT_EQ(family->moduli_dim(), 1);
}

TEST(Config, BuiltinsRoundTrip) {
  for (const auto& name : {"upper-half-plane", "sym2", "two-param-abelian", "quadruple-product"}) {
    const auto c = load_family(name);
    EXPECT_EQ(c.kind, "synthetic");
    EXPECT_EQ(c.synthetic_id, name);
    EXPECT_EQ(build_family(c)->moduli_dim(), c.moduli_dim);
    EXPECT_EQ(static_cast<int>(c.grid_direction.size()), c.moduli_dim);
  }
  EXPECT_THROW(builtin_config_text("no-such-family"), ConfigError);
}

TEST(Config, ErrorsNameTheField) {
  expect_config_error("{not json", "malformed JSON");
  expect_config_error("[]", "top level");
  expect_config_error(quintic_without("name"), "field 'name': missing");
  expect_config_error(quintic_with("weight", "three"), "field 'weight'");
  expect_config_error(quintic_with("kind", "elliptic"), "field 'kind'");
  expect_config_error(quintic_with("euler_characteristic", -200), "field 'euler_characteristic'");
  expect_config_error(quintic_with("moduli_dim", 2), "field 'moduli_dim'");
  expect_config_error(quintic_with("polarization_matrix", nlohmann::json::parse("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]")),
                      "antisymmetric");
  expect_config_error(quintic_with("pf_operator", nlohmann::json::parse(R"([["0","-120"],["1","-3125"]])")),
                      "field 'hodge_numbers'");
  expect_config_error(quintic_with("singular_points", nlohmann::json::parse(R"(["0","zero"])")), "singular_points");
}

TEST(Config, HodgeNumbersMustSatisfyLefschetz) {
  auto j = nlohmann::json::parse(quintic_text());
  j["hodge_numbers"] = nlohmann::json::parse(
      "[[0,0,1],[1,1,0],[2,2,101],[3,3,1],[3,0,1],[2,1,1],[1,2,1],[0,3,1]]");
  expect_config_error(j.dump(), "field 'hodge_numbers'");
}

TEST(Config, SyntheticValidation) {
  auto j = nlohmann::json::parse(builtin_config_text("sym2"));
  j["weight"] = 3;
  expect_config_error(j.dump(), "field 'weight'");
  j = nlohmann::json::parse(builtin_config_text("sym2"));
  j["synthetic_id"] = "k3";
  expect_config_error(j.dump(), "field 'synthetic_id'");
}

TEST(Config, MissingFileIsNotAConfigError) {
  EXPECT_THROW(load_family("/nonexistent/family.json"), std::runtime_error);
}

TEST(Grid, ParseAndValues) {
  const auto g = GridSpec::parse("log:1e-3:1e-1:3");
  const auto v = g.values();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0], 1e-3, 1e-18);
  EXPECT_NEAR(v[1], 1e-2, 1e-16);
  EXPECT_NEAR(v[2], 1e-1, 1e-16);
  const auto lin = GridSpec::parse("lin:1:2:5").values();
  EXPECT_DOUBLE_EQ(lin[1], 1.25);
  EXPECT_EQ(GridSpec::parse("lin:0.5:0.5:1").values(), std::vector<double>{0.5});
  for (const char* bad : {"log:1:2", "cubic:1:2:3", "log:0:1:3", "log:1:2:0", "lin:a:2:3", "lin:1:2:3x"})
    EXPECT_THROW(GridSpec::parse(bad), ConfigError) << bad;
}

TEST(Grid, PointsFollowDirectionAndRays) {
  const auto c = load_family("two-param-abelian");
  const auto pts = grid_points(c, GridSpec::parse("lin:1:2:2"), 2);
  ASSERT_EQ(pts.size(), 4u);
  const double phi = std::acos(-1.0) / 4;
  EXPECT_NEAR(std::abs(pts[0](0) - std::polar(1.0, phi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pts[0](1) - 0.75 * std::polar(1.0, phi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pts[3](0) - std::polar(2.0, 3 * phi)), 0.0, 1e-15);
  EXPECT_THROW(grid_phases(0), ConfigError);
}

TEST(Verify, ExteriorSuiteNeedsNoFamily) {
  VerifyOptions o;
  o.suite = "exterior";
  o.exterior_samples = 4;
  const auto r = run_verify(std::nullopt, o);
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0].rows.size(), 19u);  // bidegrees p + q ≤ n for n = 1, 2, 3
  EXPECT_TRUE(r.all_pass());
  o.suite = "metrics";
  EXPECT_THROW(run_verify(std::nullopt, o), ConfigError);
  o.suite = "bogus";
  EXPECT_THROW(run_verify(std::nullopt, o), ConfigError);
}

TEST(Verify, MetricsTableLayout) {
  VerifyOptions o;
  o.suite = "metrics";
  o.grid = "lin:1:2:2";
  const auto r = run_verify(load_family("sym2"), o);
  ASSERT_EQ(r.tables.size(), 1u);
  const auto& t = r.tables[0];
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.columns[0], "index");
  EXPECT_EQ(t.columns[1], "z0_re");
  EXPECT_EQ(t.columns[3], "h_wp_00_re");
  EXPECT_EQ(t.columns.back(), "error");
  for (const auto& row : t.rows) EXPECT_EQ(row.size(), t.columns.size());
  EXPECT_TRUE(r.all_pass());
  // WP of sym2 at z = i is 1/2
  EXPECT_NEAR(std::get<double>(t.rows[0][3]), 0.5, 1e-12);
}

TEST(Verify, TightToleranceFailsRows) {
  VerifyOptions o;
  o.suite = "metrics";
  o.grid = "lin:1:1:1";
  o.tolerance = 1e-30;
  const auto r = run_verify(load_family("sym2"), o);
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.failures(), 1);
}

TEST(Verify, EvaluationErrorsAreRecordedPerRow) {
  VerifyOptions o;
  o.suite = "vhs";
  o.grid = "lin:-1:1:2";  // the first point lies in the lower half-plane
  const auto r = run_verify(load_family("upper-half-plane"), o);
  const auto& t = r.tables[0];
  EXPECT_FALSE(t.row_pass[0]);
  EXPECT_TRUE(t.row_pass[1]);
  EXPECT_FALSE(std::get<std::string>(t.rows[0].back()).empty());
}

TEST(Verify, CsvIsDeterministicAndEscaped) {
  VerifyOptions o;
  o.suite = "vhs";
  o.grid = "lin:-1:1:2";
  o.rays = 2;
  const auto config = load_family("upper-half-plane");
  const auto a = to_csv(run_verify(config, o));
  o.threads = 2;
  const auto b = to_csv(run_verify(config, o));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("# generator: hml verify\n", 0), 0u);
  EXPECT_NE(a.find("# config_hash: " + git_blob_hash(config.source)), std::string::npos);
  EXPECT_EQ(csv_data_section(a).rfind("# table: vhs\n", 0), 0u);
  // the domain error message contains no comma, but a quoted cell would start with a quote
  EXPECT_EQ(a.find("\"\""), std::string::npos);
}

TEST(Verify, JsonMirrorsTables) {
  VerifyOptions o;
  o.suite = "poincare";
  o.decades = 3;
  const auto report = run_verify(load_family("upper-half-plane"), o);
  const auto j = nlohmann::json::parse(to_json(report));
  EXPECT_EQ(j["provenance"]["family"], "upper-half-plane");
  EXPECT_EQ(j["pass"], true);
  ASSERT_EQ(j["tables"].size(), 2u);
  EXPECT_EQ(j["tables"][0]["name"], "poincare_summary");
  EXPECT_EQ(j["tables"][0]["rows"].size(), 3u);  // h_PH[0], h_PH[1], |H|
  EXPECT_EQ(j["tables"][0]["columns"].size(), j["tables"][0]["rows"][0].size());
}

TEST(Verify, PassFlagsAreRecomputableFromTheRow) {
  VerifyOptions o;
  o.suite = "metrics";
  o.grid = "lin:0.8:1.6:3";
  o.rays = 2;
  const auto r = run_verify(load_family("two-param-abelian"), o);
  const auto& t = r.tables[0];
  auto index = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
  };
  std::size_t checked = 0;
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    bool all = true;
    for (const auto& column : t.columns) {
      if (column.rfind("res_", 0) != 0) continue;
      const std::string name = column.substr(4);
      const auto& res = t.rows[row][index("res_" + name)];
      const auto& tol = t.rows[row][index("tol_" + name)];
      const bool flag = std::get<bool>(t.rows[row][index("pass_" + name)]);
      const bool recomputed = std::holds_alternative<double>(res) && std::get<double>(res) <= std::get<double>(tol);
      EXPECT_EQ(flag, recomputed) << name;
      all = all && recomputed;
      ++checked;
    }
    EXPECT_EQ(std::get<bool>(t.rows[row][index("pass")]), all);
  }
  EXPECT_GT(checked, 0u);
}
