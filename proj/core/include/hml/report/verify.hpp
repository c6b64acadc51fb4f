#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hml/report/config.hpp"

namespace hml::report {

/// `log:a:b:N` (N log-spaced values) or `lin:a:b:N`.
struct GridSpec {
  enum class Kind { kLog, kLinear };
  Kind kind = Kind::kLog;
  double a = 0.0;
  double b = 0.0;
  int count = 0;

  /// Throws ConfigError on malformed specs.
  static GridSpec parse(const std::string& text);
  std::vector<double> values() const;
  std::string str() const;
};

/// Phases π(2j+1)/(2R), j < R: R rays strictly inside the upper half-plane.
std::vector<double> grid_phases(int rays);

/// Grid points w·e^{iφ}·direction, grid index major, ray index minor.
std::vector<vhs::Point> grid_points(const FamilyConfig& config, const GridSpec& grid, int rays);

struct VerifyOptions {
  std::string suite = "all";  // exterior, vhs, metrics, poincare, all
  std::optional<std::string> grid;
  int rays = 1;
  std::optional<int> decades;
  std::optional<double> fd_step;
  std::optional<double> tolerance;
  /// Random rational forms per bidegree in the exterior suite.
  int exterior_samples = 100;
  int threads = 1;
};

bool is_suite(const std::string& name);

using Cell = std::variant<std::monostate, long, double, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<bool> row_pass;
};

struct VerifyReport {
  /// Ordered key/value pairs written as comment lines ahead of the data.
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<Table> tables;

  bool all_pass() const;
  long failures() const;
};

/// Runs one suite (or all) and assembles the tables.  The family may be absent for
/// the exterior suite only.  Evaluation errors are recorded per row.
VerifyReport run_verify(const std::optional<FamilyConfig>& config, const VerifyOptions& options);

/// Numbers with 17 significant digits; fixed column order; no timestamps.
std::string to_csv(const VerifyReport& report);
std::string to_json(const VerifyReport& report);

/// Everything after the leading comment block of a CSV report.
std::string csv_data_section(const std::string& csv);

}  // namespace hml::report
