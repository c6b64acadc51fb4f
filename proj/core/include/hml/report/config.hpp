#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hml/metrics/metrics.hpp"
#include "hml/picard_fuchs/operator.hpp"
#include "hml/vhs/pf_variation.hpp"

namespace hml::report {

/// Schema or consistency problem in a family description; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSettings {
  /// Number of leading coordinates treated as punctured-disk factors.
  int punctured = 1;
  int decade_start = 3;
  int decades = 6;
  int rays = 8;
};

struct FamilyConfig {
  std::string name;
  std::string kind;  // "picard-fuchs" or "synthetic"
  std::string synthetic_id;
  int weight = 0;
  int moduli_dim = 0;
  std::map<std::pair<int, int>, long> hodge_numbers;
  long euler_characteristic = 0;

  std::vector<std::vector<mpq_class>> pf_operator;
  std::vector<pf::SingularPoint> singular_points;
  std::complex<double> basepoint{};
  Eigen::MatrixXcd polarization;
  Eigen::MatrixXcd basis_change;
  vhs::PicardFuchsSettings pf;

  vhs::FdSettings fd;
  metrics::IdentityTolerances tolerances;
  std::string grid;
  /// Grid value w maps to the point (w·d_1, …, w·d_m).
  std::vector<std::complex<double>> grid_direction;
  SweepSettings sweep;

  /// Exact bytes the configuration was read from; hashed for provenance.
  std::string source;

  long hodge(int p, int q) const;
  /// Primitive Hodge numbers h^{p,q} − h^{p−1,q−1} of degree k, indexed by p.
  std::vector<int> primitive_hodge(int k) const;
};

/// Reads a JSON family file, or returns the configuration of a built-in family name.
FamilyConfig load_family(const std::string& path_or_builtin);
FamilyConfig parse_family(const std::string& text);
std::string builtin_config_text(const std::string& name);

std::shared_ptr<const vhs::Family> build_family(const FamilyConfig& config);

/// git-style object id: SHA-1 of "blob <size>\0" followed by the bytes.
std::string git_blob_hash(const std::string& bytes);

}  // namespace hml::report
