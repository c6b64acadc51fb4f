#pragma once

#include <optional>
#include <vector>

#include "hml/exterior/complex_rational.hpp"

namespace hml::exterior {

using ExactVector = std::vector<ComplexRational>;
using ExactMatrix = std::vector<ExactVector>;  // row-major

ExactMatrix identity_matrix(std::size_t n);

/// Determinant by fraction-exact Gaussian elimination.
ComplexRational determinant(ExactMatrix a);

/// Inverse, or nullopt when singular.
std::optional<ExactMatrix> inverse(const ExactMatrix& a);

/// Solves A x = b for a possibly non-square A.  Returns nullopt unless the
/// system is consistent and the solution unique (full column rank).
std::optional<ExactVector> solve_unique(ExactMatrix a, ExactVector b);

}  // namespace hml::exterior
