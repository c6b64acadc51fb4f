#include "hml/exterior/exact_linear.hpp"

#include <stdexcept>

namespace hml::exterior {

ExactMatrix identity_matrix(std::size_t n) {
  ExactMatrix m(n, ExactVector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ComplexRational determinant(ExactMatrix a) {
  const std::size_t n = a.size();
  ComplexRational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    if (a[col].size() != n) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    const ComplexRational inv = ComplexRational(1) / a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const ComplexRational f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& a) {
  const std::size_t n = a.size();
  ExactMatrix aug(n, ExactVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse of non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(aug[pivot], aug[col]);
    const ComplexRational inv = ComplexRational(1) / aug[col][col];
    for (auto& v : aug[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col].is_zero()) continue;
      const ComplexRational f = aug[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  ExactMatrix out(n, ExactVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

std::optional<ExactVector> solve_unique(ExactMatrix a, ExactVector b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("right-hand side size mismatch");
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    std::swap(b[pivot], b[r]);
    const ComplexRational inv = ComplexRational(1) / a[r][col];
    for (std::size_t c = col; c < cols; ++c) a[r][c] *= inv;
    b[r] *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][col].is_zero()) continue;
      const ComplexRational f = a[k][col];
      for (std::size_t c = col; c < cols; ++c) a[k][c] -= f * a[r][c];
      b[k] -= f * b[r];
    }
    pivot_cols.push_back(col);
    ++r;
  }
  if (pivot_cols.size() != cols) return std::nullopt;
  for (std::size_t k = r; k < rows; ++k)
    if (!b[k].is_zero()) return std::nullopt;
  ExactVector x(cols);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = b[k];
  return x;
}

}  // namespace hml::exterior
