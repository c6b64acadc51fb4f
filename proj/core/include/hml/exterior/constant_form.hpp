#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hml/exterior/complex_rational.hpp"

namespace hml::exterior {

/// Bit i set means index i+1 is present.
using IndexMask = std::uint32_t;

/// dz_I ∧ dz̄_J with I and J increasing.
struct Monomial {
  IndexMask holo = 0;
  IndexMask anti = 0;
  auto operator<=>(const Monomial&) const = default;
};

int popcount(IndexMask m);
IndexMask mask_of(const std::vector<int>& one_based_indices);
std::vector<int> indices_of(IndexMask m);

/// All monomials of bidegree (p,q) in dimension n, in a fixed order.
std::vector<Monomial> monomial_basis(int n, int p, int q);

/// (-1)^(number of pairs a in lhs, b in rhs with a > b): sign of sorting the
/// concatenation of two increasing index lists.
int merge_sign(IndexMask lhs, IndexMask rhs);

/// Constant-coefficient form of pure bidegree on a complex torus of dimension n.
class ConstantForm {
 public:
  static constexpr int kMaxDim = 16;

  ConstantForm(int n, int p, int q);
  static ConstantForm unit(int n);
  /// Single monomial from 1-based strictly increasing index lists.
  static ConstantForm monomial(int n, const std::vector<int>& holo, const std::vector<int>& anti,
                               ComplexRational coefficient = 1);

  int dim() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int degree() const { return p_ + q_; }

  const std::map<Monomial, ComplexRational>& terms() const { return terms_; }
  ComplexRational coefficient(const Monomial& m) const;
  void set(const Monomial& m, const ComplexRational& c);
  void add(const Monomial& m, const ComplexRational& c);

  bool is_zero() const { return terms_.empty(); }
  /// Complex conjugate; bidegree (q,p).
  ConstantForm conj() const;

  ConstantForm& operator+=(const ConstantForm& o);
  ConstantForm& operator-=(const ConstantForm& o);
  ConstantForm& operator*=(const ComplexRational& s);
  friend ConstantForm operator+(ConstantForm a, const ConstantForm& b) { return a += b; }
  friend ConstantForm operator-(ConstantForm a, const ConstantForm& b) { return a -= b; }
  friend ConstantForm operator*(ConstantForm a, const ComplexRational& s) { return a *= s; }
  friend ConstantForm operator*(const ComplexRational& s, ConstantForm a) { return a *= s; }
  friend bool operator==(const ConstantForm& a, const ConstantForm& b);

  std::string str() const;

 private:
  void check_compatible(const ConstantForm& o) const;
  void check_monomial(const Monomial& m) const;

  int n_;
  int p_;
  int q_;
  std::map<Monomial, ComplexRational> terms_;  // zero coefficients are never stored
};

/// Graded-commutative exterior product.
ConstantForm wedge(const ConstantForm& a, const ConstantForm& b);

/// Coefficient of dz_1∧…∧dz_n∧dz̄_1∧…∧dz̄_n in a top-degree form.
ComplexRational top_coefficient(const ConstantForm& a);

}  // namespace hml::exterior
