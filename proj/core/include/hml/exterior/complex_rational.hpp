#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace hml::exterior {

using Rational = mpq_class;

/// Exact Gaussian rational re + im·i.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational re, Rational im);

  static ComplexRational imaginary_unit();
  /// i^e for any integer e.
  static ComplexRational i_power(long e);
  /// Parses "a/b" for each part.
  static ComplexRational parse(const std::string& re, const std::string& im = "0");

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  ComplexRational conj() const;
  /// |z|^2, exact.
  Rational norm() const;
  bool is_zero() const;
  bool is_real() const { return sgn(im_) == 0; }

  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  ComplexRational& operator/=(const ComplexRational& o);

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  ComplexRational operator-() const;

  friend bool operator==(const ComplexRational& a, const ComplexRational& b);
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const ComplexRational& z);

}  // namespace hml::exterior
