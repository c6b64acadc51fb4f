#include "hml/exterior/complex_rational.hpp"

#include <ostream>
#include <stdexcept>

namespace hml::exterior {

ComplexRational::ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ComplexRational ComplexRational::imaginary_unit() { return {Rational(0), Rational(1)}; }

ComplexRational ComplexRational::i_power(long e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

ComplexRational ComplexRational::parse(const std::string& re, const std::string& im) {
  Rational a, b;
  if (a.set_str(re, 10) != 0 || b.set_str(im, 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + re + "', '" + im + "'");
  }
  if (sgn(a.get_den()) == 0 || sgn(b.get_den()) == 0) throw std::invalid_argument("zero denominator");
  return {a, b};
}

ComplexRational ComplexRational::conj() const { return {re_, -im_}; }

Rational ComplexRational::norm() const {
  Rational r = re_ * re_ + im_ * im_;
  return r;
}

bool ComplexRational::is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
  Rational d = o.norm();
  if (sgn(d) == 0) throw std::domain_error("division by zero");
  Rational re = (re_ * o.re_ + im_ * o.im_) / d;
  Rational im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexRational ComplexRational::operator-() const { return {-re_, -im_}; }

bool operator==(const ComplexRational& a, const ComplexRational& b) {
  return a.re_ == b.re_ && a.im_ == b.im_;
}

std::string ComplexRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string s = re_.get_str();
  s += sgn(im_) > 0 ? "+" : "";
  return s + im_.get_str() + "i";
}

std::ostream& operator<<(std::ostream& os, const ComplexRational& z) { return os << z.str(); }

}  // namespace hml::exterior
