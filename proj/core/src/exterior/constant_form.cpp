#include "hml/exterior/constant_form.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace hml::exterior {

int popcount(IndexMask m) { return std::popcount(m); }

IndexMask mask_of(const std::vector<int>& one_based_indices) {
  IndexMask m = 0;
  int last = 0;
  for (int i : one_based_indices) {
    if (i <= last || i > ConstantForm::kMaxDim) throw std::invalid_argument("indices must be strictly increasing");
    m |= IndexMask{1} << (i - 1);
    last = i;
  }
  return m;
}

std::vector<int> indices_of(IndexMask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i + 1);
  return out;
}

std::vector<Monomial> monomial_basis(int n, int p, int q) {
  std::vector<IndexMask> holo, anti;
  for (IndexMask m = 0; m < (IndexMask{1} << n); ++m) {
    if (popcount(m) == p) holo.push_back(m);
    if (popcount(m) == q) anti.push_back(m);
  }
  std::vector<Monomial> out;
  out.reserve(holo.size() * anti.size());
  for (IndexMask h : holo)
    for (IndexMask a : anti) out.push_back({h, a});
  return out;
}

int merge_sign(IndexMask lhs, IndexMask rhs) {
  int inversions = 0;
  for (IndexMask b = rhs; b != 0; b &= b - 1) {
    const IndexMask lowest = b & (~b + 1);
    inversions += popcount(lhs & ~((lowest << 1) - 1));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

ConstantForm::ConstantForm(int n, int p, int q) : n_(n), p_(p), q_(q) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
  if (p < 0 || q < 0 || p > n || q > n) throw std::invalid_argument("bidegree out of range");
}

ConstantForm ConstantForm::unit(int n) {
  ConstantForm f(n, 0, 0);
  f.set({0, 0}, 1);
  return f;
}

ConstantForm ConstantForm::monomial(int n, const std::vector<int>& holo, const std::vector<int>& anti,
                                    ComplexRational coefficient) {
  ConstantForm f(n, static_cast<int>(holo.size()), static_cast<int>(anti.size()));
  f.set({mask_of(holo), mask_of(anti)}, coefficient);
  return f;
}

void ConstantForm::check_monomial(const Monomial& m) const {
  const IndexMask range = (IndexMask{1} << n_) - 1;
  if ((m.holo & ~range) || (m.anti & ~range) || popcount(m.holo) != p_ || popcount(m.anti) != q_)
    throw std::invalid_argument("monomial does not match form bidegree");
}

ComplexRational ConstantForm::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ComplexRational{} : it->second;
}

void ConstantForm::set(const Monomial& m, const ComplexRational& c) {
  check_monomial(m);
  if (c.is_zero())
    terms_.erase(m);
  else
    terms_[m] = c;
}

void ConstantForm::add(const Monomial& m, const ComplexRational& c) {
  check_monomial(m);
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ConstantForm ConstantForm::conj() const {
  // conj(dz_I ∧ dz̄_J) = dz̄_I ∧ dz_J = (-1)^{|I||J|} dz_J ∧ dz̄_I
  ConstantForm out(n_, q_, p_);
  const bool flip = (p_ * q_) % 2 != 0;
  for (const auto& [m, c] : terms_) out.terms_[{m.anti, m.holo}] = flip ? -c.conj() : c.conj();
  return out;
}

void ConstantForm::check_compatible(const ConstantForm& o) const {
  if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_) throw std::invalid_argument("bidegree mismatch");
}

ConstantForm& ConstantForm::operator+=(const ConstantForm& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

ConstantForm& ConstantForm::operator-=(const ConstantForm& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

ConstantForm& ConstantForm::operator*=(const ComplexRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

bool operator==(const ConstantForm& a, const ConstantForm& b) {
  return a.n_ == b.n_ && a.p_ == b.p_ && a.q_ == b.q_ && a.terms_ == b.terms_;
}

std::string ConstantForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    for (int i : indices_of(m.holo)) os << " dz" << i;
    for (int i : indices_of(m.anti)) os << " dzb" << i;
  }
  return os.str();
}

ConstantForm wedge(const ConstantForm& a, const ConstantForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  const int n = a.dim();
  if (a.degree() + b.degree() > 2 * n) throw std::domain_error("degree exceeds 2n");
  if (a.p() + b.p() > n || a.q() + b.q() > n) throw std::domain_error("degree exceeds 2n in one bidegree slot");
  ConstantForm out(n, a.p() + b.p(), a.q() + b.q());
  // (dz_I1 dz̄_J1)(dz_I2 dz̄_J2) = (-1)^{|J1||I2|} dz_I1 dz_I2 dz̄_J1 dz̄_J2
  const int cross = (a.q() * b.p()) % 2 == 0 ? 1 : -1;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if ((ma.holo & mb.holo) || (ma.anti & mb.anti)) continue;
      const int sign = cross * merge_sign(ma.holo, mb.holo) * merge_sign(ma.anti, mb.anti);
      ComplexRational c = ca * cb;
      if (sign < 0) c = -c;
      out.add({ma.holo | mb.holo, ma.anti | mb.anti}, c);
    }
  }
  return out;
}

ComplexRational top_coefficient(const ConstantForm& a) {
  const int n = a.dim();
  if (a.p() != n || a.q() != n) throw std::invalid_argument("not a top-degree form");
  const IndexMask full = (IndexMask{1} << n) - 1;
  return a.coefficient({full, full});
}

}  // namespace hml::exterior
