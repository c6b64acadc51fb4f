#pragma once

#include <random>

#include "hml/exterior/kahler_model.hpp"

namespace hml::testing {

inline exterior::ComplexRational random_rational(std::mt19937& rng) {
  auto part = [&] {
    const long num = static_cast<long>(rng() % 7) - 3;
    const long den = static_cast<long>(rng() % 3) + 1;
    return exterior::Rational(num, den);
  };
  return {part(), part()};
}

/// Random (p,q)-form; each coefficient is nonzero with probability about 3/4.
inline exterior::ConstantForm random_form(std::mt19937& rng, int n, int p, int q) {
  exterior::ConstantForm f(n, p, q);
  for (const auto& m : exterior::monomial_basis(n, p, q))
    if (rng() % 4 != 0) f.set(m, random_rational(rng));
  return f;
}

/// Non-diagonal positive-definite Hermitian Kähler model.
inline exterior::KahlerModel skew_model(int n) {
  using exterior::ComplexRational;
  using exterior::Rational;
  exterior::ExactMatrix h(n, exterior::ExactVector(n));
  for (int i = 0; i < n; ++i) {
    h[i][i] = ComplexRational(Rational(3 + i));
    for (int j = i + 1; j < n; ++j) {
      h[i][j] = ComplexRational(Rational(1, j + 1), Rational(i - j, 2));
      h[j][i] = h[i][j].conj();
    }
  }
  return exterior::KahlerModel::from_hermitian(h);
}

}  // namespace hml::testing
