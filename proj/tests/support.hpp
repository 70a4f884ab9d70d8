#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nilcone/nilcone.hpp"

namespace nilcone::testing {

inline Rational random_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  Rational q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

inline Rational random_positive(std::mt19937_64& rng, int num = 9, int den = 5) {
  std::uniform_int_distribution<int> n(1, num), d(1, den);
  Rational q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

inline Matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  Matrix e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) e(i, j) = e(j, i) = random_rational(rng);
  return e;
}

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = random_rational(rng, 2, 2);
    if (determinant(g) != 0) return g;
  }
}

inline Matrix random_signed_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(p[i], i) = rng() % 2 ? 1 : -1;
  return g;
}

/// Every catalog bracket; families are sampled at the regression parameters.
inline std::vector<std::pair<std::string, LieBracket>> catalog_samples() {
  std::vector<std::pair<std::string, LieBracket>> out;
  for (const auto& e : catalog()) {
    if (e.parameter) {
      for (const auto& t : family_samples()) out.emplace_back(e.id + "(" + to_string(t) + ")", e.build(t));
    } else {
      out.emplace_back(e.id, e.build(0));
    }
  }
  return out;
}

inline LieBracket heisenberg() { return catalog_get("heis3"); }

/// Brute-force Leibniz check on basis vectors.
inline bool leibniz_holds(const Matrix& e, const LieBracket& mu) {
  const auto n = static_cast<std::size_t>(mu.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector x = unit_vector(n, i), y = unit_vector(n, j);
      Vector lhs = e.apply(mu.bracket(x, y));
      Vector rhs = add(mu.bracket(e.apply(x), y), mu.bracket(x, e.apply(y)));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace nilcone::testing
