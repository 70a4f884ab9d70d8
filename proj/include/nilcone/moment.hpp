#pragma once

// Moment map, Ricci operators and exact definiteness.
//
// Norm convention: |mu|^2 = sum_{i<j,k} (c_ij^k)^2, and m(mu) is fixed by
// tr(m(mu) E) |mu|^2 = <E.mu, mu> for symmetric E. Under this convention the
// Heisenberg value is Diag(-1,-1,1) = F_12^3 and the nilmanifold Ricci
// operator is Ric_mu = (|mu|^2 / 2) m(mu).

#include <map>
#include <vector>

#include "nilcone/derivations.hpp"
#include "nilcone/lie_bracket.hpp"
#include "nilcone/linalg.hpp"

namespace nilcone {

inline Rational norm_squared(const LieBracket& mu) {
  if (mu.is_zero()) throw InputError("norm_squared: zero bracket");
  return inner_product(mu, mu);
}

/// <E.mu, mu> with the orthonormal basis {mu_ijk}.
inline Rational moment_pairing(const Matrix& e, const LieBracket& mu) {
  return inner_product(act_infinitesimal(e, mu), mu);
}

namespace detail {

/// Unnormalized moment matrix |mu|^2 m(mu):
///   G_pq = sum_{i<j} c_ij^p c_ij^q - sum_{l,k} c_pl^k c_ql^k.
inline Matrix moment_numerator(const LieBracket& mu) {
  const std::size_t n = mu.dim();
  Matrix g(n, n);
  const auto& cs = mu.constants();
  // First term: pairs (i,j) contribute outer products of their image vectors.
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> images;
  for (const auto& [t, c] : cs) images[{t.i, t.j}].push_back({t.k, c});
  for (const auto& [pair, img] : images)
    for (const auto& [p, cp] : img)
      for (const auto& [q, cq] : img) g(p, q) += cp * cq;
  // Second term: rows of ad, c_pl^k over all l, k with antisymmetry.
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> by_lk;  // (l,k) -> [(p, c_pl^k)]
  for (const auto& [t, c] : cs) {
    by_lk[{t.j, t.k}].push_back({t.i, c});
    by_lk[{t.i, t.k}].push_back({t.j, -c});
  }
  for (const auto& [lk, entries] : by_lk)
    for (const auto& [p, cp] : entries)
      for (const auto& [q, cq] : entries) g(p, q) -= cp * cq;
  return g;
}

}  // namespace detail

inline Matrix moment_map(const LieBracket& mu) {
  const Rational nsq = norm_squared(mu);
  return Rational(1) / nsq * detail::moment_numerator(mu);
}

struct MomentDiagonal {
  Vector diagonal;                         // sum t_ijk F_ij^k
  std::map<Triple, Rational> coefficients; // t_ijk = c^2 / |mu|^2, summing to 1
};

inline MomentDiagonal moment_diagonal(const LieBracket& mu) {
  const Rational nsq = norm_squared(mu);
  MomentDiagonal out;
  out.diagonal = zero_vector(static_cast<std::size_t>(mu.dim()));
  for (const auto& [t, c] : mu.constants()) {
    Rational w = c * c / nsq;
    out.coefficients[t] = w;
    out.diagonal[t.k] += w;
    out.diagonal[t.i] -= w;
    out.diagonal[t.j] -= w;
  }
  return out;
}

/// Ricci operator of the nilmanifold; zero for the abelian bracket.
inline Matrix nil_ricci(const LieBracket& mu) {
  if (mu.is_zero()) return Matrix(mu.dim(), mu.dim());
  return Rational(1, 2) * detail::moment_numerator(mu);
}

/// Solvable extension R f + n with ad f = D, bracket s (h . mu) on n, f unit
/// and orthogonal to n.
struct MetricExtension {
  LieBracket mu;
  Vector derivation;
  Rational scale = 1;
  Vector h;

  LieBracket bracket() const { return act_diagonal(h, mu).scaled(scale); }
};

inline void validate(const MetricExtension& ext) {
  const std::size_t n = ext.mu.dim();
  if (ext.derivation.size() != n) throw InputError("derivation has wrong length");
  if (ext.h.size() != n) throw InputError("h has wrong length");
  if (ext.scale <= 0) throw InputError("scale must be positive");
  for (const auto& x : ext.h)
    if (x <= 0) throw InputError("h entries must be positive");
  if (!is_diagonal_derivation(ext.derivation, ext.mu)) throw InputError("D is not a derivation");
}

/// (n+1) x (n+1) Ricci matrix, index 0 = f.
inline Matrix extension_ricci(const MetricExtension& ext) {
  validate(ext);
  const std::size_t n = ext.mu.dim();
  const Vector& d = ext.derivation;
  const LieBracket lambda = ext.bracket();
  Rational tr = 0, tr2 = 0;
  for (const auto& x : d) {
    tr += x;
    tr2 += x * x;
  }
  Matrix ric(n + 1, n + 1);
  ric(0, 0) = -tr2;
  // -tr(D ad e_i) = -sum_j d_j c_ij^j
  for (const auto& [t, c] : lambda.constants()) {
    if (t.k == t.j) ric(0, t.i + 1) -= d[t.j] * c;
    if (t.k == t.i) ric(0, t.j + 1) += d[t.i] * c;
  }
  for (std::size_t i = 0; i < n; ++i) ric(i + 1, 0) = ric(0, i + 1);
  const Matrix rn = nil_ricci(lambda);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ric(i + 1, j + 1) = rn(i, j);
  for (std::size_t i = 0; i < n; ++i) ric(i + 1, i + 1) -= tr * d[i];
  return ric;
}

/// Exact Sylvester test: (-1)^k Delta_k > 0 for every leading minor.
inline bool is_negative_definite(const Matrix& m) {
  if (!m.is_symmetric()) throw InputError("is_negative_definite: matrix is not symmetric");
  const Vector minors = leading_minors(m);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const bool odd = (k + 1) % 2 == 1;
    if (odd ? minors[k] >= 0 : minors[k] <= 0) return false;
  }
  return !minors.empty();
}

/// m(h.mu) is diagonal. For a nice basis this holds for every positive h.
inline bool moment_is_diagonal(const LieBracket& mu, const Vector& h) {
  return detail::moment_numerator(act_diagonal(h, mu)).is_diagonal();
}

}  // namespace nilcone
