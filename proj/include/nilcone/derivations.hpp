#pragma once

// Derivation algebra Der(mu), its diagonal part, and the algebra-level
// obstructions built on it: all derivations traceless, and all derivations
// nilpotent (decided with an Engel flag).

#include <optional>
#include <vector>

#include "nilcone/lie_bracket.hpp"
#include "nilcone/linalg.hpp"

namespace nilcone {

struct DerivationBasis {
  int dim_algebra = 0;
  std::vector<Matrix> basis;

  std::size_t dim() const { return basis.size(); }
};

/// Diagonal derivations d = Der(mu) cap t^n. `coordinates[s]` is the entry of D
/// that parametrizes basis[s]: basis[s] has a 1 there and 0 at the other
/// coordinates, so D = sum_s D[coordinates[s]] * basis[s].
struct DiagonalDerivationSpace {
  int dim_algebra = 0;
  std::vector<Vector> basis;
  std::vector<int> coordinates;

  std::size_t dim() const { return basis.size(); }

  Vector point(const Vector& params) const {
    Vector d = zero_vector(static_cast<std::size_t>(dim_algebra));
    for (std::size_t s = 0; s < basis.size(); ++s) d = add(d, basis[s], params[s]);
    return d;
  }

  Vector params_of(const Vector& d) const {
    Vector p;
    for (int c : coordinates) p.push_back(d[c]);
    return p;
  }
};

namespace detail {

/// Full antisymmetric structure tensor, index (i*n + j)*n + k.
inline std::vector<Rational> dense_tensor(const LieBracket& mu) {
  const std::size_t n = mu.dim();
  std::vector<Rational> c(n * n * n);
  for (const auto& [t, v] : mu.constants()) {
    c[(t.i * n + t.j) * n + t.k] = v;
    c[(t.j * n + t.i) * n + t.k] = -v;
  }
  return c;
}

}  // namespace detail

/// Exact nullspace of E -> E.mu on gl(n). Matrix entry (p, q) is unknown p*n + q.
inline DerivationBasis derivation_algebra(const LieBracket& mu) {
  const std::size_t n = mu.dim();
  const auto c = detail::dense_tensor(mu);
  auto C = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational& { return c[(i * n + j) * n + k]; };
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector row;
        auto touch = [&](std::size_t var, const Rational& v) {
          if (row.empty()) row = zero_vector(n * n);
          row[var] += v;
        };
        for (std::size_t l = 0; l < n; ++l) {
          if (C(i, j, l) != 0) touch(k * n + l, C(i, j, l));
          if (C(l, j, k) != 0) touch(l * n + i, -C(l, j, k));
          if (C(i, l, k) != 0) touch(l * n + j, -C(i, l, k));
        }
        if (!row.empty() && !is_zero(row)) rows.push_back(std::move(row));
      }
  DerivationBasis out;
  out.dim_algebra = mu.dim();
  for (const auto& v : nullspace(rows, n * n)) {
    Matrix e(n, n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) e(p, q) = v[p * n + q];
    out.basis.push_back(std::move(e));
  }
  return out;
}

inline bool is_derivation(const Matrix& e, const LieBracket& mu) {
  if (e.rows() != static_cast<std::size_t>(mu.dim()) || e.cols() != e.rows()) throw InputError("is_derivation: size mismatch");
  return act_infinitesimal(e, mu).is_zero();
}

inline bool is_diagonal_derivation(const Vector& d, const LieBracket& mu) {
  if (d.size() != static_cast<std::size_t>(mu.dim())) throw InputError("derivation has wrong length");
  for (const auto& [t, c] : mu.constants())
    if (d[t.k] != d[t.i] + d[t.j]) return false;
  return true;
}

/// Solutions of <d, F_ij^k> = 0 over the nonzero structure constants.
inline DiagonalDerivationSpace diagonal_derivations(const LieBracket& mu) {
  const std::size_t n = mu.dim();
  std::vector<Vector> rows;
  for (const auto& [t, c] : mu.constants()) {
    Vector r = zero_vector(n);
    r[t.k] += 1;
    r[t.i] -= 1;
    r[t.j] -= 1;
    rows.push_back(std::move(r));
  }
  DiagonalDerivationSpace out;
  out.dim_algebra = mu.dim();
  auto ns = nullspace_with_free(rows, n);
  out.basis = std::move(ns.basis);
  for (auto f : ns.free_columns) out.coordinates.push_back(static_cast<int>(f));
  return out;
}

inline bool all_derivations_traceless(const DerivationBasis& der) {
  for (const auto& e : der.basis)
    if (e.trace() != 0) return false;
  return true;
}

inline bool all_derivations_traceless(const LieBracket& mu) { return all_derivations_traceless(derivation_algebra(mu)); }

/// Engel flag V_1 < V_2 < ... with V_{k+1} = {x : E x in V_k for all E in Der}.
struct EngelFlag {
  bool characteristically_nilpotent = false;
  std::vector<std::size_t> dims;       // dim V_1, dim V_2, ...
  std::vector<std::vector<Vector>> subspaces;
  /// Stage k at which V_{k+1} = V_k != n: the induced action on n / V_k is
  /// nonzero with zero common kernel.
  std::optional<std::size_t> stalled_at;
};

inline EngelFlag engel_flag(const DerivationBasis& der) {
  const std::size_t n = der.dim_algebra;
  EngelFlag flag;
  std::vector<Vector> current;  // V_k, starts at 0
  while (current.size() < n) {
    // Annihilator of V_k: functionals y with y(v) = 0 on V_k.
    std::vector<Vector> ann = current.empty() ? std::vector<Vector>{} : nullspace(current, n);
    if (current.empty())
      for (std::size_t i = 0; i < n; ++i) ann.push_back(unit_vector(n, i));
    std::vector<Vector> rows;
    for (const auto& e : der.basis)
      for (const auto& y : ann) {
        Vector r = zero_vector(n);
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t p = 0; p < n; ++p)
            if (y[p] != 0 && e(p, q) != 0) r[q] += y[p] * e(p, q);
        if (!is_zero(r)) rows.push_back(std::move(r));
      }
    auto next = rows.empty() ? std::vector<Vector>{} : nullspace(rows, n);
    if (rows.empty())
      for (std::size_t i = 0; i < n; ++i) next.push_back(unit_vector(n, i));
    next = span_basis(next, n);
    if (next.size() <= current.size()) {
      flag.stalled_at = flag.dims.size();
      flag.characteristically_nilpotent = false;
      return flag;
    }
    current = std::move(next);
    flag.dims.push_back(current.size());
    flag.subspaces.push_back(current);
  }
  flag.characteristically_nilpotent = true;
  return flag;
}

inline EngelFlag is_characteristically_nilpotent(const LieBracket& mu) { return engel_flag(derivation_algebra(mu)); }

inline bool diagonal_projection_is_derivation(const LieBracket& mu, const DerivationBasis& der) {
  for (const auto& e : der.basis)
    if (!is_diagonal_derivation(e.diagonal(), mu)) return false;
  return true;
}

inline bool diagonal_projection_is_derivation(const LieBracket& mu) {
  return diagonal_projection_is_derivation(mu, derivation_algebra(mu));
}

/// Diagonal phi with tr(phi E) = tr(E) for every derivation E, restricted to
/// phi in the diagonal derivations; the minimum-norm solution, or nullopt when
/// no diagonal derivation satisfies the system. nullopt does not rule out a
/// pre-Einstein derivation outside the diagonal torus of this basis.
inline std::optional<Vector> solve_phi_on_diagonal(const LieBracket& mu, const DerivationBasis& der,
                                                   const DiagonalDerivationSpace& diag) {
  const std::size_t n = mu.dim();
  const std::size_t r = diag.dim();
  Matrix a(der.dim(), r);
  Vector b(der.dim());
  for (std::size_t row = 0; row < der.dim(); ++row) {
    const Vector ed = der.basis[row].diagonal();
    for (std::size_t s = 0; s < r; ++s) a(row, s) = dot(diag.basis[s], ed);
    b[row] = der.basis[row].trace();
  }
  if (r == 0) {
    for (const auto& t : b)
      if (t != 0) return std::nullopt;
    return zero_vector(n);
  }
  auto p0 = solve(a, b);
  if (!p0) return std::nullopt;
  // Minimize |B p|^2 over p0 + ker(a): solve (N^t G N) y = -N^t G p0, G = B^t B.
  auto ker = nullspace(a);
  Matrix basis = Matrix::from_columns(diag.basis, n);
  Vector p = *p0;
  if (!ker.empty()) {
    Matrix nmat = Matrix::from_columns(ker, r);
    Matrix g = basis.transpose() * basis;
    Matrix lhs = nmat.transpose() * g * nmat;
    Vector rhs = scaled(nmat.transpose().apply(g.apply(*p0)), -1);
    auto y = solve(lhs, rhs);
    if (!y) throw InvariantViolation("normal equations singular");
    p = add(p, nmat.apply(*y));
  }
  return basis.apply(p);
}

inline std::optional<Vector> solve_phi_on_diagonal(const LieBracket& mu) {
  return solve_phi_on_diagonal(mu, derivation_algebra(mu), diagonal_derivations(mu));
}

}  // namespace nilcone
