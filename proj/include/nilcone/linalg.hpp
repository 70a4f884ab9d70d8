#pragma once

// Exact linear algebra over Q: fraction-free row reduction, nullspaces,
// spans, solves, determinants.
//
// Row reduction scales each row to a primitive integer vector and eliminates
// with integer combinations (row <- p*row - a*pivot_row, then divide by the
// content), so no fractions appear until the final back substitution. Pivot
// columns are chosen from the last column towards the first and, within a
// column, the first unused row holding a nonzero entry is the pivot. With
// that rule the free variables of a nullspace are always the lowest-indexed
// admissible coordinates, which makes bases reproducible.

#include <algorithm>
#include <optional>
#include <vector>

#include "nilcone/rational.hpp"

namespace nilcone {

namespace detail {

using IntRow = std::vector<Integer>;

inline bool row_is_zero(const IntRow& r) {
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

inline void make_primitive(IntRow& r) {
  Integer g = 0;
  for (const auto& x : r)
    if (x != 0) g = gcd(g, x);
  if (g > 1)
    for (auto& x : r)
      if (x != 0) x /= g;
}

inline IntRow to_int_row(const Vector& v) {
  Integer l = 1;
  for (const auto& x : v)
    if (x != 0) l = lcm(l, x.get_den());
  IntRow r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) r[i] = (v[i].get_num() * l) / v[i].get_den();
  make_primitive(r);
  return r;
}

}  // namespace detail

/// Reduced echelon form computed fraction-free. `pivot_col[r]` is the pivot
/// column of reduced row r; every pivot column is zero in all other rows.
struct Echelon {
  std::vector<detail::IntRow> rows;
  std::vector<std::size_t> pivot_col;
  std::size_t cols = 0;

  std::size_t rank() const { return rows.size(); }

  std::vector<bool> pivot_mask() const {
    std::vector<bool> m(cols, false);
    for (auto c : pivot_col) m[c] = true;
    return m;
  }
};

inline Echelon reduce(const std::vector<Vector>& input, std::size_t cols) {
  using detail::IntRow;
  std::vector<IntRow> work;
  work.reserve(input.size());
  for (const auto& v : input) {
    IntRow r = detail::to_int_row(v);
    if (!detail::row_is_zero(r)) work.push_back(std::move(r));
  }
  std::vector<bool> used(work.size(), false);
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t step = 0; step < cols; ++step) {
    const std::size_t c = cols - 1 - step;
    std::size_t p = work.size();
    for (std::size_t r = 0; r < work.size(); ++r)
      if (!used[r] && work[r][c] != 0) {
        p = r;
        break;
      }
    if (p == work.size()) continue;
    used[p] = true;
    if (work[p][c] < 0)
      for (auto& x : work[p]) x = -x;
    const Integer piv = work[p][c];
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r == p || work[r][c] == 0) continue;
      const Integer a = work[r][c];
      Integer g = gcd(piv, a);
      Integer mp = piv / g, ma = a / g;
      for (std::size_t j = 0; j < cols; ++j) {
        if (work[p][j] == 0) {
          if (work[r][j] != 0) work[r][j] *= mp;
          continue;
        }
        work[r][j] = mp * work[r][j] - ma * work[p][j];
      }
      detail::make_primitive(work[r]);
    }
    pivot_rows.push_back(p);
    pivot_cols.push_back(c);
  }
  Echelon e;
  e.cols = cols;
  for (std::size_t i = 0; i < pivot_rows.size(); ++i) {
    e.rows.push_back(std::move(work[pivot_rows[i]]));
    e.pivot_col.push_back(pivot_cols[i]);
  }
  return e;
}

inline std::size_t rank(const std::vector<Vector>& vectors, std::size_t cols) {
  return reduce(vectors, cols).rank();
}

struct Nullspace {
  std::vector<Vector> basis;
  std::vector<std::size_t> free_columns;  // basis[s] has a 1 at free_columns[s]
};

/// Basis of {x : A x = 0} for the system whose rows are `rows`. One basis
/// vector per free coordinate f, with x_f = 1 and the other free coordinates 0.
inline Nullspace nullspace_with_free(const std::vector<Vector>& rows, std::size_t cols) {
  const Echelon e = reduce(rows, cols);
  const auto is_pivot = e.pivot_mask();
  Nullspace ns;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector x = zero_vector(cols);
    x[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      const auto& row = e.rows[r];
      if (row[f] == 0) continue;
      Rational q(-row[f], row[e.pivot_col[r]]);
      q.canonicalize();
      x[e.pivot_col[r]] = q;
    }
    ns.basis.push_back(std::move(x));
    ns.free_columns.push_back(f);
  }
  return ns;
}

inline std::vector<Vector> nullspace(const std::vector<Vector>& rows, std::size_t cols) {
  return nullspace_with_free(rows, cols).basis;
}

inline std::vector<Vector> nullspace(const Matrix& a) {
  std::vector<Vector> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
  return nullspace(rows, a.cols());
}

/// Echelon basis of span(vectors), returned as primitive integer vectors
/// converted back to rationals.
inline std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t dim) {
  const Echelon e = reduce(vectors, dim);
  std::vector<Vector> out;
  for (const auto& r : e.rows) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = r[i];
    out.push_back(std::move(v));
  }
  return out;
}

inline bool in_span(const std::vector<Vector>& basis, const Vector& v, std::size_t dim) {
  auto with = basis;
  with.push_back(v);
  return rank(with, dim) == rank(basis, dim);
}

/// Some solution of A x = b, or nullopt if the system is inconsistent.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  const std::size_t n = a.cols();
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Vector row = a.row(r);
    row.push_back(-b[r]);
    rows.push_back(std::move(row));
  }
  // x solves A x = b iff (x, 1) lies in the nullspace of [A | -b].
  for (const auto& v : nullspace(rows, n + 1))
    if (v[n] != 0) {
      Vector out(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
      return scaled(out, Rational(1) / v[n]);
    }
  return std::nullopt;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) return std::nullopt;
  Matrix work = a;
  Matrix id = Matrix::identity(n);
  // Plain Gauss-Jordan over Q; matrices here are small.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t r = c; r < n; ++r)
      if (work(r, c) != 0) {
        p = r;
        break;
      }
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(p, j), work(c, j));
        std::swap(id(p, j), id(c, j));
      }
    Rational piv = work(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      work(c, j) /= piv;
      id(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || work(r, c) == 0) continue;
      Rational f = work(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) -= f * work(c, j);
        id(r, j) -= f * id(c, j);
      }
    }
  }
  return id;
}

/// Bareiss determinant; exact for rational input.
inline Rational determinant(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Matrix m = a;
  Rational prev = 1;
  Rational sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = n;
      for (std::size_t r = k + 1; r < n; ++r)
        if (m(r, k) != 0) {
          p = r;
          break;
        }
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Leading principal minors det(A[0..k, 0..k]) for k = 1..n.
inline Vector leading_minors(const Matrix& a) {
  Vector out;
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    Matrix sub(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub(r, c) = a(r, c);
    out.push_back(determinant(sub));
  }
  return out;
}

}  // namespace nilcone
