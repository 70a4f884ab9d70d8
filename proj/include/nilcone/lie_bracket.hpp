#pragma once

// Skew-symmetric algebras on R^n given by structure constants, the natural
// GL(n) action on them, and the structural predicates used everywhere else
// (Jacobi identity, lower central series, center, nice bases).

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nilcone/linalg.hpp"
#include "nilcone/rational.hpp"

namespace nilcone {

/// Index triple (i, j, k) with i < j, 0-based: the e_k coefficient of [e_i, e_j].
struct Triple {
  int i = 0;
  int j = 0;
  int k = 0;

  auto operator<=>(const Triple&) const = default;

  /// Human-facing form, 1-based: "(1,2,3)".
  std::string str() const {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
  }
};

/// Builds a triple from the 1-based indices used in files and output.
inline Triple one_based(int i, int j, int k) { return Triple{i - 1, j - 1, k - 1}; }

class LieBracket {
 public:
  using Constants = std::map<Triple, Rational>;

  LieBracket() = default;
  explicit LieBracket(int dim) : dim_(dim) {
    if (dim <= 0) throw InputError("dimension must be positive");
  }

  int dim() const { return dim_; }
  const Constants& constants() const { return constants_; }
  bool is_zero() const { return constants_.empty(); }

  /// Sets the e_k coefficient of [e_i, e_j]; any orientation is accepted
  /// and normalized to i < j. A zero value erases the entry.
  void set(int i, int j, int k, const Rational& value) {
    check_index(i);
    check_index(j);
    check_index(k);
    if (i == j) {
      if (value != 0) throw InputError("[e_i, e_i] must vanish");
      return;
    }
    Rational v = value;
    if (i > j) {
      std::swap(i, j);
      v = -v;
    }
    if (v == 0)
      constants_.erase(Triple{i, j, k});
    else
      constants_[Triple{i, j, k}] = v;
  }

  void add(int i, int j, int k, const Rational& value) { set(i, j, k, coefficient(i, j, k) + value); }

  /// Antisymmetric coefficient lookup, any ordering of i, j.
  Rational coefficient(int i, int j, int k) const {
    if (i == j) return 0;
    Rational sign = 1;
    if (i > j) {
      std::swap(i, j);
      sign = -1;
    }
    auto it = constants_.find(Triple{i, j, k});
    return it == constants_.end() ? Rational(0) : Rational(sign * it->second);
  }

  /// [x, y] for coordinate vectors x, y.
  Vector bracket(const Vector& x, const Vector& y) const {
    Vector out = zero_vector(static_cast<std::size_t>(dim_));
    for (const auto& [t, c] : constants_) {
      Rational w = x[t.i] * y[t.j] - x[t.j] * y[t.i];
      if (w != 0) out[t.k] += c * w;
    }
    return out;
  }

  /// ad_x as an n x n matrix: column j holds [x, e_j].
  Matrix ad(const Vector& x) const {
    Matrix m(dim_, dim_);
    for (const auto& [t, c] : constants_) {
      if (x[t.i] != 0) m(t.k, t.j) += c * x[t.i];
      if (x[t.j] != 0) m(t.k, t.i) -= c * x[t.j];
    }
    return m;
  }

  /// Scalar multiple c * mu.
  LieBracket scaled(const Rational& s) const {
    LieBracket out(dim_);
    if (s == 0) return out;
    for (const auto& [t, c] : constants_) out.constants_[t] = c * s;
    return out;
  }

  friend bool operator==(const LieBracket&, const LieBracket&) = default;

 private:
  void check_index(int i) const {
    if (i < 0 || i >= dim_) throw InputError("basis index " + std::to_string(i + 1) + " out of range 1.." + std::to_string(dim_));
  }

  int dim_ = 0;
  Constants constants_;
};

/// Inner product on V making the mu_ijk (i < j) orthonormal.
inline Rational inner_product(const LieBracket& a, const LieBracket& b) {
  Rational s = 0;
  for (const auto& [t, c] : a.constants()) {
    auto it = b.constants().find(t);
    if (it != b.constants().end()) s += c * it->second;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline int parse_index(const std::string& tok, int line_no) {
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw InputError("");
    return static_cast<int>(v);
  } catch (...) {
    throw InputError("line " + std::to_string(line_no) + ": malformed index '" + tok + "'");
  }
}

}  // namespace detail

/// Parses the line-based algebra format:
///   # comment
///   dim N
///   bracket i j k p/q
inline LieBracket parse_bracket(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::optional<LieBracket> mu;
  std::map<Triple, int> seen;           // canonical key -> line
  std::map<Triple, bool> orientation;   // canonical key -> given as i<j
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (tok[0] == "dim") {
      if (mu) throw InputError(where + "'dim' given twice");
      if (tok.size() != 2) throw InputError(where + "expected 'dim N'");
      int n = detail::parse_index(tok[1], line_no);
      if (n <= 0) throw InputError(where + "dimension must be positive");
      mu.emplace(n);
      continue;
    }
    if (!mu) throw InputError(where + "'dim N' must be the first non-comment line");
    if (tok[0] != "bracket" || tok.size() != 5) throw InputError(where + "expected 'bracket i j k p/q'");
    int i = detail::parse_index(tok[1], line_no);
    int j = detail::parse_index(tok[2], line_no);
    int k = detail::parse_index(tok[3], line_no);
    const int n = mu->dim();
    for (int idx : {i, j, k})
      if (idx < 1 || idx > n) throw InputError(where + "index " + std::to_string(idx) + " out of range 1.." + std::to_string(n));
    if (i == j) throw InputError(where + "[e_i, e_i] is always zero");
    Rational c;
    try {
      c = parse_rational(tok[4]);
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
    if (c == 0) throw InputError(where + "zero coefficient");
    Triple key{std::min(i, j) - 1, std::max(i, j) - 1, k - 1};
    if (auto it = seen.find(key); it != seen.end()) {
      if (orientation[key] != (i < j))
        throw InputError(where + "conflicting orientation with line " + std::to_string(it->second));
      throw InputError(where + "duplicate triple, first given on line " + std::to_string(it->second));
    }
    seen[key] = line_no;
    orientation[key] = i < j;
    mu->set(i - 1, j - 1, k - 1, c);
  }
  if (!mu) throw InputError("missing 'dim N' line");
  return *mu;
}

/// Canonical text form; parse_bracket(emit_bracket(mu)) == mu.
inline std::string emit_bracket(const LieBracket& mu) {
  std::string out = "dim " + std::to_string(mu.dim()) + "\n";
  for (const auto& [t, c] : mu.constants())
    out += "bracket " + std::to_string(t.i + 1) + " " + std::to_string(t.j + 1) + " " + std::to_string(t.k + 1) + " " +
           to_string(c) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Lie-theoretic predicates

struct JacobiResult {
  bool holds = true;
  std::optional<std::array<int, 3>> violation;  // 0-based i < j < k
  Vector defect;                                // Jacobiator on the violating triple
};

inline JacobiResult check_jacobi(const LieBracket& mu) {
  const int n = mu.dim();
  const auto un = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector eij = mu.bracket(unit_vector(un, i), unit_vector(un, j));
      for (int k = j + 1; k < n; ++k) {
        Vector ei = unit_vector(un, i), ej = unit_vector(un, j), ek = unit_vector(un, k);
        Vector s = mu.bracket(eij, ek);
        s = add(s, mu.bracket(mu.bracket(ej, ek), ei));
        s = add(s, mu.bracket(mu.bracket(ek, ei), ej));
        if (!is_zero(s)) return JacobiResult{false, std::array<int, 3>{i, j, k}, s};
      }
    }
  return {};
}

/// Nested subspaces with their dimensions; each term is an echelon basis.
struct SubspaceChain {
  std::vector<std::vector<Vector>> terms;
  std::vector<std::size_t> dims;

  bool reaches_zero() const { return !dims.empty() && dims.back() == 0; }
  /// Dimensions with the trailing zero removed, e.g. (3, 1) for Heisenberg.
  std::vector<std::size_t> nonzero_dims() const {
    std::vector<std::size_t> out;
    for (auto d : dims)
      if (d) out.push_back(d);
    return out;
  }
};

/// gamma_1 = n, gamma_{k+1} = [n, gamma_k], until the dimension stops
/// dropping. The chain ends with a 0 term exactly when mu is nilpotent.
inline SubspaceChain lower_central_series(const LieBracket& mu) {
  const auto n = static_cast<std::size_t>(mu.dim());
  SubspaceChain chain;
  std::vector<Vector> cur;
  for (std::size_t i = 0; i < n; ++i) cur.push_back(unit_vector(n, i));
  chain.terms.push_back(cur);
  chain.dims.push_back(n);
  while (true) {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& y : cur) gens.push_back(mu.bracket(unit_vector(n, i), y));
    auto next = span_basis(gens, n);
    if (next.size() == cur.size()) break;
    chain.terms.push_back(next);
    chain.dims.push_back(next.size());
    if (next.empty()) break;
    cur = std::move(next);
  }
  return chain;
}

inline bool is_nilpotent(const LieBracket& mu) { return lower_central_series(mu).reaches_zero(); }

/// Basis of the center {X : [X, e_i] = 0 for all i}.
inline std::vector<Vector> center(const LieBracket& mu) {
  const auto n = static_cast<std::size_t>(mu.dim());
  // Row (i, k): sum_l X_l c_{l i}^k = 0.
  std::vector<Vector> rows(n * n, zero_vector(n));
  for (const auto& [t, c] : mu.constants()) {
    rows[t.j * n + t.k][t.i] += c;  // X_i [e_i, e_j]
    rows[t.i * n + t.k][t.j] -= c;  // X_j [e_j, e_i]
  }
  return nullspace(rows, n);
}

/// g . mu = g mu(g^{-1} ., g^{-1} .).
inline LieBracket act(const Matrix& g, const LieBracket& mu) {
  const int n = mu.dim();
  if (g.rows() != static_cast<std::size_t>(n) || g.cols() != g.rows()) throw InputError("act: matrix size mismatch");
  auto ginv = inverse(g);
  if (!ginv) throw InputError("act: singular matrix");
  // Full antisymmetric tensor of the result, indexed [i][j][k].
  std::vector<Rational> out(static_cast<std::size_t>(n) * n * n);
  auto at = [&](int i, int j, int k) -> Rational& { return out[(static_cast<std::size_t>(i) * n + j) * n + k]; };
  for (const auto& [t, c] : mu.constants()) {
    for (int i = 0; i < n; ++i) {
      const Rational& ai = (*ginv)(t.i, i);
      const Rational& bi = (*ginv)(t.j, i);
      if (ai == 0 && bi == 0) continue;
      for (int j = i + 1; j < n; ++j) {
        // c_ab^l (ginv_ai ginv_bj - ginv_bi ginv_aj)
        Rational w = ai * (*ginv)(t.j, j) - bi * (*ginv)(t.i, j);
        if (w == 0) continue;
        w *= c;
        for (int k = 0; k < n; ++k)
          if (g(k, t.k) != 0) at(i, j, k) += g(k, t.k) * w;
      }
    }
  }
  LieBracket res(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (at(i, j, k) != 0) res.set(i, j, k, at(i, j, k));
  return res;
}

/// Diagonal action: c(h.mu)_ij^k = h_k / (h_i h_j) c(mu)_ij^k.
inline LieBracket act_diagonal(const Vector& h, const LieBracket& mu) {
  LieBracket res(mu.dim());
  for (const auto& [t, c] : mu.constants()) {
    if (h[t.i] == 0 || h[t.j] == 0) throw InputError("act_diagonal: singular matrix");
    res.set(t.i, t.j, t.k, c * h[t.k] / (h[t.i] * h[t.j]));
  }
  return res;
}

/// Infinitesimal action E.mu = E mu(.,.) - mu(E.,.) - mu(.,E.). The result is
/// a skew-symmetric algebra, not necessarily a Lie bracket.
inline LieBracket act_infinitesimal(const Matrix& e, const LieBracket& mu) {
  const int n = mu.dim();
  const auto un = static_cast<std::size_t>(n);
  LieBracket res(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector ei = unit_vector(un, i), ej = unit_vector(un, j);
      Vector v = e.apply(mu.bracket(ei, ej));
      v = add(v, mu.bracket(e.column(i), ej), -1);
      v = add(v, mu.bracket(ei, e.column(j)), -1);
      for (int k = 0; k < n; ++k)
        if (v[k] != 0) res.set(i, j, k, v[k]);
    }
  return res;
}

/// Combinatorial nice-basis test: each [e_i, e_j] is a multiple of a single
/// basis vector, and two distinct pairs hitting the same e_k are disjoint.
struct NiceReport {
  bool nice = true;
  std::string reason;
};

inline NiceReport check_nice_basis(const LieBracket& mu) {
  std::map<std::pair<int, int>, int> target;
  for (const auto& [t, c] : mu.constants()) {
    auto [it, fresh] = target.emplace(std::pair{t.i, t.j}, t.k);
    if (!fresh)
      return {false, "[e" + std::to_string(t.i + 1) + ",e" + std::to_string(t.j + 1) + "] has more than one basis component"};
  }
  std::map<int, std::vector<std::pair<int, int>>> by_target;
  for (const auto& [pair, k] : target) by_target[k].push_back(pair);
  for (const auto& [k, pairs] : by_target)
    for (std::size_t a = 0; a < pairs.size(); ++a)
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        auto [i, j] = pairs[a];
        auto [r, s] = pairs[b];
        if (i == r || i == s || j == r || j == s)
          return {false, "[e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "] and [e" + std::to_string(r + 1) + ",e" +
                             std::to_string(s + 1) + "] share an index and both hit e" + std::to_string(k + 1)};
      }
  return {};
}

inline bool is_nice_basis(const LieBracket& mu) { return check_nice_basis(mu).nice; }

}  // namespace nilcone
