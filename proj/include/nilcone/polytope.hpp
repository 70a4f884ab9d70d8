#pragma once

// Weights F_ij^k = E_kk - E_ii - E_jj of the nonzero structure constants, the
// polytope CH_mu they span, and the exact LP machinery over it: strict
// membership in R_{>=0} CH + t^n_{>0}, Fourier-Motzkin projection of that
// system onto the diagonal derivations, faces of CH_mu and the toral
// degenerations they index.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "nilcone/derivations.hpp"
#include "nilcone/lie_bracket.hpp"
#include "nilcone/simplex.hpp"

namespace nilcone {

struct Weight {
  Triple index;
  Vector vec;  // e_k - e_i - e_j, integer entries
};

inline Vector weight_vector(const Triple& t, int n) {
  Vector v = zero_vector(static_cast<std::size_t>(n));
  v[t.k] += 1;
  v[t.i] -= 1;
  v[t.j] -= 1;
  return v;
}

/// One weight per nonzero structure constant, in canonical key order.
struct WeightSet {
  int dim = 0;
  std::vector<Weight> weights;

  std::size_t size() const { return weights.size(); }

  std::vector<Triple> index_set() const {
    std::vector<Triple> out;
    for (const auto& w : weights) out.push_back(w.index);
    return out;
  }

  /// sum_w a_w F_w
  Vector combine(const Vector& a) const {
    Vector out = zero_vector(static_cast<std::size_t>(dim));
    for (std::size_t w = 0; w < weights.size(); ++w)
      if (a[w] != 0) out = add(out, weights[w].vec, a[w]);
    return out;
  }
};

inline WeightSet weight_set(const LieBracket& mu) {
  WeightSet ws;
  ws.dim = mu.dim();
  for (const auto& [t, c] : mu.constants()) ws.weights.push_back({t, weight_vector(t, mu.dim())});
  return ws;
}

// ---------------------------------------------------------------------------
// Strict cone membership

struct LPResult {
  bool feasible = false;
  Vector assignment;  // a_w >= 0, aligned with WeightSet::weights
  Rational slack;     // min entry of D - sum a F (> 0 when feasible)

  std::map<Triple, Rational> coefficients(const WeightSet& ws) const {
    std::map<Triple, Rational> out;
    for (std::size_t w = 0; w < assignment.size(); ++w)
      if (assignment[w] != 0) out[ws.weights[w].index] = assignment[w];
    return out;
  }
};

inline Rational min_entry(const Vector& v) {
  Rational m = v.front();
  for (const auto& x : v)
    if (x < m) m = x;
  return m;
}

/// Decides whether a >= 0 exists with D - sum a_w F_w > 0 entrywise, by
/// maximizing eps subject to D - sum a F >= eps, 0 <= eps <= 1.
inline LPResult strict_cone_membership(const Vector& d, const WeightSet& ws) {
  const std::size_t m = ws.size();
  const std::size_t n = ws.dim;
  if (d.size() != n) throw InputError("derivation has wrong length");
  LinearProgram lp(m + 1);
  lp.objective[m] = 1;
  for (std::size_t r = 0; r < n; ++r) {
    Vector row = zero_vector(m + 1);
    for (std::size_t w = 0; w < m; ++w) row[w] = ws.weights[w].vec[r];
    row[m] = 1;
    lp.add(std::move(row), Relation::LessEqual, d[r]);
  }
  lp.add(unit_vector(m + 1, m), Relation::LessEqual, 1);
  LPResult res;
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal || sol.value <= 0) return res;
  res.feasible = true;
  res.assignment.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
  res.slack = min_entry(add(d, ws.combine(res.assignment), -1));
  if (res.slack <= 0) throw InvariantViolation("strict membership slack not positive after substitution");
  return res;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin projection

/// Open polyhedral cone {p : g.p > 0 for every g}, in canonical form:
/// primitive integer rows, no redundant row, lexicographically sorted.
struct ConeDescription {
  bool empty = false;
  std::vector<std::vector<Integer>> inequalities;

  bool contains(const Vector& p) const {
    if (empty) return false;
    for (const auto& g : inequalities) {
      Rational s = 0;
      for (std::size_t i = 0; i < g.size(); ++i) s += Rational(g[i]) * p[i];
      if (s <= 0) return false;
    }
    return true;
  }

  friend bool operator==(const ConeDescription&, const ConeDescription&) = default;
};

namespace detail {

struct Halfspace {
  std::vector<Integer> g;  // g.x > 0 if strict, g.x >= 0 otherwise
  bool strict = false;
};

inline Halfspace normalized(const Vector& v, bool strict) { return {primitive_integer(v), strict}; }

inline bool all_zero(const std::vector<Integer>& g) {
  return std::all_of(g.begin(), g.end(), [](const Integer& x) { return x == 0; });
}

/// Some x with strict rows >= eps > 0 and the others >= 0; variables free.
inline std::optional<Vector> interior_point(const std::vector<Halfspace>& hs, std::size_t vars,
                                            const std::vector<Vector>& extra_strict = {}) {
  const std::size_t cols = 2 * vars + 1;
  LinearProgram lp(cols);
  lp.objective[2 * vars] = 1;
  auto add_row = [&](const Vector& g, bool strict) {
    Vector row = zero_vector(cols);
    for (std::size_t i = 0; i < vars; ++i) {
      row[i] = g[i];
      row[vars + i] = -g[i];
    }
    if (strict) row[2 * vars] = -1;
    lp.add(std::move(row), Relation::GreaterEqual, 0);
  };
  for (const auto& h : hs) {
    Vector g(h.g.begin(), h.g.end());
    add_row(g, h.strict);
  }
  for (const auto& g : extra_strict) add_row(g, true);
  // Box the point so the LP stays bounded.
  for (std::size_t i = 0; i < 2 * vars; ++i) lp.add(unit_vector(cols, i), Relation::LessEqual, 1);
  lp.add(unit_vector(cols, 2 * vars), Relation::LessEqual, 1);
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal || sol.value <= 0) return std::nullopt;
  Vector x(vars);
  for (std::size_t i = 0; i < vars; ++i) x[i] = sol.x[i] - sol.x[vars + i];
  return x;
}

/// Row `idx` is a nonnegative combination of the rows in `others`, using a
/// strict row if idx itself is strict. Valid when the system is nonempty.
inline bool implied(const std::vector<Halfspace>& hs, std::size_t idx, const std::vector<std::size_t>& others,
                    std::size_t vars) {
  const std::size_t k = others.size();
  if (k == 0) return false;
  LinearProgram lp(k);
  for (std::size_t c = 0; c < vars; ++c) {
    Vector row(k);
    for (std::size_t o = 0; o < k; ++o) row[o] = hs[others[o]].g[c];
    lp.add(std::move(row), Relation::Equal, hs[idx].g[c]);
  }
  if (hs[idx].strict)
    for (std::size_t o = 0; o < k; ++o)
      if (hs[others[o]].strict) lp.objective[o] = 1;
  auto sol = solve_lp(lp);
  if (sol.status == LpStatus::Infeasible) return false;
  return !hs[idx].strict || sol.status == LpStatus::Unbounded || sol.value > 0;
}

/// Drops duplicates and trivial rows; callers check for strict zero rows first.
inline std::vector<Halfspace> dedupe(std::vector<Halfspace> hs) {
  std::map<std::vector<Integer>, bool> seen;
  for (auto& h : hs) {
    if (all_zero(h.g)) continue;
    auto [it, fresh] = seen.emplace(h.g, h.strict);
    if (!fresh) it->second = it->second || h.strict;
  }
  std::vector<Halfspace> out;
  for (auto& [g, s] : seen) out.push_back({g, s});
  return out;
}

inline std::vector<Halfspace> prune(const std::vector<Halfspace>& hs, std::size_t vars) {
  std::vector<bool> alive(hs.size(), true);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (j != i && alive[j]) others.push_back(j);
    if (implied(hs, i, others, vars)) alive[i] = false;
  }
  std::vector<Halfspace> out;
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (alive[i]) out.push_back(hs[i]);
  return out;
}

/// Eliminates the last variable.
inline std::vector<Halfspace> eliminate_last(const std::vector<Halfspace>& hs, std::size_t vars) {
  const std::size_t v = vars - 1;
  std::vector<Halfspace> pos, neg, out;
  for (const auto& h : hs) {
    if (h.g[v] > 0)
      pos.push_back(h);
    else if (h.g[v] < 0)
      neg.push_back(h);
    else
      out.push_back({std::vector<Integer>(h.g.begin(), h.g.begin() + static_cast<std::ptrdiff_t>(v)), h.strict});
  }
  for (const auto& p : pos)
    for (const auto& q : neg) {
      Integer a = p.g[v], b = -q.g[v];
      Vector comb(v);
      for (std::size_t i = 0; i < v; ++i) comb[i] = Rational(b * p.g[i] + a * q.g[i]);
      out.push_back(normalized(comb, p.strict || q.strict));
    }
  return dedupe(std::move(out));
}

}  // namespace detail

/// Projects {(p, a) : a >= 0, D(p) - sum a_w F_w > 0} onto the parameter
/// coordinates p of the diagonal derivation space.
inline ConeDescription project_certificate_cone(const WeightSet& ws, const DiagonalDerivationSpace& dspace) {
  using detail::Halfspace;
  const std::size_t r = dspace.dim();
  const std::size_t m = ws.size();
  const std::size_t n = ws.dim;
  if (r == 0) throw InputError("diagonal derivation space is trivial");
  std::vector<Halfspace> hs;
  for (std::size_t t = 0; t < n; ++t) {
    Vector g = zero_vector(r + m);
    for (std::size_t s = 0; s < r; ++s) g[s] = dspace.basis[s][t];
    for (std::size_t w = 0; w < m; ++w) g[r + w] = -ws.weights[w].vec[t];
    hs.push_back(detail::normalized(g, true));
  }
  for (std::size_t w = 0; w < m; ++w) hs.push_back(detail::normalized(unit_vector(r + m, r + w), false));
  ConeDescription out;
  // A strict row 0 > 0 (a coordinate no weight and no derivation touches).
  for (const auto& h : hs)
    if (h.strict && detail::all_zero(h.g)) out.empty = true;
  hs = detail::dedupe(std::move(hs));
  if (out.empty || !detail::interior_point(hs, r + m)) {
    out.empty = true;
    return out;
  }
  std::size_t vars = r + m;
  while (vars > r) {
    hs = detail::eliminate_last(hs, vars);
    --vars;
    if (hs.size() > 4 * vars + 4) hs = detail::prune(hs, vars);
  }
  hs = detail::prune(hs, r);
  for (const auto& h : hs) {
    if (!h.strict) throw InvariantViolation("non-strict inequality survived projection");
    out.inequalities.push_back(h.g);
  }
  std::sort(out.inequalities.begin(), out.inequalities.end());
  return out;
}

/// inner is contained in outer: every row of outer is a nonnegative
/// combination of rows of inner using at least one of them.
inline bool cone_contains(const ConeDescription& outer, const ConeDescription& inner) {
  if (inner.empty) return true;
  if (outer.empty) return false;
  for (const auto& g : outer.inequalities) {
    std::vector<detail::Halfspace> hs;
    std::vector<std::size_t> others;
    for (const auto& h : inner.inequalities) {
      others.push_back(hs.size());
      hs.push_back({h, true});
    }
    hs.push_back({g, true});
    if (!detail::implied(hs, hs.size() - 1, others, g.size())) return false;
  }
  return true;
}

/// Drops empty cones, duplicates and cones contained in another one.
inline std::vector<ConeDescription> simplify_union(const std::vector<ConeDescription>& cones) {
  std::vector<ConeDescription> out;
  for (const auto& c : cones) {
    if (c.empty) continue;
    if (std::any_of(out.begin(), out.end(), [&](const ConeDescription& o) { return cone_contains(o, c); })) continue;
    out.erase(std::remove_if(out.begin(), out.end(), [&](const ConeDescription& o) { return cone_contains(c, o); }),
              out.end());
    out.push_back(c);
  }
  return out;
}

/// A point of the open cone intersected with {tr D > 0}, or nullopt.
inline std::optional<Vector> cone_interior_point(const ConeDescription& cone, const DiagonalDerivationSpace& dspace) {
  if (cone.empty) return std::nullopt;
  std::vector<detail::Halfspace> hs;
  for (const auto& g : cone.inequalities) hs.push_back({g, true});
  Vector trace_row(dspace.dim());
  for (std::size_t s = 0; s < dspace.dim(); ++s)
    for (const auto& x : dspace.basis[s]) trace_row[s] += x;
  return detail::interior_point(hs, dspace.dim(), {trace_row});
}

// ---------------------------------------------------------------------------
// Toral degenerations

struct LimitResult {
  std::optional<LieBracket> limit;
  std::optional<Triple> violating;  // set when the limit does not exist
};

/// Limit of exp(t alpha) . mu as t -> infinity: exists iff <alpha, F> <= 0 on
/// every weight, and keeps exactly the terms with <alpha, F> = 0.
inline LimitResult limit_along(const LieBracket& mu, const Vector& alpha) {
  if (alpha.size() != static_cast<std::size_t>(mu.dim())) throw InputError("alpha has wrong length");
  LieBracket lambda(mu.dim());
  for (const auto& [t, c] : mu.constants()) {
    Rational pairing = alpha[t.k] - alpha[t.i] - alpha[t.j];
    if (pairing > 0) return {std::nullopt, t};
    if (pairing == 0) lambda.set(t.i, t.j, t.k, c);
  }
  return {lambda, std::nullopt};
}

/// The bracket lambda_J keeping the constants indexed by J.
inline LieBracket restrict_to(const LieBracket& mu, const std::vector<Triple>& face) {
  LieBracket lambda(mu.dim());
  for (const auto& t : face) {
    auto it = mu.constants().find(t);
    if (it == mu.constants().end()) throw InputError("triple " + t.str() + " is not a structure constant");
    lambda.set(t.i, t.j, t.k, it->second);
  }
  return lambda;
}

struct FaceTest {
  bool is_face = false;
  Vector alpha;  // <alpha, F> = 0 on J, < 0 off J; primitive integer entries
};

/// Decides whether the weights indexed by J span a face of CH(W): an alpha
/// with <alpha, F> = 0 on J and <alpha, F> < 0 on the rest.
inline FaceTest is_face(const std::vector<Triple>& face, const WeightSet& ws) {
  const std::size_t n = ws.dim;
  std::vector<const Weight*> in, out;
  for (const auto& w : ws.weights)
    (std::find(face.begin(), face.end(), w.index) != face.end() ? in : out).push_back(&w);
  if (in.size() != face.size()) throw InputError("face subset contains triples outside the weight set");
  if (out.empty()) return {true, zero_vector(n)};
  const std::size_t cols = 2 * n + 1;
  LinearProgram lp(cols);
  lp.objective[2 * n] = 1;
  auto row_for = [&](const Weight& w) {
    Vector row = zero_vector(cols);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = w.vec[i];
      row[n + i] = -w.vec[i];
    }
    return row;
  };
  for (const auto* w : in) lp.add(row_for(*w), Relation::Equal, 0);
  for (const auto* w : out) {
    Vector row = row_for(*w);
    row[2 * n] = 1;
    lp.add(std::move(row), Relation::LessEqual, 0);
  }
  lp.add(unit_vector(cols, 2 * n), Relation::LessEqual, 1);
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal || sol.value <= 0) return {false, {}};
  Vector alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = sol.x[i] - sol.x[n + i];
  auto prim = primitive_integer(alpha);
  return {true, Vector(prim.begin(), prim.end())};
}

struct FaceDegeneration {
  std::vector<Triple> face;
  Vector alpha;
  LieBracket limit;
};

struct FaceEnumeration {
  std::vector<FaceDegeneration> degenerations;
  bool budget_exceeded = false;
  std::size_t tested = 0;
};

/// Proper nonempty faces J of CH_mu with their degenerations lambda_J, larger
/// faces (smaller complements) first, lexicographic complements within a size.
inline FaceEnumeration enumerate_face_degenerations(const LieBracket& mu, std::size_t budget = 4096) {
  const WeightSet ws = weight_set(mu);
  const auto all = ws.index_set();
  const std::size_t m = all.size();
  FaceEnumeration res;
  for (std::size_t drop = 1; drop < m; ++drop) {
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(drop), true);
    do {
      if (res.tested >= budget) {
        res.budget_exceeded = true;
        return res;
      }
      ++res.tested;
      std::vector<Triple> face;
      for (std::size_t w = 0; w < m; ++w)
        if (!mask[w]) face.push_back(all[w]);
      auto test = is_face(face, ws);
      if (!test.is_face) continue;
      auto lim = limit_along(mu, test.alpha);
      if (!lim.limit || weight_set(*lim.limit).index_set() != face)
        throw InvariantViolation("face certificate does not reproduce its degeneration");
      res.degenerations.push_back({face, test.alpha, *lim.limit});
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return res;
}

}  // namespace nilcone
