#pragma once

// Exact two-phase tableau simplex over Q with Bland's rule.
//
//   maximize  c.x   subject to  a_r.x (<=|=|>=) b_r,  x >= 0
//
// Bland's rule (lowest-index entering column, lowest-index leaving basic
// variable among ratio ties) rules out cycling, so every call terminates and
// the result depends only on the input.

#include <cstddef>
#include <vector>

#include "nilcone/rational.hpp"

namespace nilcone {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  Vector coeffs;
  Relation rel = Relation::LessEqual;
  Rational rhs;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  Vector objective;
  std::vector<Constraint> constraints;

  explicit LinearProgram(std::size_t n) : num_vars(n), objective(zero_vector(n)) {}

  void add(Vector coeffs, Relation rel, const Rational& rhs) {
    if (coeffs.size() != num_vars) throw std::invalid_argument("constraint length mismatch");
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  Rational value;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols), t_(rows, zero_vector(cols + 1)), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = t_[r][c];
    for (auto& x : t_[r])
      if (x != 0) x /= p;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  /// Maximizes cost.x over columns [0, allowed); returns false if unbounded.
  bool optimize(const Vector& cost, std::size_t allowed) {
    while (true) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        Rational red = cost[j];
        for (std::size_t i = 0; i < t_.size(); ++i)
          if (t_[i][j] != 0 && cost[basis_[i]] != 0) red -= cost[basis_[i]] * t_[i][j];
        if (red > 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t cols_;
  std::vector<Vector> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();
  // Normalize to nonnegative right-hand sides.
  std::vector<Constraint> rows = lp.constraints;
  for (auto& c : rows)
    if (c.rhs < 0) {
      for (auto& a : c.coeffs) a = -a;
      c.rhs = -c.rhs;
      if (c.rel == Relation::LessEqual)
        c.rel = Relation::GreaterEqual;
      else if (c.rel == Relation::GreaterEqual)
        c.rel = Relation::LessEqual;
    }
  std::size_t slacks = 0, artificials = 0;
  for (const auto& c : rows) {
    if (c.rel != Relation::Equal) ++slacks;
    if (c.rel != Relation::LessEqual) ++artificials;
  }
  const std::size_t first_art = n + slacks;
  const std::size_t total = first_art + artificials;
  detail::Tableau tab(m, total);
  std::size_t s = n, a = first_art;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = rows[r].coeffs[j];
    tab.rhs(r) = rows[r].rhs;
    switch (rows[r].rel) {
      case Relation::LessEqual:
        tab.at(r, s) = 1;
        tab.basis()[r] = s++;
        break;
      case Relation::GreaterEqual:
        tab.at(r, s++) = -1;
        tab.at(r, a) = 1;
        tab.basis()[r] = a++;
        break;
      case Relation::Equal:
        tab.at(r, a) = 1;
        tab.basis()[r] = a++;
        break;
    }
  }
  if (artificials) {
    Vector phase1 = zero_vector(total);
    for (std::size_t j = first_art; j < total; ++j) phase1[j] = -1;
    tab.optimize(phase1, total);
    for (std::size_t r = 0; r < tab.rows(); ++r)
      if (tab.basis()[r] >= first_art && tab.rhs(r) != 0) return {LpStatus::Infeasible, {}, {}};
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < tab.rows();) {
      if (tab.basis()[r] < first_art) {
        ++r;
        continue;
      }
      std::size_t c = first_art;
      for (std::size_t j = 0; j < first_art; ++j)
        if (tab.at(r, j) != 0) {
          c = j;
          break;
        }
      if (c == first_art) {
        tab.drop_row(r);
        continue;
      }
      tab.pivot(r, c);
      ++r;
    }
  }
  Vector cost = zero_vector(total);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  if (!tab.optimize(cost, first_art)) return {LpStatus::Unbounded, {}, {}};
  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x = zero_vector(n);
  for (std::size_t r = 0; r < tab.rows(); ++r)
    if (tab.basis()[r] < n) sol.x[tab.basis()[r]] = tab.rhs(r);
  sol.value = dot(lp.objective, sol.x);
  return sol;
}

}  // namespace nilcone
