#pragma once

// Built-in example algebras with expected properties and a regression runner.
//
// Each expectation is evaluated from the bracket alone. Published values that
// disagree with recomputation are kept with asserted = false: the regression
// reports them as flags and asserts the recomputed value instead.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "nilcone/certifier.hpp"
#include "nilcone/derivations.hpp"
#include "nilcone/lie_bracket.hpp"
#include "nilcone/moment.hpp"
#include "nilcone/polytope.hpp"

namespace nilcone {

enum class Provenance { Published, Recomputed, Immediate };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Published: return "published";
    case Provenance::Recomputed: return "recomputed";
    case Provenance::Immediate: return "immediate";
  }
  return "?";
}

using Evaluator = std::function<std::string(const LieBracket&)>;

struct Expectation {
  std::string property;
  std::string expected;
  Provenance provenance = Provenance::Published;
  bool asserted = true;
  Evaluator evaluate;
};

struct CatalogEntry {
  std::string id;
  int dim = 0;
  std::string summary;
  std::optional<std::string> parameter;  // family parameter name
  std::function<LieBracket(const Rational&)> build;
  std::vector<Expectation> expected;
  std::string notes;
  std::vector<Vector> derivations;  // printed derivations, used as certify candidates
};

// ---------------------------------------------------------------------------
// Rendering shared by the catalog and the CLI

inline std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline std::string render_matrix(const Matrix& m) {
  if (m.is_diagonal()) return "diag(" + join(m.diagonal()) + ")";
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) out += (r ? ";" : "") + join(m.row(r));
  return out;
}

/// "2d1+d2" over the named coordinates.
inline std::string render_linear(const std::vector<Integer>& g, const std::vector<int>& coords) {
  std::string out;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (g[s] == 0) continue;
    Integer a = abs(g[s]);
    if (g[s] < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (a != 1) out += a.get_str();
    out += "d" + std::to_string(coords[s] + 1);
  }
  return out.empty() ? "0" : out;
}

inline std::string render_cone_compact(const ConeDescription& c) {
  if (c.empty) return "empty";
  std::string out;
  for (std::size_t r = 0; r < c.inequalities.size(); ++r) out += (r ? ";" : "") + join(c.inequalities[r]);
  return out;
}

inline std::string render_union_compact(const std::vector<ConeDescription>& cones) {
  if (cones.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < cones.size(); ++i) out += (i ? " | " : "") + render_cone_compact(cones[i]);
  return out;
}

/// Certificate cone of mu: CH_mu itself when nice, otherwise the simplified
/// union over nice toral degenerations.
inline std::vector<ConeDescription> certificate_cone_union(const LieBracket& mu, std::size_t budget = 4096) {
  const auto ds = diagonal_derivations(mu);
  return simplify_union(certificate_cones(mu, ds, budget).cones);
}

// ---------------------------------------------------------------------------
// Evaluators

namespace eval {

inline std::string yes(bool b) { return b ? "true" : "false"; }

inline Evaluator jacobi() {
  return [](const LieBracket& mu) { return yes(check_jacobi(mu).holds); };
}
inline Evaluator nilpotent() {
  return [](const LieBracket& mu) { return yes(is_nilpotent(mu)); };
}
inline Evaluator lcs() {
  return [](const LieBracket& mu) { return join_sizes(lower_central_series(mu).nonzero_dims()); };
}
inline Evaluator center_dim() {
  return [](const LieBracket& mu) { return std::to_string(center(mu).size()); };
}
inline Evaluator nice() {
  return [](const LieBracket& mu) { return yes(is_nice_basis(mu)); };
}
inline Evaluator diag_der_dim() {
  return [](const LieBracket& mu) { return std::to_string(diagonal_derivations(mu).dim()); };
}
inline Evaluator traceless() {
  return [](const LieBracket& mu) { return yes(all_derivations_traceless(mu)); };
}
inline Evaluator char_nilpotent() {
  return [](const LieBracket& mu) { return yes(is_characteristically_nilpotent(mu).characteristically_nilpotent); };
}
inline Evaluator is_derivation_of(Vector d) {
  return [d](const LieBracket& mu) { return yes(is_diagonal_derivation(d, mu)); };
}
inline Evaluator matrix_derivation(std::function<Matrix(int)> make) {
  return [make](const LieBracket& mu) { return yes(is_derivation(make(mu.dim()), mu)); };
}
inline Evaluator cone() {
  return [](const LieBracket& mu) { return render_union_compact(certificate_cone_union(mu)); };
}
inline Evaluator faces() {
  return [](const LieBracket& mu) { return std::to_string(enumerate_face_degenerations(mu).degenerations.size()); };
}
inline Evaluator moment() {
  return [](const LieBracket& mu) { return render_matrix(moment_map(mu)); };
}
inline Evaluator necessary(Vector d) {
  return [d](const LieBracket& mu) { return necessary_condition(mu, d).passes ? std::string("passes") : std::string("fails"); };
}
inline Evaluator certify(Vector d) {
  return [d](const LieBracket& mu) { return to_string(certify_derivation(mu, d).status); };
}
inline Evaluator verdict(std::vector<Vector> candidates = {}) {
  return [candidates](const LieBracket& mu) {
    CertifyOptions opts;
    opts.candidates = candidates;
    auto v = certify_nilradical(mu, opts);
    std::string out = to_string(v.status);
    if (v.obstruction != Obstruction::None) out += ":" + to_string(v.obstruction);
    return out;
  };
}

}  // namespace eval

// ---------------------------------------------------------------------------
// Entries

namespace detail {

using Term = std::tuple<int, int, int, Rational>;

/// Bracket from 1-based terms; [e_i, e_j] += c e_k in either orientation.
inline LieBracket make_bracket(int n, const std::vector<Term>& terms) {
  LieBracket mu(n);
  for (const auto& [i, j, k, c] : terms) mu.add(i - 1, j - 1, k - 1, c);
  return mu;
}

inline Vector ints(std::initializer_list<long> v) {
  Vector out;
  for (long x : v) out.push_back(Rational(x));
  return out;
}

inline Expectation expect(std::string property, std::string value, Provenance p, Evaluator ev, bool asserted = true) {
  return {std::move(property), std::move(value), p, asserted, std::move(ev)};
}

inline std::function<LieBracket(const Rational&)> fixed(int n, std::vector<Term> terms) {
  return [n, terms](const Rational&) { return make_bracket(n, terms); };
}

/// Two copies of the 5-dim filiform block, on X = 1..5 and Y = 6..10.
inline std::vector<Term> ex3_xy_blocks() {
  return {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {2, 3, 5, 1}, {6, 7, 8, 1}, {6, 8, 9, 1}, {6, 9, 10, 1}, {7, 8, 10, 1}};
}

/// The seven-dimensional X block shared by the ex8ex7 algebras.
inline std::vector<Term> ex8ex7_x_block() {
  return {{1, 3, 4, 1}, {1, 4, 5, 1}, {1, 5, 6, 1}, {1, 6, 7, 1}, {2, 3, 5, 1}, {2, 4, 6, 1}, {3, 4, 7, -1}, {2, 5, 7, 1}};
}

inline std::vector<CatalogEntry> build_catalog() {
  using P = Provenance;
  namespace ev = eval;
  std::vector<CatalogEntry> c;

  c.push_back({"heis3", 3, "Heisenberg algebra", std::nullopt, fixed(3, {{1, 2, 3, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "3,1", P::Immediate, ev::lcs()),
                expect("nice", "true", P::Immediate, ev::nice()),
                expect("diag_der_dim", "2", P::Immediate, ev::diag_der_dim()),
                expect("cone", "1,2;2,1", P::Published, ev::cone()),
                expect("moment_map", "diag(-1,-1,1)", P::Published, ev::moment()),
                expect("necessary(1,-2,-1)", "fails", P::Immediate, ev::necessary(ints({1, -2, -1}))),
                expect("certify(1,1,2)", "CertifiedRN", P::Immediate, ev::certify(ints({1, 1, 2}))),
                expect("verdict", "CertifiedRN", P::Published, ev::verdict())},
               "", {ints({1, 1, 2})}});

  c.push_back({"n4nice", 4, "filiform 4-dim, nice basis", std::nullopt, fixed(4, {{1, 2, 3, 1}, {1, 3, 4, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "4,2,1", P::Immediate, ev::lcs()),
                expect("nice", "true", P::Immediate, ev::nice()),
                expect("cone", "1,1;2,1", P::Published, ev::cone()),
                expect("faces", "2", P::Recomputed, ev::faces()),
                expect("necessary(1,-1,0,1)", "passes", P::Published, ev::necessary(ints({1, -1, 0, 1}))),
                expect("certify(1,-1,0,1)", "Unknown", P::Recomputed, ev::certify(ints({1, -1, 0, 1}))),
                expect("verdict", "CertifiedRN", P::Published, ev::verdict())},
               "The published count of three faces includes the whole polytope; proper faces only are enumerated here.",
               {}});

  c.push_back({"n4nonice", 4, "filiform 4-dim, non-nice basis", std::nullopt,
               fixed(4, {{1, 2, 3, 1}, {1, 2, 4, 1}, {1, 3, 4, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("nice", "false", P::Published, ev::nice()),
                expect("diag_der_dim", "1", P::Published, ev::diag_der_dim()),
                expect("derivation(0,1,1,1)", "true", P::Published, ev::is_derivation_of(ints({0, 1, 1, 1}))),
                expect("faces", "6", P::Recomputed, ev::faces()),
                expect("cone", "1", P::Published, ev::cone()),
                expect("certify(0,1,1,1)", "CertifiedRN", P::Published, ev::certify(ints({0, 1, 1, 1})))},
               "", {ints({0, 1, 1, 1})}});

  c.push_back({"n5nonice", 5, "5-dim, non-nice basis", std::nullopt,
               fixed(5, {{1, 2, 3, 1}, {1, 2, 4, 1}, {1, 3, 5, 1}, {1, 4, 5, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("nilpotent", "true", P::Immediate, ev::nilpotent()),
                expect("nice", "false", P::Published, ev::nice()),
                expect("faces", "8", P::Recomputed, ev::faces())},
               "", {}});

  const Vector d_alg12 = ints({0, 1, 0, 1, 1, 1, 1});
  c.push_back({"dim7-alg1", 7, "7-dim, certified through a degeneration", std::nullopt,
               fixed(7, {{1, 2, 4, 1}, {1, 4, 5, 1}, {1, 5, 6, 1}, {1, 6, 7, 1}, {2, 3, 5, 1}, {2, 3, 7, 1}, {3, 4, 6, -1}, {3, 5, 7, -1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("nilpotent", "true", P::Immediate, ev::nilpotent()),
                expect("nice", "false", P::Immediate, ev::nice()),
                expect("derivation(0,1,0,1,1,1,1)", "true", P::Published, ev::is_derivation_of(d_alg12)),
                expect("certify(0,1,0,1,1,1,1)", "CertifiedRN", P::Published, ev::certify(d_alg12))},
               "Published degeneration alpha = (-1,0,-2,-1,-2,-3,-4) drops the constant (2,3,7).", {d_alg12}});

  c.push_back({"dim7-alg2", 7, "7-dim, certified through a degeneration", std::nullopt,
               fixed(7, {{1, 2, 4, 1}, {1, 4, 5, 1}, {1, 5, 6, 1}, {1, 6, 7, 1}, {2, 3, 6, 1}, {2, 3, 7, 1}, {3, 4, 7, -1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("nilpotent", "true", P::Immediate, ev::nilpotent()),
                expect("derivation(0,1,0,1,1,1,1)", "true", P::Published, ev::is_derivation_of(d_alg12)),
                expect("certify(0,1,0,1,1,1,1)", "CertifiedRN", P::Published, ev::certify(d_alg12))},
               "Published degeneration alpha = (-1,0,-3,-1,-2,-3,-4).", {d_alg12}});

  const Vector d_alg3 = ints({0, 1, 1, 1, 2, 2, 3});
  c.push_back({"dim7-alg3", 7, "7-dim, certified through a degeneration", std::nullopt,
               fixed(7, {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 5, 6, 1}, {2, 3, 5, 1}, {2, 4, 6, 1}, {2, 5, 7, 1}, {2, 6, 7, 1}, {3, 5, 7, -1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("nilpotent", "true", P::Immediate, ev::nilpotent()),
                expect("derivation(0,1,1,1,2,2,3)", "true", P::Published, ev::is_derivation_of(d_alg3)),
                expect("certify(0,1,1,1,2,2,3)", "CertifiedRN", P::Published, ev::certify(d_alg3))},
               "Erratum resolution: the printed list gives [e2,e5] twice with opposite signs; stored as [e2,e5]=e7 and "
               "[e3,e5]=-e7, the only reading consistent with Jacobi and the printed D.",
               {d_alg3}});

  const Vector d_alg4 = ints({0, 1, 1, 1, 1, 2, 2});
  c.push_back({"dim7-alg4", 7, "7-dim, certified through a degeneration", std::nullopt,
               fixed(7, {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {1, 6, 7, 1}, {2, 3, 6, 1}, {2, 4, 7, 1}, {2, 5, 7, 1}, {3, 4, 7, -1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("nilpotent", "true", P::Immediate, ev::nilpotent()),
                expect("derivation(0,1,1,1,1,2,2)", "true", P::Published, ev::is_derivation_of(d_alg4)),
                expect("certify(0,1,1,1,1,2,2)", "CertifiedRN", P::Published, ev::certify(d_alg4))},
               "", {d_alg4}});

  // X1..X5 = 1..5, Y1..Y5 = 6..10, Z = 11.
  std::vector<Term> ex10_terms{{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {2, 3, 5, 1},
                               {6, 7, 3, -1}, {6, 8, 4, -1}, {6, 9, 5, -1}, {7, 8, 5, -1}};
  for (Term t : std::vector<Term>{{1, 7, 8, 1}, {1, 8, 9, 1}, {1, 9, 10, 1}, {2, 8, 10, 1}, {6, 2, 8, 1}, {6, 3, 9, 1},
                                  {6, 4, 10, 1}, {7, 3, 10, 1}, {1, 6, 11, 1}, {2, 7, 11, 1}})
    ex10_terms.push_back(t);
  auto rotation = [](int sign) {
    return [sign](int n) {
      Matrix m(n, n);
      for (int i = 1; i <= 5; ++i) {
        m(5 + i - 1, i - 1) = i;          // X_i -> i Y_i
        m(i - 1, 5 + i - 1) = -sign * i;  // Y_i -> -sign i X_i
      }
      return m;
    };
  };
  c.push_back({"ex10", 11, "traceless but not characteristically nilpotent", std::nullopt, fixed(11, ex10_terms),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "11,7,4,2", P::Recomputed, ev::lcs()),
                expect("nice", "true", P::Published, ev::nice()),
                expect("diag_der_dim", "0", P::Published, ev::diag_der_dim()),
                expect("traceless", "true", P::Published, ev::traceless()),
                expect("char_nilpotent", "false", P::Published, ev::char_nilpotent()),
                expect("rotation X_i->iY_i,Y_i->-iX_i", "true", P::Published, ev::matrix_derivation(rotation(1))),
                expect("rotation X_i->iY_i,Y_i->iX_i", "false", P::Recomputed, ev::matrix_derivation(rotation(-1))),
                expect("verdict", "CertifiedNotRN:TracelessDerivations", P::Published, ev::verdict())},
               "Sign conventions of the rotation derivation checked mechanically.", {}});

  auto ex3_terms = ex3_xy_blocks();
  ex3_terms.push_back({1, 6, 11, 1});
  ex3_terms.push_back({2, 7, 11, 1});
  const Vector d_ex3 = ints({1, 2, 3, 4, 5, -1, -2, -3, -4, -5, 0});
  c.push_back({"ex3", 11, "traceless, not characteristically nilpotent", std::nullopt, fixed(11, ex3_terms),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("derivation(1..5,-1..-5,0)", "true", P::Published, ev::is_derivation_of(d_ex3)),
                expect("traceless", "true", P::Published, ev::traceless()),
                expect("char_nilpotent", "false", P::Published, ev::char_nilpotent()),
                expect("verdict", "CertifiedNotRN:TracelessDerivations", P::Published, ev::verdict())},
               "", {}});

  // X1..X6 = 1..6, Y1..Y4 = 7..10.
  const Vector d_ex9 = ints({1, 3, 4, 5, 6, 7, -1, 0, 2, 1});
  c.push_back({"ex9", 10, "RN-nilradical with a non-positive certified derivation", std::nullopt,
               fixed(10, {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {1, 5, 6, 1}, {2, 3, 6, 1}, {1, 7, 8, 1}, {1, 8, 10, 1}, {2, 7, 9, 1}, {7, 9, 10, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "10,7,4,2,1", P::Recomputed, ev::lcs()),
                expect("center_dim", "2", P::Recomputed, ev::center_dim()),
                expect("nice", "true", P::Published, ev::nice()),
                expect("derivation(1,3,4,5,6,7,-1,0,2,1)", "true", P::Published, ev::is_derivation_of(d_ex9)),
                expect("certify(1,3,4,5,6,7,-1,0,2,1)", "CertifiedRN", P::Published, ev::certify(d_ex9)),
                expect("verdict", "CertifiedRN", P::Published, ev::verdict({d_ex9}))},
               "", {d_ex9}});

  // X = 1..3, Y = 4..6, Z = 7..9, U = 10..12.
  c.push_back({"ex4-1", 12, "characteristically nilpotent, 12-dim", std::nullopt,
               fixed(12, {{1, 2, 4, 1}, {2, 3, 5, 1}, {3, 1, 6, 1}, {1, 4, 7, 1}, {2, 5, 8, 1}, {3, 6, 9, 1}, {1, 7, 10, 1}, {2, 8, 11, 1}, {3, 9, 12, 1}, {1, 6, 12, 1}, {2, 4, 10, 1}, {3, 5, 11, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "12,9,6,3", P::Recomputed, ev::lcs()),
                expect("char_nilpotent", "true", P::Published, ev::char_nilpotent()),
                expect("verdict", "CertifiedNotRN:CharacteristicallyNilpotent", P::Published, ev::verdict())},
               "", {}});

  auto ex42 = ex3_xy_blocks();
  for (Term t : std::vector<Term>{{1, 6, 11, 1}, {2, 7, 11, 1}, {1, 7, 12, 1}, {2, 6, 12, 1}}) ex42.push_back(t);
  c.push_back({"ex4-2", 12, "characteristically nilpotent, X/Y/Z blocks", std::nullopt, fixed(12, ex42),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "12,8,4,2", P::Recomputed, ev::lcs()),
                expect("char_nilpotent", "true", P::Published, ev::char_nilpotent()),
                expect("verdict", "CertifiedNotRN:CharacteristicallyNilpotent", P::Published, ev::verdict())},
               "", {}});

  // X1..X7 = 1..7, Y = 8.
  const Vector d_i = ints({0, 1, 0, 1, 1, 1, 1, 0});
  c.push_back({"ex1ex2ex5-i", 8, "8-dim extension of dim7-alg2", std::nullopt,
               fixed(8, {{1, 2, 4, 1}, {1, 4, 5, 1}, {1, 5, 6, 1}, {1, 6, 7, 1}, {2, 3, 6, 1}, {2, 3, 7, 1}, {3, 4, 7, -1}, {1, 3, 8, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "8,5,4,3,1", P::Published, ev::lcs(), false),
                expect("lcs", "8,5,3,2,1", P::Recomputed, ev::lcs()),
                expect("center_dim", "2", P::Recomputed, ev::center_dim()),
                expect("derivation(0,1,0,1,1,1,1,0)", "true", P::Published, ev::is_derivation_of(d_i)),
                expect("necessary(0,1,0,1,1,1,1,0)", "fails", P::Published, ev::necessary(d_i))},
               "Published central-series dimensions (8,5,4,3,1) differ from the recomputed (8,5,3,2,1).", {}});

  // X = 1..3, Y = 4..6, Z = 7..10.
  const Vector d_ii_a = ints({0, 0, 0, 1, 1, 1, 0, 0, 0, 0});
  const Vector d_ii_b = ints({0, 0, 0, 0, 0, 0, 1, 1, 1, 1});
  c.push_back({"ex1ex2ex5-ii", 10, "10-dim, three-step", std::nullopt,
               fixed(10, {{1, 4, 5, 1}, {1, 5, 6, 1}, {2, 4, 6, 1}, {1, 7, 8, 1}, {2, 7, 9, 1}, {1, 8, 10, 1}, {2, 9, 10, 1}, {1, 2, 3, 1}}),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "10,6,2", P::Recomputed, ev::lcs()),
                expect("center_dim", "3", P::Recomputed, ev::center_dim()),
                expect("derivation(0,0,0,1,1,1,0,0,0,0)", "true", P::Published, ev::is_derivation_of(d_ii_a)),
                expect("derivation(0,...,0,1,1,1,1)", "true", P::Published, ev::is_derivation_of(d_ii_b))},
               "", {}});

  // X1..X7 = 1..7, Y1..Y5 = 8..12, Z = 13.
  const Vector d_iii = ints({1, 2, 3, 4, 5, 6, 7, -1, -2, -3, -4, -5, 0});
  c.push_back({"ex1ex2ex5-iii", 13, "13-dim family n_t", std::string("t"),
               [](const Rational& t) {
                 return make_bracket(13, {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {1, 5, 6, 1}, {1, 6, 7, 1}, {2, 3, 5, 1},
                                          {2, 4, 6, 1}, {2, 5, 7, t}, {3, 4, 7, 1 - t}, {8, 9, 10, 1}, {8, 10, 11, 1},
                                          {8, 11, 12, 1}, {9, 10, 12, 1}, {1, 8, 13, 1}, {2, 9, 13, 1}});
               },
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "13,9,6,4,2,1", P::Recomputed, ev::lcs()),
                expect("derivation(1..7,-1..-5,0)", "true", P::Published, ev::is_derivation_of(d_iii))},
               "", {}});

  // X = 1..7, Y = 8..12, Z = 13.
  auto ex87i = ex8ex7_x_block();
  for (Term t : std::vector<Term>{{8, 9, 10, 1}, {8, 10, 11, 1}, {8, 11, 12, 1}, {9, 10, 12, 1}, {2, 8, 13, 1}, {3, 9, 13, 1}})
    ex87i.push_back(t);
  const Vector d_87i = ints({1, 2, 3, 4, 5, 6, 7, -1, -2, -3, -4, -5, 1});
  c.push_back({"ex8ex7-i", 13, "13-dim", std::nullopt, fixed(13, ex87i),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "13,8,5,3,1", P::Recomputed, ev::lcs()),
                expect("derivation(1..7,-1..-5,1)", "true", P::Published, ev::is_derivation_of(d_87i))},
               "", {}});

  // X = 1..7, Y = 8..14, Z1..Z3 = 15..17.
  auto ex87ii = ex8ex7_x_block();
  for (Term t : std::vector<Term>{{8, 10, 11, 1}, {8, 11, 12, 1}, {8, 12, 13, 1}, {8, 13, 14, 1}, {9, 10, 12, 1}, {9, 11, 13, 1},
                                  {10, 11, 14, -1}, {9, 12, 14, 1}, {3, 9, 15, 1}, {2, 8, 15, 1}, {10, 1, 16, 1}, {16, 1, 17, 1}})
    ex87ii.push_back(t);
  const Vector d_87ii = ints({-1, -2, -3, -4, -5, -6, -7, 1, 2, 3, 4, 5, 6, 7, -1, 2, 1});
  c.push_back({"ex8ex7-ii", 17, "17-dim", std::nullopt, fixed(17, ex87ii),
               {expect("jacobi", "true", P::Immediate, ev::jacobi()),
                expect("lcs", "17,11,7,4,2", P::Recomputed, ev::lcs()),
                expect("derivation(-1..-7,1..7,-1,2,1)", "true", P::Published, ev::is_derivation_of(d_87ii))},
               "The statement's D has trace 2; the proof works with its negative.", {}});
  return c;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = detail::build_catalog();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw InputError("unknown catalog id '" + id + "'");
}

/// Splits "name(p)" into name and parameter text.
inline std::pair<std::string, std::optional<std::string>> split_catalog_id(const std::string& id) {
  auto open = id.find('(');
  if (open == std::string::npos || id.back() != ')') return {id, std::nullopt};
  return {id.substr(0, open), id.substr(open + 1, id.size() - open - 2)};
}

inline bool is_catalog_id(const std::string& id) {
  auto name = split_catalog_id(id).first;
  for (const auto& e : catalog())
    if (e.id == name) return true;
  return false;
}

/// Bracket of `id`, where families take their parameter inline, "ex1ex2ex5-iii(1/2)",
/// or through `param`.
inline LieBracket catalog_get(const std::string& id, const std::optional<Rational>& param = std::nullopt) {
  auto [name, inline_param] = split_catalog_id(id);
  const auto& e = catalog_entry(name);
  std::optional<Rational> p = param;
  if (inline_param) p = parse_rational(*inline_param);
  if (e.parameter && !p) throw InputError("catalog entry '" + name + "' needs parameter " + *e.parameter);
  if (!e.parameter && p) throw InputError("catalog entry '" + name + "' takes no parameter");
  return e.build(p.value_or(Rational(0)));
}

struct CatalogSummary {
  std::string id;
  int dim = 0;
  std::string summary;
};

inline std::vector<CatalogSummary> catalog_list() {
  std::vector<CatalogSummary> out;
  for (const auto& e : catalog()) out.push_back({e.parameter ? e.id + "(" + *e.parameter + ")" : e.id, e.dim, e.summary});
  return out;
}

// ---------------------------------------------------------------------------
// Regression

struct CheckResult {
  std::string entry;
  std::string property;
  std::string expected;
  std::string actual;
  Provenance provenance = Provenance::Published;
  bool asserted = true;
  bool pass = false;
};

struct RegressionReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.asserted || c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.asserted && !c.pass; }));
  }
};

/// Parameter values sampled for family entries.
inline std::vector<Rational> family_samples() { return {Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(-1)}; }

inline void run_entry(const CatalogEntry& e, const std::string& label, const LieBracket& mu, RegressionReport& rep) {
  for (const auto& x : e.expected) {
    CheckResult r{label, x.property, x.expected, "", x.provenance, x.asserted, false};
    try {
      r.actual = x.evaluate(mu);
    } catch (const std::exception& ex) {
      r.actual = std::string("error: ") + ex.what();
    }
    r.pass = r.actual == r.expected;
    rep.checks.push_back(std::move(r));
  }
}

/// Evaluates every expectation of `id` (or of all entries for "all").
inline RegressionReport run_regression(const std::string& id = "all") {
  RegressionReport rep;
  const std::string name = split_catalog_id(id).first;
  for (const auto& e : catalog()) {
    if (id != "all" && e.id != name) continue;
    if (e.parameter) {
      std::vector<Rational> ts;
      if (auto p = split_catalog_id(id).second)
        ts.push_back(parse_rational(*p));
      else
        ts = family_samples();
      for (const auto& t : ts) run_entry(e, e.id + "(" + to_string(t) + ")", e.build(t), rep);
    } else {
      run_entry(e, e.id, e.build(0), rep);
    }
  }
  if (id != "all" && rep.checks.empty()) throw InputError("unknown catalog id '" + id + "'");
  return rep;
}

}  // namespace nilcone
