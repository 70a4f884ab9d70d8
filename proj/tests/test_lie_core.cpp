#include <gtest/gtest.h>

#include "support.hpp"

using namespace nilcone;
using namespace nilcone::testing;

namespace {

/// g . mu evaluated pair by pair: g mu(g^{-1} e_i, g^{-1} e_j).
LieBracket act_oracle(const Matrix& g, const LieBracket& mu) {
  const auto n = static_cast<std::size_t>(mu.dim());
  const Matrix ginv = *inverse(g);
  LieBracket out(mu.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector v = g.apply(mu.bracket(ginv.column(i), ginv.column(j)));
      for (std::size_t k = 0; k < n; ++k)
        if (v[k] != 0) out.set(i, j, k, v[k]);
    }
  return out;
}

/// Jacobi by direct expansion on every ordered triple.
bool jacobi_oracle(const LieBracket& mu) {
  const auto n = static_cast<std::size_t>(mu.dim());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        Vector x = unit_vector(n, a), y = unit_vector(n, b), z = unit_vector(n, c);
        Vector s = add(add(mu.bracket(mu.bracket(x, y), z), mu.bracket(mu.bracket(y, z), x)),
                       mu.bracket(mu.bracket(z, x), y));
        if (!is_zero(s)) return false;
      }
  return true;
}

std::vector<std::size_t> support_of(const std::vector<Vector>& basis) {
  std::vector<std::size_t> out;
  for (const auto& v : basis)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) out.push_back(i + 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Parse, HeisenbergFromText) {
  auto mu = parse_bracket("# comment\ndim 3\nbracket 1 2 3 1\n");
  EXPECT_EQ(mu.dim(), 3);
  EXPECT_EQ(mu.coefficient(0, 1, 2), 1);
  EXPECT_EQ(mu.coefficient(1, 0, 2), -1);
  EXPECT_EQ(mu, heisenberg());
}

TEST(Parse, ReversedOrientationNegates) {
  auto mu = parse_bracket("dim 3\nbracket 2 1 3 5/2\n");
  EXPECT_EQ(mu.coefficient(0, 1, 2), Rational(-5, 2));
}

TEST(Parse, AbelianHasNoConstants) {
  auto mu = parse_bracket("dim 4\n");
  EXPECT_TRUE(mu.is_zero());
  EXPECT_EQ(mu.dim(), 4);
}

TEST(Parse, RejectsMalformedInput) {
  const char* bad[] = {
      "",                                          // no dim
      "bracket 1 2 3 1\n",                         // bracket before dim
      "dim 3\ndim 3\n",                            // dim twice
      "dim 0\n",                                   // nonpositive dim
      "dim 3\nbracket 1 2 4 1\n",                  // out of range
      "dim 3\nbracket 1 1 3 1\n",                  // i = j
      "dim 3\nbracket 1 2 3 0\n",                  // zero coefficient
      "dim 3\nbracket 1 2 3 1\nbracket 1 2 3 2\n",  // duplicate
      "dim 3\nbracket 1 2 3 1\nbracket 2 1 3 1\n",  // conflicting orientation
      "dim 3\nbracket 1 2 3\n",                    // missing field
      "dim 3\nbracket 1 2 3 1/0\n",                // zero denominator
      "dim 3\nbraket 1 2 3 1\n",                   // unknown keyword
      "dim 3\nbracket a 2 3 1\n",                  // malformed index
  };
  for (const char* text : bad) EXPECT_THROW(parse_bracket(text), InputError) << text;
}

TEST(Parse, ErrorsCarryLineNumbers) {
  try {
    parse_bracket("dim 3\n# c\nbracket 1 2 3 1\nbracket 2 1 3 1\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("orientation"), std::string::npos);
  }
}

TEST(Parse, EmitRoundTripsEveryCatalogEntry) {
  for (const auto& [id, mu] : catalog_samples()) {
    const std::string text = emit_bracket(mu);
    EXPECT_EQ(parse_bracket(text), mu) << id;
    EXPECT_EQ(emit_bracket(parse_bracket(text)), text) << id;
  }
}

TEST(Jacobi, CatalogEntriesAgreeWithExpansion) {
  for (const auto& [id, mu] : catalog_samples()) {
    EXPECT_TRUE(check_jacobi(mu).holds) << id;
    EXPECT_TRUE(jacobi_oracle(mu)) << id;
  }
}

TEST(Jacobi, FlippedSignIsCaughtWithTriple) {
  LieBracket mu = catalog_get("dim7-alg1");
  ASSERT_EQ(mu.coefficient(2, 3, 5), -1);
  mu.set(2, 3, 5, 1);
  auto r = check_jacobi(mu);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_FALSE(jacobi_oracle(mu));
  const auto [i, j, k] = *r.violation;
  const auto n = static_cast<std::size_t>(mu.dim());
  Vector x = unit_vector(n, i), y = unit_vector(n, j), z = unit_vector(n, k);
  Vector s = add(add(mu.bracket(mu.bracket(x, y), z), mu.bracket(mu.bracket(y, z), x)), mu.bracket(mu.bracket(z, x), y));
  EXPECT_EQ(s, r.defect);
  EXPECT_FALSE(is_zero(s));
}

TEST(Jacobi, InvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(17);
  for (const char* id : {"heis3", "n4nice", "n5nonice"}) {
    LieBracket mu = catalog_get(id);
    for (int t = 0; t < 5; ++t) EXPECT_TRUE(check_jacobi(act(random_invertible(rng, mu.dim()), mu)).holds);
  }
  LieBracket bad = catalog_get("n4nice");
  bad.set(1, 2, 1, 1);  // [e2,e3] = e2
  ASSERT_FALSE(check_jacobi(bad).holds);
  for (int t = 0; t < 5; ++t) EXPECT_FALSE(check_jacobi(act(random_invertible(rng, 4), bad)).holds);
}

TEST(Series, KnownDimensions) {
  EXPECT_EQ(lower_central_series(heisenberg()).dims, (std::vector<std::size_t>{3, 1, 0}));
  EXPECT_EQ(lower_central_series(catalog_get("n4nice")).dims, (std::vector<std::size_t>{4, 2, 1, 0}));
  EXPECT_EQ(lower_central_series(catalog_get("ex1ex2ex5-ii")).dims, (std::vector<std::size_t>{10, 6, 2, 0}));
}

TEST(Series, StrictlyDecreasingToZeroOnCatalog) {
  for (const auto& [id, mu] : catalog_samples()) {
    auto chain = lower_central_series(mu);
    EXPECT_TRUE(chain.reaches_zero()) << id;
    for (std::size_t k = 1; k < chain.dims.size(); ++k) {
      EXPECT_LT(chain.dims[k], chain.dims[k - 1]) << id;
      for (const auto& v : chain.terms[k]) EXPECT_TRUE(in_span(chain.terms[k - 1], v, mu.dim())) << id;
    }
  }
}

TEST(Series, NonNilpotentStabilizes) {
  // [e1,e2] = e2 is solvable, not nilpotent.
  LieBracket mu(2);
  mu.set(0, 1, 1, 1);
  EXPECT_FALSE(is_nilpotent(mu));
  EXPECT_EQ(lower_central_series(mu).dims, (std::vector<std::size_t>{2, 1}));
}

TEST(Center, KnownCenters) {
  EXPECT_EQ(support_of(center(heisenberg())), (std::vector<std::size_t>{3}));
  EXPECT_EQ(support_of(center(catalog_get("ex1ex2ex5-i"))), (std::vector<std::size_t>{7, 8}));
  EXPECT_EQ(support_of(center(catalog_get("ex9"))), (std::vector<std::size_t>{6, 10}));
}

TEST(Center, CentralVectorsCommute) {
  for (const auto& [id, mu] : catalog_samples()) {
    const auto n = static_cast<std::size_t>(mu.dim());
    for (const auto& z : center(mu))
      for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(is_zero(mu.bracket(z, unit_vector(n, i)))) << id;
  }
}

TEST(Action, IdentityAndDiagonal) {
  LieBracket mu = catalog_get("dim7-alg2");
  EXPECT_EQ(act(Matrix::identity(7), mu), mu);
  Vector h{2, 3, Rational(1, 2), 5, 1, 7, Rational(2, 3)};
  LieBracket hm = act(Matrix::diagonal(h), mu);
  EXPECT_EQ(hm, act_diagonal(h, mu));
  for (const auto& [t, c] : mu.constants()) EXPECT_EQ(hm.coefficient(t.i, t.j, t.k), h[t.k] / (h[t.i] * h[t.j]) * c);
}

TEST(Action, PermutationRelabelsHeisenberg) {
  // Swapping e1 and e3: [e3,e2] = e1, i.e. [e2,e3] = -e1.
  Matrix p = Matrix::from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  LieBracket expected(3);
  expected.set(1, 2, 0, -1);
  EXPECT_EQ(act(p, heisenberg()), expected);
}

TEST(Action, MatchesPairwiseOracleAndComposes) {
  std::mt19937_64 rng(23);
  for (const char* id : {"heis3", "n4nice", "n4nonice", "n5nonice"}) {
    LieBracket mu = catalog_get(id);
    const std::size_t n = mu.dim();
    for (int t = 0; t < 6; ++t) {
      Matrix g1 = random_invertible(rng, n), g2 = random_invertible(rng, n);
      EXPECT_EQ(act(g1, mu), act_oracle(g1, mu)) << id;
      EXPECT_EQ(act(g1, act(g2, mu)), act(g1 * g2, mu)) << id;
    }
  }
  EXPECT_THROW(act(Matrix(3, 3), heisenberg()), InputError);
}

TEST(Action, InfinitesimalIsFirstOrderTerm) {
  // (I + tE).mu = mu + t E.mu + O(t^2): the O(t^2) remainder over t^2 stays bounded as t shrinks.
  std::mt19937_64 rng(29);
  LieBracket mu = catalog_get("n5nonice");
  Matrix e = random_invertible(rng, 5);
  LieBracket first = act_infinitesimal(e, mu);
  for (int p : {10, 100, 1000}) {
    Rational t(1, p);
    LieBracket moved = act(Matrix::identity(5) + t * e, mu);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        for (int k = 0; k < 5; ++k) {
          Rational rem = (moved.coefficient(i, j, k) - mu.coefficient(i, j, k) - t * first.coefficient(i, j, k)) / (t * t);
          EXPECT_LT(Rational(abs(rem)), 1000);
        }
  }
}

TEST(Nice, CombinatorialTest) {
  EXPECT_TRUE(is_nice_basis(heisenberg()));
  EXPECT_TRUE(is_nice_basis(catalog_get("n4nice")));
  EXPECT_FALSE(is_nice_basis(catalog_get("n4nonice")));
  EXPECT_FALSE(is_nice_basis(catalog_get("n5nonice")));
  EXPECT_TRUE(is_nice_basis(catalog_get("ex9")));
  EXPECT_FALSE(is_nice_basis(catalog_get("dim7-alg1")));
}
