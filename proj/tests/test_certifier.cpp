#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace nilcone;
using namespace nilcone::testing;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Certificate published(const std::string& name) {
  return parse_certificate(read_file(std::string(NILCONE_DATA_DIR) + "/certificates/" + name + "-published.cert"));
}

std::vector<Triple> triples(std::initializer_list<std::array<int, 3>> list) {
  std::vector<Triple> out;
  for (const auto& t : list) out.push_back(one_based(t[0], t[1], t[2]));
  return out;
}

const Certificate& expect_certified(const Verdict& v, CertificateKind kind) {
  EXPECT_EQ(v.status, VerdictStatus::CertifiedRN) << v.notes;
  if (!v.certificate) throw std::runtime_error("missing certificate");
  EXPECT_EQ(v.certificate->kind, kind);
  const auto rep = verify_certificate(*v.certificate);
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
  return *v.certificate;
}

}  // namespace

TEST(Necessary, Examples) {
  EXPECT_TRUE(necessary_condition(catalog_get("n4nice"), {1, -1, 0, 1}).passes);
  EXPECT_FALSE(necessary_condition(heisenberg(), {1, -2, -1}).passes);
  auto r = necessary_condition(catalog_get("ex1ex2ex5-i"), {0, 1, 0, 1, 1, 1, 1, 0});
  EXPECT_FALSE(r.passes);
  ASSERT_TRUE(r.direction.has_value());
  EXPECT_EQ(*r.direction, unit_vector(8, 7));
  EXPECT_THROW(necessary_condition(heisenberg(), {1, 1, 1}), InputError);
}

TEST(Necessary, TraceCheckedBeforeCenter) {
  LieBracket mu = catalog_get("n4nice");
  auto r = necessary_condition(mu, {2, -3, -1, 1});  // tr D = -1
  ASSERT_FALSE(r.passes);
  EXPECT_FALSE(r.direction.has_value());
  auto z = center(mu);
  ASSERT_EQ(z.size(), 1u);
  auto r2 = necessary_condition(mu, {3, -3, 0, 3});
  EXPECT_TRUE(r2.passes);
}

TEST(CertifyDerivation, PositiveDerivation) {
  auto v = certify_derivation(heisenberg(), {1, 1, 2});
  const auto& c = expect_certified(v, CertificateKind::PositiveDerivation);
  EXPECT_EQ(c.slack, 1);
}

TEST(CertifyDerivation, NiceCone) {
  auto v = certify_derivation(heisenberg(), {3, -1, 2});
  expect_certified(v, CertificateKind::NiceCone);
  auto ex9 = certify_derivation(catalog_get("ex9"), {1, 3, 4, 5, 6, 7, -1, 0, 2, 1});
  expect_certified(ex9, CertificateKind::NiceCone);
}

TEST(CertifyDerivation, DegenerationCone) {
  auto v = certify_derivation(catalog_get("dim7-alg1"), {0, 1, 0, 1, 1, 1, 1});
  const auto& c = expect_certified(v, CertificateKind::DegenerationCone);
  ASSERT_TRUE(c.degeneration.has_value());
  EXPECT_TRUE(is_face(c.degeneration->face, weight_set(c.mu)).is_face);
}

TEST(CertifyDerivation, RestrictedToVertex) {
  CertifyOptions opts;
  opts.face = triples({{1, 2, 4}});
  auto v = certify_derivation(catalog_get("n4nonice"), {0, 1, 1, 1}, opts);
  const auto& c = expect_certified(v, CertificateKind::DegenerationCone);
  EXPECT_EQ(c.coefficients.size(), 1u);
  EXPECT_EQ(c.coefficients.at(one_based(1, 2, 4)), Rational(1, 2));
  opts.face = triples({{1, 2, 3}, {1, 3, 5}});  // a diagonal of the rectangle
  EXPECT_THROW(certify_derivation(catalog_get("n5nonice"), {2, -1, 1, 1, 3}, opts), InputError);
}

TEST(CertifyDerivation, UnknownForNonGenericD) {
  auto v = certify_derivation(catalog_get("n4nice"), {1, -1, 0, 1});
  EXPECT_EQ(v.status, VerdictStatus::Unknown);
  EXPECT_FALSE(v.certificate.has_value());
}

TEST(CertifyDerivation, NecessaryConditionIsPerDerivation) {
  auto v = certify_derivation(catalog_get("ex1ex2ex5-i"), {0, 1, 0, 1, 1, 1, 1, 0});
  EXPECT_EQ(v.status, VerdictStatus::CertifiedNotRN);
  EXPECT_EQ(v.obstruction, Obstruction::NecessaryCondition);
}

TEST(CertifyDerivation, RejectsBadInput) {
  EXPECT_THROW(certify_derivation(heisenberg(), {1, 1, 1}), InputError);
  EXPECT_THROW(certify_derivation(heisenberg(), {1, -2, -1}), InputError);
}

TEST(CertifyDerivation, NeverRejectsTheAlgebra) {
  std::mt19937_64 rng(79);
  for (const char* id : {"heis3", "n4nice", "n5nonice", "dim7-alg2", "ex9"}) {
    LieBracket mu = catalog_get(id);
    auto ds = diagonal_derivations(mu);
    for (int t = 0; t < 15; ++t) {
      Vector p(ds.dim());
      for (auto& x : p) x = random_rational(rng, 4, 2);
      Vector d = ds.point(p);
      Rational tr = 0;
      for (const auto& x : d) tr += x;
      if (tr <= 0) continue;
      auto v = certify_derivation(mu, d);
      if (v.status == VerdictStatus::CertifiedNotRN) {
        EXPECT_EQ(v.obstruction, Obstruction::NecessaryCondition) << id;
      }
      if (v.status == VerdictStatus::CertifiedRN) {
        EXPECT_TRUE(verify_certificate(*v.certificate).ok) << id;
      }
    }
  }
}

TEST(CertifyDerivation, ScaledCertificateStillVerifies) {
  auto v = certify_derivation(heisenberg(), {3, -1, 2});
  ASSERT_TRUE(v.certificate.has_value());
  for (Rational r : {Rational(1, 3), Rational(5)}) {
    Certificate c = *v.certificate;
    c.derivation = scaled(c.derivation, r);
    for (auto& [t, a] : c.coefficients) a *= r;
    c.slack *= r;
    EXPECT_TRUE(verify_certificate(c).ok);
    EXPECT_EQ(certify_derivation(heisenberg(), c.derivation).status, VerdictStatus::CertifiedRN);
  }
}

TEST(Verify, PublishedCertificates) {
  auto alg1 = published("dim7-alg1");
  EXPECT_EQ(alg1.mu, catalog_get("dim7-alg1"));
  EXPECT_TRUE(verify_certificate(alg1).ok);
  auto ex9 = published("ex9");
  EXPECT_EQ(ex9.mu, catalog_get("ex9"));
  EXPECT_TRUE(verify_certificate(ex9).ok);
}

TEST(Verify, RejectsTamperedCertificates) {
  const Certificate good = published("dim7-alg1");
  auto broken = [&](auto mutate) {
    Certificate c = good;
    mutate(c);
    return !verify_certificate(c).ok;
  };
  EXPECT_TRUE(broken([](Certificate& c) { c.slack = Rational(3, 4); }));
  EXPECT_TRUE(broken([](Certificate& c) { c.slack = 0; }));
  EXPECT_TRUE(broken([](Certificate& c) { c.coefficients[one_based(1, 2, 4)] = -1; }));
  EXPECT_TRUE(broken([](Certificate& c) { c.coefficients[one_based(2, 3, 7)] = Rational(1, 10); }));
  EXPECT_TRUE(broken([](Certificate& c) { c.coefficients[one_based(1, 2, 4)] = 3; }));
  EXPECT_TRUE(broken([](Certificate& c) { c.degeneration->alpha[1] = 1; }));
  EXPECT_TRUE(broken([](Certificate& c) { c.degeneration->face.pop_back(); }));
  EXPECT_TRUE(broken([](Certificate& c) { c.degeneration.reset(); }));
  EXPECT_TRUE(broken([](Certificate& c) { c.derivation[0] = 1; }));
  EXPECT_TRUE(broken([](Certificate& c) { c.kind = CertificateKind::NiceCone; }));
  EXPECT_TRUE(broken([](Certificate& c) { c.kind = CertificateKind::PositiveDerivation; }));
  EXPECT_TRUE(broken([](Certificate& c) { c.mu.set(2, 3, 5, 1); }));
  EXPECT_TRUE(broken([](Certificate& c) { c.witness = Witness{4, Vector(7, Rational(1))}; }));
  EXPECT_FALSE(broken([](Certificate& c) { c.slack = Rational(1, 4); }));
}

TEST(Serialization, RoundTrip) {
  std::vector<Certificate> certs{published("dim7-alg1"), published("ex9"),
                                 *certify_derivation(heisenberg(), {1, 1, 2}).certificate};
  CertifyOptions opts;
  opts.witness = true;
  certs.push_back(*certify_derivation(heisenberg(), {3, -1, 2}, opts).certificate);
  ASSERT_TRUE(certs.back().witness.has_value());
  for (const auto& c : certs) {
    const std::string text = serialize_certificate(c);
    Certificate back = parse_certificate(text);
    EXPECT_EQ(serialize_certificate(back), text);
    EXPECT_EQ(verify_certificate(back).ok, verify_certificate(c).ok);
  }
}

TEST(Serialization, RejectsMalformed) {
  const std::string good = serialize_certificate(published("ex9"));
  auto without = [&](const std::string& prefix) {
    std::istringstream in(good);
    std::string out;
    for (std::string line; std::getline(in, line);)
      if (line.rfind(prefix, 0) != 0) out += line + "\n";
    return out;
  };
  EXPECT_THROW(parse_certificate(""), InputError);
  EXPECT_THROW(parse_certificate(without("certificate")), InputError);
  EXPECT_THROW(parse_certificate(without("kind")), InputError);
  EXPECT_THROW(parse_certificate(without("slack")), InputError);
  EXPECT_THROW(parse_certificate(without("end")), InputError);
  EXPECT_THROW(parse_certificate(good + "extra\n"), InputError);
  EXPECT_THROW(parse_certificate("certificate\nkind Bogus\n"), InputError);
  EXPECT_THROW(parse_certificate("certificate\nkind NiceCone\nderivation 1\nslack 1\nscale 1\nalgebra\ndim 1\nend\n"), InputError);
  EXPECT_THROW(parse_certificate("certificate\nkind NiceCone\nderivation 1\ncoef 2 1 1 1\nslack 1\nalgebra\ndim 2\nend\n"),
               InputError);
}

TEST(Witness, HeisenbergAndAbelian) {
  auto w = find_witness_metric(heisenberg(), {1, 1, 2}, std::nullopt);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(is_negative_definite(extension_ricci({heisenberg(), {1, 1, 2}, w->scale, w->h})));
  auto a = find_witness_metric(LieBracket(3), {1, 1, 1}, std::nullopt);
  ASSERT_TRUE(a.has_value());
  EXPECT_TRUE(is_negative_definite(extension_ricci({LieBracket(3), {1, 1, 1}, a->scale, a->h})));
}

TEST(Witness, FromDegenerationCertificate) {
  const Certificate c = published("dim7-alg1");
  auto w = find_witness_metric(c.mu, c.derivation, c.degeneration);
  ASSERT_TRUE(w.has_value());
  Certificate with = c;
  with.witness = *w;
  EXPECT_TRUE(verify_certificate(with).ok);
}

TEST(Witness, NoneForNonRicciNegativeDerivation) {
  // The necessary condition fails, so no metric can exist.
  EXPECT_FALSE(find_witness_metric(catalog_get("ex1ex2ex5-i"), {0, 1, 0, 1, 1, 1, 1, 0}, std::nullopt, 100).has_value());
}

TEST(CertifyNilradical, Obstructions) {
  EXPECT_EQ(certify_nilradical(catalog_get("ex3")).obstruction, Obstruction::Traceless);
  EXPECT_EQ(certify_nilradical(catalog_get("ex10")).obstruction, Obstruction::Traceless);
  EXPECT_EQ(certify_nilradical(catalog_get("ex4-1")).obstruction, Obstruction::CharacteristicallyNilpotent);
  EXPECT_EQ(certify_nilradical(catalog_get("ex4-2")).obstruction, Obstruction::CharacteristicallyNilpotent);
  EXPECT_EQ(certify_nilradical(catalog_get("ex3")).status, VerdictStatus::CertifiedNotRN);
}

TEST(CertifyNilradical, PositiveCases) {
  auto h = certify_nilradical(heisenberg());
  expect_certified(h, CertificateKind::PositiveDerivation);
  auto ex9 = certify_nilradical(catalog_get("ex9"));
  expect_certified(ex9, CertificateKind::NiceCone);
  EXPECT_EQ(*ex9.derivation, (Vector{1, 3, 4, 5, 6, 7, -1, 0, 2, 1}));
  for (const char* id : {"dim7-alg1", "dim7-alg2", "dim7-alg3", "dim7-alg4", "n4nonice"})
    expect_certified(certify_nilradical(catalog_get(id)), CertificateKind::DegenerationCone);
}

TEST(CertifyNilradical, RejectsInvalidInput) {
  LieBracket solvable(2);
  solvable.set(0, 1, 1, 1);
  EXPECT_THROW(certify_nilradical(solvable), InputError);
  LieBracket bad = catalog_get("dim7-alg1");
  bad.set(2, 3, 5, 1);
  EXPECT_THROW(certify_nilradical(bad), InputError);
}
