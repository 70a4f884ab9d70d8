// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic only.
// Exit status is the number of failed criteria (0 when all pass).

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <set>

#include "../support.hpp"

using namespace nilcone;
using namespace nilcone::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

using Ineqs = std::vector<std::vector<Integer>>;

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(NILCONE_CLI) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return "";
  std::string out;
  std::array<char, 512> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe.get())) out += buf.data();
  return out;
}

std::set<std::string> cli_inequalities(const std::string& id) {
  std::set<std::string> out;
  std::istringstream in(run_cli("cone " + id));
  for (std::string line; std::getline(in, line);)
    if (line.rfind("inequality: ", 0) == 0) out.insert(line.substr(12));
  return out;
}

Certificate published(const std::string& name) {
  std::ifstream in(std::string(NILCONE_DATA_DIR) + "/certificates/" + name + "-published.cert");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_certificate(ss.str());
}

std::vector<Triple> triples(std::initializer_list<std::array<int, 3>> list) {
  std::vector<Triple> out;
  for (const auto& t : list) out.push_back(one_based(t[0], t[1], t[2]));
  return out;
}

Vector random_h(std::mt19937_64& rng, std::size_t n) {
  Vector h(n);
  for (auto& x : h) x = random_positive(rng);
  return h;
}

Outcome criterion1() {
  Outcome o;
  auto mu = heisenberg();
  auto cone = project_certificate_cone(weight_set(mu), diagonal_derivations(mu));
  o.require(cone.inequalities == Ineqs{{1, 2}, {2, 1}}, "library cone differs");
  o.require(cli_inequalities("heis3") == std::set<std::string>{"2d1+d2 > 0", "d1+2d2 > 0"}, "CLI output differs");
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto mu = catalog_get("n4nice");
  auto cone = project_certificate_cone(weight_set(mu), diagonal_derivations(mu));
  o.require(cone.inequalities == Ineqs{{1, 1}, {2, 1}}, "library cone differs");
  o.require(cli_inequalities("n4nice") == std::set<std::string>{"d1+d2 > 0", "2d1+d2 > 0"}, "CLI output differs");
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto mu = catalog_get("n4nonice");
  auto ds = diagonal_derivations(mu);
  o.require(ds.dim() == 1 && ds.basis[0] == Vector{0, 1, 1, 1}, "diagonal derivations differ");
  CertifyOptions opts;
  opts.face = triples({{1, 2, 4}});
  auto v = certify_derivation(mu, {0, 1, 1, 1}, opts);
  o.require(v.status == VerdictStatus::CertifiedRN && v.certificate &&
                v.certificate->kind == CertificateKind::DegenerationCone && verify_certificate(*v.certificate).ok,
            "vertex certification failed");
  o.require(certify_derivation(mu, {0, 1, 1, 1}).status == VerdictStatus::CertifiedRN, "default certification failed");
  auto vertex = project_certificate_cone(weight_set(restrict_to(mu, *opts.face)), ds);
  o.require(vertex.inequalities == Ineqs{{1}}, "vertex cone is not {d > 0}");
  auto u = simplify_union(certificate_cones(mu, ds).cones);
  o.require(u.size() == 1 && u[0].inequalities == Ineqs{{1}}, "cone union is not {d > 0}");
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const char* id : {"dim7-alg1", "dim7-alg2", "dim7-alg3", "dim7-alg4"}) {
    const auto& e = catalog_entry(id);
    auto mu = e.build(0);
    for (const auto& d : e.derivations) {
      auto v = certify_derivation(mu, d);
      o.require(v.status == VerdictStatus::CertifiedRN && verify_certificate(*v.certificate).ok,
                std::string(id) + " not certified with " + join(d));
    }
    o.require(certify_nilradical(mu).status == VerdictStatus::CertifiedRN, std::string(id) + " nilradical verdict");
  }
  auto c = published("dim7-alg1");
  o.require(c.mu == catalog_get("dim7-alg1"), "stored certificate bracket differs");
  o.require(c.derivation == Vector{0, 1, 0, 1, 1, 1, 1}, "stored derivation differs");
  o.require(c.degeneration && c.degeneration->alpha == Vector{-1, 0, -2, -1, -2, -3, -4}, "stored alpha differs");
  o.require(c.coefficients ==
                std::map<Triple, Rational>{{one_based(1, 2, 4), Rational(1, 2)}, {one_based(2, 3, 5), Rational(1, 2)}},
            "stored coefficients differ");
  o.require(verify_certificate(c).ok, "stored certificate does not verify");
  auto lim = limit_along(c.mu, c.degeneration->alpha);
  LieBracket expected = c.mu;
  expected.set(1, 2, 6, 0);
  o.require(lim.limit && *lim.limit == expected, "degeneration does not drop exactly (2,3,7)");
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto mu = catalog_get("ex9");
  auto ds = diagonal_derivations(mu);
  // D(X1) = X1, D(X2) = 3 X2, D(Y1) = -Y1 pins D down in the diagonal derivations.
  std::vector<Vector> rows;
  for (std::size_t s = 0; s < ds.dim(); ++s) rows.push_back({ds.basis[s][0], ds.basis[s][1], ds.basis[s][6]});
  Matrix a = Matrix::from_columns(rows, 3);
  auto p = solve(a, {1, 3, -1});
  o.require(p && nullspace(a).empty(), "D not determined by its values on X1, X2, Y1");
  const Vector d = p ? ds.point(*p) : Vector{};
  o.require(d == Vector{1, 3, 4, 5, 6, 7, -1, 0, 2, 1}, "derived D differs");
  auto v = certify_derivation(mu, d);
  o.require(v.status == VerdictStatus::CertifiedRN && v.certificate->kind == CertificateKind::NiceCone,
            "not certified via NiceCone");
  auto c = published("ex9");
  o.require(c.coefficients == std::map<Triple, Rational>{{one_based(1, 8, 10), Rational(1, 6)},
                                                         {one_based(2, 7, 9), Rational(2, 3)},
                                                         {one_based(7, 9, 10), Rational(2, 3)}},
            "stored coefficients differ");
  o.require(c.kind == CertificateKind::NiceCone && c.derivation == d && verify_certificate(c).ok,
            "stored certificate does not verify");
  Vector a_vec = zero_vector(weight_set(mu).size());
  auto ws = weight_set(mu);
  for (std::size_t w = 0; w < ws.size(); ++w)
    if (c.coefficients.count(ws.weights[w].index)) a_vec[w] = c.coefficients.at(ws.weights[w].index);
  Vector m = ws.combine(a_vec);
  o.require(Vector(m.begin() + 6, m.end()) == Vector{Rational(-4, 3), Rational(-1, 6), 0, Rational(5, 6)},
            "M on Y1..Y4 differs");
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const char* id : {"ex3", "ex10"}) {
    auto v = certify_nilradical(catalog_get(id));
    o.require(v.status == VerdictStatus::CertifiedNotRN && v.obstruction == Obstruction::Traceless, id);
  }
  for (const char* id : {"ex4-1", "ex4-2"}) {
    auto v = certify_nilradical(catalog_get(id));
    o.require(v.status == VerdictStatus::CertifiedNotRN && v.obstruction == Obstruction::CharacteristicallyNilpotent, id);
  }
  return o;
}

Outcome criterion7(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  o.require(moment_map(heisenberg()) == Matrix::diagonal({-1, -1, 1}), "Heisenberg moment map");
  for (const auto& [id, mu] : catalog_samples()) {
    const Matrix m = moment_map(mu);
    const Rational nsq = norm_squared(mu);
    for (int t = 0; t < 100; ++t) {
      Matrix e = random_symmetric(rng, mu.dim());
      o.require((m * e).trace() * nsq == moment_pairing(e, mu), id);
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& [id, mu] : catalog_samples()) {
    const Matrix m = moment_map(mu);
    for (const auto& e : derivation_algebra(mu).basis) o.require((m * e).trace() == 0, id);
  }
  return o;
}

Outcome criterion9(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  bool saw_nice = false, saw_nonnice = false;
  for (const auto& [id, mu] : catalog_samples()) {
    const bool nice = is_nice_basis(mu);
    (nice ? saw_nice : saw_nonnice) = true;
    for (int t = 0; t < 50; ++t) o.require(moment_is_diagonal(mu, random_h(rng, mu.dim())) == nice, id);
  }
  o.require(!is_nice_basis(catalog_get("n4nonice")), "n4nonice reported nice");
  o.require(saw_nice && saw_nonnice, "catalog lacks one of the two cases");
  return o;
}

Outcome criterion10() {
  Outcome o;
  MetricExtension ext{heisenberg(), {1, 1, 2}, 1, {1, 1, 1}};
  Matrix ric = extension_ricci(ext);
  o.require(ric == Matrix::diagonal({-6, Rational(-9, 2), Rational(-9, 2), Rational(-15, 2)}), "Ricci matrix at s = 1");
  o.require(is_negative_definite(ric), "not negative definite at s = 1");
  ext.scale = 4;
  o.require(!is_negative_definite(extension_ricci(ext)), "negative definite at s = 4");
  return o;
}

Outcome criterion11(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 100; ++t) {
    Rational x = random_positive(rng), y = random_positive(rng), z = random_positive(rng);
    Rational w = x * y / z;
    LieBracket mu(5);
    mu.set(0, 1, 2, x);
    mu.set(0, 1, 3, y);
    mu.set(0, 2, 4, z);
    mu.set(0, 3, 4, w);
    o.require(moment_map(mu).is_diagonal(), "moment map not diagonal");
    auto md = moment_diagonal(mu);
    Rational a = md.coefficients.at(one_based(1, 2, 3)), b = md.coefficients.at(one_based(1, 2, 4));
    Rational c = md.coefficients.at(one_based(1, 3, 5)), d = md.coefficients.at(one_based(1, 4, 5));
    o.require(a + b + c + d == 1 && a * b == c * d, "barycentric law fails");
    o.require(md.diagonal == moment_map(mu).diagonal(), "diagonal differs from the moment map");
  }
  return o;
}

Outcome criterion12(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  for (const char* id : {"heis3", "n4nice", "dim7-alg1", "dim7-alg2", "dim7-alg3", "dim7-alg4"}) {
    LieBracket mu = catalog_get(id);
    auto ds = diagonal_derivations(mu);
    auto cu = certificate_cones(mu, ds);
    std::vector<WeightSet> sets;
    for (const auto& s : cu.sources) sets.push_back(weight_set(s.limit));
    auto simplified = simplify_union(cu.cones);
    for (int t = 0; t < 200; ++t) {
      Vector p(ds.dim());
      for (auto& x : p) x = random_rational(rng, 6, 4);
      const Vector d = ds.point(p);
      bool any_lp = false, any_fm = false;
      for (std::size_t c = 0; c < cu.cones.size(); ++c) {
        const bool lp = strict_cone_membership(d, sets[c]).feasible;
        const bool fm = cu.cones[c].contains(p);
        o.require(lp == fm, std::string(id) + " at " + join(p));
        any_lp = any_lp || lp;
        any_fm = any_fm || fm;
      }
      bool in_simplified = false;
      for (const auto& c : simplified) in_simplified = in_simplified || c.contains(p);
      o.require(any_lp == any_fm && any_fm == in_simplified, std::string(id) + " union at " + join(p));
    }
  }
  return o;
}

Outcome criterion13() {
  Outcome o;
  auto v = certify_derivation(catalog_get("n4nice"), {1, -1, 0, 1});
  o.require(necessary_condition(catalog_get("n4nice"), {1, -1, 0, 1}).passes, "necessary condition fails");
  o.require(v.status == VerdictStatus::Unknown, "verdict is " + to_string(v.status));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  if (argc > 1) seed = std::stoull(argv[1]);
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "heis3 cone is {2d1+d2 > 0, d1+2d2 > 0}", criterion1},
      {2, "n4nice cone is {d1+d2 > 0, 2d1+d2 > 0}", criterion2},
      {3, "n4nonice certified through the vertex (1,2,4), cone {d > 0}", criterion3},
      {4, "dim7-alg1..4 certified with the printed D; stored alg1 certificate verifies", criterion4},
      {5, "ex9 NiceCone certificate (1/6, 2/3, 2/3), M(Y) = (-4/3, -1/6, 0, 5/6)", criterion5},
      {6, "ex3, ex10 traceless; ex4-1, ex4-2 characteristically nilpotent", criterion6},
      {7, "moment map pairing identity, 100 symmetric E per entry", [&] { return criterion7(seed); }},
      {8, "moment map orthogonal to every derivation", criterion8},
      {9, "nice basis iff m(h.mu) diagonal, 50 h per entry", [&] { return criterion9(seed + 1); }},
      {10, "Heisenberg extension Ricci at s = 1 and s = 4", criterion10},
      {11, "n5nonice sampling law ab = cd, 100 samples", [&] { return criterion11(seed + 2); }},
      {12, "projection agrees with LP membership, 200 points per algebra", [&] { return criterion12(seed + 3); }},
      {13, "n4nice with D0 = (1,-1,0,1) is Unknown", criterion13},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title;
    if (!o.pass) std::cout << " [" << o.detail << "]";
    std::cout << "\n";
    failed += o.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
