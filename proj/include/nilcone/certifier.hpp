#pragma once

// Verdict pipeline for "is D Ricci negative?" and "is n a RN-nilradical?".
//
// A CertifiedRN verdict always carries a Certificate that verify_certificate
// re-checks from its own contents with exact arithmetic only. Witness search
// is float-guided (GSL Nelder-Mead over log-coordinates, Eigen for the
// spectrum) and accepted only through the exact Sylvester test.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nilcone/derivations.hpp"
#include "nilcone/lie_bracket.hpp"
#include "nilcone/moment.hpp"
#include "nilcone/polytope.hpp"

namespace nilcone {

enum class CertificateKind { PositiveDerivation, NiceCone, DegenerationCone, WitnessMetric };

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::PositiveDerivation: return "PositiveDerivation";
    case CertificateKind::NiceCone: return "NiceCone";
    case CertificateKind::DegenerationCone: return "DegenerationCone";
    case CertificateKind::WitnessMetric: return "WitnessMetric";
  }
  return "?";
}

struct Degeneration {
  Vector alpha;
  std::vector<Triple> face;
};

struct Witness {
  Rational scale = 1;
  Vector h;
};

struct Certificate {
  CertificateKind kind = CertificateKind::PositiveDerivation;
  LieBracket mu;
  Vector derivation;
  std::optional<Degeneration> degeneration;
  std::map<Triple, Rational> coefficients;
  Rational slack;
  std::optional<Witness> witness;

  MetricExtension extension() const {
    if (!witness) throw InputError("certificate has no witness metric");
    return {mu, derivation, witness->scale, witness->h};
  }
};

enum class VerdictStatus { CertifiedRN, CertifiedNotRN, Unknown };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::CertifiedRN: return "CertifiedRN";
    case VerdictStatus::CertifiedNotRN: return "CertifiedNotRN";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "?";
}

enum class Obstruction { None, NecessaryCondition, Traceless, CharacteristicallyNilpotent };

inline std::string to_string(Obstruction o) {
  switch (o) {
    case Obstruction::None: return "none";
    case Obstruction::NecessaryCondition: return "NecessaryCondition";
    case Obstruction::Traceless: return "TracelessDerivations";
    case Obstruction::CharacteristicallyNilpotent: return "CharacteristicallyNilpotent";
  }
  return "?";
}

struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<Certificate> certificate;
  Obstruction obstruction = Obstruction::None;
  std::optional<Vector> derivation;
  std::string notes;
};

struct CertifyOptions {
  bool degenerations = true;
  bool witness = false;
  std::size_t budget = 4096;
  std::uint64_t seed = 1;
  std::size_t witness_iterations = 600;
  /// Restricts the degeneration stage to this single face.
  std::optional<std::vector<Triple>> face;
  /// Extra candidate derivations for certify_nilradical, tried first.
  std::vector<Vector> candidates;
};

// ---------------------------------------------------------------------------
// Necessary condition

struct NecessaryCondition {
  bool passes = true;
  std::string reason;
  std::optional<Vector> direction;  // central vector with D-eigenvalue <= 0
};

/// tr D > 0 and D positive on the center.
inline NecessaryCondition necessary_condition(const LieBracket& mu, const Vector& d) {
  if (!is_diagonal_derivation(d, mu)) throw InputError("D is not a derivation");
  Rational tr = 0;
  for (const auto& x : d) tr += x;
  if (tr <= 0) return {false, "tr D = " + to_string(tr) + " <= 0", std::nullopt};
  const std::size_t n = mu.dim();
  const auto z = center(mu);
  // z is D-invariant, so it splits along the eigenspaces E_l = span{e_r : d_r = l}.
  std::map<Rational, std::vector<std::size_t>> eigen;
  for (std::size_t r = 0; r < n; ++r) eigen[d[r]].push_back(r);
  for (const auto& [value, coords] : eigen) {
    if (value > 0) break;
    // Combinations of z vanishing off E_value.
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::find(coords.begin(), coords.end(), r) != coords.end()) continue;
      Vector row(z.size());
      for (std::size_t b = 0; b < z.size(); ++b) row[b] = z[b][r];
      rows.push_back(std::move(row));
    }
    auto combos = nullspace(rows, z.size());
    if (combos.empty()) continue;
    Vector v = zero_vector(n);
    for (std::size_t b = 0; b < z.size(); ++b) v = add(v, z[b], combos.front()[b]);
    return {false, "D has eigenvalue " + to_string(value) + " on the center", v};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

namespace detail {

inline void verify_cone_part(const Certificate& c, const WeightSet& ws, VerifyReport& rep) {
  Vector a = zero_vector(ws.size());
  for (const auto& [t, v] : c.coefficients) {
    auto it = std::find_if(ws.weights.begin(), ws.weights.end(), [&](const Weight& w) { return w.index == t; });
    if (it == ws.weights.end()) {
      rep.fail("coefficient on " + t.str() + " outside the weight set");
      continue;
    }
    if (v < 0) rep.fail("negative coefficient on " + t.str());
    a[static_cast<std::size_t>(it - ws.weights.begin())] = v;
  }
  if (c.slack <= 0) rep.fail("slack is not positive");
  const Vector gap = add(c.derivation, ws.combine(a), -1);
  for (std::size_t r = 0; r < gap.size(); ++r)
    if (gap[r] < c.slack) rep.fail("D - sum a F has entry " + to_string(gap[r]) + " below the slack at e" + std::to_string(r + 1));
}

}  // namespace detail

inline VerifyReport verify_certificate(const Certificate& c) {
  VerifyReport rep;
  const std::size_t n = c.mu.dim();
  if (c.derivation.size() != n) {
    rep.fail("derivation has wrong length");
    return rep;
  }
  if (!check_jacobi(c.mu).holds) rep.fail("bracket violates Jacobi");
  if (!is_nilpotent(c.mu)) rep.fail("bracket is not nilpotent");
  if (!is_diagonal_derivation(c.derivation, c.mu)) rep.fail("D is not a derivation");
  Rational tr = 0;
  for (const auto& x : c.derivation) tr += x;
  if (tr <= 0) rep.fail("tr D is not positive");
  switch (c.kind) {
    case CertificateKind::PositiveDerivation:
      for (const auto& x : c.derivation)
        if (x <= 0) rep.fail("D has a non-positive entry");
      if (c.slack <= 0 || c.slack > min_entry(c.derivation)) rep.fail("slack not in (0, min D]");
      break;
    case CertificateKind::NiceCone:
      if (!is_nice_basis(c.mu)) rep.fail("basis is not nice");
      detail::verify_cone_part(c, weight_set(c.mu), rep);
      break;
    case CertificateKind::DegenerationCone: {
      if (!c.degeneration) {
        rep.fail("missing degeneration");
        break;
      }
      const auto& deg = *c.degeneration;
      if (deg.alpha.size() != n) {
        rep.fail("alpha has wrong length");
        break;
      }
      for (const auto& t : deg.face)
        if (!c.mu.constants().count(t)) rep.fail("face triple " + t.str() + " is not a structure constant");
      // alpha exposes exactly J: pairing 0 on J, negative elsewhere.
      for (const auto& w : weight_set(c.mu).weights) {
        Rational p = dot(deg.alpha, w.vec);
        bool in = std::find(deg.face.begin(), deg.face.end(), w.index) != deg.face.end();
        if (in && p != 0) rep.fail("alpha does not vanish on face weight " + w.index.str());
        if (!in && p >= 0) rep.fail("alpha is not negative on dropped weight " + w.index.str());
      }
      auto lim = limit_along(c.mu, deg.alpha);
      if (!lim.limit) {
        rep.fail("limit along alpha does not exist");
        break;
      }
      if (!is_nice_basis(*lim.limit)) rep.fail("degeneration is not nice");
      if (!is_diagonal_derivation(c.derivation, *lim.limit)) rep.fail("D is not a derivation of the degeneration");
      detail::verify_cone_part(c, weight_set(*lim.limit), rep);
      break;
    }
    case CertificateKind::WitnessMetric:
      if (!c.witness) rep.fail("missing witness metric");
      break;
  }
  if (c.witness) {
    try {
      if (!is_negative_definite(extension_ricci(c.extension()))) rep.fail("witness Ricci matrix is not negative definite");
    } catch (const InputError& e) {
      rep.fail(std::string("witness invalid: ") + e.what());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Witness search

namespace detail {

/// Largest eigenvalue of the extension Ricci matrix in double precision, at
/// scale e^{x[0]} and h = e^{x[1..n]}.
struct RicciGuide {
  int n = 0;
  std::vector<std::array<int, 3>> idx;
  std::vector<double> coef;
  std::vector<double> d;

  RicciGuide(const LieBracket& mu, const Vector& dv) : n(mu.dim()) {
    for (const auto& [t, c] : mu.constants()) {
      idx.push_back({t.i, t.j, t.k});
      coef.push_back(c.get_d());
    }
    for (const auto& x : dv) d.push_back(x.get_d());
  }

  Eigen::MatrixXd matrix(const double* x) const {
    const double s = std::exp(x[0]);
    std::vector<double> c(coef.size());
    for (std::size_t w = 0; w < coef.size(); ++w) {
      auto [i, j, k] = idx[w];
      c[w] = s * coef[w] * std::exp(x[1 + k] - x[1 + i] - x[1 + j]);
    }
    Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n + 1, n + 1);
    double tr = 0, tr2 = 0;
    for (double v : d) {
      tr += v;
      tr2 += v * v;
    }
    ric(0, 0) = -tr2;
    // Dense antisymmetric tensor for the moment numerator.
    std::vector<double> t(static_cast<std::size_t>(n) * n * n, 0.0);
    auto at = [&](int a, int b, int k) -> double& { return t[(static_cast<std::size_t>(a) * n + b) * n + k]; };
    for (std::size_t w = 0; w < c.size(); ++w) {
      auto [i, j, k] = idx[w];
      at(i, j, k) = c[w];
      at(j, i, k) = -c[w];
      if (k == j) ric(0, 1 + i) -= d[j] * c[w];
      if (k == i) ric(0, 1 + j) += d[i] * c[w];
    }
    for (int i = 0; i < n; ++i) ric(1 + i, 0) = ric(0, 1 + i);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        double g = 0;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) g += at(a, b, p) * at(a, b, q);
        for (int l = 0; l < n; ++l)
          for (int k = 0; k < n; ++k) g -= at(p, l, k) * at(q, l, k);
        ric(1 + p, 1 + q) = 0.5 * g;
      }
    for (int i = 0; i < n; ++i) ric(1 + i, 1 + i) -= tr * d[i];
    return ric;
  }

  double objective(const double* x) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix(x), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }
};

/// x rounded to `bits` significant binary digits, as an exact rational.
inline Rational rational_approx(double x, int bits) {
  int e = 0;
  double m = std::frexp(x, &e);
  const double scaled = std::round(std::ldexp(m, bits));
  Rational r(static_cast<long>(scaled));
  const int shift = e - bits;
  mpz_class p2 = 1;
  p2 <<= static_cast<unsigned long>(std::abs(shift));
  if (shift >= 0)
    r *= Rational(p2);
  else
    r /= Rational(p2);
  return r;
}

inline std::optional<Witness> exact_check(const LieBracket& mu, const Vector& d, const std::vector<double>& x) {
  for (int bits : {6, 12, 24, 53}) {
    Witness w;
    w.scale = rational_approx(std::exp(x[0]), bits);
    for (std::size_t i = 1; i < x.size(); ++i) w.h.push_back(rational_approx(std::exp(x[i]), bits));
    if (w.scale <= 0) continue;
    if (std::any_of(w.h.begin(), w.h.end(), [](const Rational& v) { return v <= 0; })) continue;
    if (is_negative_definite(extension_ricci({mu, d, w.scale, w.h}))) return w;
  }
  return std::nullopt;
}

inline double gsl_objective(const gsl_vector* v, void* params) {
  const auto* guide = static_cast<const RicciGuide*>(params);
  const double r = guide->objective(v->data);
  return std::isfinite(r) ? r : 1e300;
}

}  // namespace detail

/// Searches scale s and positive diagonal h with negative definite extension
/// Ricci matrix. Starts at h = e^{t alpha} along the certificate's
/// degeneration, then at seeded random points; every candidate is accepted
/// only by the exact test.
inline std::optional<Witness> find_witness_metric(const LieBracket& mu, const Vector& d,
                                                  const std::optional<Degeneration>& deg, std::size_t iterations = 600,
                                                  std::uint64_t seed = 1) {
  if (!is_diagonal_derivation(d, mu)) throw InputError("D is not a derivation");
  const std::size_t n = mu.dim();
  const detail::RicciGuide guide(mu, d);
  std::vector<std::vector<double>> starts;
  const Vector alpha = deg ? deg->alpha : zero_vector(n);
  for (double t : {0.0, 1.0, 2.0, 4.0, 8.0})
    for (double ls : {0.0, -1.0, -3.0}) {
      std::vector<double> x{ls};
      for (const auto& a : alpha) x.push_back(t * a.get_d());
      starts.push_back(std::move(x));
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.5);
  for (int r = 0; r < 8; ++r) {
    std::vector<double> x{-1.0};
    for (std::size_t i = 0; i < n; ++i) x.push_back(gauss(rng));
    starts.push_back(std::move(x));
  }
  gsl_set_error_handler_off();
  const std::size_t dim = n + 1;
  gsl_multimin_function fn{&detail::gsl_objective, dim, const_cast<detail::RicciGuide*>(&guide)};
  for (const auto& start : starts) {
    if (guide.objective(start.data()) < 0)
      if (auto w = detail::exact_check(mu, d, start)) return w;
    gsl_vector* x = gsl_vector_alloc(dim);
    gsl_vector* step = gsl_vector_alloc(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      gsl_vector_set(x, i, start[i]);
      gsl_vector_set(step, i, 0.5);
    }
    gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
    gsl_multimin_fminimizer_set(m, &fn, x, step);
    std::optional<Witness> found;
    for (std::size_t it = 0; it < iterations && !found; ++it) {
      if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
      // Stop once comfortably negative; the exact check decides.
      if (m->fval < -1e-6 && (it % 25 == 0 || m->fval < -1e-2)) {
        std::vector<double> cur(m->x->data, m->x->data + dim);
        found = detail::exact_check(mu, d, cur);
      }
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-10) == GSL_SUCCESS) break;
    }
    if (!found && m->fval < 0) {
      std::vector<double> cur(m->x->data, m->x->data + dim);
      found = detail::exact_check(mu, d, cur);
    }
    gsl_multimin_fminimizer_free(m);
    gsl_vector_free(x);
    gsl_vector_free(step);
    if (found) return found;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pipelines

namespace detail {

inline Certificate cone_certificate(const LieBracket& mu, const Vector& d, CertificateKind kind, const WeightSet& ws,
                                    const LPResult& lp) {
  Certificate c;
  c.kind = kind;
  c.mu = mu;
  c.derivation = d;
  c.coefficients = lp.coefficients(ws);
  c.slack = lp.slack;
  return c;
}

inline Verdict finish(Certificate cert, const CertifyOptions& opts, std::string notes) {
  if (opts.witness && !cert.witness)
    if (auto w = find_witness_metric(cert.mu, cert.derivation, cert.degeneration, opts.witness_iterations, opts.seed))
      cert.witness = *w;
  auto rep = verify_certificate(cert);
  if (!rep.ok) throw InvariantViolation("certificate failed re-verification: " + rep.failures.front());
  Verdict v;
  v.status = VerdictStatus::CertifiedRN;
  v.derivation = cert.derivation;
  v.certificate = std::move(cert);
  v.notes = std::move(notes);
  return v;
}

}  // namespace detail

inline Verdict certify_derivation(const LieBracket& mu, const Vector& d, const CertifyOptions& opts = {}) {
  if (!is_diagonal_derivation(d, mu)) throw InputError("D is not a derivation");
  Rational tr = 0;
  for (const auto& x : d) tr += x;
  if (tr <= 0) throw InputError("tr D must be positive");
  if (std::all_of(d.begin(), d.end(), [](const Rational& x) { return x > 0; })) {
    Certificate c;
    c.kind = CertificateKind::PositiveDerivation;
    c.mu = mu;
    c.derivation = d;
    c.slack = min_entry(d);
    return detail::finish(std::move(c), opts, "D is positive");
  }
  if (auto nc = necessary_condition(mu, d); !nc.passes) {
    Verdict v;
    v.status = VerdictStatus::CertifiedNotRN;
    v.obstruction = Obstruction::NecessaryCondition;
    v.derivation = d;
    v.notes = nc.reason + " (this D only, not the algebra)";
    return v;
  }
  if (!opts.face && is_nice_basis(mu)) {
    const auto ws = weight_set(mu);
    if (auto lp = strict_cone_membership(d, ws); lp.feasible)
      return detail::finish(detail::cone_certificate(mu, d, CertificateKind::NiceCone, ws, lp), opts, "nice basis");
  }
  std::string notes;
  if (opts.degenerations) {
    std::vector<FaceDegeneration> faces;
    if (opts.face) {
      auto test = is_face(*opts.face, weight_set(mu));
      if (!test.is_face) throw InputError("requested subset is not a face");
      faces.push_back({*opts.face, test.alpha, restrict_to(mu, *opts.face)});
    } else {
      auto fe = enumerate_face_degenerations(mu, opts.budget);
      if (fe.budget_exceeded) notes = "face enumeration stopped at budget " + std::to_string(opts.budget) + "; ";
      faces = std::move(fe.degenerations);
    }
    for (const auto& f : faces) {
      if (!is_nice_basis(f.limit)) continue;
      const auto ws = weight_set(f.limit);
      auto lp = strict_cone_membership(d, ws);
      if (!lp.feasible) continue;
      auto c = detail::cone_certificate(mu, d, CertificateKind::DegenerationCone, ws, lp);
      c.degeneration = Degeneration{f.alpha, f.face};
      return detail::finish(std::move(c), opts, notes + "nice toral degeneration");
    }
  }
  if (opts.witness)
    if (auto w = find_witness_metric(mu, d, std::nullopt, opts.witness_iterations, opts.seed)) {
      Certificate c;
      c.kind = CertificateKind::WitnessMetric;
      c.mu = mu;
      c.derivation = d;
      c.witness = *w;
      c.slack = 1;
      return detail::finish(std::move(c), opts, notes + "witness metric");
    }
  Verdict v;
  v.status = VerdictStatus::Unknown;
  v.derivation = d;
  v.notes = notes + "no certificate found; orbit analysis beyond the diagonal torus is out of scope";
  return v;
}

namespace detail {

/// Positive diagonal derivation, as a primitive integer vector, if one exists.
inline std::optional<Vector> positive_diagonal_derivation(const DiagonalDerivationSpace& ds) {
  if (ds.dim() == 0) return std::nullopt;
  std::vector<Vector> rows;
  const std::size_t n = ds.dim_algebra;
  for (std::size_t t = 0; t < n; ++t) {
    Vector g(ds.dim());
    for (std::size_t s = 0; s < ds.dim(); ++s) g[s] = ds.basis[s][t];
    rows.push_back(std::move(g));
  }
  std::vector<Halfspace> hs;
  for (const auto& g : rows) hs.push_back(normalized(g, true));
  auto p = interior_point(hs, ds.dim());
  if (!p) return std::nullopt;
  auto prim = primitive_integer(ds.point(*p));
  return Vector(prim.begin(), prim.end());
}

inline std::optional<Vector> integral_point(const ConeDescription& cone, const DiagonalDerivationSpace& ds) {
  auto p = cone_interior_point(cone, ds);
  if (!p) return std::nullopt;
  auto prim = primitive_integer(ds.point(*p));
  return Vector(prim.begin(), prim.end());
}

}  // namespace detail

/// Nice degenerations (or mu itself when nice) with their projected cones in
/// the parameter coordinates of mu's diagonal derivations.
struct ConeUnion {
  std::vector<FaceDegeneration> sources;  // empty face means mu itself
  std::vector<ConeDescription> cones;
  bool budget_exceeded = false;
};

inline ConeUnion certificate_cones(const LieBracket& mu, const DiagonalDerivationSpace& ds, std::size_t budget = 4096) {
  ConeUnion out;
  if (ds.dim() == 0) return out;
  if (is_nice_basis(mu)) {
    out.sources.push_back({{}, zero_vector(mu.dim()), mu});
    out.cones.push_back(project_certificate_cone(weight_set(mu), ds));
    return out;
  }
  auto fe = enumerate_face_degenerations(mu, budget);
  out.budget_exceeded = fe.budget_exceeded;
  for (auto& f : fe.degenerations) {
    if (!is_nice_basis(f.limit)) continue;
    auto cone = project_certificate_cone(weight_set(f.limit), ds);
    if (cone.empty) continue;
    out.sources.push_back(std::move(f));
    out.cones.push_back(std::move(cone));
  }
  return out;
}

inline Verdict certify_nilradical(const LieBracket& mu, const CertifyOptions& opts = {}) {
  if (!check_jacobi(mu).holds) throw InputError("bracket violates Jacobi");
  if (!is_nilpotent(mu)) throw InputError("bracket is not nilpotent");
  const auto der = derivation_algebra(mu);
  Verdict v;
  // Characteristic nilpotency implies tracelessness; report the sharper one.
  if (engel_flag(der).characteristically_nilpotent) {
    v.status = VerdictStatus::CertifiedNotRN;
    v.obstruction = Obstruction::CharacteristicallyNilpotent;
    v.notes = "every derivation is nilpotent";
    return v;
  }
  if (all_derivations_traceless(der)) {
    v.status = VerdictStatus::CertifiedNotRN;
    v.obstruction = Obstruction::Traceless;
    v.notes = "every derivation is traceless";
    return v;
  }
  const auto ds = diagonal_derivations(mu);
  std::vector<Vector> candidates = opts.candidates;
  if (auto p = detail::positive_diagonal_derivation(ds)) candidates.push_back(*p);
  auto try_all = [&](const std::vector<Vector>& cands) -> std::optional<Verdict> {
    for (const auto& d : cands) {
      Rational tr = 0;
      for (const auto& x : d) tr += x;
      if (tr <= 0 || !is_diagonal_derivation(d, mu)) continue;
      auto r = certify_derivation(mu, d, opts);
      if (r.status == VerdictStatus::CertifiedRN) return r;
    }
    return std::nullopt;
  };
  if (auto r = try_all(candidates)) return *r;
  std::string notes;
  if (opts.degenerations) {
    auto cu = certificate_cones(mu, ds, opts.budget);
    if (cu.budget_exceeded) notes = "face enumeration stopped at budget; ";
    std::vector<Vector> cone_points;
    for (const auto& cone : cu.cones)
      if (auto d = detail::integral_point(cone, ds)) cone_points.push_back(*d);
    if (auto r = try_all(cone_points)) return *r;
  }
  v.status = VerdictStatus::Unknown;
  v.notes = notes + (ds.dim() == 0 ? "no nonzero diagonal derivation in this basis" : "no certifiable diagonal derivation found");
  return v;
}

// ---------------------------------------------------------------------------
// Text format

inline std::string serialize_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "certificate\n";
  out << "kind " << to_string(c.kind) << "\n";
  out << "derivation " << join(c.derivation) << "\n";
  if (c.degeneration) {
    out << "alpha " << join(c.degeneration->alpha) << "\n";
    for (const auto& t : c.degeneration->face) out << "face " << t.i + 1 << " " << t.j + 1 << " " << t.k + 1 << "\n";
  }
  for (const auto& [t, v] : c.coefficients) out << "coef " << t.i + 1 << " " << t.j + 1 << " " << t.k + 1 << " " << to_string(v) << "\n";
  out << "slack " << to_string(c.slack) << "\n";
  if (c.witness) {
    out << "scale " << to_string(c.witness->scale) << "\n";
    out << "h " << join(c.witness->h) << "\n";
  }
  out << "algebra\n" << emit_bracket(c.mu) << "end\n";
  return out.str();
}

inline Certificate parse_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  Certificate c;
  bool header = false, have_kind = false, have_d = false, have_slack = false, done = false;
  std::optional<Rational> scale;
  std::optional<Vector> h;
  std::string algebra;
  bool in_algebra = false;
  int line_no = 0;
  auto triple_of = [&](const std::vector<std::string>& tok, std::size_t from) {
    return Triple{detail::parse_index(tok[from], line_no) - 1, detail::parse_index(tok[from + 1], line_no) - 1,
                  detail::parse_index(tok[from + 2], line_no) - 1};
  };
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (in_algebra) {
      if (tok[0] == "end") {
        in_algebra = false;
        done = true;
      } else {
        algebra += line + "\n";
      }
      continue;
    }
    if (!header) {
      if (tok[0] != "certificate") throw InputError(where + "expected 'certificate'");
      header = true;
      continue;
    }
    if (done) throw InputError(where + "content after 'end'");
    const std::string& key = tok[0];
    if (key == "kind" && tok.size() == 2) {
      const std::string& k = tok[1];
      if (k == "PositiveDerivation") c.kind = CertificateKind::PositiveDerivation;
      else if (k == "NiceCone") c.kind = CertificateKind::NiceCone;
      else if (k == "DegenerationCone") c.kind = CertificateKind::DegenerationCone;
      else if (k == "WitnessMetric") c.kind = CertificateKind::WitnessMetric;
      else throw InputError(where + "unknown kind '" + k + "'");
      have_kind = true;
    } else if (key == "derivation" && tok.size() == 2) {
      c.derivation = parse_vector(tok[1]);
      have_d = true;
    } else if (key == "alpha" && tok.size() == 2) {
      if (!c.degeneration) c.degeneration.emplace();
      c.degeneration->alpha = parse_vector(tok[1]);
    } else if (key == "face" && tok.size() == 4) {
      if (!c.degeneration) c.degeneration.emplace();
      c.degeneration->face.push_back(triple_of(tok, 1));
    } else if (key == "coef" && tok.size() == 5) {
      Triple t = triple_of(tok, 1);
      if (t.i >= t.j) throw InputError(where + "coefficient triple must have i < j");
      if (c.coefficients.count(t)) throw InputError(where + "duplicate coefficient");
      c.coefficients[t] = parse_rational(tok[4]);
    } else if (key == "slack" && tok.size() == 2) {
      c.slack = parse_rational(tok[1]);
      have_slack = true;
    } else if (key == "scale" && tok.size() == 2) {
      scale = parse_rational(tok[1]);
    } else if (key == "h" && tok.size() == 2) {
      h = parse_vector(tok[1]);
    } else if (key == "algebra" && tok.size() == 1) {
      in_algebra = true;
    } else {
      throw InputError(where + "unrecognized certificate line");
    }
  }
  if (!header) throw InputError("empty certificate");
  if (in_algebra || !done) throw InputError("certificate algebra block not terminated by 'end'");
  if (!have_kind || !have_d || !have_slack) throw InputError("certificate missing kind, derivation or slack");
  if (scale.has_value() != h.has_value()) throw InputError("witness needs both 'scale' and 'h'");
  if (scale) c.witness = Witness{*scale, *h};
  c.mu = parse_bracket(algebra);
  if (c.degeneration) std::sort(c.degeneration->face.begin(), c.degeneration->face.end());
  return c;
}

}  // namespace nilcone
