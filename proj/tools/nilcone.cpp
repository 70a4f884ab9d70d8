// nilcone: command-line front end.
//
// Exit codes: 0 success or verdict produced, 1 input error, 2 internal
// invariant violation, 3 regression failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nilcone/nilcone.hpp"

using namespace nilcone;

namespace {

enum class Format { Text, Kv };

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t budget = 4096;

  Format fmt() const { return format == "kv" ? Format::Kv : Format::Text; }
};

/// Key/value output; text mode aligns "label: value", kv mode prints key=value.
class Out {
 public:
  explicit Out(Format f) : f_(f) {}

  void field(const std::string& key, const std::string& value) {
    if (f_ == Format::Kv)
      std::cout << key << "=" << value << "\n";
    else
      std::cout << key << ": " << value << "\n";
  }
  bool kv() const { return f_ == Format::Kv; }

 private:
  Format f_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  std::string label;
  LieBracket mu;
};

Loaded load(const std::string& src, const std::string& param) {
  std::optional<Rational> p;
  if (!param.empty()) p = parse_rational(param);
  if (std::filesystem::is_regular_file(src)) {
    if (p) throw InputError("--param applies to catalog families only");
    return {src, parse_bracket(read_file(src))};
  }
  if (is_catalog_id(src)) return {src, catalog_get(src, p)};
  throw InputError("'" + src + "' is neither a readable file nor a catalog id");
}

void require_lie(const LieBracket& mu) {
  auto j = check_jacobi(mu);
  if (!j.holds) {
    auto [i, jj, k] = *j.violation;
    throw InputError("Jacobi identity fails on (e" + std::to_string(i + 1) + ",e" + std::to_string(jj + 1) + ",e" +
                     std::to_string(k + 1) + ")");
  }
}

void require_nilpotent(const LieBracket& mu) {
  require_lie(mu);
  if (!is_nilpotent(mu)) throw InputError("algebra is not nilpotent");
}

Vector parse_d(const std::string& s, const LieBracket& mu, const char* what = "derivation") {
  Vector d = parse_vector(s);
  if (d.size() != static_cast<std::size_t>(mu.dim()))
    throw InputError(std::string(what) + " needs " + std::to_string(mu.dim()) + " entries");
  return d;
}

std::string paren(const Vector& v) { return "(" + join(v) + ")"; }

/// Linear form sum c_s d_{coords[s]+1} with rational coefficients.
std::string render_form(const Vector& c, const std::vector<int>& coords) {
  std::string out;
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (c[s] == 0) continue;
    Rational a = abs(c[s]);
    out += c[s] < 0 ? "-" : (out.empty() ? "" : "+");
    if (a != 1) out += to_string(a);
    out += "d" + std::to_string(coords[s] + 1);
  }
  return out.empty() ? "0" : out;
}

std::string render_parametrization(const DiagonalDerivationSpace& ds) {
  std::string out = "(";
  for (int t = 0; t < ds.dim_algebra; ++t) {
    Vector c(ds.dim());
    for (std::size_t s = 0; s < ds.dim(); ++s) c[s] = ds.basis[s][t];
    out += (t ? ", " : "") + render_form(c, ds.coordinates);
  }
  return out + ")";
}

std::string render_face(const std::vector<Triple>& face) {
  std::string out;
  for (const auto& t : face) out += (out.empty() ? "" : " ") + t.str();
  return out.empty() ? "-" : out;
}

std::vector<Triple> parse_face(const std::string& s) {
  std::vector<Triple> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ';');) {
    auto v = parse_vector(part);
    if (v.size() != 3) throw InputError("face triples are 'i,j,k' separated by ';'");
    int i = static_cast<int>(v[0].get_num().get_si()), j = static_cast<int>(v[1].get_num().get_si()),
        k = static_cast<int>(v[2].get_num().get_si());
    out.push_back(one_based(std::min(i, j), std::max(i, j), k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void print_matrix(Out& out, const std::string& key, const Matrix& m) {
  if (out.kv()) {
    out.field(key, render_matrix(m));
    return;
  }
  std::cout << key << ":\n";
  for (std::size_t r = 0; r < m.rows(); ++r) std::cout << "  [" << join(m.row(r), ", ") << "]\n";
}

void print_verdict(Out& out, const Verdict& v) {
  out.field("status", to_string(v.status));
  if (v.derivation) out.field("derivation", paren(*v.derivation));
  if (v.obstruction != Obstruction::None) out.field("obstruction", to_string(v.obstruction));
  if (v.certificate) {
    const auto& c = *v.certificate;
    out.field("certificate.kind", to_string(c.kind));
    if (c.degeneration) {
      out.field("certificate.alpha", paren(c.degeneration->alpha));
      out.field("certificate.face", render_face(c.degeneration->face));
    }
    for (const auto& [t, a] : c.coefficients) out.field("certificate.coef" + t.str(), to_string(a));
    out.field("certificate.slack", to_string(c.slack));
    if (c.witness) {
      out.field("certificate.scale", to_string(c.witness->scale));
      out.field("certificate.h", paren(c.witness->h));
    }
  }
  if (!v.notes.empty()) out.field("notes", v.notes);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_check(const Globals& g, const Loaded& in) {
  Out out(g.fmt());
  out.field("algebra", in.label);
  out.field("dim", std::to_string(in.mu.dim()));
  out.field("constants", std::to_string(in.mu.constants().size()));
  auto j = check_jacobi(in.mu);
  out.field("jacobi", j.holds ? "true" : "false");
  if (!j.holds) {
    auto [a, b, c] = *j.violation;
    out.field("jacobi.violation", "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," + std::to_string(c + 1) + ")");
    out.field("jacobi.defect", paren(j.defect));
    return 0;
  }
  auto lcs = lower_central_series(in.mu);
  out.field("nilpotent", lcs.reaches_zero() ? "true" : "false");
  out.field("lower_central_series", "(" + join_sizes(lcs.nonzero_dims()) + ")");
  out.field("center_dim", std::to_string(center(in.mu).size()));
  auto nice = check_nice_basis(in.mu);
  out.field("nice", nice.nice ? "true" : "false");
  return 0;
}

int cmd_der(const Globals& g, const Loaded& in, bool show_basis) {
  require_lie(in.mu);
  Out out(g.fmt());
  const auto der = derivation_algebra(in.mu);
  const auto ds = diagonal_derivations(in.mu);
  out.field("algebra", in.label);
  out.field("der_dim", std::to_string(der.dim()));
  out.field("diagonal_der_dim", std::to_string(ds.dim()));
  if (ds.dim()) out.field("diagonal_der", render_parametrization(ds));
  out.field("traceless", all_derivations_traceless(der) ? "true" : "false");
  auto flag = engel_flag(der);
  out.field("characteristically_nilpotent", flag.characteristically_nilpotent ? "true" : "false");
  out.field("engel_flag_dims", "(" + join_sizes(flag.dims) + ")");
  out.field("diagonal_part_is_derivation", diagonal_projection_is_derivation(in.mu, der) ? "true" : "false");
  if (auto phi = solve_phi_on_diagonal(in.mu, der, ds))
    out.field("phi_on_diagonal", paren(*phi));
  else
    out.field("phi_on_diagonal", "none");
  if (show_basis)
    for (std::size_t b = 0; b < der.dim(); ++b) print_matrix(out, "basis." + std::to_string(b + 1), der.basis[b]);
  return 0;
}

int cmd_nice(const Globals& g, const Loaded& in) {
  Out out(g.fmt());
  auto r = check_nice_basis(in.mu);
  out.field("algebra", in.label);
  out.field("nice", r.nice ? "true" : "false");
  if (!r.nice) out.field("reason", r.reason);
  return 0;
}

int cmd_weights(const Globals& g, const Loaded& in) {
  Out out(g.fmt());
  const auto ws = weight_set(in.mu);
  out.field("algebra", in.label);
  out.field("weights", std::to_string(ws.size()));
  for (const auto& w : ws.weights) out.field("F" + w.index.str(), paren(w.vec));
  return 0;
}

int cmd_cone(const Globals& g, const Loaded& in, bool full) {
  require_nilpotent(in.mu);
  Out out(g.fmt());
  const auto ds = diagonal_derivations(in.mu);
  out.field("algebra", in.label);
  if (ds.dim() == 0) {
    out.field("diagonal_der", "0");
    out.field("cone", "empty");
    return 0;
  }
  out.field("diagonal_der", render_parametrization(ds));
  auto print_cone = [&](const std::string& key, const ConeDescription& c) {
    if (c.empty) {
      out.field(key, "empty");
      return;
    }
    for (const auto& row : c.inequalities) out.field(key, render_linear(row, ds.coordinates) + " > 0");
  };
  if (full) {
    out.field("source", "full weight polytope");
    print_cone("inequality", project_certificate_cone(weight_set(in.mu), ds));
    return 0;
  }
  auto cu = certificate_cones(in.mu, ds, g.budget);
  const bool nice = is_nice_basis(in.mu);
  out.field("source", nice ? "nice basis" : "union over nice toral degenerations (under-approximation)");
  if (cu.budget_exceeded) out.field("budget_exceeded", "true");
  auto cones = simplify_union(cu.cones);
  if (cones.empty()) {
    out.field("cone", "empty");
    return 0;
  }
  if (cones.size() == 1) {
    print_cone("inequality", cones.front());
    return 0;
  }
  for (std::size_t i = 0; i < cones.size(); ++i) print_cone("piece." + std::to_string(i + 1), cones[i]);
  return 0;
}

int cmd_degenerate(const Globals& g, const Loaded& in, const std::string& alpha) {
  require_lie(in.mu);
  Out out(g.fmt());
  out.field("algebra", in.label);
  if (!alpha.empty()) {
    auto a = parse_d(alpha, in.mu, "alpha");
    auto lim = limit_along(in.mu, a);
    if (!lim.limit) {
      out.field("limit", "none");
      out.field("violating", lim.violating->str());
      return 0;
    }
    out.field("face", render_face(weight_set(*lim.limit).index_set()));
    out.field("nice", is_nice_basis(*lim.limit) ? "true" : "false");
    for (const auto& [t, c] : lim.limit->constants()) out.field("limit" + t.str(), to_string(c));
    return 0;
  }
  auto fe = enumerate_face_degenerations(in.mu, g.budget);
  out.field("faces", std::to_string(fe.degenerations.size()));
  out.field("tested", std::to_string(fe.tested));
  if (fe.budget_exceeded) out.field("budget_exceeded", "true");
  for (std::size_t i = 0; i < fe.degenerations.size(); ++i) {
    const auto& f = fe.degenerations[i];
    const std::string key = "face." + std::to_string(i + 1);
    out.field(key, render_face(f.face) + " alpha=" + paren(f.alpha) + " nice=" + (is_nice_basis(f.limit) ? "true" : "false"));
  }
  return 0;
}

Vector parse_h(const std::string& s, const LieBracket& mu) {
  if (s.empty()) return Vector(static_cast<std::size_t>(mu.dim()), Rational(1));
  auto h = parse_d(s, mu, "h");
  for (const auto& x : h)
    if (x <= 0) throw InputError("h entries must be positive");
  return h;
}

int cmd_momentmap(const Globals& g, const Loaded& in, const std::string& hs) {
  if (in.mu.is_zero()) throw InputError("moment map of the zero bracket is undefined");
  Out out(g.fmt());
  const auto h = parse_h(hs, in.mu);
  const auto lambda = act_diagonal(h, in.mu);
  out.field("algebra", in.label);
  out.field("norm_squared", to_string(norm_squared(lambda)));
  const auto m = moment_map(lambda);
  out.field("diagonal", m.is_diagonal() ? "true" : "false");
  print_matrix(out, "moment_map", m);
  auto md = moment_diagonal(lambda);
  for (const auto& [t, c] : md.coefficients) out.field("t" + t.str(), to_string(c));
  return 0;
}

int cmd_ricci(const Globals& g, const Loaded& in, const std::string& ds, const std::string& scale, const std::string& hs) {
  require_lie(in.mu);
  if (ds.empty()) throw InputError("--derivation is required");
  Out out(g.fmt());
  MetricExtension ext{in.mu, parse_d(ds, in.mu), scale.empty() ? Rational(1) : parse_rational(scale), parse_h(hs, in.mu)};
  const auto ric = extension_ricci(ext);
  out.field("algebra", in.label);
  out.field("derivation", paren(ext.derivation));
  out.field("scale", to_string(ext.scale));
  out.field("h", paren(ext.h));
  print_matrix(out, "ricci", ric);
  out.field("leading_minors", paren(leading_minors(ric)));
  out.field("negative_definite", is_negative_definite(ric) ? "true" : "false");
  return 0;
}

int cmd_certify(const Globals& g, const Loaded& in, const std::string& ds, const std::string& degen, bool witness,
                const std::string& face, const std::string& out_path) {
  require_nilpotent(in.mu);
  if (degen != "auto" && degen != "none") throw InputError("--degenerations must be auto or none");
  CertifyOptions opts;
  opts.degenerations = degen == "auto";
  opts.witness = witness;
  opts.budget = g.budget;
  opts.seed = g.seed;
  if (!face.empty()) opts.face = parse_face(face);
  Out out(g.fmt());
  out.field("algebra", in.label);
  Verdict v = ds.empty() ? certify_nilradical(in.mu, opts) : certify_derivation(in.mu, parse_d(ds, in.mu), opts);
  out.field("scope", ds.empty() ? "algebra" : "derivation");
  print_verdict(out, v);
  if (v.certificate) {
    const std::string text = serialize_certificate(*v.certificate);
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw InputError("cannot write '" + out_path + "'");
      f << text;
      out.field("certificate.file", out_path);
    } else if (!out.kv()) {
      std::cout << "\n" << text;
    }
  }
  return 0;
}

int cmd_verify(const Globals& g, const std::string& path) {
  Out out(g.fmt());
  const auto cert = parse_certificate(read_file(path));
  auto rep = verify_certificate(cert);
  out.field("certificate", path);
  out.field("kind", to_string(cert.kind));
  out.field("derivation", paren(cert.derivation));
  out.field("valid", rep.ok ? "true" : "false");
  for (const auto& f : rep.failures) out.field("failure", f);
  return rep.ok ? 0 : 1;
}

int cmd_witness(const Globals& g, const Loaded& in, const std::string& ds, std::size_t iterations) {
  require_nilpotent(in.mu);
  if (ds.empty()) throw InputError("--derivation is required");
  Out out(g.fmt());
  const Vector d = parse_d(ds, in.mu);
  CertifyOptions opts;
  opts.budget = g.budget;
  std::optional<Degeneration> deg;
  Rational tr = 0;
  for (const auto& x : d) tr += x;
  if (tr > 0) {
    auto v = certify_derivation(in.mu, d, opts);
    if (v.certificate) deg = v.certificate->degeneration;
  }
  out.field("algebra", in.label);
  out.field("derivation", paren(d));
  auto w = find_witness_metric(in.mu, d, deg, iterations, g.seed);
  if (!w) {
    out.field("witness", "not found");
    return 0;
  }
  const auto ric = extension_ricci({in.mu, d, w->scale, w->h});
  out.field("witness", "found");
  out.field("scale", to_string(w->scale));
  out.field("h", paren(w->h));
  out.field("leading_minors", paren(leading_minors(ric)));
  out.field("negative_definite", is_negative_definite(ric) ? "true" : "false");
  return 0;
}

int cmd_catalog_list(const Globals& g) {
  Out out(g.fmt());
  for (const auto& e : catalog_list()) {
    if (out.kv())
      out.field(e.id, std::to_string(e.dim));
    else
      std::cout << e.id << std::string(e.id.size() < 18 ? 18 - e.id.size() : 1, ' ') << "dim " << e.dim << "  " << e.summary
                << "\n";
  }
  return 0;
}

int cmd_catalog_show(const Globals& g, const std::string& id, const std::string& param) {
  Out out(g.fmt());
  const auto name = split_catalog_id(id).first;
  const auto& e = catalog_entry(name);
  out.field("id", e.id);
  out.field("dim", std::to_string(e.dim));
  out.field("summary", e.summary);
  if (e.parameter) out.field("parameter", *e.parameter);
  if (!e.notes.empty()) out.field("notes", e.notes);
  for (const auto& x : e.expected)
    out.field("expect." + x.property, x.expected + " [" + to_string(x.provenance) + (x.asserted ? "" : ", not asserted") + "]");
  if (!e.parameter || split_catalog_id(id).second || !param.empty()) {
    std::optional<Rational> p;
    if (!param.empty()) p = parse_rational(param);
    auto mu = catalog_get(id, p);
    if (!out.kv()) std::cout << "\n" << emit_bracket(mu);
  }
  return 0;
}

int cmd_catalog_export(const std::string& id, const std::string& param) {
  std::optional<Rational> p;
  if (!param.empty()) p = parse_rational(param);
  auto mu = catalog_get(id, p);
  const auto& e = catalog_entry(split_catalog_id(id).first);
  std::cout << "# " << id << ": " << e.summary << "\n";
  if (!e.notes.empty()) std::cout << "# " << e.notes << "\n";
  std::cout << emit_bracket(mu);
  return 0;
}

int cmd_catalog_regress(const Globals& g, const std::string& id) {
  Out out(g.fmt());
  auto rep = run_regression(id.empty() ? "all" : id);
  std::size_t flags = 0;
  for (const auto& c : rep.checks) {
    std::string status = c.pass ? "pass" : (c.asserted ? "FAIL" : "flag");
    if (!c.asserted && !c.pass) ++flags;
    if (out.kv()) {
      out.field(c.entry + "." + c.property, status);
    } else {
      std::cout << status << "  " << c.entry << "  " << c.property << "  expected=" << c.expected;
      if (!c.pass) std::cout << "  actual=" << c.actual;
      std::cout << "  [" << to_string(c.provenance) << "]\n";
    }
  }
  out.field("checks", std::to_string(rep.checks.size()));
  out.field("failures", std::to_string(rep.failures()));
  out.field("flags", std::to_string(flags));
  return rep.ok() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for Ricci negative derivations of nilpotent Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--seed", g.seed, "Seed for randomized searches");
  app.add_option("--budget", g.budget, "Face enumeration budget");

  std::string src, param, ds, hs, scale, alpha, degen = "auto", face, out_path, cert_path, cat_id;
  bool basis = false, full = false, witness = false;
  std::size_t iterations = 600;

  auto add_src = [&](CLI::App* sc) {
    sc->add_option("algebra", src, "Algebra file or catalog id")->required();
    sc->add_option("--param", param, "Family parameter for catalog entries");
  };
  auto* check = app.add_subcommand("check", "Jacobi, nilpotency, central series, nice basis");
  add_src(check);
  auto* der = app.add_subcommand("der", "Derivation algebra and its obstructions");
  add_src(der);
  der->add_flag("--basis", basis, "Print a basis of Der");
  auto* nice = app.add_subcommand("nice", "Nice-basis test");
  add_src(nice);
  auto* weights = app.add_subcommand("weights", "Weights of the structure constants");
  add_src(weights);
  auto* cone = app.add_subcommand("cone", "Certificate cone on the diagonal derivations");
  add_src(cone);
  cone->add_flag("--full", full, "Project the full weight polytope even for a non-nice basis");
  auto* degenerate = app.add_subcommand("degenerate", "Faces and toral degenerations");
  add_src(degenerate);
  degenerate->add_option("--alpha", alpha, "Limit along a single direction");
  auto* momentmap = app.add_subcommand("momentmap", "Exact moment map");
  add_src(momentmap);
  momentmap->set_help_flag("--help", "Print this help message and exit");
  momentmap->add_option("--h", hs, "Positive diagonal metric change");
  auto* ricci = app.add_subcommand("ricci", "Ricci matrix of the rank-one extension");
  add_src(ricci);
  ricci->add_option("--derivation", ds, "Diagonal derivation d1,...,dn");
  ricci->add_option("--scale", scale, "Bracket scale s > 0");
  ricci->set_help_flag("--help", "Print this help message and exit");
  ricci->add_option("--h", hs, "Positive diagonal metric change");
  auto* certify = app.add_subcommand("certify", "Certify a derivation or the algebra");
  add_src(certify);
  certify->add_option("--derivation", ds, "Diagonal derivation d1,...,dn");
  certify->add_option("--degenerations", degen, "auto|none");
  certify->add_option("--face", face, "Restrict to one face, triples 'i,j,k;...'");
  certify->add_flag("--witness", witness, "Also search a witness metric");
  certify->add_option("--out", out_path, "Write the certificate to a file");
  auto* verify = app.add_subcommand("verify", "Re-check a stored certificate");
  verify->add_option("certificate", cert_path, "Certificate file")->required();
  auto* wit = app.add_subcommand("witness", "Search a metric with negative Ricci curvature");
  add_src(wit);
  wit->add_option("--derivation", ds, "Diagonal derivation d1,...,dn");
  wit->add_option("--iterations", iterations, "Nelder-Mead iterations per start");
  auto* cat = app.add_subcommand("catalog", "Built-in example algebras");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List entries");
  auto* cat_show = cat->add_subcommand("show", "Show an entry");
  cat_show->add_option("id", cat_id)->required();
  cat_show->add_option("--param", param);
  auto* cat_export = cat->add_subcommand("export", "Print an entry in the algebra file format");
  cat_export->add_option("id", cat_id)->required();
  cat_export->add_option("--param", param);
  auto* cat_regress = cat->add_subcommand("regress", "Run the regression fixtures");
  cat_regress->add_option("id", cat_id, "Entry id or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cat_list) return cmd_catalog_list(g);
    if (*cat_show) return cmd_catalog_show(g, cat_id, param);
    if (*cat_export) return cmd_catalog_export(cat_id, param);
    if (*cat_regress) return cmd_catalog_regress(g, cat_id);
    if (*verify) return cmd_verify(g, cert_path);
    const Loaded in = load(src, param);
    if (*check) return cmd_check(g, in);
    if (*der) return cmd_der(g, in, basis);
    if (*nice) return cmd_nice(g, in);
    if (*weights) return cmd_weights(g, in);
    if (*cone) return cmd_cone(g, in, full);
    if (*degenerate) return cmd_degenerate(g, in, alpha);
    if (*momentmap) return cmd_momentmap(g, in, hs);
    if (*ricci) return cmd_ricci(g, in, ds, scale, hs);
    if (*certify) return cmd_certify(g, in, ds, degen, witness, face, out_path);
    if (*wit) return cmd_witness(g, in, ds, iterations);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
