#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cherednik/contraform.hpp"
#include "cherednik/group.hpp"
#include "cherednik/polyring.hpp"
#include "report.hpp"
#include "theorem.hpp"

namespace cherednik::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  uint32_t p = 0;
  int t = 0;
  uint32_t i = 0;
  uint32_t j = 0;
  int64_t jj = 0;  // k0-reduce accepts any determinant exponent
  uint32_t a = 0;
  uint32_t lambda = 0;
  uint32_t degree = 0;
  int64_t max_degree = -1;
  std::string backend;
  uint64_t seed = 1;
  unsigned samples = 3;
  unsigned ext_degree = 16;
  std::string output;
  std::vector<std::string> modulo;
  bool baby = false;
  bool slow = false;
  bool elements = false;
};

void check_prime(uint32_t p) {
  if (p < 3 || p >= 256 || !is_prime(p)) throw UsageError("--p must be an odd prime below 256");
}

void check_tau(const Options& o) {
  check_prime(o.p);
  if (o.t != 0 && o.t != 1) throw UsageError("--t must be 0 or 1");
  if (o.i > o.p - 1) throw UsageError("--i must lie in [0, p-1]");
  if (o.j > o.p - 2) throw UsageError("--j must lie in [0, p-2]");
}

GenericBackend resolve_backend(const Options& o, BackendMode fallback) {
  std::string name = o.backend;
  if (name.empty())
    if (const char* env = std::getenv("CHEREDNIK_BACKEND")) name = env;
  BackendMode mode = fallback;
  if (!name.empty()) {
    try {
      mode = parse_backend_mode(name);
    } catch (const std::invalid_argument&) {
      throw UsageError("unknown backend '" + name + "' (exact|random)");
    }
  }
  GenericBackend b = mode == BackendMode::Exact ? GenericBackend::exact()
                                                : GenericBackend::random(o.seed, o.samples, o.ext_degree);
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return b;
}

void print(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

bool table(const Options& o) { return o.output == "table"; }

int cmd_reflections(const Options& o, std::ostream& out) {
  check_prime(o.p);
  if (o.lambda && o.lambda > o.p - 1) throw UsageError("--lambda must lie in [1, p-1]");
  const auto classes = enumerate_reflections(o.p);
  json arr = json::array();
  std::ostringstream os;
  size_t total = 0;
  for (const auto& [lambda, refl] : classes) {
    total += refl.size();
    if (o.lambda && lambda != o.lambda) continue;
    json c = {{"lambda", lambda}, {"count", refl.size()}};
    os << "lambda = " << lambda << ": " << refl.size() << " reflections\n";
    if (o.lambda || o.elements) {
      json els = json::array();
      for (const auto& s : refl) {
        const auto g = reflection_to_matrix(s);
        els.push_back({{"alpha", {s.alpha[0].value(), s.alpha[1].value()}},
                       {"alpha_vee", {s.alpha_vee[0].value(), s.alpha_vee[1].value()}},
                       {"matrix", {{g(0, 0).value(), g(0, 1).value()}, {g(1, 0).value(), g(1, 1).value()}}}});
        os << "  " << g.str() << "\n";
      }
      c["elements"] = els;
    }
    arr.push_back(c);
  }
  if (table(o)) {
    out << "GL_2(F_" << o.p << "): " << total << " reflections\n" << os.str();
  } else {
    print(out, {{"p", o.p}, {"total", total}, {"classes", arr}});
  }
  return 0;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  check_prime(o.p);
  const auto inv = dickson_invariants(o.p);
  if (table(o)) {
    out << "Q0 (degree " << inv.q0.degree() << "): " << inv.q0.str() << "\n";
    out << "Q1 (degree " << inv.q1.degree() << "): " << inv.q1.str() << "\n";
  } else {
    print(out, {{"p", o.p},
                {"Q0", {{"degree", inv.q0.degree()}, {"poly", inv.q0.str()}}},
                {"Q1", {{"degree", inv.q1.degree()}, {"poly", inv.q1.str()}}}});
  }
  return 0;
}

int cmd_det_a(const Options& o, std::ostream& out) {
  check_prime(o.p);
  const auto det = det_matrix_A(o.p);
  const auto q1 = dickson_invariants(o.p).q1;
  const bool negative = ((o.p - 1) / 2) % 2 == 1;
  const auto expected = negative ? -q1 : q1;
  const bool holds = det == expected;
  const std::string sign = negative ? "-" : "+";
  if (table(o)) {
    out << "det A = " << det.str() << "\n";
    out << "det A = " << sign << "Q1: " << (holds ? "holds" : "FAILS") << "\n";
  } else {
    print(out, {{"p", o.p}, {"det", det.str()}, {"expected", expected.str()}, {"sign", sign}, {"holds", holds}});
  }
  return holds ? 0 : 1;
}

int cmd_k0_reduce(const Options& o, std::ostream& out) {
  check_prime(o.p);
  K0Ring ring(o.p);
  const auto v = ring.reduce_sym(o.a, o.jj);
  if (table(o))
    out << "S^" << o.a << " h (x) det^" << o.jj << " = " << render_class(v) << "\n";
  else
    print(out, {{"terms", class_json(v)}});
  return 0;
}

int cmd_verma_char(const Options& o, std::ostream& out) {
  check_tau(o);
  K0Ring ring(o.p);
  const IrredLabel tau{o.i, o.j};
  CharacterSeries chi = o.baby ? ring.baby_verma_character(tau, o.t)
                               : ring.verma_character(tau, o.max_degree >= 0 ? o.max_degree : 2 * o.p);
  if (o.baby && o.max_degree >= 0) chi = chi.truncated(o.max_degree);
  chi.trim();
  const auto h = chi.hilbert();
  if (table(o)) {
    out << (o.baby ? "baby Verma" : "Verma") << " module of S^" << o.i << " h (x) det^" << o.j << ", p = " << o.p;
    if (o.baby) out << ", t = " << o.t;
    out << "\nHilbert: " << render_hilbert(h) << "\n";
    for (size_t n = 0; n < chi.size(); ++n)
      if (!chi.coeff(n).is_zero()) out << "  z^" << n << ": " << render_class(chi.coeff(n)) << "\n";
  } else {
    json j = {{"schema", 1}, {"p", o.p}, {"tau", {{"i", o.i}, {"j", o.j}}}, {"baby", o.baby}};
    if (o.baby) j["t"] = o.t;
    j["hilbert"] = h;
    j["character"] = character_json(chi);
    print(out, j);
  }
  return 0;
}

template <class S>
std::string render_vector(const TauRep& tau, uint32_t n, const S* row, size_t len) {
  std::string s;
  for (size_t x = 0; x < len; ++x) {
    if (row[x].is_zero()) continue;
    std::string c = to_string(row[x]);
    if (c.find(' ') != std::string::npos) c = "(" + c + ")";
    if (!s.empty()) s += " + ";
    s += (c == "1" ? "" : c + "*") + "[" + piece_basis_name(tau, n, x) + "]";
  }
  return s.empty() ? "0" : s;
}

// Divides a row by its leading entry when every quotient is a polynomial.
void normalize(std::vector<ParamPoly>& row) {
  const ParamPoly* lead = nullptr;
  for (const auto& x : row)
    if (!x.is_zero()) {
      lead = &x;
      break;
    }
  if (!lead) return;
  const ParamPoly l = *lead;
  std::vector<ParamPoly> out;
  try {
    for (const auto& x : row) out.push_back(x.is_zero() ? x : x.exact_div(l));
  } catch (const std::domain_error&) {
    return;
  }
  row = std::move(out);
}
void normalize(std::vector<Fq>&) {}

// Kernel vectors independent modulo the submodule, rendered.
template <class S, class RankFn>
std::vector<std::string> complement(const TauRep& tau, uint32_t n, Matrix<S> acc, const Matrix<S>& kernel,
                                    RankFn rank_of) {
  std::vector<std::string> out;
  size_t r = rank_of(acc);
  for (size_t k = 0; k < kernel.rows(); ++k) {
    std::vector<S> v(kernel.row(k), kernel.row(k) + kernel.cols());
    normalize(v);
    Matrix<S> row(0, kernel.cols(), kernel.zero());
    row.append_row(v);
    auto next = vstack(acc, row);
    const size_t nr = rank_of(next);
    if (nr == r) continue;
    acc = std::move(next);
    r = nr;
    out.push_back(render_vector(tau, n, v.data(), v.size()));
  }
  return out;
}

int cmd_singular(const Options& o, std::ostream& out) {
  check_tau(o);
  const TauRep tau(o.p, o.i, o.j);
  const auto params = ParamSet::symbolic(o.p, o.t);
  const auto backend = resolve_backend(o, BackendMode::Exact);
  std::vector<VermaVectors> modulo;
  for (const auto& name : o.modulo) {
    SingularFamily f;
    try {
      f = parse_singular_family(name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!family_applies(f, tau)) throw UsageError("family " + name + " does not apply to this tau");
    modulo.push_back(explicit_singular_family(f, tau));
  }
  const auto sp = singular_space(params, tau, o.degree, modulo, backend);
  const auto sub = submodule_span(tau, modulo, o.degree);
  std::vector<std::string> basis;
  if (sp.kernel.exact_basis) {
    const auto z = ParamPoly(o.p);
    basis = complement(tau, o.degree, map_matrix(sub, z, [&](const Fp& x) { return embed(x, z); }),
                       *sp.kernel.exact_basis, [](const Matrix<ParamPoly>& m) { return bareiss_rank(m); });
  } else if (sp.kernel.sample_basis) {
    const auto z = sp.kernel.sample_basis->zero();
    basis = complement(tau, o.degree, map_matrix(sub, z, [&](const Fp& x) { return embed(x, z); }),
                       *sp.kernel.sample_basis, [](const Matrix<Fq>& m) { return rank(m); });
  }
  if (table(o)) {
    out << "singular space in degree " << o.degree << ": dimension " << sp.dimension << " (kernel "
        << sp.kernel_dimension << ", submodule " << sp.submodule_dimension << ")\n";
    for (const auto& b : basis) out << "  " << b << "\n";
  } else {
    json j = {{"p", o.p},
              {"t", o.t},
              {"tau", {{"i", o.i}, {"j", o.j}}},
              {"degree", o.degree},
              {"modulo", o.modulo},
              {"dimension", sp.dimension},
              {"kernel_dimension", sp.kernel_dimension},
              {"submodule_dimension", sp.submodule_dimension},
              {"basis", basis},
              {"backend", backend_json(backend)}};
    if (sp.kernel.warning) j["warning"] = true;
    print(out, j);
  }
  return 0;
}

int cmd_irred_char(const Options& o, std::ostream& out) {
  check_tau(o);
  const TauRep tau(o.p, o.i, o.j);
  const auto params = ParamSet::symbolic(o.p, o.t);
  const auto backend = resolve_backend(o, BackendMode::Exact);
  std::optional<uint32_t> cap;
  if (o.max_degree >= 0) cap = static_cast<uint32_t>(o.max_degree);
  const auto res = irreducible_character(params, tau, backend, cap);
  const auto report = make_report(params, tau, backend, res);
  if (table(o))
    out << render_table(report);
  else
    print(out, to_json(report));
  return res.status == CharacterStatus::Ok ? 0 : 3;
}

int cmd_verify_theorem(const Options& o, std::ostream& out) {
  std::vector<uint32_t> primes;
  if (o.p) {
    check_prime(o.p);
    primes = {o.p};
  } else {
    primes = {3, 5};
    if (o.slow) primes.push_back(7);
  }
  std::vector<int> ts = {0, 1};
  if (o.t != -1) {
    if (o.t != 0 && o.t != 1) throw UsageError("--t must be 0 or 1");
    ts = {o.t};
  }
  json cells = json::array();
  size_t passed = 0, total = 0;
  double seconds = 0;
  for (uint32_t p : primes)
    for (int t : ts) {
      const GenericBackend backend =
          o.backend.empty() && !std::getenv("CHEREDNIK_BACKEND") ? profile_backend(p)
                                                                  : resolve_backend(o, BackendMode::Exact);
      for (const auto& tau : theorem_cells(p, t, o.slow)) {
        const auto c = verify_cell(p, t, tau, backend);
        ++total;
        passed += c.ok;
        seconds += c.seconds;
        if (table(o)) {
          out << (c.ok ? "PASS" : "FAIL") << "  p=" << p << " t=" << t << " tau=(" << tau.i << "," << tau.j << ") "
              << to_string(backend.mode) << " " << std::fixed << std::setprecision(3) << c.seconds << "s";
          if (!c.ok) out << "  " << c.detail;
          out << std::endl;
        }
        cells.push_back({{"p", p},
                         {"t", t},
                         {"tau", {{"i", tau.i}, {"j", tau.j}}},
                         {"backend", backend_json(backend)},
                         {"result", c.ok ? "PASS" : "FAIL"},
                         {"status", to_string(c.status)},
                         {"detail", c.detail},
                         {"seconds", c.seconds}});
      }
    }
  if (table(o))
    out << passed << "/" << total << " cells passed in " << std::fixed << std::setprecision(1) << seconds << "s\n";
  else
    print(out, {{"schema", 1}, {"cells", cells}, {"passed", passed}, {"total", total}});
  return passed == total ? 0 : 1;
}

void add_output(CLI::App* c, Options& o) {
  c->add_option("--output", o.output, "json|table (default: table for verify-theorem, else json)")
      ->check(CLI::IsMember({"json", "table"}));
}

void add_tau(CLI::App* c, Options& o) {
  c->add_option("--p", o.p, "Odd prime")->required();
  c->add_option("--i", o.i, "tau = S^i h (x) det^j")->required();
  c->add_option("--j", o.j, "Determinant twist")->required();
}

void add_backend(CLI::App* c, Options& o) {
  c->add_option("--backend", o.backend, "exact|random (default: $CHEREDNIK_BACKEND, else exact)");
  c->add_option("--seed", o.seed, "Random backend seed")->capture_default_str();
  c->add_option("--samples", o.samples, "Random backend samples")->capture_default_str();
  c->add_option("--ext-degree", o.ext_degree, "Random backend extension degree")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characters of irreducible modules over rational Cherednik algebras of GL_2(F_p)", "cherednik"};
  app.require_subcommand(1);
  Options o;

  auto* refl = app.add_subcommand("reflections", "Reflection classes of GL_2(F_p)");
  refl->add_option("--p", o.p, "Odd prime")->required();
  refl->add_option("--lambda", o.lambda, "Show the elements of one class");
  refl->add_flag("--elements", o.elements, "Show the elements of every class");

  auto* inv = app.add_subcommand("invariants", "Dickson invariants Q0, Q1");
  inv->add_option("--p", o.p, "Odd prime")->required();

  auto* deta = app.add_subcommand("det-a", "Check det A = (-1)^((p-1)/2) Q1");
  deta->add_option("--p", o.p, "Odd prime")->required();

  auto* k0 = app.add_subcommand("k0-reduce", "Decompose S^a h (x) det^j into irreducibles");
  k0->add_option("--p", o.p, "Odd prime")->required();
  k0->add_option("--a", o.a, "Symmetric power")->required();
  k0->add_option("--j", o.jj, "Determinant exponent")->required();

  auto* verma = app.add_subcommand("verma-char", "Character of a (baby) Verma module");
  add_tau(verma, o);
  verma->add_option("--t", o.t, "t in {0, 1} (baby Verma modules)");
  verma->add_flag("--baby", o.baby, "Baby Verma module");
  verma->add_option("--max-degree", o.max_degree, "Last degree shown");

  auto* sing = app.add_subcommand("singular", "Singular vectors in one degree");
  add_tau(sing, o);
  sing->add_option("--t", o.t, "t in {0, 1}")->required();
  sing->add_option("--degree", o.degree, "Degree")->required();
  sing->add_option("--modulo", o.modulo, "Families generating the submodule to quotient by")->delimiter(',');
  add_backend(sing, o);

  auto* irr = app.add_subcommand("irred-char", "Character of the irreducible module L_{t,c}(tau) at generic c");
  add_tau(irr, o);
  irr->add_option("--t", o.t, "t in {0, 1}")->required();
  irr->add_option("--max-degree", o.max_degree, "Stop after this degree");
  add_backend(irr, o);

  auto* thm = app.add_subcommand("verify-theorem", "Compare every cell of the character tables with the closed forms");
  thm->add_flag("--slow", o.slow, "Include p = 7 and p = 5, t = 1, i = 4");
  thm->add_option("--p", o.p, "Only this prime");
  thm->add_option("--t", o.t, "Only this t");
  add_backend(thm, o);

  for (auto* c : {refl, inv, deta, k0, verma, sing, irr, thm}) add_output(c, o);

  o.t = -1;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (o.t == -1 && !thm->parsed()) o.t = 0;
  if (o.output.empty()) o.output = thm->parsed() ? "table" : "json";
  try {
    if (refl->parsed()) return cmd_reflections(o, out);
    if (inv->parsed()) return cmd_invariants(o, out);
    if (deta->parsed()) return cmd_det_a(o, out);
    if (k0->parsed()) return cmd_k0_reduce(o, out);
    if (verma->parsed()) return cmd_verma_char(o, out);
    if (sing->parsed()) return cmd_singular(o, out);
    if (irr->parsed()) return cmd_irred_char(o, out);
    if (thm->parsed()) return cmd_verify_theorem(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cherednik::cli
