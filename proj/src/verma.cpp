#include "cherednik/verma.hpp"

#include <sstream>
#include <stdexcept>

#include "cherednik/polyring.hpp"

namespace cherednik {

TauRep::TauRep(uint32_t p, uint32_t i, uint32_t j) : p_(p), label_{i, j} {
  require_odd_prime(p);
  if (i > p - 1) throw std::invalid_argument("tau: i must lie in [0, p-1]");
  if (j > p - 2) throw std::invalid_argument("tau: j must lie in [0, p-2]");
}

Matrix<Fp> sym_power_matrix(const GroupElement& m, uint32_t n) {
  const uint32_t p = m.prime();
  // Dense homogeneous polynomials indexed by the u_2 exponent.
  auto powers = [&](const Fp& c1, const Fp& c2) {
    std::vector<std::vector<Fp>> pw(n + 1);
    pw[0] = {Fp::raw(1, p)};
    for (uint32_t k = 1; k <= n; ++k) {
      pw[k].assign(k + 1, Fp::raw(0, p));
      for (uint32_t e = 0; e < k; ++e) {
        pw[k][e] += pw[k - 1][e] * c1;
        pw[k][e + 1] += pw[k - 1][e] * c2;
      }
    }
    return pw;
  };
  const auto L1 = powers(m(0, 0), m(1, 0));
  const auto L2 = powers(m(0, 1), m(1, 1));
  Matrix<Fp> out(n + 1, n + 1, Fp::raw(0, p));
  for (uint32_t a = 0; a <= n; ++a) {
    const auto& f = L1[n - a];
    const auto& g = L2[a];
    for (uint32_t e1 = 0; e1 < f.size(); ++e1) {
      if (f[e1].is_zero()) continue;
      for (uint32_t e2 = 0; e2 < g.size(); ++e2) out(e1 + e2, a) += f[e1] * g[e2];
    }
  }
  return out;
}

Matrix<Fp> TauRep::act(const GroupElement& g) const {
  auto m = sym_power_matrix(g, label_.i);
  const Fp d = g.det().pow(label_.j);
  for (uint32_t r = 0; r <= label_.i; ++r)
    for (uint32_t c = 0; c <= label_.i; ++c) m(r, c) *= d;
  return m;
}

Matrix<Fp> TauRep::dual_act(const GroupElement& g) const { return act(g.inverse()).transpose(); }

ParamSet ParamSet::symbolic(uint32_t p, int t) {
  require_odd_prime(p);
  ParamSet s{p, t, {}};
  for (uint32_t l = 1; l < p; ++l) s.c.push_back(ParamPoly::variable(p, l));
  s.validate();
  return s;
}

ParamSet ParamSet::inverse_classes() const {
  ParamSet s = *this;
  for (uint32_t l = 1; l < p; ++l) s.c[l - 1] = at(Fp::raw(l, p).inv().value());
  return s;
}

void ParamSet::validate() const {
  require_odd_prime(p);
  if (t != 0 && t != 1) throw std::invalid_argument("t must be 0 or 1");
  if (c.size() != p - 1) throw std::invalid_argument("parameter set needs p-1 class values");
}

size_t piece_dim(const TauRep& tau, uint32_t n) { return static_cast<size_t>(n + 1) * tau.dim(); }

size_t piece_index(const TauRep& tau, uint32_t a, uint32_t b) { return static_cast<size_t>(a) * tau.dim() + b; }

namespace {

void append_power(std::ostringstream& os, const char* var, uint32_t e, bool& need_mul) {
  if (!e) return;
  os << (need_mul ? "*" : "") << var;
  if (e > 1) os << '^' << e;
  need_mul = true;
}

}  // namespace

std::string piece_basis_name(const TauRep& tau, uint32_t n, size_t index) {
  const uint32_t a = static_cast<uint32_t>(index / tau.dim()), b = static_cast<uint32_t>(index % tau.dim());
  const uint32_t i = tau.label().i;
  std::ostringstream os;
  bool mul = false;
  append_power(os, "x1", n - a, mul);
  append_power(os, "x2", a, mul);
  if (!mul) os << '1';
  os << " (x) ";
  mul = false;
  append_power(os, "y1", i - b, mul);
  append_power(os, "y2", b, mul);
  if (!mul) os << '1';
  return os.str();
}

Matrix<Fp> piece_action(const TauRep& tau, uint32_t n, const GroupElement& g) {
  const auto X = sym_power_matrix(act_on_hstar(g), n);
  const auto T = tau.act(g);
  const size_t d = tau.dim();
  Matrix<Fp> out(piece_dim(tau, n), piece_dim(tau, n), Fp::raw(0, tau.prime()));
  for (uint32_t r = 0; r <= n; ++r)
    for (uint32_t c = 0; c <= n; ++c) {
      if (X(r, c).is_zero()) continue;
      for (size_t b1 = 0; b1 < d; ++b1)
        for (size_t b2 = 0; b2 < d; ++b2) out(r * d + b1, c * d + b2) = X(r, c) * T(b1, b2);
    }
  return out;
}

Matrix<Fp> monomial_multiplication(const TauRep& tau, uint32_t n, uint32_t d, uint32_t e) {
  if (e > d) throw std::invalid_argument("monomial exponent exceeds degree");
  Matrix<Fp> out(piece_dim(tau, n + d), piece_dim(tau, n), Fp::raw(0, tau.prime()));
  for (uint32_t a = 0; a <= n; ++a)
    for (uint32_t b = 0; b < tau.dim(); ++b) out(piece_index(tau, a + d - e, b), piece_index(tau, a, b)) = Fp::raw(1, tau.prime());
  return out;
}

DunklFactory::DunklFactory(const TauRep& tau, ModuleSide side) : tau_(tau), side_(side), p_(tau.prime()) {
  for (auto& [l, rs] : enumerate_reflections(p_))
    for (const auto& r : rs) {
      refl_.push_back(r);
      refl_class_.push_back(l);
      const auto g = reflection_to_matrix(r);
      refl_tau_.push_back(side_ == ModuleSide::Verma ? tau_.act(g) : tau_.dual_act(g));
    }
  delta_.assign(refl_.size(), {});
}

// One more degree of divided differences.  For s(u_k) = u_k - delta_k beta,
// Delta(u_k m) = delta_k m + s(u_k) Delta(m).
void DunklFactory::advance() {
  const uint32_t n = degree_ + 1, p = p_;
  for (size_t s = 0; s < refl_.size(); ++s) {
    const auto& r = refl_[s];
    std::array<uint32_t, 2> delta, beta;
    if (side_ == ModuleSide::Verma) {
      delta = {r.alpha_vee[0].value(), r.alpha_vee[1].value()};
      beta = {r.alpha[0].value(), r.alpha[1].value()};
    } else {
      const Fp il = r.lambda.inv();
      delta = {(-(r.alpha[0] * il)).value(), (-(r.alpha[1] * il)).value()};
      beta = {r.alpha_vee[0].value(), r.alpha_vee[1].value()};
    }
    const auto& prev = delta_[s];  // (n-1) x n
    std::vector<uint32_t> next(static_cast<size_t>(n) * (n + 1), 0);
    for (uint32_t a = 0; a <= n; ++a) {
      const int k = a < n ? 0 : 1;
      const uint32_t m = a < n ? a : n - 1;
      // s(u_k) = l1 u_1 + l2 u_2
      const uint32_t l1 = ((k == 0 ? 1 : 0) + p * p - delta[k] * beta[0]) % p;
      const uint32_t l2 = ((k == 1 ? 1 : 0) + p * p - delta[k] * beta[1]) % p;
      auto at = [&](uint32_t row) -> uint32_t& { return next[static_cast<size_t>(row) * (n + 1) + a]; };
      at(m) = (at(m) + delta[k]) % p;
      for (uint32_t e = 0; e + 1 < n; ++e) {
        const uint32_t w = prev[static_cast<size_t>(e) * n + m];
        if (!w) continue;
        at(e) = (at(e) + w * l1) % p;
        at(e + 1) = (at(e + 1) + w * l2) % p;
      }
    }
    delta_[s] = std::move(next);
  }
  degree_ = n;
}

std::array<DunklComponents, 2> DunklFactory::components(uint32_t n) {
  if (n == 0) throw std::invalid_argument("Dunkl operators on degree 0 are the zero map");
  if (n < degree_) {
    degree_ = 0;
    for (auto& d : delta_) d.clear();
  }
  while (degree_ < n) advance();

  const uint32_t p = p_;
  const size_t d = tau_.dim(), rows = static_cast<size_t>(n) * d, cols = static_cast<size_t>(n + 1) * d;
  const Fp zero = Fp::raw(0, p);
  std::array<DunklComponents, 2> out;
  for (int k = 0; k < 2; ++k) {
    auto& comp = out[k];
    comp.derivative = Matrix<Fp>(rows, cols, zero);
    for (uint32_t a = 0; a <= n; ++a) {
      // d/du_1 (u_1^{n-a} u_2^a) = (n-a) u_1^{n-a-1} u_2^a; d/du_2 lowers a.
      const uint32_t coef = k == 0 ? n - a : a;
      if (coef % p == 0) continue;
      const uint32_t row = k == 0 ? a : a - 1;
      for (size_t b = 0; b < d; ++b) comp.derivative(row * d + b, a * d + b) = Fp(coef, p);
    }
    std::vector<std::vector<uint64_t>> acc(p - 1, std::vector<uint64_t>(rows * cols, 0));
    std::vector<uint64_t> scaled(d * d);
    for (size_t s = 0; s < refl_.size(); ++s) {
      const auto& r = refl_[s];
      const uint64_t gamma = (side_ == ModuleSide::Verma ? r.alpha[k] : r.alpha_vee[k]).value();
      if (!gamma) continue;
      for (size_t b1 = 0; b1 < d; ++b1)
        for (size_t b2 = 0; b2 < d; ++b2) scaled[b1 * d + b2] = gamma * refl_tau_[s](b1, b2).value() % p;
      auto& A = acc[refl_class_[s] - 1];
      const auto& D = delta_[s];
      for (uint32_t a1 = 0; a1 < n; ++a1)
        for (uint32_t a2 = 0; a2 <= n; ++a2) {
          const uint64_t v = D[static_cast<size_t>(a1) * (n + 1) + a2];
          if (!v) continue;
          for (size_t b1 = 0; b1 < d; ++b1) {
            uint64_t* dst = A.data() + (a1 * d + b1) * cols + a2 * d;
            const uint64_t* src = scaled.data() + b1 * d;
            for (size_t b2 = 0; b2 < d; ++b2) dst[b2] += v * src[b2];
          }
        }
    }
    for (uint32_t l = 1; l < p; ++l) {
      Matrix<Fp> m(rows, cols, zero);
      const auto& A = acc[l - 1];
      for (size_t x = 0; x < rows; ++x)
        for (size_t y = 0; y < cols; ++y) m(x, y) = Fp::raw(static_cast<uint32_t>(A[x * cols + y] % p), p);
      comp.classes.push_back(std::move(m));
    }
  }
  return out;
}

Matrix<ParamPoly> assemble(const ParamSet& params, const DunklComponents& comp) {
  params.validate();
  const uint32_t p = params.p;
  Matrix<ParamPoly> out(comp.derivative.rows(), comp.derivative.cols(), ParamPoly(p));
  for (size_t x = 0; x < out.rows(); ++x)
    for (size_t y = 0; y < out.cols(); ++y) {
      ParamPoly v = ParamPoly::constant(p, static_cast<int64_t>(params.t) * comp.derivative(x, y).value());
      for (uint32_t l = 1; l < p; ++l) {
        const uint32_t e = comp.classes[l - 1](x, y).value();
        if (e) v -= params.at(l).scale(e);
      }
      out(x, y) = std::move(v);
    }
  return out;
}

Matrix<Fq> assemble(int t, const std::vector<Fq>& point, const DunklComponents& comp) {
  const ExtField* F = point.at(0).field();
  Matrix<Fq> out(comp.derivative.rows(), comp.derivative.cols(), F->zero());
  for (size_t x = 0; x < out.rows(); ++x)
    for (size_t y = 0; y < out.cols(); ++y) {
      Fq v = F->from_int(static_cast<int64_t>(t) * comp.derivative(x, y).value());
      for (size_t l = 0; l < point.size(); ++l) {
        const uint32_t e = comp.classes[l](x, y).value();
        if (e) v -= point[l].scale(e);
      }
      out(x, y) = v;
    }
  return out;
}

Matrix<ParamPoly> dunkl_matrix(const ParamSet& params, const TauRep& tau, int k, uint32_t n) {
  if (k != 1 && k != 2) throw std::invalid_argument("Dunkl index must be 1 or 2");
  DunklFactory f(tau);
  return assemble(params, f.components(n)[k - 1]);
}

Fp central_sum(uint32_t lambda, const TauRep& tau) {
  const uint32_t p = tau.prime();
  const auto classes = enumerate_reflections(p);
  auto it = classes.find(lambda);
  if (it == classes.end()) throw std::invalid_argument("no reflection class for lambda");
  Matrix<Fp> sum(tau.dim(), tau.dim(), Fp::raw(0, p));
  for (const auto& s : it->second) sum = sum + tau.act(reflection_to_matrix(s));
  const Fp v = sum(0, 0);
  for (size_t r = 0; r < tau.dim(); ++r)
    for (size_t c = 0; c < tau.dim(); ++c)
      if (sum(r, c) != (r == c ? v : Fp::raw(0, p))) throw std::logic_error("class sum is not scalar");
  return v;
}

ParamPoly h_constant(const ParamSet& params, const TauRep& tau) {
  params.validate();
  ParamPoly h(params.p);
  for (uint32_t l = 1; l < params.p; ++l) h -= params.at(l).scale(central_sum(l, tau).value());
  return h;
}

std::string to_string(SingularFamily f) {
  switch (f) {
    case SingularFamily::DegreeOne: return "degree-one";
    case SingularFamily::PthPowers: return "pth-powers";
    case SingularFamily::DiagonalPair: return "diagonal-pair";
    case SingularFamily::CornerSquares: return "corner-squares";
    case SingularFamily::CubicPiece: return "cubic-piece";
    case SingularFamily::DiagonalPairFrobenius: return "diagonal-pair-frobenius";
    case SingularFamily::CornerSquaresFrobenius: return "corner-squares-frobenius";
    case SingularFamily::CubicFrobenius: return "cubic-frobenius";
    case SingularFamily::Antidiagonal: return "antidiagonal";
    case SingularFamily::Vk: return "vk";
    case SingularFamily::VkFrobenius: return "vk-frobenius";
  }
  return "?";
}

std::vector<SingularFamily> all_singular_families() {
  return {SingularFamily::DegreeOne,     SingularFamily::PthPowers,
          SingularFamily::DiagonalPair,  SingularFamily::CornerSquares,
          SingularFamily::CubicPiece,    SingularFamily::DiagonalPairFrobenius,
          SingularFamily::CornerSquaresFrobenius, SingularFamily::CubicFrobenius,
          SingularFamily::Antidiagonal,  SingularFamily::Vk,
          SingularFamily::VkFrobenius};
}

SingularFamily parse_singular_family(const std::string& s) {
  for (auto f : all_singular_families())
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown singular family '" + s + "'");
}

uint32_t family_degree(uint32_t p, SingularFamily f) {
  switch (f) {
    case SingularFamily::DegreeOne:
    case SingularFamily::DiagonalPair: return 1;
    case SingularFamily::CornerSquares: return 2;
    case SingularFamily::CubicPiece: return 3;
    case SingularFamily::PthPowers:
    case SingularFamily::DiagonalPairFrobenius: return p;
    case SingularFamily::CornerSquaresFrobenius: return 2 * p;
    case SingularFamily::CubicFrobenius: return 3 * p;
    case SingularFamily::Antidiagonal:
    case SingularFamily::Vk: return p - 1;
    case SingularFamily::VkFrobenius: return p * (p - 1);
  }
  return 0;
}

int family_t(SingularFamily f) {
  switch (f) {
    case SingularFamily::PthPowers:
    case SingularFamily::DiagonalPairFrobenius:
    case SingularFamily::CornerSquaresFrobenius:
    case SingularFamily::CubicFrobenius:
    case SingularFamily::VkFrobenius: return 1;
    default: return 0;
  }
}

std::vector<SingularFamily> family_context(SingularFamily f) {
  switch (f) {
    case SingularFamily::CornerSquares: return {SingularFamily::DiagonalPair};
    case SingularFamily::CubicPiece: return {SingularFamily::DiagonalPair, SingularFamily::CornerSquares};
    case SingularFamily::CornerSquaresFrobenius: return {SingularFamily::DiagonalPairFrobenius};
    case SingularFamily::CubicFrobenius:
      return {SingularFamily::DiagonalPairFrobenius, SingularFamily::CornerSquaresFrobenius};
    default: return {};
  }
}

bool family_applies(SingularFamily f, const TauRep& tau) {
  const uint32_t p = tau.prime(), i = tau.label().i;
  switch (f) {
    case SingularFamily::DegreeOne:
    case SingularFamily::PthPowers: return i + 3 <= p;
    case SingularFamily::DiagonalPair:
    case SingularFamily::CornerSquares:
    case SingularFamily::CubicPiece:
    case SingularFamily::DiagonalPairFrobenius:
    case SingularFamily::CornerSquaresFrobenius:
    case SingularFamily::CubicFrobenius: return i == p - 2;
    case SingularFamily::Antidiagonal:
    case SingularFamily::Vk:
    case SingularFamily::VkFrobenius: return i == p - 1;
  }
  return false;
}

VermaVectors explicit_singular_family(SingularFamily f, const TauRep& tau) {
  if (!family_applies(f, tau))
    throw std::invalid_argument("family " + to_string(f) + " does not apply to tau = (" +
                                std::to_string(tau.label().i) + ", " + std::to_string(tau.label().j) + ")");
  const uint32_t p = tau.prime(), i = tau.label().i, n = family_degree(p, f);
  VermaVectors out{n, Matrix<Fp>(0, piece_dim(tau, n), Fp::raw(0, p))};
  auto vec = [&] { return std::vector<Fp>(piece_dim(tau, n), Fp::raw(0, p)); };
  auto unit = [&](uint32_t a, uint32_t b) {
    auto v = vec();
    v[piece_index(tau, a, b)] = Fp::raw(1, p);
    out.rows.append_row(v);
  };
  // x_1^s (x) y_1 f + x_2^s (x) y_2 f over monomials f of S^{p-3} h
  auto diagonal = [&](uint32_t s) {
    for (uint32_t m = 0; m + 3 <= p; ++m) {
      auto v = vec();
      v[piece_index(tau, 0, m)] = Fp::raw(1, p);
      v[piece_index(tau, s, m + 1)] = Fp::raw(1, p);
      out.rows.append_row(v);
    }
  };
  // columns of matrix A as vectors, exponents scaled by s
  auto vk = [&](uint32_t s) {
    const auto A = matrix_A(p);
    for (uint32_t k = 0; k < p; ++k) {
      auto v = vec();
      for (uint32_t r = 0; r < p; ++r)
        for (const auto& [e, c] : A(r, k).terms()) v[piece_index(tau, s * e.second, r)] += c;
      out.rows.append_row(v);
    }
  };
  switch (f) {
    case SingularFamily::DegreeOne:
    case SingularFamily::CubicPiece:
      for (uint32_t a = 0; a <= n; ++a)
        for (uint32_t b = 0; b <= i; ++b) unit(a, b);
      break;
    case SingularFamily::PthPowers:
      for (uint32_t a : {0u, p})
        for (uint32_t b = 0; b <= i; ++b) unit(a, b);
      break;
    case SingularFamily::DiagonalPair: diagonal(1); break;
    case SingularFamily::DiagonalPairFrobenius: diagonal(p); break;
    case SingularFamily::CornerSquares:
    case SingularFamily::CornerSquaresFrobenius:
      unit(n, 0);
      unit(0, p - 2);
      break;
    case SingularFamily::CubicFrobenius:
      for (uint32_t e = 0; e <= 3; ++e)
        for (uint32_t b = 0; b <= i; ++b) unit(p * e, b);
      break;
    case SingularFamily::Antidiagonal: {
      auto v = vec();
      v[piece_index(tau, 0, p - 1)] = Fp::raw(1, p);
      v[piece_index(tau, p - 1, 0)] = Fp(-1, p);
      out.rows.append_row(v);
      break;
    }
    case SingularFamily::Vk: vk(1); break;
    case SingularFamily::VkFrobenius: vk(p); break;
  }
  return out;
}

namespace {

// Closure of the row span under the group.
Matrix<Fp> group_closure(const TauRep& tau, uint32_t n, Matrix<Fp> rows) {
  rref(rows);
  if (rows.rows() == 0) return rows;
  std::vector<Matrix<Fp>> acts;
  for (const auto& g : generators(tau.prime())) acts.push_back(piece_action(tau, n, g).transpose());
  while (true) {
    Matrix<Fp> all = rows;
    for (const auto& a : acts) all.append_rows(rows * a);
    rref(all);
    if (all.rows() == rows.rows()) return rows;
    rows = std::move(all);
  }
}

template <class S>
void reduce_modulo(std::vector<S>& v, const Matrix<Fp>& basis, const std::vector<size_t>& pivots) {
  for (size_t l = 0; l < pivots.size(); ++l) {
    const S f = v[pivots[l]];
    if (f.is_zero()) continue;
    for (size_t c = 0; c < basis.cols(); ++c) {
      const uint32_t e = basis(l, c).value();
      if (e) v[c] -= f.scale(e);
    }
  }
}

std::vector<Fp> apply(const Matrix<Fp>& m, const Fp* v) {
  std::vector<Fp> out(m.rows(), m.zero());
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c)
      if (!v[c].is_zero()) out[r] += m(r, c) * v[c];
  return out;
}

}  // namespace

Matrix<Fp> submodule_span(const TauRep& tau, const std::vector<VermaVectors>& generators, uint32_t n) {
  const uint32_t p = tau.prime();
  const size_t d = tau.dim();
  Matrix<Fp> out(0, piece_dim(tau, n), Fp::raw(0, p));
  for (const auto& gen : generators) {
    if (gen.degree > n || gen.rows.rows() == 0) continue;
    const auto base = group_closure(tau, gen.degree, gen.rows);
    const uint32_t shift = n - gen.degree;
    for (uint32_t e = 0; e <= shift; ++e)
      for (size_t r = 0; r < base.rows(); ++r) {
        std::vector<Fp> v(out.cols(), Fp::raw(0, p));
        // x_1^{shift-e} x_2^e raises the x_2 exponent by e.
        for (size_t c = 0; c < base.cols(); ++c)
          if (!base(r, c).is_zero()) v[(c / d + e) * d + c % d] = base(r, c);
        out.append_row(v);
      }
  }
  rref(out);
  return out;
}

bool check_singular(const ParamSet& params, const TauRep& tau, const VermaVectors& v,
                    const std::vector<VermaVectors>& modulo, const GenericBackend& backend) {
  params.validate();
  backend.validate();
  if (v.degree == 0 || v.rows.rows() == 0) return true;
  if (v.rows.cols() != piece_dim(tau, v.degree)) throw std::invalid_argument("vector width does not match the piece");
  const uint32_t p = params.p;
  DunklFactory factory(tau);
  const auto comps = factory.components(v.degree);
  Matrix<Fp> W = submodule_span(tau, modulo, v.degree - 1);
  const auto pivots = rref(W);

  std::vector<std::vector<Fq>> points;
  if (backend.mode == BackendMode::Random) {
    const ExtField& F = ExtField::get(p, backend.ext_degree);
    for (unsigned s = 0; s < backend.samples; ++s) {
      auto rng = sample_rng(backend.seed, s);
      const auto pt = random_parameter_point(F, rng);
      std::vector<Fq> cval;
      for (uint32_t l = 1; l < p; ++l) cval.push_back(params.at(l).evaluate(pt));
      points.push_back(cval);
    }
  }

  for (size_t r = 0; r < v.rows.rows(); ++r)
    for (const auto& comp : comps) {
      const auto u0 = apply(comp.derivative, v.rows.row(r));
      std::vector<std::vector<Fp>> ul;
      for (const auto& m : comp.classes) ul.push_back(apply(m, v.rows.row(r)));
      if (backend.mode == BackendMode::Exact) {
        std::vector<ParamPoly> w(u0.size(), ParamPoly(p));
        for (size_t x = 0; x < w.size(); ++x) {
          w[x] = ParamPoly::constant(p, static_cast<int64_t>(params.t) * u0[x].value());
          for (uint32_t l = 1; l < p; ++l)
            if (!ul[l - 1][x].is_zero()) w[x] -= params.at(l).scale(ul[l - 1][x].value());
        }
        reduce_modulo(w, W, pivots);
        for (const auto& x : w)
          if (!x.is_zero()) return false;
        continue;
      }
      for (const auto& cval : points) {
        const ExtField* F = cval.at(0).field();
        std::vector<Fq> w(u0.size(), F->zero());
        for (size_t x = 0; x < w.size(); ++x) {
          w[x] = F->from_int(static_cast<int64_t>(params.t) * u0[x].value());
          for (uint32_t l = 1; l < p; ++l)
            if (!ul[l - 1][x].is_zero()) w[x] -= cval[l - 1].scale(ul[l - 1][x].value());
        }
        reduce_modulo(w, W, pivots);
        for (const auto& x : w)
          if (!x.is_zero()) return false;
      }
    }
  return true;
}

SingularSpace singular_space(const ParamSet& params, const TauRep& tau, uint32_t n,
                             const std::vector<VermaVectors>& modulo, const GenericBackend& backend) {
  params.validate();
  const uint32_t p = params.p;
  SingularSpace out;
  Matrix<ParamPoly> stacked(0, piece_dim(tau, n), ParamPoly(p));
  if (n > 0) {
    DunklFactory factory(tau);
    const auto comps = factory.components(n);
    Matrix<Fp> W = submodule_span(tau, modulo, n - 1);
    const auto pivots = rref(W);
    std::vector<bool> is_pivot(piece_dim(tau, n - 1), false);
    for (auto c : pivots) is_pivot[c] = true;
    for (const auto& comp : comps) {
      const auto D = assemble(params, comp).transpose();  // rows are images of basis vectors
      Matrix<ParamPoly> reduced(0, D.cols(), ParamPoly(p));
      for (size_t r = 0; r < D.rows(); ++r) {
        std::vector<ParamPoly> col(D.row(r), D.row(r) + D.cols());
        reduce_modulo(col, W, pivots);
        reduced.append_row(col);
      }
      const auto R = reduced.transpose();
      for (size_t x = 0; x < R.rows(); ++x)
        if (!is_pivot[x]) stacked.append_row(std::vector<ParamPoly>(R.row(x), R.row(x) + R.cols()));
    }
  }
  out.kernel = generic_kernel(stacked, backend);
  out.kernel_dimension = out.kernel.dimension;
  out.submodule_dimension = submodule_span(tau, modulo, n).rows();
  out.dimension = out.kernel_dimension - out.submodule_dimension;
  return out;
}

}  // namespace cherednik
