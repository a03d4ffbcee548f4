#include "cherednik/contraform.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace cherednik {

std::string to_string(CharacterStatus s) { return s == CharacterStatus::Ok ? "ok" : "inconclusive"; }

uint32_t degree_cap(uint32_t p, int t) {
  const uint32_t top = (p * p - 1) + (p * p - p);
  return t == 0 ? top - 2 : p * top - 2;
}

namespace {

Fp times(const Fp& c, const Fp& x) { return c * x; }
Fq times(const Fq& c, const Fp& x) { return c.scale(x.value()); }
ParamPoly times(const ParamPoly& c, const Fp& x) { return c.scale(x.value()); }

template <class S>
Matrix<S> lift(const Matrix<Fp>& m, const S& zero) {
  return map_matrix(m, zero, [&](const Fp& x) { return embed(x, zero); });
}

bool all_prime(const Matrix<Fq>& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).in_prime_field()) return false;
  return true;
}

Matrix<Fp> to_prime(const Matrix<Fq>& m, uint32_t p) {
  return map_matrix(m, Fp::raw(0, p), [](const Fq& x) { return x.to_fp(); });
}

template <class S>
Matrix<S> rref_copy(Matrix<S> m) {
  rref(m);
  return m;
}

// Rows v M^T for the two multiplications by x_1 and x_2, degree n-1 -> n.
template <class S>
Matrix<S> shift_up(const TauRep& tau, uint32_t n, const Matrix<S>& rows) {
  Matrix<S> out(0, piece_dim(tau, n), rows.zero());
  if (rows.rows() == 0) return out;
  for (uint32_t e : {1u, 0u}) out.append_rows(rows * lift(monomial_multiplication(tau, n - 1, 1, e).transpose(), rows.zero()));
  return out;
}

size_t split_weight(const TauRep& tau, uint32_t n, size_t index) {
  const int64_t m = tau.prime() - 1, d = tau.dim(), i = tau.label().i, j = tau.label().j;
  const int64_t a = static_cast<int64_t>(index) / d, b = static_cast<int64_t>(index) % d;
  auto md = [m](int64_t v) { return static_cast<size_t>(((v % m) + m) % m); };
  return md(-(static_cast<int64_t>(n) - a) + (i - b) + j) * static_cast<size_t>(m) + md(-a + b + j);
}

// Non-split eigenvalue exponents of the whole degree-n piece.
std::vector<int64_t> piece_nonsplit(const TauRep& tau, uint32_t n) {
  const int64_t p = tau.prime(), q1 = p * p - 1, i = tau.label().i, j = tau.label().j;
  std::vector<int64_t> out(static_cast<size_t>(q1), 0);
  for (int64_t a = 0; a <= n; ++a) {
    const int64_t ex = -(static_cast<int64_t>(n) - a) - p * a;
    for (int64_t b = 0; b <= i; ++b) {
      const int64_t e = ex + b + p * (i - b) + (1 + p) * j;
      out[static_cast<size_t>(((e % q1) + q1) % q1)] += 1;
    }
  }
  return out;
}

// x - s (deg 1) or x^2 - s x + nn (deg 2): minimal polynomial over F_p of the
// eigenvalues eta^e, e in exps.
struct SingerOrbit {
  unsigned deg;
  Fp s, nn;
  std::vector<size_t> exps;
};

struct SingerData {
  GroupElement g;
  std::vector<SingerOrbit> orbits;
};

const SingerData& singer_data(uint32_t p) {
  static std::mutex mu;
  static std::map<uint32_t, SingerData> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  SingerData d{singer_element(p), {}};
  const Fq eta = eigenvalues(d.g).first;
  const size_t q1 = static_cast<size_t>(p) * p - 1;
  std::vector<bool> seen(q1, false);
  for (size_t e = 0; e < q1; ++e) {
    if (seen[e]) continue;
    const Fq r = eta.pow(e);
    if (r.in_prime_field()) {
      d.orbits.push_back({1, r.to_fp(), Fp::raw(0, p), {e}});
      seen[e] = true;
    } else {
      const size_t e2 = e * p % q1;
      d.orbits.push_back({2, (r + r.pow(p)).to_fp(), r.pow(p + 1).to_fp(), {e, e2}});
      seen[e] = seen[e2] = true;
    }
  }
  return cache.emplace(p, std::move(d)).first->second;
}

// Weights of the span of `rows` (functionals = false) or of the quotient by
// their common kernel (functionals = true).
template <class S>
TorusWeights torus_weights(const TauRep& tau, uint32_t n, Matrix<S> rows, bool functionals) {
  const uint32_t p = tau.prime();
  if (rows.cols() != piece_dim(tau, n)) throw std::invalid_argument("subspace width does not match the piece");
  TorusWeights w(p);
  const auto pivots = rref(rows);
  const size_t r = rows.rows(), dim = rows.cols();
  if (r == 0) return w;
  const S zero = rows.zero();
  // The torus acts diagonally, so weight spaces are cut out by columns.
  std::vector<std::vector<size_t>> cols(w.split.size());
  for (size_t x = 0; x < dim; ++x) cols[split_weight(tau, n, x)].push_back(x);
  for (size_t k = 0; k < cols.size(); ++k) {
    if (cols[k].empty()) continue;
    Matrix<S> sub(r, cols[k].size(), zero);
    for (size_t i = 0; i < r; ++i)
      for (size_t c = 0; c < cols[k].size(); ++c) sub(i, c) = rows(i, cols[k][c]);
    w.split[k] = static_cast<int64_t>(rank(sub));
  }
  const auto& sd = singer_data(p);
  Matrix<Fp> rho = piece_action(tau, n, sd.g);
  if (!functionals) rho = rho.transpose();
  const Matrix<S> image = rows * lift(rho, zero);
  Matrix<S> g(r, r, zero);
  for (size_t i = 0; i < r; ++i)
    for (size_t l = 0; l < r; ++l) g(i, l) = image(i, pivots[l]);
  const auto ambient = piece_nonsplit(tau, n);
  const auto id = Matrix<S>::identity(r, zero);
  for (const auto& orbit : sd.orbits) {
    bool present = false;
    for (auto e : orbit.exps) present = present || ambient[e] > 0;
    if (!present) continue;
    Matrix<S> f(r, r, zero);
    if (orbit.deg == 1) {
      f = g;
      for (size_t i = 0; i < r; ++i) f(i, i) -= embed(orbit.s, zero);
    } else {
      f = g * g;
      for (size_t i = 0; i < r; ++i)
        for (size_t l = 0; l < r; ++l) f(i, l) -= times(g(i, l), orbit.s);
      for (size_t i = 0; i < r; ++i) f(i, i) += embed(orbit.nn, zero);
    }
    const size_t ker = r - rank(f);
    if (ker % orbit.deg) throw std::logic_error("non-split torus: eigenspace dimension not divisible by degree");
    for (auto e : orbit.exps) w.nonsplit[e] = static_cast<int64_t>(ker / orbit.deg);
  }
  int64_t total = 0;
  for (auto x : w.nonsplit) total += x;
  if (total != static_cast<int64_t>(r)) throw std::logic_error("non-split torus: eigenvalues do not account for the space");
  (void)id;
  return w;
}

// Generic-rank data of one filtration step before the rows are fixed.
struct Blocks {
  Matrix<Fp> W;  // RREF of all component rows
  std::vector<size_t> pivots;
  // coords[k][0] derivative part (t = 1), coords[k][1 + l] class part, r x w
  std::array<std::vector<Matrix<Fp>>, 2> coords;
};

class Runner {
 public:
  Runner(const ParamSet& params, const TauRep& tau, bool certify, std::vector<Fq> point, std::mt19937_64 rng,
         uint32_t limit)
      : params_(params),
        tau_(tau),
        p_(tau.prime()),
        certify_(certify),
        point_(std::move(point)),
        rng_(rng),
        limit_(limit),
        factory_(tau),
        ring_(tau.prime()) {
    if (!point_.empty()) set_point(point_);
    verma_ = ring_.verma_character(tau.label(), limit + 1);
  }

  KernelFiltration run() {
    KernelFiltration out;
    out.p = p_;
    out.t = params_.t;
    out.tau = tau_.label();
    const size_t d = tau_.dim();
    pi_ = Matrix<Fp>::identity(d, Fp::raw(0, p_));
    kernel_ = Matrix<Fp>(0, d, Fp::raw(0, p_));
    FiltrationDegree d0;
    d0.degree = 0;
    d0.piece_dim = d;
    d0.rank = d;
    d0.kernel = kernel_;
    d0.quotient = verma_.coeff(0);
    d0.new_generators = K0Element(p_);
    out.degrees.push_back(d0);
    bool finished = false;
    for (uint32_t n = 1; n <= limit_ && !finished; ++n) {
      FiltrationDegree deg;
      if (!step(n, deg, out)) {
        out.status = CharacterStatus::Inconclusive;
        out.notes.push_back("degree " + std::to_string(n) + ": rank could not be certified");
        break;
      }
      finished = deg.rank == 0;
      out.degrees.push_back(std::move(deg));
    }
    if (!finished && out.status == CharacterStatus::Ok) {
      out.status = CharacterStatus::Inconclusive;
      out.notes.push_back("no zero rank up to degree " + std::to_string(limit_));
    }
    if (!point_.empty()) out.sample_point = point_;
    return out;
  }

 private:
  void set_point(const std::vector<Fq>& point) {
    point_ = point;
    cvals_.clear();
    for (const auto& c : params_.c) cvals_.push_back(c.evaluate(point_));
  }

  template <class S>
  Matrix<S> coeff(const Blocks& b, const std::vector<S>& c, const S& zero) const {
    const size_t r = b.coords[0][0].rows(), w = b.W.rows();
    Matrix<S> out(2 * r, w, zero);
    for (int k = 0; k < 2; ++k)
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < w; ++j) {
          S v = zero;
          if (params_.t) v = embed(b.coords[k][0](i, j), zero);
          for (size_t l = 0; l < c.size(); ++l) {
            const Fp& x = b.coords[k][1 + l](i, j);
            if (!x.is_zero()) v -= times(c[l], x);
          }
          out(k * r + i, j) = v;
        }
    return out;
  }

  std::vector<Fq> random_point() {
    const ExtField& F = ExtField::get(p_, 16);
    return random_parameter_point(F, rng_);
  }

  bool full_rank_somewhere(const Blocks& b) {
    const size_t w = b.W.rows();
    std::uniform_int_distribution<uint32_t> val(0, p_ - 1);
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::vector<Fp> vp(p_ - 1, Fp::raw(0, p_));
      for (auto& x : vp) x = Fp::raw(val(rng_), p_);
      std::vector<Fp> c;
      for (const auto& cl : params_.c) c.push_back(cl.evaluate(vp));
      if (rank(coeff(b, c, Fp::raw(0, p_))) == w) return true;
    }
    if (!certify_) return rank(coeff(b, cvals_, cvals_.at(0).field()->zero())) == w;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const auto pt = random_point();
      std::vector<Fq> c;
      for (const auto& cl : params_.c) c.push_back(cl.evaluate(pt));
      if (rank(coeff(b, c, pt.at(0).field()->zero())) == w) return true;
    }
    return false;
  }

  // Kills every Dunkl component: singular for all c.
  Matrix<Fp> absolutely_singular(const std::array<DunklComponents, 2>& comps, size_t dim) const {
    Matrix<Fp> all(0, dim, Fp::raw(0, p_));
    for (const auto& c : comps) {
      if (params_.t) all.append_rows(c.derivative);
      for (const auto& m : c.classes) all.append_rows(m);
    }
    return rref_copy(nullspace(all));
  }

  void finish_rational(uint32_t n, FiltrationDegree& deg, Matrix<Fp> pi) {
    rref(pi);
    deg.rational = true;
    deg.rank = pi.rows();
    deg.kernel = rref_copy(nullspace(pi));
    deg.quotient = quotient_class(tau_, n, pi);
    rational_ = true;
    pi_ = std::move(pi);
  }

  void finish_sampled(uint32_t n, FiltrationDegree& deg, Matrix<Fq> pi, Matrix<Fq> kernel) {
    rref(pi);
    deg.rational = false;
    deg.rank = pi.rows();
    deg.sample_kernel = rref_copy(std::move(kernel));
    deg.quotient = quotient_class(tau_, n, pi);
    rational_ = false;
    pi_s_ = std::move(pi);
  }

  bool rational_step(uint32_t n, const std::array<DunklComponents, 2>& comps, FiltrationDegree& deg) {
    const size_t dim = piece_dim(tau_, n), r = pi_.rows();
    Blocks b;
    Matrix<Fp> all(0, dim, Fp::raw(0, p_));
    std::array<std::vector<Matrix<Fp>>, 2> prods;
    for (int k = 0; k < 2; ++k) {
      prods[k].push_back(params_.t ? pi_ * comps[k].derivative : Matrix<Fp>(r, dim, Fp::raw(0, p_)));
      for (const auto& m : comps[k].classes) prods[k].push_back(pi_ * m);
      for (const auto& m : prods[k]) all.append_rows(m);
    }
    b.W = all;
    b.pivots = rref(b.W);
    const size_t w = b.W.rows();
    if (w == 0) {
      finish_rational(n, deg, b.W);
      return true;
    }
    for (int k = 0; k < 2; ++k)
      for (const auto& m : prods[k]) {
        Matrix<Fp> c(r, w, Fp::raw(0, p_));
        for (size_t i = 0; i < r; ++i)
          for (size_t j = 0; j < w; ++j) c(i, j) = m(i, b.pivots[j]);
        b.coords[k].push_back(std::move(c));
      }
    if (full_rank_somewhere(b)) {
      finish_rational(n, deg, b.W);
      return true;
    }
    if (!certify_) {
      Matrix<Fq> c = coeff(b, cvals_, cvals_.at(0).field()->zero());
      rref(c);
      Matrix<Fq> pi = c * lift(b.W, c.zero());
      rref(pi);
      if (all_prime(pi)) {
        finish_rational(n, deg, to_prime(pi, p_));
      } else {
        auto ker = nullspace(pi);
        finish_sampled(n, deg, std::move(pi), std::move(ker));
      }
      return true;
    }
    // Exact: the kernel of the coefficient matrix over F_p(c).
    const Matrix<ParamPoly> C = coeff(b, params_.c, ParamPoly(p_));
    const Matrix<ParamPoly> Z = bareiss_nullspace(C);
    if (Z.rows() == 0) {
      finish_rational(n, deg, b.W);
      return true;
    }
    const Matrix<Fp> fixed = nullspace(b.W);
    Matrix<ParamPoly> lifts(Z.rows(), dim, ParamPoly(p_));
    for (size_t i = 0; i < Z.rows(); ++i)
      for (size_t j = 0; j < w; ++j) lifts(i, b.pivots[j]) = Z(i, j);
    for (int attempt = 0; attempt < 8; ++attempt) {
      set_point(random_point());
      Matrix<Fq> ev = evaluate(lifts, point_);
      if (rank(ev) < Z.rows()) continue;
      rref(ev);
      if (all_prime(ev) && spans_exactly(lifts, to_prime(ev, p_))) {
        Matrix<Fp> kernel = vstack(fixed, to_prime(ev, p_));
        finish_rational(n, deg, rref_copy(nullspace(kernel)));
        return true;
      }
      Matrix<Fq> kernel = vstack(lift(fixed, ev.zero()), ev);
      auto pi = nullspace(kernel);
      finish_sampled(n, deg, std::move(pi), std::move(kernel));
      return true;
    }
    return false;
  }

  // Every row of `v` lies in the F_p(c)-span of the RREF rows of `r`.
  bool spans_exactly(const Matrix<ParamPoly>& v, Matrix<Fp> r) const {
    const auto piv = rref(r);
    for (size_t i = 0; i < v.rows(); ++i) {
      std::vector<ParamPoly> row(v.row(i), v.row(i) + v.cols());
      for (size_t l = 0; l < piv.size(); ++l) {
        const ParamPoly f = row[piv[l]];
        if (f.is_zero()) continue;
        for (size_t j = 0; j < v.cols(); ++j)
          if (!r(l, j).is_zero()) row[j] -= times(f, r(l, j));
      }
      for (const auto& x : row)
        if (!x.is_zero()) return false;
    }
    return true;
  }

  bool sampled_step(uint32_t n, const std::array<DunklComponents, 2>& comps, FiltrationDegree& deg,
                    const Matrix<Fq>& prev_kernel) {
    const size_t dim = piece_dim(tau_, n);
    Matrix<Fq> rows(0, dim, pi_s_.zero());
    for (const auto& c : comps) rows.append_rows(pi_s_ * assemble(params_.t, cvals_, c));
    rref(rows);
    auto kernel = nullspace(rows);
    if (certify_) {
      // Certified kernel vectors: the submodule generated so far plus vectors
      // killed by every Dunkl component.  They lie in K_n for generic c, so
      // matching dimensions pin the generic rank.
      Matrix<Fq> known = shift_up(tau_, n, prev_kernel);
      known.append_rows(lift(absolutely_singular(comps, dim), pi_s_.zero()));
      if (rank(known) != kernel.rows()) return false;
    }
    finish_sampled(n, deg, std::move(rows), std::move(kernel));
    return true;
  }

  bool step(uint32_t n, FiltrationDegree& deg, KernelFiltration& out) {
    const auto comps = factory_.components(n);
    deg.degree = n;
    deg.piece_dim = piece_dim(tau_, n);
    check_piece_weights(n);
    // Previous kernel, for the generated part and the certificate.
    const auto& prev = out.degrees.back();
    const bool prev_rational = prev.rational;
    bool ok = rational_ ? rational_step(n, comps, deg) : sampled_step(n, comps, deg, prev.sample_kernel);
    if (!ok) return false;
    K0Element generated(p_);
    if (prev_rational) {
      const auto x = rref_copy(shift_up(tau_, n, prev.kernel));
      deg.generated_dim = x.rows();
      generated = subspace_class(tau_, n, x);
    } else {
      const auto x = rref_copy(shift_up(tau_, n, prev.sample_kernel));
      deg.generated_dim = x.rows();
      generated = subspace_class(tau_, n, x);
    }
    deg.new_generators = verma_.coeff(n) - deg.quotient - generated;
    if (!deg.new_generators.is_nonnegative())
      throw std::logic_error("kernel generators with a negative class in degree " + std::to_string(n));
    return true;
  }

  void check_piece_weights(uint32_t n) const {
    TorusWeights w(p_);
    for (size_t x = 0; x < piece_dim(tau_, n); ++x) w.split[split_weight(tau_, n, x)] += 1;
    w.nonsplit = piece_nonsplit(tau_, n);
    const auto expected = weights_of(verma_.coeff(n));
    if (w.split != expected.split || w.nonsplit != expected.nonsplit)
      throw std::logic_error("torus weights of the degree-" + std::to_string(n) + " piece disagree with its class");
  }

  const ParamSet& params_;
  TauRep tau_;
  uint32_t p_;
  bool certify_;
  std::vector<Fq> point_;
  std::vector<Fq> cvals_;
  std::mt19937_64 rng_;
  uint32_t limit_;
  DunklFactory factory_;
  K0Ring ring_;
  CharacterSeries verma_;
  bool rational_ = true;
  Matrix<Fp> pi_, kernel_;
  Matrix<Fq> pi_s_;
};

std::vector<size_t> rank_profile(const KernelFiltration& f, size_t len) {
  std::vector<size_t> out(len, 0);
  for (const auto& d : f.degrees)
    if (d.degree < len) out[d.degree] = d.rank;
  return out;
}

}  // namespace

template <class S>
K0Element subspace_class(const TauRep& tau, uint32_t n, const Matrix<S>& basis) {
  return decompose_weights(torus_weights(tau, n, basis, false));
}

template <class S>
K0Element quotient_class(const TauRep& tau, uint32_t n, const Matrix<S>& functionals) {
  return decompose_weights(torus_weights(tau, n, functionals, true));
}

template K0Element subspace_class<Fp>(const TauRep&, uint32_t, const Matrix<Fp>&);
template K0Element subspace_class<Fq>(const TauRep&, uint32_t, const Matrix<Fq>&);
template K0Element quotient_class<Fp>(const TauRep&, uint32_t, const Matrix<Fp>&);
template K0Element quotient_class<Fq>(const TauRep&, uint32_t, const Matrix<Fq>&);

KernelFiltration kernel_filtration(const ParamSet& params, const TauRep& tau, const GenericBackend& backend,
                                   std::optional<uint32_t> max_degree) {
  params.validate();
  backend.validate();
  if (params.p != tau.prime()) throw std::invalid_argument("parameter and representation primes differ");
  uint32_t limit = degree_cap(params.p, params.t) + 1;
  if (max_degree) limit = std::min(limit, *max_degree);
  if (backend.mode == BackendMode::Exact) {
    Runner run(params, tau, true, {}, std::mt19937_64(0x5eedULL + params.p), limit);
    return run.run();
  }
  if (backend.ext_degree % 2) throw std::invalid_argument("random backend needs an even extension degree");
  const ExtField& F = ExtField::get(params.p, backend.ext_degree);
  std::vector<KernelFiltration> runs;
  size_t len = 0;
  for (unsigned s = 0; s < backend.samples; ++s) {
    auto rng = sample_rng(backend.seed, s);
    auto point = random_parameter_point(F, rng);
    Runner run(params, tau, false, point, rng, limit);
    runs.push_back(run.run());
    len = std::max(len, runs.back().degrees.size());
  }
  std::vector<std::vector<size_t>> profiles;
  std::vector<size_t> best(len, 0);
  for (const auto& r : runs) {
    profiles.push_back(rank_profile(r, len));
    for (size_t n = 0; n < len; ++n) best[n] = std::max(best[n], profiles.back()[n]);
  }
  bool disagree = false;
  for (const auto& pr : profiles) disagree = disagree || pr != profiles.front();
  size_t pick = runs.size();
  for (size_t s = 0; s < runs.size() && pick == runs.size(); ++s)
    if (profiles[s] == best) pick = s;
  KernelFiltration out;
  if (pick == runs.size()) {
    size_t best_total = 0;
    pick = 0;
    for (size_t s = 0; s < runs.size(); ++s) {
      size_t total = 0;
      for (auto x : profiles[s]) total += x;
      if (total > best_total) best_total = total, pick = s;
    }
    out = runs[pick];
    out.notes.push_back("no sample attains the maximal rank in every degree");
  } else {
    out = runs[pick];
  }
  out.sample_ranks = profiles;
  out.warning = disagree;
  if (disagree) out.notes.push_back("samples disagree on ranks; using sample " + std::to_string(pick));
  return out;
}

IrreducibleCharacter irreducible_character(const ParamSet& params, const TauRep& tau, const GenericBackend& backend,
                                           std::optional<uint32_t> max_degree) {
  IrreducibleCharacter out;
  out.filtration = kernel_filtration(params, tau, backend, max_degree);
  out.status = out.filtration.status;
  out.character = CharacterSeries(tau.prime());
  for (const auto& d : out.filtration.degrees) {
    out.character.set(d.degree, d.quotient);
    out.hilbert.push_back(static_cast<int64_t>(d.rank));
  }
  out.character.trim();
  while (!out.hilbert.empty() && out.hilbert.back() == 0) out.hilbert.pop_back();
  return out;
}

ReducedCharacter reduced_character(K0Ring& ring, const CharacterSeries& chi) {
  const uint32_t p = ring.prime();
  if (chi.prime() != p) throw std::invalid_argument("character over a different prime");
  const CharacterSeries R = ring.restricted_sym_character();
  const int top = chi.degree();
  const int rdeg = R.degree();
  CharacterSeries Q(p);
  for (int n = 0; n <= top; ++n) {
    K0Element v = chi.coeff(n);
    for (int k = 1; k <= std::min(n, rdeg); ++k) {
      const auto q = Q.coeff(n - k);
      if (!q.is_zero()) v -= ring.tensor_reduce(R.coeff(k), q);
    }
    Q.set(n, v);
  }
  Q.trim();
  if (Q.degree() + rdeg != top || ring.series_product(Q, R, top + rdeg) != chi)
    throw std::runtime_error("character is not divisible by the restricted symmetric algebra");
  ReducedCharacter out;
  out.character = CharacterSeries(p);
  for (int n = 0; n <= Q.degree(); ++n) {
    const auto q = Q.coeff(n);
    if (n % p) {
      if (!q.is_zero()) throw std::runtime_error("reduced character has a term in degree " + std::to_string(n));
      continue;
    }
    out.character.set(n / p, q);
  }
  out.character.trim();
  out.hilbert = out.character.hilbert();
  int64_t total = 0;
  for (auto x : out.hilbert) total += x;
  const int64_t order = static_cast<int64_t>(p * p - 1) * (p * p - p);
  if (total < 1 || total > order) throw std::runtime_error("reduced dimension outside [1, |G|]");
  return out;
}

std::vector<Matrix<ParamPoly>> form_matrices(const ParamSet& params, const TauRep& tau, uint32_t n) {
  params.validate();
  const uint32_t p = tau.prime();
  const size_t d = tau.dim();
  const ParamSet bar = params.inverse_classes();
  DunklFactory dual(tau, ModuleSide::Dual);
  std::vector<Matrix<ParamPoly>> out{Matrix<ParamPoly>::identity(d, ParamPoly(p))};
  for (uint32_t m = 1; m <= n; ++m) {
    const auto comps = dual.components(m);
    std::array<Matrix<ParamPoly>, 2> prod;
    for (int k = 0; k < 2; ++k) prod[k] = out.back() * assemble(bar, comps[k]);
    const size_t dim = piece_dim(tau, m);
    Matrix<ParamPoly> B(dim, dim, ParamPoly(p));
    for (uint32_t a = 0; a <= m; ++a)
      for (uint32_t b = 0; b < d; ++b) {
        // B(x_k f', h) = B(f', D_{x_k} h)
        const int k = a < m ? 0 : 1;
        const size_t src = piece_index(tau, a < m ? a : a - 1, b), dst = piece_index(tau, a, b);
        for (size_t h = 0; h < dim; ++h) B(dst, h) = prod[k](src, h);
      }
    out.push_back(std::move(B));
  }
  return out;
}

FormCrosscheck form_matrix_crosscheck(const ParamSet& params, const TauRep& tau, const KernelFiltration& filtration,
                                      uint32_t n) {
  const uint32_t p = tau.prime();
  const auto Bs = form_matrices(params, tau, n);
  const auto& B = Bs.back();
  FormCrosscheck out;
  const FiltrationDegree* deg = nullptr;
  for (const auto& d : filtration.degrees)
    if (d.degree == n) deg = &d;
  const bool beyond = deg == nullptr && !filtration.degrees.empty() && filtration.degrees.back().rank == 0 &&
                      filtration.degrees.back().degree < n;
  if (deg == nullptr && !beyond) throw std::invalid_argument("filtration does not reach degree " + std::to_string(n));
  const size_t expected_rank = deg ? deg->rank : 0;
  size_t radical_dim = B.rows();
  if (!deg) {
    out.radical_matches = B.is_zero();
  } else if (deg->rational) {
    radical_dim = deg->kernel.rows();
    out.radical_matches = radical_dim == 0 || (lift(deg->kernel, ParamPoly(p)) * B).is_zero();
  } else {
    radical_dim = deg->sample_kernel.rows();
    out.radical_matches = (deg->sample_kernel * evaluate(B, filtration.sample_point)).is_zero();
  }
  // An evaluation bounds the rank from below; an exact radical of dimension k
  // bounds it by dim - k from above.
  std::mt19937_64 rng(0x6a3dULL + n);
  const size_t lower = rank(evaluate(B, random_parameter_point(ExtField::get(p, 16), rng)));
  const bool exact_radical = out.radical_matches && (!deg || deg->rational);
  out.rank = exact_radical && lower == B.rows() - radical_dim ? lower : generic_rank(B, GenericBackend::exact()).rank;
  out.rank_matches = out.rank == expected_rank;
  out.contravariant = true;
  if (n > 0) {
    DunklFactory verma(tau);
    const auto comps = verma.components(n);
    for (int k = 0; k < 2; ++k) {
      const auto mult = lift(monomial_multiplication(tau, n - 1, 1, k == 0 ? 1 : 0), ParamPoly(p));
      const auto D = assemble(params, comps[k]);
      out.contravariant = out.contravariant && B * mult == D.transpose() * Bs[n - 1];
    }
  }
  return out;
}

BlockReport block_consistency_check(const ParamSet& params, const TauRep& tau, const KernelFiltration& filtration) {
  BlockReport out;
  const uint32_t p = tau.prime();
  const auto label = tau.label();
  const ParamPoly h = h_constant(params, tau);
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.violations.push_back(msg);
  };
  for (const auto& d : filtration.degrees) {
    if (d.degree == 0 || d.new_generators.is_zero()) continue;
    const uint32_t n = d.degree;
    out.generators.emplace_back(n, d.new_generators);
    const std::string at = "degree " + std::to_string(n) + ": ";
    if (!d.new_generators.is_nonnegative()) fail(at + "negative generator class " + d.new_generators.str());
    if (params.t == 1 && n % p) fail(at + "new generators in a degree not divisible by p");
    const ParamPoly expected = h + ParamPoly::constant(p, static_cast<int64_t>(params.t) * n);
    for (const auto& [sigma, mult] : d.new_generators.terms()) {
      const std::string name = "(" + std::to_string(sigma.i) + ", " + std::to_string(sigma.j) + ")";
      if (h_constant(params, TauRep(p, sigma.i, sigma.j)) != expected) fail(at + "h_c mismatch for " + name);
      if (label.i == p - 1 && sigma != label) fail(at + "constituent " + name + " outside the block of tau");
    }
  }
  return out;
}

}  // namespace cherednik
