#include "cherednik/k0ring.hpp"

#include <boost/rational.hpp>
#include <sstream>
#include <stdexcept>

namespace cherednik {

uint32_t det_exponent(uint32_t p, int64_t j) {
  const int64_t m = p - 1;
  return static_cast<uint32_t>(((j % m) + m) % m);
}

K0Element::K0Element(uint32_t p) : p_(p), m_(static_cast<size_t>(p) * (p - 1), 0) {}

K0Element K0Element::label(uint32_t p, uint32_t i, int64_t j) {
  if (i >= p) throw std::invalid_argument("irreducible label requires i <= p-1");
  K0Element e(p);
  e.mult(i, det_exponent(p, j)) = 1;
  return e;
}

size_t K0Element::index(uint32_t i, uint32_t j) const {
  if (i >= p_ || j >= p_ - 1) throw std::out_of_range("irreducible label out of range");
  return static_cast<size_t>(i) * (p_ - 1) + j;
}

bool K0Element::is_zero() const {
  for (auto x : m_)
    if (x) return false;
  return true;
}

bool K0Element::is_nonnegative() const {
  for (auto x : m_)
    if (x < 0) return false;
  return true;
}

int64_t K0Element::dimension() const {
  int64_t d = 0;
  for (uint32_t i = 0; i < p_; ++i)
    for (uint32_t j = 0; j + 1 < p_; ++j) d += mult(i, j) * (i + 1);
  return d;
}

std::vector<std::pair<IrredLabel, int64_t>> K0Element::terms() const {
  std::vector<std::pair<IrredLabel, int64_t>> out;
  for (uint32_t i = 0; i < p_; ++i)
    for (uint32_t j = 0; j + 1 < p_; ++j)
      if (mult(i, j)) out.push_back({{i, j}, mult(i, j)});
  return out;
}

K0Element K0Element::twist(int64_t k) const {
  K0Element r(p_);
  for (uint32_t i = 0; i < p_; ++i)
    for (uint32_t j = 0; j + 1 < p_; ++j) r.mult(i, det_exponent(p_, j + k)) += mult(i, j);
  return r;
}

K0Element K0Element::operator+(const K0Element& o) const {
  if (p_ != o.p_) throw std::invalid_argument("K0Element: prime mismatch");
  K0Element r = *this;
  for (size_t k = 0; k < m_.size(); ++k) r.m_[k] += o.m_[k];
  return r;
}

K0Element K0Element::operator-(const K0Element& o) const { return *this + (-o); }

K0Element K0Element::operator-() const {
  K0Element r = *this;
  for (auto& x : r.m_) x = -x;
  return r;
}

K0Element K0Element::operator*(int64_t k) const {
  K0Element r = *this;
  for (auto& x : r.m_) x *= k;
  return r;
}

std::string K0Element::str() const {
  auto t = terms();
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [l, m] : t) {
    if (!first) os << (m < 0 ? " - " : " + ");
    else if (m < 0) os << "-";
    first = false;
    const int64_t a = m < 0 ? -m : m;
    if (a != 1) os << a;
    os << "[S^" << l.i << " h (x) det^" << l.j << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

void CharacterSeries::set(size_t n, const K0Element& v) {
  if (c_.size() <= n) c_.resize(n + 1, K0Element(p_));
  c_[n] = v;
}

void CharacterSeries::add_to(size_t n, const K0Element& v) {
  if (c_.size() <= n) c_.resize(n + 1, K0Element(p_));
  c_[n] += v;
}

void CharacterSeries::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int CharacterSeries::degree() const {
  for (size_t n = c_.size(); n-- > 0;)
    if (!c_[n].is_zero()) return static_cast<int>(n);
  return -1;
}

std::vector<int64_t> CharacterSeries::hilbert() const {
  std::vector<int64_t> h;
  for (const auto& x : c_) h.push_back(x.dimension());
  while (!h.empty() && h.back() == 0 && c_[h.size() - 1].is_zero()) h.pop_back();
  return h;
}

int64_t CharacterSeries::total_dimension() const {
  int64_t s = 0;
  for (const auto& x : c_) s += x.dimension();
  return s;
}

CharacterSeries CharacterSeries::truncated(size_t max_degree) const {
  CharacterSeries r(p_);
  for (size_t n = 0; n < c_.size() && n <= max_degree; ++n) r.set(n, c_[n]);
  return r;
}

CharacterSeries CharacterSeries::operator+(const CharacterSeries& o) const {
  CharacterSeries r = *this;
  for (size_t n = 0; n < o.c_.size(); ++n) r.add_to(n, o.c_[n]);
  return r;
}

CharacterSeries CharacterSeries::operator-(const CharacterSeries& o) const {
  CharacterSeries r = *this;
  for (size_t n = 0; n < o.c_.size(); ++n) r.add_to(n, -o.c_[n]);
  return r;
}

CharacterSeries CharacterSeries::times_int_poly(const std::vector<int64_t>& poly) const {
  CharacterSeries r(p_);
  for (size_t n = 0; n < c_.size(); ++n)
    for (size_t k = 0; k < poly.size(); ++k)
      if (poly[k]) r.add_to(n + k, c_[n] * poly[k]);
  return r;
}

CharacterSeries CharacterSeries::inflate(size_t k) const {
  CharacterSeries r(p_);
  for (size_t n = 0; n < c_.size(); ++n) r.set(n * k, c_[n]);
  return r;
}

bool CharacterSeries::operator==(const CharacterSeries& o) const {
  if (p_ != o.p_) return false;
  const size_t n = std::max(c_.size(), o.c_.size());
  for (size_t k = 0; k < n; ++k)
    if (coeff(k) != o.coeff(k)) return false;
  return true;
}

std::vector<int64_t> one_minus_product(const std::vector<size_t>& degrees) {
  std::vector<int64_t> poly{1};
  for (size_t d : degrees) {
    std::vector<int64_t> next(poly.size() + d, 0);
    for (size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k];
      next[k + d] -= poly[k];
    }
    poly = std::move(next);
  }
  return poly;
}

// ---------------------------------------------------------------------------

K0Ring::K0Ring(uint32_t p) : p_(p) { require_odd_prime(p); }

K0Element K0Ring::reduce_sym(uint32_t a, int64_t j) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sym_memo_.find(a);
    if (it != sym_memo_.end()) return it->second.twist(j);
  }
  K0Element out(p_);
  if (a <= p_ - 1) {
    out = K0Element::label(p_, a, 0);
  } else {
    // 0 -> S^r (x) S^n -> S^{r+pn} -> S^{p-r-2} (x) S^{n-1} (x) det^{r+1} -> 0
    const uint32_t r = a % p_, n = a / p_;
    out = sym_tensor(r, n);
    if (r + 2 <= p_) out += sym_tensor(p_ - r - 2, n - 1).twist(r + 1);
  }
  std::lock_guard<std::mutex> lock(mu_);
  sym_memo_.emplace(a, out);
  return out.twist(j);
}

K0Element K0Ring::sym_tensor(uint32_t a, uint32_t b) {
  if (a > b) std::swap(a, b);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tensor_memo_.find({a, b});
    if (it != tensor_memo_.end()) return it->second;
  }
  // 0 -> S^{a-1} (x) S^{b-1} (x) det -> S^a (x) S^b -> S^{a+b} -> 0
  K0Element out = a == 0 ? reduce_sym(b, 0) : reduce_sym(a + b, 0) + sym_tensor(a - 1, b - 1).twist(1);
  std::lock_guard<std::mutex> lock(mu_);
  tensor_memo_.emplace(std::make_pair(a, b), out);
  return out;
}

K0Element K0Ring::tensor_reduce(const K0Element& u, const K0Element& v) {
  if (u.prime() != p_ || v.prime() != p_) throw std::invalid_argument("K0Ring: prime mismatch");
  K0Element out(p_);
  for (auto& [l1, m1] : u.terms())
    for (auto& [l2, m2] : v.terms()) out += sym_tensor(l1.i, l2.i).twist(l1.j + l2.j) * (m1 * m2);
  return out;
}

K0Element K0Ring::hstar_class() const { return K0Element::label(p_, 1, p_ - 2); }

K0Element K0Ring::sym_hstar(uint32_t n) { return reduce_sym(n, -static_cast<int64_t>(n)); }

CharacterSeries K0Ring::series_product(const CharacterSeries& a, const CharacterSeries& b, size_t max_degree) {
  CharacterSeries r(p_);
  for (size_t n = 0; n < a.size() && n <= max_degree; ++n) {
    const K0Element an = a.coeff(n);
    if (an.is_zero()) continue;
    for (size_t k = 0; k < b.size() && n + k <= max_degree; ++k) {
      const K0Element bk = b.coeff(k);
      if (!bk.is_zero()) r.add_to(n + k, tensor_reduce(an, bk));
    }
  }
  return r;
}

CharacterSeries K0Ring::sym_hstar_series(size_t max_degree) {
  CharacterSeries s(p_);
  for (size_t n = 0; n <= max_degree; ++n) s.set(n, sym_hstar(static_cast<uint32_t>(n)));
  return s;
}

CharacterSeries K0Ring::verma_character(IrredLabel tau, size_t max_degree) {
  const K0Element t = K0Element::label(p_, tau.i, tau.j);
  CharacterSeries s(p_);
  for (size_t n = 0; n <= max_degree; ++n) s.set(n, tensor_reduce(sym_hstar(static_cast<uint32_t>(n)), t));
  return s;
}

CharacterSeries K0Ring::baby_verma_character(IrredLabel tau, int t) {
  if (t != 0 && t != 1) throw std::invalid_argument("t must be 0 or 1");
  const size_t scale = t == 0 ? 1 : p_;
  const size_t d0 = scale * (p_ * p_ - 1), d1 = scale * (p_ * p_ - p_);
  const size_t top = d0 + d1 - 2;
  CharacterSeries n = verma_character(tau, top + 2).times_int_poly(one_minus_product({d0, d1}));
  for (size_t k = top + 1; k <= top + 2; ++k)
    if (!n.coeff(k).is_zero()) throw std::logic_error("baby Verma character does not terminate");
  return n.truncated(top);
}

CharacterSeries K0Ring::restricted_sym_character() {
  const size_t top = 2 * (p_ - 1);
  CharacterSeries koszul(p_);
  koszul.set(0, trivial());
  koszul.set(p_, -hstar_class());
  koszul.set(2 * p_, K0Element::label(p_, 0, -1));
  CharacterSeries r = series_product(sym_hstar_series(top), koszul, top);
  r.trim();
  return r;
}

// ---------------------------------------------------------------------------

std::pair<Fq, Fq> eigenvalues(const GroupElement& g) {
  const uint32_t p = g.prime();
  const ExtField& F = ExtField::get(p, 2);
  const Fq tr = F.from_fp(g.trace()), dt = F.from_fp(g.det());
  std::vector<Fq> roots;
  for (uint32_t c0 = 0; c0 < p; ++c0)
    for (uint32_t c1 = 0; c1 < p; ++c1) {
      Fq x = F.from_coeffs({c0, c1});
      if ((x * x - tr * x + dt).is_zero()) roots.push_back(x);
    }
  if (roots.empty()) throw std::logic_error("characteristic polynomial has no root in F_{p^2}");
  // A double root appears once.
  return {roots.front(), roots.size() > 1 ? roots[1] : roots.front()};
}

Fq brauer_char(const K0Element& v, const GroupElement& g) {
  if (g.order() % g.prime() == 0) throw std::invalid_argument("brauer_char requires a p-regular element");
  const uint32_t p = v.prime();
  const ExtField& F = ExtField::get(p, 2);
  const auto [l, m] = eigenvalues(g);
  const Fq lm = l * m;
  Fq acc = F.zero();
  for (auto& [lab, mult] : v.terms()) {
    Fq tr = F.zero();
    for (uint32_t a = 0; a <= lab.i; ++a) tr += l.pow(a) * m.pow(lab.i - a);
    tr *= lm.pow(lab.j);
    acc += tr * F.from_int(mult);
  }
  return acc;
}

// ---------------------------------------------------------------------------

TorusWeights::TorusWeights(uint32_t prime)
    : p(prime), split(static_cast<size_t>(prime - 1) * (prime - 1), 0), nonsplit(static_cast<size_t>(prime) * prime - 1, 0) {}

TorusWeights TorusWeights::operator-(const TorusWeights& o) const {
  TorusWeights r = *this;
  for (size_t k = 0; k < split.size(); ++k) r.split[k] -= o.split[k];
  for (size_t k = 0; k < nonsplit.size(); ++k) r.nonsplit[k] -= o.nonsplit[k];
  return r;
}

TorusWeights label_weights(uint32_t p, IrredLabel l) {
  TorusWeights w(p);
  const uint32_t m = p - 1, q = p * p - 1;
  for (uint32_t b = 0; b <= l.i; ++b) w.split[((l.i - b + l.j) % m) * m + (b + l.j) % m] += 1;
  for (uint32_t a = 0; a <= l.i; ++a) w.nonsplit[(a + p * (l.i - a) + (1 + p) * l.j) % q] += 1;
  return w;
}

TorusWeights weights_of(const K0Element& v) {
  const uint32_t p = v.prime();
  TorusWeights w(p);
  for (auto& [l, m] : v.terms()) {
    auto lw = label_weights(p, l);
    for (size_t k = 0; k < w.split.size(); ++k) w.split[k] += m * lw.split[k];
    for (size_t k = 0; k < w.nonsplit.size(); ++k) w.nonsplit[k] += m * lw.nonsplit[k];
  }
  return w;
}

K0Element decompose_weights(const TorusWeights& w) {
  using Q = boost::rational<int64_t>;
  const uint32_t p = w.p;
  const size_t nvars = static_cast<size_t>(p) * (p - 1);
  const size_t neq = w.split.size() + w.nonsplit.size();
  std::vector<std::vector<Q>> A(neq, std::vector<Q>(nvars + 1, Q(0)));
  for (uint32_t i = 0; i < p; ++i)
    for (uint32_t j = 0; j + 1 < p; ++j) {
      auto lw = label_weights(p, {i, j});
      const size_t col = static_cast<size_t>(i) * (p - 1) + j;
      for (size_t k = 0; k < w.split.size(); ++k) A[k][col] = lw.split[k];
      for (size_t k = 0; k < w.nonsplit.size(); ++k) A[w.split.size() + k][col] = lw.nonsplit[k];
    }
  for (size_t k = 0; k < w.split.size(); ++k) A[k][nvars] = w.split[k];
  for (size_t k = 0; k < w.nonsplit.size(); ++k) A[w.split.size() + k][nvars] = w.nonsplit[k];

  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t col = 0; col < nvars && r < neq; ++col) {
    size_t piv = r;
    while (piv < neq && A[piv][col] == Q(0)) ++piv;
    if (piv == neq) continue;
    std::swap(A[r], A[piv]);
    const Q inv = Q(1) / A[r][col];
    for (auto& x : A[r]) x *= inv;
    for (size_t i = 0; i < neq; ++i) {
      if (i == r || A[i][col] == Q(0)) continue;
      const Q f = A[i][col];
      for (size_t j = col; j <= nvars; ++j) A[i][j] -= f * A[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  if (pivots.size() != nvars) throw std::runtime_error("weight system does not determine a unique class");
  for (size_t i = r; i < neq; ++i)
    if (A[i][nvars] != Q(0)) throw std::runtime_error("weights are not those of a virtual representation");
  K0Element out(p);
  for (size_t l = 0; l < nvars; ++l) {
    const Q v = A[l][nvars];
    if (v.denominator() != 1) throw std::runtime_error("weight system has a non-integral solution");
    out.mult(static_cast<uint32_t>(pivots[l] / (p - 1)), static_cast<uint32_t>(pivots[l] % (p - 1))) = v.numerator();
  }
  return out;
}

}  // namespace cherednik
