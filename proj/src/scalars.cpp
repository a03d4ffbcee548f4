#include "cherednik/scalars.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace cherednik {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(uint64_t p) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

Fp::Fp(int64_t v, uint32_t p) : p_(p) {
  if (p == 0) throw std::invalid_argument("Fp: modulus must be positive");
  int64_t r = v % static_cast<int64_t>(p);
  if (r < 0) r += p;
  v_ = static_cast<uint32_t>(r);
}

Fp Fp::inv() const {
  if (v_ == 0) throw std::domain_error("Fp: division by zero");
  int64_t a = v_, m = p_, x0 = 1, x1 = 0;
  while (m != 0) {
    int64_t q = a / m;
    std::swap(a, m);
    m -= q * a;
    std::swap(x0, x1);
    x1 -= q * x0;
  }
  return Fp(x0, p_);
}

Fp Fp::pow(uint64_t e) const {
  Fp base = *this, acc = raw(1 % p_, p_);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Fp power_sum(uint32_t p, uint64_t N) {
  if (N > 0 && N % (p - 1) == 0) return Fp(-1, p);
  return Fp(0, p);
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, low degree first, used to build extension fields.

namespace {

using UPoly = std::vector<uint32_t>;

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inv_mod(uint32_t a, uint32_t p) { return Fp::raw(a, p).inv().value(); }

UPoly poly_mod(UPoly a, const UPoly& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    uint32_t f = static_cast<uint32_t>(static_cast<uint64_t>(a.back()) * lead_inv % p);
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + static_cast<uint64_t>(p - f) * m[i]) % p);
    trim(a);
  }
  return a;
}

UPoly poly_mulmod(const UPoly& a, const UPoly& b, const UPoly& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<uint64_t>(a[i]) * b[j] % p;
  UPoly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<uint32_t>(acc[i] % p);
  return poly_mod(std::move(r), m, p);
}

UPoly poly_powmod(UPoly base, uint64_t e, const UPoly& m, uint32_t p) {
  UPoly acc{1};
  base = poly_mod(base, m, p);
  while (e) {
    if (e & 1) acc = poly_mulmod(acc, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return acc;
}

UPoly poly_sub(UPoly a, const UPoly& b, uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

UPoly poly_gcd(UPoly a, UPoly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^e) mod m.
UPoly frobenius_power_of_x(uint64_t e, const UPoly& m, uint32_t p) {
  UPoly x{0, 1};
  for (uint64_t i = 0; i < e; ++i) x = poly_powmod(x, p, m, p);
  return x;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool ExtField::is_irreducible(uint32_t p, const std::vector<uint32_t>& f) {
  if (f.size() < 2) return false;
  const uint64_t k = f.size() - 1;
  if (k == 1) return true;
  const UPoly x{0, 1};
  if (poly_sub(frobenius_power_of_x(k, f, p), x, p).size() != 0) return false;
  for (uint64_t q : prime_factors(k)) {
    UPoly h = poly_sub(frobenius_power_of_x(k / q, f, p), x, p);
    if (poly_gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

std::vector<uint32_t> ExtField::lex_least_irreducible(uint32_t p, unsigned k) {
  if (k == 0) throw std::invalid_argument("extension degree must be positive");
  // Counter over (c_{k-1}, ..., c_0) with c_0 least significant.
  std::vector<uint32_t> c(k, 0);
  while (true) {
    UPoly f(c);
    f.push_back(1);
    if (is_irreducible(p, f)) return f;
    size_t pos = 0;
    while (pos < k && ++c[pos] == p) c[pos++] = 0;
    if (pos == k) throw std::logic_error("no irreducible polynomial found");
  }
}

const ExtField& ExtField::get(uint32_t p, unsigned k) {
  static std::mutex mu;
  static std::map<std::pair<uint32_t, unsigned>, std::unique_ptr<ExtField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) slot = std::make_unique<ExtField>(p, lex_least_irreducible(p, k));
  return *slot;
}

ExtField::ExtField(uint32_t p, std::vector<uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
  require_odd_prime(p);
  if (p >= 256) throw std::invalid_argument("extension fields support p < 256 only");
  if (mod_.size() < 2 || mod_.back() != 1) throw std::invalid_argument("modulus must be monic of positive degree");
  k_ = static_cast<unsigned>(mod_.size() - 1);
  if (k_ > kMaxExtDegree) throw std::invalid_argument("extension degree exceeds 32");
  if (!is_irreducible(p, mod_)) throw std::invalid_argument("modulus is not irreducible");
  negmod_.resize(k_);
  for (unsigned i = 0; i < k_; ++i) negmod_[i] = (p_ - mod_[i]) % p_;
  order_ = 1;
  for (unsigned i = 0; i < k_; ++i) {
    if (order_ > UINT64_MAX / p_) {
      order_ = 0;
      break;
    }
    order_ *= p_;
  }
}

void ExtField::mul(const uint8_t* a, const uint8_t* b, uint8_t* out) const {
  uint32_t acc[2 * kMaxExtDegree] = {};
  for (unsigned i = 0; i < k_; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < k_; ++j) acc[i + j] += a[i] * b[j];
  }
  for (unsigned j = 0; j < 2 * k_; ++j) acc[j] %= p_;
  for (unsigned d = 2 * k_ - 2; d >= k_; --d) {
    uint32_t top = acc[d] % p_;
    if (top) {
      for (unsigned i = 0; i < k_; ++i) acc[d - k_ + i] = (acc[d - k_ + i] + top * negmod_[i]) % p_;
    }
    acc[d] = 0;
  }
  for (unsigned i = 0; i < k_; ++i) out[i] = static_cast<uint8_t>(acc[i] % p_);
}

Fq ExtField::zero() const {
  Fq r;
  r.f_ = this;
  return r;
}

Fq ExtField::one() const { return from_int(1); }

Fq ExtField::from_int(int64_t v) const {
  Fq r = zero();
  r.c_[0] = static_cast<uint8_t>(Fp(v, p_).value());
  return r;
}

Fq ExtField::from_fp(const Fp& v) const {
  if (v.prime() != p_) throw std::invalid_argument("Fq: modulus mismatch");
  Fq r = zero();
  r.c_[0] = static_cast<uint8_t>(v.value());
  return r;
}

Fq ExtField::from_coeffs(const std::vector<uint32_t>& c) const {
  Fq r = zero();
  UPoly a(c.begin(), c.end());
  for (auto& x : a) x %= p_;
  a = poly_mod(a, mod_, p_);
  for (size_t i = 0; i < a.size(); ++i) r.c_[i] = static_cast<uint8_t>(a[i]);
  return r;
}

Fq ExtField::gen() const { return from_coeffs({0, 1}); }

Fq ExtField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<uint32_t> dist(0, p_ - 1);
  Fq r = zero();
  for (unsigned i = 0; i < k_; ++i) r.c_[i] = static_cast<uint8_t>(dist(rng));
  return r;
}

Fq ExtField::element_of_order(uint64_t n) const {
  if (order_ == 0) throw std::domain_error("field order exceeds 64 bits");
  const uint64_t group = order_ - 1;
  if (n == 0 || group % n != 0) throw std::invalid_argument("no element of the requested order");
  const auto factors = prime_factors(n);
  std::vector<uint32_t> c(k_, 0);
  while (true) {
    size_t pos = 0;
    while (pos < k_ && ++c[pos] == p_) c[pos++] = 0;
    if (pos == k_) break;
    Fq h = from_coeffs(c).pow(group / n);
    bool exact = true;
    for (uint64_t q : factors)
      if (h.pow(n / q) == one()) exact = false;
    if (exact && h.pow(n) == one()) return h;
  }
  throw std::logic_error("element of requested order not found");
}

bool Fq::is_zero() const {
  for (unsigned i = 0; i < f_->degree(); ++i)
    if (c_[i]) return false;
  return true;
}

bool Fq::in_prime_field() const {
  for (unsigned i = 1; i < f_->degree(); ++i)
    if (c_[i]) return false;
  return true;
}

Fp Fq::to_fp() const {
  if (!in_prime_field()) throw std::domain_error("Fq: element not in the prime field");
  return Fp::raw(c_[0], f_->prime());
}

Fq Fq::operator+(const Fq& o) const {
  same(o);
  Fq r = *this;
  const uint32_t p = f_->prime();
  for (unsigned i = 0; i < f_->degree(); ++i) {
    uint32_t s = c_[i] + o.c_[i];
    r.c_[i] = static_cast<uint8_t>(s >= p ? s - p : s);
  }
  return r;
}

Fq Fq::operator-(const Fq& o) const {
  same(o);
  Fq r = *this;
  const uint32_t p = f_->prime();
  for (unsigned i = 0; i < f_->degree(); ++i)
    r.c_[i] = static_cast<uint8_t>(c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p - o.c_[i]);
  return r;
}

Fq Fq::operator-() const {
  Fq r = *this;
  const uint32_t p = f_->prime();
  for (unsigned i = 0; i < f_->degree(); ++i) r.c_[i] = static_cast<uint8_t>(c_[i] ? p - c_[i] : 0);
  return r;
}

Fq Fq::operator*(const Fq& o) const {
  same(o);
  Fq r = f_->zero();
  f_->mul(c_.data(), o.c_.data(), r.c_.data());
  return r;
}

Fq Fq::scale(uint32_t k) const {
  Fq r = *this;
  const uint32_t p = f_->prime();
  k %= p;
  for (unsigned i = 0; i < f_->degree(); ++i) r.c_[i] = static_cast<uint8_t>(c_[i] * k % p);
  return r;
}

Fq Fq::inv() const {
  if (is_zero()) throw std::domain_error("Fq: division by zero");
  const uint32_t p = f_->prime();
  // Extended Euclid: find s with s*a = 1 mod m.
  UPoly a(c_.begin(), c_.begin() + f_->degree());
  trim(a);
  UPoly r0 = f_->modulus(), r1 = a, s0{}, s1{1};
  while (!r1.empty()) {
    // q = r0 / r1
    UPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    UPoly rem = r0;
    const uint32_t li = inv_mod(r1.back(), p);
    while (rem.size() >= r1.size()) {
      uint32_t f = static_cast<uint32_t>(static_cast<uint64_t>(rem.back()) * li % p);
      size_t shift = rem.size() - r1.size();
      q[shift] = f;
      for (size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = static_cast<uint32_t>((rem[shift + i] + static_cast<uint64_t>(p - f) * r1[i]) % p);
      trim(rem);
    }
    trim(q);
    // s2 = s0 - q*s1
    UPoly qs(q.size() + s1.size(), 0);
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < s1.size(); ++j) qs[i + j] = static_cast<uint32_t>((qs[i + j] + static_cast<uint64_t>(q[i]) * s1[j]) % p);
    UPoly s2 = poly_sub(s0, qs, p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant.
  const uint32_t ci = inv_mod(r0[0], p);
  Fq out = f_->zero();
  UPoly s = poly_mod(s0, f_->modulus(), p);
  for (size_t i = 0; i < s.size(); ++i) out.c_[i] = static_cast<uint8_t>(static_cast<uint64_t>(s[i]) * ci % p);
  return out;
}

Fq Fq::pow(uint64_t e) const {
  Fq base = *this, acc = f_->one();
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::string Fq::str() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < f_->degree(); ++i) {
    if (!c_[i]) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || c_[i] != 1) os << static_cast<unsigned>(c_[i]);
    if (i >= 1) os << 'a';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

Fq one_like(const Fq& x) { return x.field()->one(); }
Fq zero_like(const Fq& x) { return x.field()->zero(); }

// ---------------------------------------------------------------------------

ParamPoly::ParamPoly(uint32_t p) : p_(p) {
  if (p - 1 > kMaxParams) throw std::invalid_argument("ParamPoly supports p <= 17");
}

ParamPoly ParamPoly::constant(uint32_t p, int64_t v) {
  ParamPoly r(p);
  r.add_term(Exponent{}, Fp(v, p).value());
  return r;
}

ParamPoly ParamPoly::constant(const Fp& v) { return constant(v.prime(), v.value()); }

ParamPoly ParamPoly::variable(uint32_t p, uint32_t lambda) {
  if (lambda == 0 || lambda >= p) throw std::invalid_argument("class label must lie in 1..p-1");
  ParamPoly r(p);
  Exponent e{};
  e[lambda - 1] = 1;
  r.add_term(e, 1);
  return r;
}

void ParamPoly::add_term(const Exponent& e, uint32_t c) {
  c %= p_;
  if (!c) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = (it->second + c) % p_;
  if (!it->second) terms_.erase(it);
}

int ParamPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

Fp ParamPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return Fp::raw(it == terms_.end() ? 0 : it->second, p_);
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
  same(o);
  ParamPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
  same(o);
  ParamPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, p_ - c);
  return r;
}

ParamPoly ParamPoly::operator-() const { return ParamPoly(p_) - *this; }

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
  same(o);
  ParamPoly r(p_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e;
      for (unsigned i = 0; i < kMaxParams; ++i) e[i] = static_cast<uint16_t>(e1[i] + e2[i]);
      r.add_term(e, static_cast<uint32_t>(static_cast<uint64_t>(c1) * c2 % p_));
    }
  }
  return r;
}

ParamPoly ParamPoly::scale(uint32_t k) const {
  ParamPoly r(p_);
  k %= p_;
  if (!k) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, static_cast<uint32_t>(static_cast<uint64_t>(c) * k % p_));
  return r;
}

ParamPoly ParamPoly::exact_div(const ParamPoly& o) const {
  same(o);
  if (o.is_zero()) throw std::domain_error("ParamPoly: division by zero");
  const auto& [le, lc] = *o.terms_.begin();
  const uint32_t lci = inv_mod(lc, p_);
  ParamPoly q(p_), r = *this;
  while (!r.is_zero()) {
    const auto [re, rc] = *r.terms_.begin();
    Exponent e;
    for (unsigned i = 0; i < kMaxParams; ++i) {
      if (re[i] < le[i]) throw std::domain_error("ParamPoly: inexact division");
      e[i] = static_cast<uint16_t>(re[i] - le[i]);
    }
    ParamPoly t(p_);
    t.add_term(e, static_cast<uint32_t>(static_cast<uint64_t>(rc) * lci % p_));
    q += t;
    r -= t * o;
  }
  return q;
}

Fq ParamPoly::evaluate(const std::vector<Fq>& point) const {
  if (point.size() != num_vars()) throw std::invalid_argument("ParamPoly: wrong number of evaluation values");
  const ExtField* F = point[0].field();
  Fq acc = F->zero();
  for (const auto& [e, c] : terms_) {
    Fq m = F->from_int(c);
    for (unsigned i = 0; i < num_vars(); ++i)
      if (e[i]) m *= point[i].pow(e[i]);
    acc += m;
  }
  return acc;
}

Fp ParamPoly::evaluate(const std::vector<Fp>& point) const {
  if (point.size() != num_vars()) throw std::invalid_argument("ParamPoly: wrong number of evaluation values");
  Fp acc(0, p_);
  for (const auto& [e, c] : terms_) {
    Fp m = Fp::raw(c, p_);
    for (unsigned i = 0; i < num_vars(); ++i)
      if (e[i]) m *= point[i].pow(e[i]);
    acc += m;
  }
  return acc;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool has_var = false;
    for (auto x : e) has_var = has_var || x;
    if (c != 1 || !has_var) os << c;
    bool need_mul = (c != 1 || !has_var);
    for (unsigned i = 0; i < num_vars(); ++i) {
      if (!e[i]) continue;
      if (need_mul) os << '*';
      need_mul = true;
      os << 'c' << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

}  // namespace cherednik
