#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cherednik {

bool is_prime(uint64_t n);
// Throws std::invalid_argument unless p is an odd prime.
void require_odd_prime(uint64_t p);

// Element of F_p.  The modulus travels with the value.
class Fp {
 public:
  Fp() = default;
  Fp(int64_t v, uint32_t p);
  static Fp raw(uint32_t v, uint32_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }

  uint32_t value() const { return v_; }
  uint32_t prime() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(const Fp& o) const {
    same(o);
    uint32_t s = v_ + o.v_;
    return raw(s >= p_ ? s - p_ : s, p_);
  }
  Fp operator-(const Fp& o) const {
    same(o);
    return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp operator*(const Fp& o) const {
    same(o);
    return raw(static_cast<uint32_t>(static_cast<uint64_t>(v_) * o.v_ % p_), p_);
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  Fp inv() const;
  Fp pow(uint64_t e) const;
  Fp scale(uint32_t k) const { return raw(static_cast<uint32_t>(static_cast<uint64_t>(v_) * (k % p_) % p_), p_); }
  std::string str() const { return std::to_string(v_); }

 private:
  void same(const Fp& o) const {
    if (p_ != o.p_) throw std::invalid_argument("Fp: modulus mismatch");
  }
  uint32_t v_ = 0;
  uint32_t p_ = 0;
};

// Sum of b^N over b in F_p.
Fp power_sum(uint32_t p, uint64_t N);

inline constexpr unsigned kMaxExtDegree = 32;

class Fq;

// F_{p^k} = F_p[x]/(m), m monic irreducible of degree k.
class ExtField {
 public:
  // Field with the lexicographically least irreducible modulus; cached for the
  // lifetime of the process.
  static const ExtField& get(uint32_t p, unsigned k);
  // Monic irreducible of degree k, least under comparison of (c_{k-1}, ..., c_0).
  static std::vector<uint32_t> lex_least_irreducible(uint32_t p, unsigned k);
  // Rabin's test; coefficients low to high, leading one included.
  static bool is_irreducible(uint32_t p, const std::vector<uint32_t>& f);

  ExtField(uint32_t p, std::vector<uint32_t> modulus);
  ExtField(const ExtField&) = delete;
  ExtField& operator=(const ExtField&) = delete;

  uint32_t prime() const { return p_; }
  unsigned degree() const { return k_; }
  const std::vector<uint32_t>& modulus() const { return mod_; }
  uint64_t order() const { return order_; }

  Fq zero() const;
  Fq one() const;
  Fq from_int(int64_t v) const;
  Fq from_fp(const Fp& v) const;
  Fq from_coeffs(const std::vector<uint32_t>& c) const;
  Fq gen() const;  // class of x
  Fq random(std::mt19937_64& rng) const;
  // Element of multiplicative order exactly n; requires n | order()-1.
  Fq element_of_order(uint64_t n) const;

  void mul(const uint8_t* a, const uint8_t* b, uint8_t* out) const;

 private:
  uint32_t p_;
  unsigned k_;
  std::vector<uint32_t> mod_;
  std::vector<uint32_t> negmod_;
  uint64_t order_;
};

class Fq {
 public:
  Fq() = default;

  const ExtField* field() const { return f_; }
  uint32_t prime() const { return f_->prime(); }
  uint32_t coeff(unsigned i) const { return c_[i]; }
  bool is_zero() const;
  bool in_prime_field() const;
  Fp to_fp() const;

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator-() const;
  Fq operator*(const Fq& o) const;
  Fq operator/(const Fq& o) const { return *this * o.inv(); }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  bool operator==(const Fq& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

  Fq scale(uint32_t k) const;
  Fq inv() const;
  Fq pow(uint64_t e) const;
  std::string str() const;

 private:
  friend class ExtField;
  void same(const Fq& o) const {
    if (f_ != o.f_) throw std::invalid_argument("Fq: field mismatch");
  }
  const ExtField* f_ = nullptr;
  std::array<uint8_t, kMaxExtDegree> c_{};
};

inline constexpr unsigned kMaxParams = 16;

// Polynomial over F_p in the class parameters c_1, ..., c_{p-1}.
class ParamPoly {
 public:
  using Exponent = std::array<uint16_t, kMaxParams>;
  using Terms = std::map<Exponent, uint32_t, std::greater<>>;

  ParamPoly() = default;
  explicit ParamPoly(uint32_t p);
  static ParamPoly constant(uint32_t p, int64_t v);
  static ParamPoly constant(const Fp& v);
  // c_lambda for lambda in 1..p-1.
  static ParamPoly variable(uint32_t p, uint32_t lambda);

  uint32_t prime() const { return p_; }
  unsigned num_vars() const { return p_ - 1; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  Fp coefficient(const Exponent& e) const;

  ParamPoly operator+(const ParamPoly& o) const;
  ParamPoly operator-(const ParamPoly& o) const;
  ParamPoly operator-() const;
  ParamPoly operator*(const ParamPoly& o) const;
  ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
  ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
  bool operator==(const ParamPoly& o) const { return p_ == o.p_ && terms_ == o.terms_; }
  bool operator!=(const ParamPoly& o) const { return !(*this == o); }

  ParamPoly scale(uint32_t k) const;
  // Throws std::domain_error when o does not divide *this.
  ParamPoly exact_div(const ParamPoly& o) const;

  Fq evaluate(const std::vector<Fq>& point) const;
  Fp evaluate(const std::vector<Fp>& point) const;
  std::string str() const;

 private:
  void same(const ParamPoly& o) const {
    if (p_ != o.p_) throw std::invalid_argument("ParamPoly: modulus mismatch");
  }
  void add_term(const Exponent& e, uint32_t c);
  uint32_t p_ = 0;
  Terms terms_;
};

// Ring-generic helpers used by the templated linear algebra.
inline Fp one_like(const Fp& x) { return Fp::raw(1, x.prime()); }
inline Fp zero_like(const Fp& x) { return Fp::raw(0, x.prime()); }
Fq one_like(const Fq& x);
Fq zero_like(const Fq& x);
inline ParamPoly one_like(const ParamPoly& x) { return ParamPoly::constant(x.prime(), 1); }
inline ParamPoly zero_like(const ParamPoly& x) { return ParamPoly(x.prime()); }
inline Fp exact_div(const Fp& a, const Fp& b) { return a / b; }
inline Fq exact_div(const Fq& a, const Fq& b) { return a / b; }
inline ParamPoly exact_div(const ParamPoly& a, const ParamPoly& b) { return a.exact_div(b); }
inline Fp embed(const Fp& v, const Fp&) { return v; }
inline Fq embed(const Fp& v, const Fq& zero) { return zero.field()->from_fp(v); }
inline ParamPoly embed(const Fp& v, const ParamPoly&) { return ParamPoly::constant(v); }
inline std::string to_string(const Fp& x) { return x.str(); }
inline std::string to_string(const Fq& x) { return x.str(); }
inline std::string to_string(const ParamPoly& x) { return x.str(); }

}  // namespace cherednik
