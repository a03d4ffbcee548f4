#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cherednik/group.hpp"
#include "cherednik/linalg.hpp"

namespace cherednik {

using Exp2 = std::pair<uint32_t, uint32_t>;  // (x_1 exponent, x_2 exponent)

// Total degree ascending, then x_1-exponent descending.
struct MonomialOrder {
  bool operator()(const Exp2& u, const Exp2& v) const {
    const uint32_t du = u.first + u.second, dv = v.first + v.second;
    if (du != dv) return du < dv;
    return u.first > v.first;
  }
};

// Polynomial in x_1, x_2 over a scalar ring S.
template <class S>
class BivariatePoly {
 public:
  using Terms = std::map<Exp2, S, MonomialOrder>;

  BivariatePoly() = default;
  explicit BivariatePoly(const S& zero) : zero_(zero) {}
  static BivariatePoly monomial(const S& coef, uint32_t a, uint32_t b) {
    BivariatePoly f(zero_like(coef));
    f.add(a, b, coef);
    return f;
  }
  static BivariatePoly x1(const S& zero) { return monomial(one_like(zero), 1, 0); }
  static BivariatePoly x2(const S& zero) { return monomial(one_like(zero), 0, 1); }
  static BivariatePoly constant(const S& c) { return monomial(c, 0, 0); }

  const S& zero() const { return zero_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.first + terms_.rbegin()->first.second); }
  bool is_homogeneous() const {
    return terms_.empty() || terms_.begin()->first.first + terms_.begin()->first.second == static_cast<uint32_t>(degree());
  }
  S coefficient(uint32_t a, uint32_t b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? zero_ : it->second;
  }
  BivariatePoly homogeneous_part(uint32_t n) const {
    BivariatePoly out(zero_);
    for (const auto& [e, c] : terms_)
      if (e.first + e.second == n) out.terms_.emplace(e, c);
    return out;
  }

  void add(uint32_t a, uint32_t b, const S& c) {
    if (c.is_zero()) return;
    auto it = terms_.find({a, b});
    if (it == terms_.end()) {
      terms_.emplace(Exp2{a, b}, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  BivariatePoly operator+(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e.first, e.second, c);
    return r;
  }
  BivariatePoly operator-(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e.first, e.second, -c);
    return r;
  }
  BivariatePoly operator-() const { return BivariatePoly(zero_) - *this; }
  BivariatePoly operator*(const BivariatePoly& o) const {
    BivariatePoly r(zero_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) r.add(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return r;
  }
  BivariatePoly& operator+=(const BivariatePoly& o) { return *this = *this + o; }
  BivariatePoly& operator-=(const BivariatePoly& o) { return *this = *this - o; }
  BivariatePoly& operator*=(const BivariatePoly& o) { return *this = *this * o; }
  bool operator==(const BivariatePoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const BivariatePoly& o) const { return !(*this == o); }

  BivariatePoly scaled(const S& k) const {
    BivariatePoly r(zero_);
    for (const auto& [e, c] : terms_) r.add(e.first, e.second, c * k);
    return r;
  }
  BivariatePoly pow(uint32_t e) const {
    BivariatePoly acc = constant(one_like(zero_)), base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  // f(u, v) for polynomials u, v.
  BivariatePoly substitute(const BivariatePoly& u, const BivariatePoly& v) const {
    BivariatePoly r(zero_);
    for (const auto& [e, c] : terms_) r += (u.pow(e.first) * v.pow(e.second)).scaled(c);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest degree first, x_1-exponent descending within a degree.
    std::vector<std::pair<Exp2, S>> order(terms_.begin(), terms_.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& u, const auto& v) {
      return u.first.first + u.first.second > v.first.first + v.first.second;
    });
    for (const auto& [e, c] : order) {
      if (!first) os << " + ";
      first = false;
      const bool unit = c == one_like(zero_);
      const bool has_var = e.first || e.second;
      if (!unit || !has_var) os << to_string(c);
      bool need_mul = !unit || !has_var;
      if (e.first) {
        os << (need_mul ? "*" : "") << "x1";
        if (e.first > 1) os << '^' << e.first;
        need_mul = true;
      }
      if (e.second) {
        os << (need_mul ? "*" : "") << "x2";
        if (e.second > 1) os << '^' << e.second;
      }
    }
    return os.str();
  }

 private:
  S zero_{};
  Terms terms_;
};

template <class S>
BivariatePoly<S> one_like(const BivariatePoly<S>& f) {
  return BivariatePoly<S>::constant(one_like(f.zero()));
}
template <class S>
BivariatePoly<S> zero_like(const BivariatePoly<S>& f) {
  return BivariatePoly<S>(f.zero());
}
template <class S>
std::string to_string(const BivariatePoly<S>& f) {
  return f.str();
}

// Exact division over a field coefficient ring; throws std::domain_error on a
// nonzero remainder.
template <class S>
BivariatePoly<S> exact_div(const BivariatePoly<S>& f, const BivariatePoly<S>& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto [ge, gc] = *g.terms().rbegin();
  const S gi = gc.inv();
  BivariatePoly<S> q(f.zero()), r = f;
  while (!r.is_zero()) {
    const auto [re, rc] = *r.terms().rbegin();
    if (re.first < ge.first || re.second < ge.second) throw std::domain_error("inexact polynomial division");
    auto t = BivariatePoly<S>::monomial(rc * gi, re.first - ge.first, re.second - ge.second);
    q += t;
    r -= t * g;
  }
  return q;
}

// g . f for f in S h^*, with g acting on h^* by (g^t)^{-1}.
template <class S>
BivariatePoly<S> group_act(const GroupElement& g, const BivariatePoly<S>& f) {
  const GroupElement h = act_on_hstar(g);
  const S& z = f.zero();
  BivariatePoly<S> gx1(z), gx2(z);
  gx1.add(1, 0, embed(h(0, 0), z));
  gx1.add(0, 1, embed(h(1, 0), z));
  gx2.add(1, 0, embed(h(0, 1), z));
  gx2.add(0, 1, embed(h(1, 1), z));
  return f.substitute(gx1, gx2);
}

// Quotient of f by the linear form a0 x_1 + a1 x_2; throws std::logic_error on
// a nonzero remainder.
template <class S>
BivariatePoly<S> divide_by_linear(const BivariatePoly<S>& f, const Fp& a0, const Fp& a1) {
  const S& z = f.zero();
  BivariatePoly<S> q(z);
  if (a0.is_zero() && a1.is_zero()) throw std::invalid_argument("division by the zero linear form");
  for (int n = 0; n <= f.degree(); ++n) {
    auto part = f.homogeneous_part(n);
    if (part.is_zero()) continue;
    if (n == 0) throw std::logic_error("divided difference: nonzero remainder");
    if (a0.is_zero()) {
      const S inv = embed(a1.inv(), z);
      for (const auto& [e, c] : part.terms()) {
        if (e.second == 0) throw std::logic_error("divided difference: nonzero remainder");
        q.add(e.first, e.second - 1, c * inv);
      }
      continue;
    }
    // Coefficients indexed by the x_1 exponent, solved from the top.
    const S inv0 = embed(a0.inv(), z), s1 = embed(a1, z);
    std::vector<S> qa(n, z);
    qa[n - 1] = part.coefficient(n, 0) * inv0;
    for (int a = n - 1; a >= 1; --a) qa[a - 1] = (part.coefficient(a, n - a) - s1 * qa[a]) * inv0;
    if (s1 * qa[0] != part.coefficient(0, n)) throw std::logic_error("divided difference: nonzero remainder");
    for (int a = 0; a < n; ++a) q.add(a, n - 1 - a, qa[a]);
  }
  return q;
}

// (f - s.f) / alpha_s.
template <class S>
BivariatePoly<S> divided_difference(const Reflection& s, const BivariatePoly<S>& f) {
  return divide_by_linear(f - group_act(reflection_to_matrix(s), f), s.alpha[0], s.alpha[1]);
}

using PolyFp = BivariatePoly<Fp>;

// [n, m] = x_1^{p^n} x_2^{p^m} - x_2^{p^n} x_1^{p^m}.
PolyFp dickson_bracket(uint32_t p, uint32_t n, uint32_t m);

struct DicksonInvariants {
  PolyFp q0;  // degree p^2 - 1
  PolyFp q1;  // degree p^2 - p
};
DicksonInvariants dickson_invariants(uint32_t p);

// Entry (i, k) is the coefficient of y_1^{p-1-i} y_2^i in v_k.
Matrix<PolyFp> matrix_A(uint32_t p);
PolyFp det_matrix_A(uint32_t p);

}  // namespace cherednik
