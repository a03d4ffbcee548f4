#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cherednik/group.hpp"
#include "cherednik/scalars.hpp"

namespace cherednik {

// Label of S^i h (x) det^j, 0 <= i <= p-1, 0 <= j <= p-2.
struct IrredLabel {
  uint32_t i = 0;
  uint32_t j = 0;
  auto operator<=>(const IrredLabel&) const = default;
};

// Integer combination of irreducible classes.
class K0Element {
 public:
  K0Element() = default;
  explicit K0Element(uint32_t p);
  static K0Element label(uint32_t p, uint32_t i, int64_t j);

  uint32_t prime() const { return p_; }
  int64_t mult(uint32_t i, uint32_t j) const { return m_.at(index(i, j)); }
  int64_t& mult(uint32_t i, uint32_t j) { return m_.at(index(i, j)); }
  bool is_zero() const;
  bool is_nonnegative() const;
  int64_t dimension() const;
  // Nonzero (label, multiplicity) pairs, i major then j.
  std::vector<std::pair<IrredLabel, int64_t>> terms() const;
  // Multiplication by det^k.
  K0Element twist(int64_t k) const;

  K0Element operator+(const K0Element& o) const;
  K0Element operator-(const K0Element& o) const;
  K0Element operator-() const;
  K0Element operator*(int64_t k) const;
  K0Element& operator+=(const K0Element& o) { return *this = *this + o; }
  K0Element& operator-=(const K0Element& o) { return *this = *this - o; }
  bool operator==(const K0Element& o) const { return p_ == o.p_ && m_ == o.m_; }
  bool operator!=(const K0Element& o) const { return !(*this == o); }
  // e.g. "[S^1 h (x) det^0] + 2[S^0 h (x) det^1]"; "0" when empty.
  std::string str() const;

 private:
  size_t index(uint32_t i, uint32_t j) const;
  uint32_t p_ = 0;
  std::vector<int64_t> m_;
};

uint32_t det_exponent(uint32_t p, int64_t j);

// Power series in z with K_0 coefficients, stored densely from degree 0.
class CharacterSeries {
 public:
  CharacterSeries() = default;
  explicit CharacterSeries(uint32_t p) : p_(p) {}

  uint32_t prime() const { return p_; }
  size_t size() const { return c_.size(); }
  // Zero beyond the stored range.
  K0Element coeff(size_t n) const { return n < c_.size() ? c_[n] : K0Element(p_); }
  void set(size_t n, const K0Element& v);
  void add_to(size_t n, const K0Element& v);
  // Drops trailing zero coefficients.
  void trim();
  int degree() const;  // -1 for zero
  std::vector<int64_t> hilbert() const;
  int64_t total_dimension() const;
  CharacterSeries truncated(size_t max_degree) const;
  CharacterSeries operator+(const CharacterSeries& o) const;
  CharacterSeries operator-(const CharacterSeries& o) const;
  // Multiplication by sum_k poly[k] z^k with integer coefficients.
  CharacterSeries times_int_poly(const std::vector<int64_t>& poly) const;
  // z -> z^k.
  CharacterSeries inflate(size_t k) const;
  bool operator==(const CharacterSeries& o) const;
  bool operator!=(const CharacterSeries& o) const { return !(*this == o); }

 private:
  uint32_t p_ = 0;
  std::vector<K0Element> c_;
};

// Expands prod_k (1 - z^{d_k}) as an integer polynomial.
std::vector<int64_t> one_minus_product(const std::vector<size_t>& degrees);

// K_0(GL_2(F_p)) with memoized reduction rules.
class K0Ring {
 public:
  explicit K0Ring(uint32_t p);
  K0Ring(const K0Ring&) = delete;
  K0Ring& operator=(const K0Ring&) = delete;

  uint32_t prime() const { return p_; }
  // [S^a h (x) det^j].
  K0Element reduce_sym(uint32_t a, int64_t j);
  // [S^a h (x) S^b h].
  K0Element sym_tensor(uint32_t a, uint32_t b);
  K0Element tensor_reduce(const K0Element& u, const K0Element& v);
  K0Element hstar_class() const;
  // [S^n h^*] = [S^n h (x) det^{-n}].
  K0Element sym_hstar(uint32_t n);
  K0Element trivial() const { return K0Element::label(p_, 0, 0); }

  CharacterSeries series_product(const CharacterSeries& a, const CharacterSeries& b, size_t max_degree);
  CharacterSeries sym_hstar_series(size_t max_degree);
  CharacterSeries verma_character(IrredLabel tau, size_t max_degree);
  // Top degree (p^2-1)+(p^2-p)-2 for t = 0 and p(p^2-1)+p(p^2-p)-2 for t = 1.
  CharacterSeries baby_verma_character(IrredLabel tau, int t);
  // chi of S h^* / (x_1^p, x_2^p) as chi_{S h^*}(z) (1 - [h^*] z^p + [det^{-1}] z^{2p}).
  CharacterSeries restricted_sym_character();

 private:
  uint32_t p_;
  std::mutex mu_;
  std::map<uint32_t, K0Element> sym_memo_;
  std::map<std::pair<uint32_t, uint32_t>, K0Element> tensor_memo_;
};

// Brauer character of v at a p-regular g, valued in F_{p^2}.  Throws
// std::invalid_argument when p divides the order of g.
Fq brauer_char(const K0Element& v, const GroupElement& g);
// Eigenvalues of g on h in F_{p^2}.
std::pair<Fq, Fq> eigenvalues(const GroupElement& g);

// Eigenvalue multiplicities of a representation on the split torus
// diag(u, w) (weights u^{e1} w^{e2}, indexed e1 * (p-1) + e2) and on a
// non-split torus generated by g with eigenvalues eta, eta^p on h (weights
// eta^e, e mod p^2-1).
struct TorusWeights {
  uint32_t p = 0;
  std::vector<int64_t> split;
  std::vector<int64_t> nonsplit;
  explicit TorusWeights(uint32_t prime);
  TorusWeights operator-(const TorusWeights& o) const;
};

TorusWeights label_weights(uint32_t p, IrredLabel l);
TorusWeights weights_of(const K0Element& v);
// Inverse of weights_of.  Throws std::runtime_error when the weights are not
// those of a unique integral class.
K0Element decompose_weights(const TorusWeights& w);

}  // namespace cherednik
