#pragma once

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cherednik/scalars.hpp"

namespace cherednik {

// Element of GL_2(F_p); the matrix of its action on h in the basis y_1, y_2.
class GroupElement {
 public:
  GroupElement() = default;
  // Entries row-major: [[a, b], [c, d]].  Throws on a singular matrix.
  GroupElement(uint32_t p, int64_t a, int64_t b, int64_t c, int64_t d);

  uint32_t prime() const { return p_; }
  Fp operator()(int i, int j) const { return Fp::raw(m_[2 * i + j], p_); }
  Fp det() const;
  Fp trace() const;
  GroupElement inverse() const;
  GroupElement transpose() const;
  GroupElement operator*(const GroupElement& o) const;
  bool operator==(const GroupElement& o) const { return p_ == o.p_ && m_ == o.m_; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
  bool operator<(const GroupElement& o) const { return m_ < o.m_; }
  bool is_identity() const { return m_ == std::array<uint32_t, 4>{1, 0, 0, 1}; }
  uint64_t order() const;
  // Rank of (1 - g) on h.
  int rank_of_one_minus() const;
  std::string str() const;

 private:
  uint32_t p_ = 0;
  std::array<uint32_t, 4> m_{};
};

// The alpha (x-coordinates) and alpha_vee (y-coordinates) of a reflection,
// with lambda = 1 - (alpha_vee, alpha).
struct Reflection {
  std::array<Fp, 2> alpha;
  std::array<Fp, 2> alpha_vee;
  Fp lambda;

  uint32_t prime() const { return lambda.prime(); }
  Fp pairing() const { return alpha[0] * alpha_vee[0] + alpha[1] * alpha_vee[1]; }
};

// Classes C_lambda keyed by lambda in 1..p-1, in parametrization order:
// [1,b] (x) [.., d] with b major then d, followed by the [0,1] (x) [a, ..] family.
std::map<uint32_t, std::vector<Reflection>> enumerate_reflections(uint32_t p);

// Matrix on h: y -> y + (y, alpha)/lambda * alpha_vee.
GroupElement reflection_to_matrix(const Reflection& s);

// Matrix of the action on h^* in the basis x_1, x_2, i.e. (g^t)^{-1}.
GroupElement act_on_hstar(const GroupElement& g);

// All (p^2-1)(p^2-p) elements, sorted.
std::vector<GroupElement> all_elements(uint32_t p);
// diag(w, 1) with w the least primitive root, and [[-1, 1], [-1, 0]].
std::vector<GroupElement> generators(uint32_t p);
uint32_t primitive_root(uint32_t p);
GroupElement random_element(uint32_t p, std::mt19937_64& rng);
// An element of order p^2 - 1 (generator of a non-split torus).
GroupElement singer_element(uint32_t p);

// Reflections found by brute force: rank(1 - g) = 1, bucketed by det(g)^{-1}.
std::map<uint32_t, std::vector<GroupElement>> brute_force_reflections(uint32_t p);

}  // namespace cherednik
