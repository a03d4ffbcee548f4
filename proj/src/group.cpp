#include "cherednik/group.hpp"

#include <algorithm>
#include <sstream>

namespace cherednik {

GroupElement::GroupElement(uint32_t p, int64_t a, int64_t b, int64_t c, int64_t d) : p_(p) {
  m_ = {Fp(a, p).value(), Fp(b, p).value(), Fp(c, p).value(), Fp(d, p).value()};
  if (det().is_zero()) throw std::invalid_argument("GroupElement: singular matrix");
}

Fp GroupElement::det() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }

Fp GroupElement::trace() const { return (*this)(0, 0) + (*this)(1, 1); }

GroupElement GroupElement::inverse() const {
  const Fp di = det().inv();
  const Fp a = (*this)(1, 1) * di, b = -(*this)(0, 1) * di, c = -(*this)(1, 0) * di, d = (*this)(0, 0) * di;
  return GroupElement(p_, a.value(), b.value(), c.value(), d.value());
}

GroupElement GroupElement::transpose() const { return GroupElement(p_, m_[0], m_[2], m_[1], m_[3]); }

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (p_ != o.p_) throw std::invalid_argument("GroupElement: modulus mismatch");
  auto e = [&](int i, int j) { return ((*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j)).value(); };
  return GroupElement(p_, e(0, 0), e(0, 1), e(1, 0), e(1, 1));
}

uint64_t GroupElement::order() const {
  GroupElement g = *this;
  uint64_t n = 1;
  while (!g.is_identity()) {
    g = g * *this;
    ++n;
  }
  return n;
}

int GroupElement::rank_of_one_minus() const {
  const Fp one(1, p_);
  const Fp a = one - (*this)(0, 0), b = -(*this)(0, 1), c = -(*this)(1, 0), d = one - (*this)(1, 1);
  if (a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero()) return 0;
  return (a * d - b * c).is_zero() ? 1 : 2;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << "[[" << m_[0] << "," << m_[1] << "],[" << m_[2] << "," << m_[3] << "]]";
  return os.str();
}

std::map<uint32_t, std::vector<Reflection>> enumerate_reflections(uint32_t p) {
  require_odd_prime(p);
  std::map<uint32_t, std::vector<Reflection>> out;
  const Fp zero(0, p), one(1, p);
  for (uint32_t l = 1; l < p; ++l) {
    const Fp lam(l, p);
    auto& cls = out[l];
    if (l != 1) {
      for (uint32_t b = 0; b < p; ++b)
        for (uint32_t d = 0; d < p; ++d) {
          const Fp fb(b, p), fd(d, p);
          cls.push_back({{one, fb}, {one - lam - fb * fd, fd}, lam});
        }
      for (uint32_t a = 0; a < p; ++a) cls.push_back({{zero, one}, {Fp(a, p), one - lam}, lam});
    } else {
      for (uint32_t b = 0; b < p; ++b)
        for (uint32_t d = 1; d < p; ++d) {
          const Fp fb(b, p), fd(d, p);
          cls.push_back({{one, fb}, {-(fb * fd), fd}, lam});
        }
      for (uint32_t a = 1; a < p; ++a) cls.push_back({{zero, one}, {Fp(a, p), zero}, lam});
    }
  }
  return out;
}

GroupElement reflection_to_matrix(const Reflection& s) {
  const uint32_t p = s.prime();
  const Fp lam = Fp(1, p) - s.pairing();
  if (lam.is_zero()) throw std::invalid_argument("reflection requires (alpha, alpha_vee) != 1");
  const Fp li = lam.inv();
  auto e = [&](int i, int j) { return (Fp(i == j ? 1 : 0, p) + s.alpha_vee[i] * s.alpha[j] * li).value(); };
  return GroupElement(p, e(0, 0), e(0, 1), e(1, 0), e(1, 1));
}

GroupElement act_on_hstar(const GroupElement& g) { return g.transpose().inverse(); }

std::vector<GroupElement> all_elements(uint32_t p) {
  require_odd_prime(p);
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(p * p - 1) * (p * p - p));
  for (uint32_t a = 0; a < p; ++a)
    for (uint32_t b = 0; b < p; ++b)
      for (uint32_t c = 0; c < p; ++c)
        for (uint32_t d = 0; d < p; ++d)
          if ((static_cast<uint64_t>(a) * d + static_cast<uint64_t>(p - b) * c) % p != 0)
            out.emplace_back(p, a, b, c, d);
  return out;
}

uint32_t primitive_root(uint32_t p) {
  for (uint32_t w = 2; w < p; ++w) {
    uint32_t x = 1, ord = 0;
    do {
      x = static_cast<uint32_t>(static_cast<uint64_t>(x) * w % p);
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return w;
  }
  return 1;  // p = 2 only
}

std::vector<GroupElement> generators(uint32_t p) {
  require_odd_prime(p);
  return {GroupElement(p, primitive_root(p), 0, 0, 1), GroupElement(p, -1, 1, -1, 0)};
}

GroupElement random_element(uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint32_t> dist(0, p - 1);
  while (true) {
    uint32_t a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
    if ((static_cast<uint64_t>(a) * d + static_cast<uint64_t>(p - b) * c) % p != 0) return GroupElement(p, a, b, c, d);
  }
}

GroupElement singer_element(uint32_t p) {
  require_odd_prime(p);
  // Companion matrices of x^2 + c1 x + c0.
  for (uint32_t c1 = 0; c1 < p; ++c1)
    for (uint32_t c0 = 1; c0 < p; ++c0) {
      GroupElement g(p, 0, -static_cast<int64_t>(c0), 1, -static_cast<int64_t>(c1));
      if (g.order() == static_cast<uint64_t>(p) * p - 1) return g;
    }
  throw std::logic_error("no element of order p^2 - 1");
}

std::map<uint32_t, std::vector<GroupElement>> brute_force_reflections(uint32_t p) {
  std::map<uint32_t, std::vector<GroupElement>> out;
  for (const auto& g : all_elements(p))
    if (g.rank_of_one_minus() == 1) out[g.det().inv().value()].push_back(g);
  return out;
}

}  // namespace cherednik
