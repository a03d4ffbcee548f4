#include "cherednik/polyring.hpp"

namespace cherednik {

PolyFp dickson_bracket(uint32_t p, uint32_t n, uint32_t m) {
  require_odd_prime(p);
  uint32_t pn = 1, pm = 1;
  for (uint32_t i = 0; i < n; ++i) pn *= p;
  for (uint32_t i = 0; i < m; ++i) pm *= p;
  const Fp one(1, p);
  PolyFp f(Fp(0, p));
  f.add(pn, pm, one);
  f.add(pm, pn, -one);
  return f;
}

DicksonInvariants dickson_invariants(uint32_t p) {
  require_odd_prime(p);
  const Fp one(1, p);
  DicksonInvariants d;
  d.q0 = dickson_bracket(p, 1, 0).pow(p - 1);
  d.q1 = PolyFp(Fp(0, p));
  for (uint32_t i = 0; i <= p; ++i) d.q1.add((p - 1) * (p - i), (p - 1) * i, one);
  return d;
}

Matrix<PolyFp> matrix_A(uint32_t p) {
  require_odd_prime(p);
  const PolyFp z(Fp(0, p));
  Matrix<PolyFp> A(p, p, z);
  for (uint32_t i = 0; i < p; ++i) {
    const Fp sign((i % 2) ? -1 : 1, p);
    for (uint32_t k = 0; k < p; ++k) {
      PolyFp e(Fp(0, p));
      if (i <= k) e.add(k - i, p - 1 - k + i, sign);
      if (i >= k) e.add(p - 1 + k - i, i - k, sign);
      A(i, k) = e;
    }
  }
  return A;
}

PolyFp det_matrix_A(uint32_t p) { return bareiss_det(matrix_A(p)); }

}  // namespace cherednik
