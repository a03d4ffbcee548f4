#include "cherednik/linalg.hpp"

#include <cstdint>

namespace cherednik {

namespace {

uint32_t prime_of(const Matrix<Fp>& m) {
  if (m.zero().prime() == 0) throw std::invalid_argument("F_p matrix without a modulus");
  return m.zero().prime();
}

}  // namespace

template <>
Matrix<Fp> operator*(const Matrix<Fp>& a, const Matrix<Fp>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  const uint32_t p = prime_of(a);
  if (b.zero().prime() != p) throw std::invalid_argument("Fp: modulus mismatch");
  const size_t n = a.rows(), k = a.cols(), m = b.cols();
  std::vector<uint32_t> bv(k * m);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < m; ++j) bv[i * m + j] = b(i, j).value();
  Matrix<Fp> c(n, m, a.zero());
  std::vector<uint64_t> acc(m);
  // For p < 2^16 products stay below 2^32 and 2^32 of them fit in 64 bits.
  const bool wide = p >= (1u << 16);
  for (size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const Fp* ar = a.row(i);
    for (size_t l = 0; l < k; ++l) {
      const uint64_t x = ar[l].value();
      if (!x) continue;
      const uint32_t* br = bv.data() + l * m;
      if (wide)
        for (size_t j = 0; j < m; ++j) acc[j] = (acc[j] + x * br[j]) % p;
      else
        for (size_t j = 0; j < m; ++j) acc[j] += x * br[j];
    }
    Fp* cr = c.row(i);
    for (size_t j = 0; j < m; ++j) cr[j] = Fp::raw(static_cast<uint32_t>(acc[j] % p), p);
  }
  return c;
}

template <>
std::vector<size_t> rref(Matrix<Fp>& m) {
  const size_t rows = m.rows(), cols = m.cols();
  std::vector<size_t> pivots;
  if (rows == 0) return pivots;
  const uint32_t p = prime_of(m);
  std::vector<uint32_t> a(rows * cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j).value();
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t piv = r;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
    uint32_t* pr = a.data() + r * cols;
    const uint64_t iv = Fp::raw(pr[col], p).inv().value();
    for (size_t j = col; j < cols; ++j) pr[j] = static_cast<uint32_t>(pr[j] * iv % p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint32_t* ri = a.data() + i * cols;
      const uint32_t f = ri[col];
      if (!f) continue;
      const uint64_t nf = p - f;
      for (size_t j = col; j < cols; ++j)
        if (pr[j]) ri[j] = static_cast<uint32_t>((ri[j] + nf * pr[j]) % p);
    }
    pivots.push_back(col);
    ++r;
  }
  Matrix<Fp> out(r, cols, m.zero());
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < cols; ++j) out(i, j) = Fp::raw(a[i * cols + j], p);
  m = std::move(out);
  return pivots;
}

}  // namespace cherednik
