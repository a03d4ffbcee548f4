#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cherednik/scalars.hpp"

namespace cherednik {

// Dense row-major matrix.  `zero` fixes the ring of every entry, so empty
// matrices still know where they live.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const S& zero) : rows_(rows), cols_(cols), zero_(zero), data_(rows * cols, zero) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const S& zero() const { return zero_; }
  S& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  S* row(size_t i) { return data_.data() + i * cols_; }
  const S* row(size_t i) const { return data_.data() + i * cols_; }

  static Matrix identity(size_t n, const S& zero) {
    Matrix m(n, n, zero);
    for (size_t i = 0; i < n; ++i) m(i, i) = one_like(zero);
    return m;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void append_row(const std::vector<S>& r) {
    if (r.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void append_rows(const Matrix& o) {
    if (o.cols_ != cols_) throw std::invalid_argument("append_rows: width mismatch");
    data_.insert(data_.end(), o.data_.begin(), o.data_.end());
    rows_ += o.rows_;
  }
  void truncate_rows(size_t r) {
    rows_ = r;
    data_.resize(r * cols_, zero_);
  }
  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  S zero_{};
  std::vector<S> data_;
};

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix<S> c(a.rows(), b.cols(), a.zero());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const S& x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
    }
  return c;
}

template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix<S> c = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix<S> c = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <class S>
Matrix<S> vstack(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> c = a;
  c.append_rows(b);
  return c;
}

// In-place reduced row echelon form over a field.  Returns pivot columns; the
// matrix is truncated to its nonzero rows.
template <class S>
std::vector<size_t> rref(Matrix<S>& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    size_t piv = r;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    const S inv = m(r, col).inv();
    S* pr = m.row(r);
    for (size_t j = col; j < m.cols(); ++j)
      if (!pr[j].is_zero()) pr[j] *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      S* ri = m.row(i);
      if (ri[col].is_zero()) continue;
      const S f = ri[col];
      for (size_t j = col; j < m.cols(); ++j)
        if (!pr[j].is_zero()) ri[j] -= f * pr[j];
    }
    pivots.push_back(col);
    ++r;
  }
  m.truncate_rows(r);
  return pivots;
}

// Integer-backed fast paths over F_p.
template <>
Matrix<Fp> operator*(const Matrix<Fp>& a, const Matrix<Fp>& b);
template <>
std::vector<size_t> rref(Matrix<Fp>& m);

template <class S>
size_t rank(Matrix<S> m) {
  return rref(m).size();
}

// Basis of {v : m v = 0}, one vector per row.
template <class S>
Matrix<S> nullspace(Matrix<S> m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<S> out(0, m.cols(), m.zero());
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(m.cols(), m.zero());
    v[f] = one_like(m.zero());
    for (size_t l = 0; l < pivots.size(); ++l) v[pivots[l]] = -m(l, f);
    out.append_row(v);
  }
  return out;
}

// Fraction-free Gauss-Jordan elimination over an integral domain.  Every
// division is exact.  Returns the pivot columns; `m` ends in a form where each
// pivot row has the common value `det` at its pivot and zeros in all other
// pivot columns.
template <class S>
struct BareissResult {
  std::vector<size_t> pivots;
  S det;  // last pivot; for a square full-rank input this is +-det
  int sign = 1;
};

template <class S>
BareissResult<S> bareiss(Matrix<S>& m) {
  BareissResult<S> res;
  S prev = one_like(m.zero());
  size_t r = 0;
  for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    size_t piv = r;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      m.swap_rows(r, piv);
      res.sign = -res.sign;
    }
    const S pv = m(r, col);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const S f = m(i, col);
      for (size_t j = 0; j < m.cols(); ++j) {
        if (j == col) continue;
        S v = pv * m(i, j) - f * m(r, j);
        m(i, j) = v.is_zero() ? v : exact_div(v, prev);
      }
      m(i, col) = m.zero();
    }
    // Rows above the pivot were scaled by pv / prev as well.
    prev = pv;
    res.pivots.push_back(col);
    ++r;
  }
  res.det = prev;
  m.truncate_rows(r);
  return res;
}

template <class S>
size_t bareiss_rank(Matrix<S> m) {
  return bareiss(m).pivots.size();
}

// Determinant of a square matrix via fraction-free elimination.
template <class S>
S bareiss_det(Matrix<S> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return one_like(m.zero());
  auto res = bareiss(m);
  if (res.pivots.size() < m.cols()) return m.zero();
  return res.sign > 0 ? res.det : -res.det;
}

// Kernel basis after fraction-free elimination: for each free column f the
// vector with D at f and -A[l][f] at pivot l.
template <class S>
Matrix<S> bareiss_nullspace(Matrix<S> m) {
  auto res = bareiss(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivots) is_pivot[c] = true;
  const S d = res.pivots.empty() ? one_like(m.zero()) : res.det;
  Matrix<S> out(0, m.cols(), m.zero());
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(m.cols(), m.zero());
    v[f] = d;
    for (size_t l = 0; l < res.pivots.size(); ++l) v[res.pivots[l]] = -m(l, f);
    out.append_row(v);
  }
  return out;
}

template <class T, class S, class F>
Matrix<T> map_matrix(const Matrix<S>& m, const T& zero, F f) {
  Matrix<T> out(m.rows(), m.cols(), zero);
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

}  // namespace cherednik
