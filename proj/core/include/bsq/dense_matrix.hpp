#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bsq {

using cplx = std::complex<double>;

// Row-major dense matrix. Small and value-semantic; the matrices handled here
// are at most a few hundred rows.
template <class T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  // Leading rows x cols block.
  DenseMatrix leading_block(std::size_t rows, std::size_t cols) const {
    if (rows > rows_ || cols > cols_) throw std::out_of_range("leading_block exceeds matrix");
    DenseMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(i, j);
    return out;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const T& s) { return a *= s; }
  friend DenseMatrix operator*(const T& s, DenseMatrix a) { return a *= s; }

  // Fixed i-k-j summation order, so products are reproducible bit for bit.
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        const T* brow = b.data_.data() + k * b.cols_;
        T* crow = c.data_.data() + i * c.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  void check_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<cplx>;

template <class R>
DenseMatrix<std::complex<R>> adjoint(const DenseMatrix<std::complex<R>>& m) {
  DenseMatrix<std::complex<R>> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

template <class R>
DenseMatrix<std::complex<R>> conjugate(DenseMatrix<std::complex<R>> m) {
  for (auto& v : m.data()) v = std::conj(v);
  return m;
}

template <class R>
R frobenius_norm(const DenseMatrix<std::complex<R>>& m) {
  using std::sqrt;
  R s = 0;
  for (const auto& v : m.data()) s += std::norm(v);
  return sqrt(s);
}

// Largest entrywise modulus of a - b.
template <class R>
R max_abs_diff(const DenseMatrix<std::complex<R>>& a, const DenseMatrix<std::complex<R>>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  using std::abs;
  R best = 0;
  for (std::size_t k = 0; k < a.data().size(); ++k) best = std::max(best, R(abs(a.data()[k] - b.data()[k])));
  return best;
}

template <class To, class From>
DenseMatrix<std::complex<To>> convert(const DenseMatrix<std::complex<From>>& m) {
  DenseMatrix<std::complex<To>> out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k)
    out.data()[k] = std::complex<To>(static_cast<To>(m.data()[k].real()), static_cast<To>(m.data()[k].imag()));
  return out;
}

}  // namespace bsq
