#pragma once

#include <optional>
#include <vector>

#include "chev/field.hpp"

namespace chev {

template <Field F>
using Vec = std::vector<F>;

// Small dense row-major matrix. Group elements, Gram forms and flat bases all
// live here; sizes never exceed a few dozen.
template <Field F>
class Matrix {
 public:
  using Traits = field_traits<F>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Traits::zero()) {}
  explicit Matrix(const std::vector<std::vector<F>>& rows) : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InvalidArgument("ragged matrix rows");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<F>& data() const { return a_; }

  Vec<F> row(std::size_t i) const { return Vec<F>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  std::vector<std::vector<F>> to_rows() const {
    std::vector<std::vector<F>> r;
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
    return r;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw ArityMismatch("matrix product dimension mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const F& xik = x(i, k);
        if (Traits::is_zero(xik)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }

  Vec<F> apply(const Vec<F>& v) const {
    if (v.size() != cols_) throw ArityMismatch("matrix-vector dimension mismatch");
    Vec<F> r(rows_, Traits::zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  // Exact equality for exact fields, tolerance comparison for binary64.
  bool equals(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!Traits::near(a_[i], o.a_[i])) return false;
    return true;
  }
  bool is_identity() const { return equals(identity(rows_)); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> a_;
};

// Reduced row echelon form in place; returns pivot columns.
template <Field F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  using T = field_traits<F>;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    if constexpr (is_exact_v<F>) {
      for (std::size_t i = r; i < m.rows(); ++i)
        if (!T::is_zero(m(i, c))) {
          best = i;
          break;
        }
    } else {
      double bv = kNumericTol;
      for (std::size_t i = r; i < m.rows(); ++i)
        if (std::abs(m(i, c)) > bv) {
          bv = std::abs(m(i, c));
          best = i;
        }
    }
    if (best == m.rows()) continue;
    if (best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    F inv = T::one() / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || T::is_zero(m(i, c))) continue;
      F factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Field F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

template <Field F>
std::size_t rank_of_vectors(const std::vector<Vec<F>>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  Matrix<F> m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vs[i][j];
  return rank(m);
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = field_traits<F>::one();
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <Field F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  F s = field_traits<F>::zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace chev
