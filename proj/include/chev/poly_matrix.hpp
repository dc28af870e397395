#pragma once

#include <unordered_map>
#include <vector>

#include "chev/poly.hpp"

namespace chev {

template <Field F>
using PolyMatrix = std::vector<std::vector<Poly<F>>>;

namespace detail {

template <Field F>
void check_square(const PolyMatrix<F>& m) {
  for (const auto& r : m)
    if (r.size() != m.size()) throw ArityMismatch("determinant of a non-square matrix");
}

template <Field F>
std::size_t matrix_nvars(const PolyMatrix<F>& m) {
  return m.empty() || m[0].empty() ? 0 : m[0][0].nvars();
}

}  // namespace detail

// Laplace expansion along rows, memoised on the set of remaining columns.
template <Field F>
Poly<F> determinant_cofactor(const PolyMatrix<F>& m) {
  detail::check_square(m);
  std::size_t n = m.size();
  std::size_t nv = detail::matrix_nvars(m);
  if (n == 0) return Poly<F>::constant(nv, field_traits<F>::one());
  // det of rows [n - popcount(cols), n) restricted to column set `cols`
  std::unordered_map<unsigned, Poly<F>> memo;
  auto rec = [&](auto&& self, unsigned cols) -> Poly<F> {
    int k = __builtin_popcount(cols);
    if (k == 0) return Poly<F>::constant(nv, field_traits<F>::one());
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    std::size_t row = n - static_cast<std::size_t>(k);
    Poly<F> acc(nv);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      if (!m[row][c].is_zero()) {
        Poly<F> t = m[row][c] * self(self, cols & ~(1u << c));
        if (sign > 0)
          acc += t;
        else
          acc -= t;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(rec, (1u << n) - 1u);
}

// Fraction-free Gaussian elimination; every division is exact.
template <Field F>
Poly<F> determinant_bareiss(PolyMatrix<F> a) {
  detail::check_square(a);
  std::size_t n = a.size();
  std::size_t nv = detail::matrix_nvars(a);
  if (n == 0) return Poly<F>::constant(nv, field_traits<F>::one());
  int sign = 1;
  Poly<F> prev = Poly<F>::constant(nv, field_traits<F>::one());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return Poly<F>(nv);
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly<F> num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = divide_exact(num, prev);
      }
    }
    prev = a[k][k];
  }
  Poly<F> d = a[n - 1][n - 1];
  return sign > 0 ? d : -d;
}

template <Field F>
Poly<F> determinant(const PolyMatrix<F>& m) {
  return determinant_cofactor(m);
}

// Determinant of m with `row` and `col` deleted.
template <Field F>
Poly<F> minor(const PolyMatrix<F>& m, std::size_t row, std::size_t col) {
  detail::check_square(m);
  if (row >= m.size() || col >= m.size()) throw ArityMismatch("minor index out of range");
  PolyMatrix<F> sub;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<Poly<F>> r;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != col) r.push_back(m[i][j]);
    sub.push_back(std::move(r));
  }
  if (sub.empty()) return Poly<F>::constant(detail::matrix_nvars(m), field_traits<F>::one());
  return determinant(sub);
}

// Matrix of partials (d p_a / d z_b): row a is the gradient of p_a.
template <Field F>
PolyMatrix<F> jacobian_matrix(const std::vector<Poly<F>>& p) {
  PolyMatrix<F> j;
  for (const auto& pa : p) {
    std::vector<Poly<F>> row;
    for (std::size_t b = 0; b < pa.nvars(); ++b) row.push_back(differentiate(pa, b));
    j.push_back(std::move(row));
  }
  return j;
}

}  // namespace chev
