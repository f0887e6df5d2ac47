#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cremona/scalar.hpp"

namespace cremona {

inline bool is_zero_value(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero_value(const CycScalar& s) { return s.is_zero(); }

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0L)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form in place, considering only the first `limit`
/// columns as pivot candidates. Returns the pivot column of each pivot row.
template <class T>
std::vector<std::size_t> reduce_rows(Matrix<T>& m, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < limit && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero_value(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(row, sel);
    const T inv = T(1L) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero_value(m(i, col))) continue;
      const T factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!is_zero_value(m(row, j))) m(i, j) = m(i, j) - factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return reduce_rows(m, m.cols()).size();
}

/// Basis of {v : m v = 0}, one vector per free column, free entry set to 1.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  const auto pivots = reduce_rows(m, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0L));
    v[free] = T(1L);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A x = b where the last column of `augmented` is b. Returns nullopt
/// when inconsistent; free variables are set to zero.
template <class T>
std::optional<std::vector<T>> solve_augmented(Matrix<T> augmented) {
  const std::size_t n = augmented.cols() - 1;
  const auto pivots = reduce_rows(augmented, n);
  for (std::size_t r = pivots.size(); r < augmented.rows(); ++r) {
    if (!is_zero_value(augmented(r, n))) return std::nullopt;
  }
  std::vector<T> x(n, T(0L));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = augmented(r, n);
  return x;
}

}  // namespace cremona
