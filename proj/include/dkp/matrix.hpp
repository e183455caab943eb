#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dkp/scalar.hpp"

namespace dkp {

/// 5x5 matrix over an exact or floating scalar, row-major.
template <DkpScalar T>
class Matrix5 {
 public:
  static constexpr std::size_t kDim = 5;
  static constexpr std::size_t kSize = kDim * kDim;

  Matrix5() { entries_.fill(T(0)); }

  static Matrix5 zero() { return Matrix5(); }
  static Matrix5 identity() {
    Matrix5 m;
    for (std::size_t i = 0; i < kDim; ++i) m(i, i) = T(1);
    return m;
  }
  /// Matrix unit e_row e_col^T.
  static Matrix5 unit(std::size_t row, std::size_t col) {
    Matrix5 m;
    m(row, col) = T(1);
    return m;
  }
  static Matrix5 diagonal(const std::array<T, kDim>& d) {
    Matrix5 m;
    for (std::size_t i = 0; i < kDim; ++i) m(i, i) = d[i];
    return m;
  }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * kDim + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * kDim + c]; }

  std::span<const T, kSize> flat() const { return entries_; }

  Matrix5& operator+=(const Matrix5& o) {
    for (std::size_t i = 0; i < kSize; ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  Matrix5& operator-=(const Matrix5& o) {
    for (std::size_t i = 0; i < kSize; ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  Matrix5& operator*=(const T& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend Matrix5 operator+(Matrix5 a, const Matrix5& b) { return a += b; }
  friend Matrix5 operator-(Matrix5 a, const Matrix5& b) { return a -= b; }
  friend Matrix5 operator-(Matrix5 a) { return a *= T(-1); }
  friend Matrix5 operator*(Matrix5 a, const T& s) { return a *= s; }
  friend Matrix5 operator*(const T& s, Matrix5 a) { return a *= s; }
  friend Matrix5 operator*(const Matrix5& a, const Matrix5& b) {
    Matrix5 out;
    for (std::size_t i = 0; i < kDim; ++i) {
      for (std::size_t k = 0; k < kDim; ++k) {
        if (dkp::is_zero(a(i, k), 0.0)) continue;
        for (std::size_t j = 0; j < kDim; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    }
    return out;
  }
  friend bool operator==(const Matrix5& a, const Matrix5& b) { return a.entries_ == b.entries_; }

  Matrix5 transpose() const {
    Matrix5 t;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix5 conjugate() const {
    Matrix5 c;
    for (std::size_t i = 0; i < kSize; ++i) c.entries_[i] = dkp::conjugate(entries_[i]);
    return c;
  }
  Matrix5 adjoint() const { return transpose().conjugate(); }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < kDim; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry magnitude; 0 for the zero matrix in either mode.
  double max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, magnitude(e));
    return m;
  }
  bool is_zero(double tol = 0.0) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [tol](const T& e) { return dkp::is_zero(e, tol); });
  }

 private:
  std::array<T, kSize> entries_;
};

template <DkpScalar T>
using ColumnVector = std::array<T, 5>;

/// Row vector times matrix times column vector.
template <DkpScalar T>
T sandwich(const ColumnVector<T>& row, const Matrix5<T>& m, const ColumnVector<T>& col) {
  T acc(0);
  for (std::size_t i = 0; i < 5; ++i) {
    if (is_zero(row[i], 0.0)) continue;
    T inner(0);
    for (std::size_t j = 0; j < 5; ++j) inner += m(i, j) * col[j];
    acc += row[i] * inner;
  }
  return acc;
}

template <DkpScalar T>
ColumnVector<T> apply(const Matrix5<T>& m, const ColumnVector<T>& v) {
  ColumnVector<T> out;
  for (std::size_t i = 0; i < 5; ++i) {
    T acc(0);
    for (std::size_t j = 0; j < 5; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

/// row^T m: the row vector obtained by multiplying from the left.
template <DkpScalar T>
ColumnVector<T> apply_left(const ColumnVector<T>& row, const Matrix5<T>& m) {
  ColumnVector<T> out;
  for (std::size_t j = 0; j < 5; ++j) {
    T acc(0);
    for (std::size_t i = 0; i < 5; ++i) acc += row[i] * m(i, j);
    out[j] = acc;
  }
  return out;
}

template <DkpScalar T>
Matrix5<T> outer(const ColumnVector<T>& col, const ColumnVector<T>& row) {
  Matrix5<T> m;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = col[i] * row[j];
  return m;
}

namespace detail {

// Row-reduces `rows` in place; returns pivot columns. Floating mode pivots on the
// largest magnitude and treats |x| <= tol as zero; exact mode takes any nonzero.
template <DkpScalar T>
std::vector<std::size_t> row_reduce(std::vector<std::vector<T>>& rows, std::size_t cols,
                                    double tol) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t best = rows.size();
    double best_mag = 0.0;
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (dkp::is_zero(rows[i][c], tol)) continue;
      const double mag = magnitude(rows[i][c]);
      if (best == rows.size() || (!ScalarTraits<T>::exact && mag > best_mag)) {
        best = i;
        best_mag = mag;
        if (ScalarTraits<T>::exact) break;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[r], rows[best]);
    const T pivot = rows[r][c];
    for (auto& x : rows[r]) x = x / pivot;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || dkp::is_zero(rows[i][c], 0.0)) continue;
      const T f = rows[i][c];
      for (std::size_t k = c; k < rows[i].size(); ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Rank of a set of equal-length vectors.
template <DkpScalar T>
std::size_t rank(std::vector<std::vector<T>> vectors, double tol = 1e-12) {
  if (vectors.empty()) return 0;
  const std::size_t cols = vectors.front().size();
  return detail::row_reduce(vectors, cols, tol).size();
}

/// Coefficients c with sum_i c_i span[i] == target, if target lies in the span.
/// The span vectors must be linearly independent.
template <DkpScalar T>
std::optional<std::vector<T>> solve_in_span(const std::vector<std::vector<T>>& span,
                                            const std::vector<T>& target, double tol = 1e-12) {
  const std::size_t n = span.size();
  const std::size_t len = target.size();
  // Augmented system: one row per vector component, columns = span vectors + target.
  std::vector<std::vector<T>> rows(len, std::vector<T>(n + 1, T(0)));
  for (std::size_t k = 0; k < len; ++k) {
    for (std::size_t i = 0; i < n; ++i) rows[k][i] = span[i][k];
    rows[k][n] = target[k];
  }
  const auto pivots = detail::row_reduce(rows, n + 1, tol);
  // A pivot in the target column means the system is inconsistent.
  if (pivots.size() != n || (!pivots.empty() && pivots.back() == n)) return std::nullopt;
  std::vector<T> coeffs(n, T(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = rows[r][n];
  return coeffs;
}

template <DkpScalar T>
std::vector<T> flatten(const Matrix5<T>& m) {
  return {m.flat().begin(), m.flat().end()};
}

}  // namespace dkp
