#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "shv/dual.hpp"

namespace shv {

/// Minimal dense matrix over an arbitrary smooth scalar (double or nested
/// duals). Used for the pointwise geometry that must stay differentiable;
/// all double-only numerics go through Eigen instead.
template <typename T>
struct MatT {
  int rows = 0;
  int cols = 0;
  std::vector<T> a;

  MatT() = default;
  MatT(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  T& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const T& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

template <typename T>
T dot(std::span<const T> x, std::span<const T> y) {
  T s(0);
  for (size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i];
  return s;
}

template <typename T>
std::vector<T> matvec(const MatT<T>& m, std::span<const T> x) {
  std::vector<T> out(static_cast<size_t>(m.rows), T(0));
  for (int r = 0; r < m.rows; ++r) {
    T s(0);
    for (int c = 0; c < m.cols; ++c) s = s + m(r, c) * x[c];
    out[r] = s;
  }
  return out;
}

/// x^T M y for a bilinear form M.
template <typename T>
T bilinear(const MatT<T>& m, std::span<const T> x, std::span<const T> y) {
  T s(0);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) s = s + x[r] * m(r, c) * y[c];
  return s;
}

/// In-place LU solve with partial pivoting on the value part. Solves
/// A X = B for several right-hand sides (B columns). Throws on a pivot
/// collapsing to zero.
template <typename T>
MatT<T> solve(MatT<T> A, MatT<T> B) {
  if (A.rows != A.cols || B.rows != A.rows)
    throw std::invalid_argument("solve: shape mismatch");
  const int n = A.rows;
  const int k = B.cols;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(A(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(value_of(A(r, col)));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > 0.0)) throw std::domain_error("solve: singular matrix");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(A(piv, c), A(col, c));
      for (int c = 0; c < k; ++c) std::swap(B(piv, c), B(col, c));
    }
    T inv = T(1) / A(col, col);
    for (int r = col + 1; r < n; ++r) {
      T f = A(r, col) * inv;
      for (int c = col; c < n; ++c) A(r, c) = A(r, c) - f * A(col, c);
      for (int c = 0; c < k; ++c) B(r, c) = B(r, c) - f * B(col, c);
    }
  }
  MatT<T> X(n, k);
  for (int c = 0; c < k; ++c) {
    for (int r = n - 1; r >= 0; --r) {
      T s = B(r, c);
      for (int j = r + 1; j < n; ++j) s = s - A(r, j) * X(j, c);
      X(r, c) = s / A(r, r);
    }
  }
  return X;
}

template <typename T>
std::vector<T> solve_vec(const MatT<T>& A, std::span<const T> b) {
  MatT<T> B(static_cast<int>(b.size()), 1);
  for (size_t i = 0; i < b.size(); ++i) B(static_cast<int>(i), 0) = b[i];
  MatT<T> X = solve(A, B);
  std::vector<T> out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = X(static_cast<int>(i), 0);
  return out;
}

/// Determinant via LU with partial pivoting on the value part.
template <typename T>
T determinant(MatT<T> A) {
  if (A.rows != A.cols) throw std::invalid_argument("determinant: not square");
  const int n = A.rows;
  T det(1);
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(A(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(value_of(A(r, col)));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > 0.0)) return T(0);
    if (piv != col) {
      sign = -sign;
      for (int c = 0; c < n; ++c) std::swap(A(piv, c), A(col, c));
    }
    det = det * A(col, col);
    T inv = T(1) / A(col, col);
    for (int r = col + 1; r < n; ++r) {
      T f = A(r, col) * inv;
      for (int c = col; c < n; ++c) A(r, c) = A(r, c) - f * A(col, c);
    }
  }
  return sign > 0 ? det : -det;
}

}  // namespace shv
