#pragma once

// Small dense linear algebra over (dual) scalars.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "skf/field.hpp"

namespace skf {

using Matrix = std::vector<std::vector<double>>;

// Cholesky factorisation of the leading n x n block of a symmetric matrix,
// returning its inverse and determinant. Throws SingularMetric when a pivot
// is not strictly positive.
template <class T>
void spd_inverse(const Mat<T>& a, int n, Mat<T>& inv, T& det) {
  Mat<T> l{};
  for (auto& row : l) row.fill(T(0.0));
  det = T(1.0);
  for (int j = 0; j < n; ++j) {
    T s = a[j][j];
    for (int k = 0; k < j; ++k) s -= l[j][k] * l[j][k];
    if (!(value_of(s) > 0.0)) {
      throw SingularMetric("metric is not positive definite (pivot " + std::to_string(value_of(s)) + ")");
    }
    T d = sqrt(s);
    l[j][j] = d;
    det *= s;
    for (int i = j + 1; i < n; ++i) {
      T t = a[i][j];
      for (int k = 0; k < j; ++k) t -= l[i][k] * l[j][k];
      l[i][j] = t / d;
    }
  }
  // Invert L by forward substitution, then inv = L^-T L^-1.
  Mat<T> li{};
  for (auto& row : li) row.fill(T(0.0));
  for (int i = 0; i < n; ++i) {
    li[i][i] = 1.0 / l[i][i];
    for (int j = 0; j < i; ++j) {
      T s(0.0);
      for (int k = j; k < i; ++k) s -= l[i][k] * li[k][j];
      li[i][j] = s / l[i][i];
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      T s(0.0);
      for (int k = i; k < n; ++k) s += li[k][i] * li[k][j];
      inv[i][j] = s;
      inv[j][i] = s;
    }
  }
}

// Determinant of a general small matrix by Gaussian elimination with
// partial pivoting on the real value.
template <class T, class M>
T small_det(M a, int n) {
  T det(1.0);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(value_of(a[c][c]));
    for (int r = c + 1; r < n; ++r) {
      double v = std::abs(value_of(a[r][c]));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return T(0.0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      T f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace skf
