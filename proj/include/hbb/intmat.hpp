#pragma once

#include "hbb/rational.hpp"

#include <stdexcept>
#include <vector>

namespace hbb {

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Mat(int r, int c, const T& v) : rows(r), cols(c), a(static_cast<size_t>(r) * c, v) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n, T(0));
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
};

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Mat<T> r(x.rows, y.cols, T(0));
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& xik = x(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <class T>
std::vector<T> operator*(const Mat<T>& x, const std::vector<T>& v) {
  if (x.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<T> r(x.rows, T(0));
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) r[i] += x(i, k) * v[k];
  return r;
}

using ZMat = Mat<Z>;
using QMat = Mat<Q>;
using LMat = Mat<long long>;

ZMat to_zmat(const LMat& m);
LMat to_lmat(const ZMat& m);
QMat to_qmat(const ZMat& m);

// U * A * V = D with U, V unimodular, D diagonal, d_i | d_{i+1}, d_i >= 0.
// Pivot: smallest absolute nonzero entry, row-major tie-break.
struct SmithForm {
  ZMat U, V, D;
  std::vector<Z> diag() const;
};
SmithForm smith(const ZMat& A);

// Square basis matrix B whose columns span the Z-span of the columns of A.
// A must have full row rank.
ZMat column_basis(const ZMat& A);
ZMat inverse_unimodular(const ZMat& U);

Q det(QMat m);
QMat inverse(const QMat& m);  // throws on singular
int rank(QMat m);
// nullspace basis of m (as column vectors)
std::vector<std::vector<Q>> kernel(QMat m);
// solve m x = b, returns false if inconsistent
bool solve(const QMat& m, const std::vector<Q>& b, std::vector<Q>& x);

// signature (positive, negative) of a symmetric rational matrix by exact LDL^T pivoting
std::pair<int, int> inertia(const QMat& g);

}  // namespace hbb
