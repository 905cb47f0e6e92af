#include "hbb/intmat.hpp"

#include <algorithm>
#include <utility>

namespace hbb {

ZMat to_zmat(const LMat& m) {
  ZMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Z(static_cast<long>(m.a[i]));
  return r;
}

LMat to_lmat(const ZMat& m) {
  LMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = to_ll(m.a[i]);
  return r;
}

QMat to_qmat(const ZMat& m) {
  QMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Q(m.a[i]);
  return r;
}

std::vector<Z> SmithForm::diag() const {
  std::vector<Z> d;
  for (int i = 0; i < std::min(D.rows, D.cols); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

void swap_rows(ZMat& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
void swap_cols(ZMat& m, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
// row_i += k * row_j
void add_row(ZMat& m, int i, int j, const Z& k) {
  if (k == 0) return;
  for (int c = 0; c < m.cols; ++c) m(i, c) += k * m(j, c);
}
void add_col(ZMat& m, int i, int j, const Z& k) {
  if (k == 0) return;
  for (int r = 0; r < m.rows; ++r) m(r, i) += k * m(r, j);
}

}  // namespace

SmithForm smith(const ZMat& A) {
  SmithForm s;
  ZMat D = A;
  ZMat U = ZMat::identity(A.rows), V = ZMat::identity(A.cols);
  const int n = std::min(A.rows, A.cols);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      Z best;
      for (int i = t; i < D.rows; ++i)
        for (int j = t; j < D.cols; ++j) {
          if (D(i, j) == 0) continue;
          Z av = abs(D(i, j));
          if (pi < 0 || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) goto done;
      swap_rows(D, t, pi);
      swap_rows(U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(V, t, pj);
      bool dirty = false;
      for (int i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0) continue;
        Z k = D(i, t) / D(t, t);
        add_row(D, i, t, -k);
        add_row(U, i, t, -k);
        if (D(i, t) != 0) dirty = true;
      }
      for (int j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0) continue;
        Z k = D(t, j) / D(t, t);
        add_col(D, j, t, -k);
        add_col(V, j, t, -k);
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      int bad = -1;
      for (int i = t + 1; i < D.rows && bad < 0; ++i)
        for (int j = t + 1; j < D.cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(D, t, bad, Z(1));
      add_row(U, t, bad, Z(1));
    }
    if (D(t, t) < 0) {
      for (int c = 0; c < D.cols; ++c) D(t, c) = -D(t, c);
      for (int c = 0; c < U.cols; ++c) U(t, c) = -U(t, c);
    }
  }
done:
  s.U = std::move(U);
  s.V = std::move(V);
  s.D = std::move(D);
  return s;
}

ZMat inverse_unimodular(const ZMat& U) {
  QMat inv = inverse(to_qmat(U));
  ZMat r(U.rows, U.cols);
  for (size_t i = 0; i < inv.a.size(); ++i) {
    if (inv.a[i].get_den() != 1) throw std::invalid_argument("matrix is not unimodular");
    r.a[i] = inv.a[i].get_num();
  }
  return r;
}

ZMat column_basis(const ZMat& A) {
  SmithForm s = smith(A);
  const int m = A.rows;
  for (int i = 0; i < m; ++i)
    if (i >= A.cols || s.D(i, i) == 0) throw std::invalid_argument("column_basis: rank deficient");
  ZMat Ui = inverse_unimodular(s.U);
  ZMat B(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) B(i, j) = Ui(i, j) * s.D(j, j);
  return B;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMat& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Q inv = 1 / m(r, c);
    for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Q f = m(i, c);
      for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Q det(QMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: non-square");
  const int n = m.rows;
  Q d = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Q f = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

QMat inverse(const QMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: non-square");
  const int n = m.rows;
  QMat aug(n, 2 * n, Q(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::invalid_argument("inverse: singular matrix");
  QMat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

int rank(QMat m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Q>> kernel(QMat m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Q>> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Q> v(m.cols, Q(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

bool solve(const QMat& m, const std::vector<Q>& b, std::vector<Q>& x) {
  QMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return false;
  x.assign(m.cols, Q(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), m.cols);
  return true;
}

std::pair<int, int> inertia(const QMat& g) {
  QMat m = g;
  int n = m.rows, pos = 0, neg = 0;
  std::vector<bool> used(n, false);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i] && m(i, i) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // all remaining diagonal entries vanish: replace row/col i by i + j
      int pi = -1, pj = -1;
      for (int i = 0; i < n && pi < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (!used[i] && !used[j] && i != j && m(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      for (int c = 0; c < n; ++c) m(pi, c) += m(pj, c);
      for (int r = 0; r < n; ++r) m(r, pi) += m(r, pj);
      p = pi;
    }
    used[p] = true;
    Q d = m(p, p);
    if (d > 0) ++pos; else ++neg;
    for (int i = 0; i < n; ++i) {
      if (used[i] || m(i, p) == 0) continue;
      Q f = m(i, p) / d;
      for (int j = 0; j < n; ++j)
        if (!used[j]) m(i, j) -= f * m(p, j);
    }
    for (int i = 0; i < n; ++i)
      if (!used[i]) m(i, p) = m(p, i) = 0;
  }
  return {pos, neg};
}

}  // namespace hbb
