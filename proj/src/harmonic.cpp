#include "hbb/harmonic.hpp"

#include <stdexcept>

namespace hbb {

namespace {

void monomials(int r, int h, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == r - 1) {
    cur[pos] = h;
    out.push_back(cur);
    return;
  }
  for (int e = h; e >= 0; --e) {
    cur[pos] = e;
    monomials(r, h - e, cur, pos + 1, out);
  }
}

std::vector<std::vector<int>> all_monomials(int r, int h) {
  std::vector<std::vector<int>> out;
  if (h < 0) return out;
  std::vector<int> cur(r, 0);
  monomials(r, h, cur, 0, out);
  return out;
}

Z factorial(int n) {
  Z f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Q HarmonicPolynomial::eval(const std::vector<Q>& x) const {
  Q s = 0;
  for (const auto& [e, v] : c) {
    Q t = v;
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

HarmonicPolynomial HarmonicPolynomial::laplacian() const {
  HarmonicPolynomial L;
  L.r = r;
  L.h = h - 2;
  for (const auto& [e, v] : c)
    for (int i = 0; i < r; ++i)
      if (e[i] >= 2) {
        auto f = e;
        f[i] -= 2;
        L.c[f] += v * zz(static_cast<long long>(e[i]) * (e[i] - 1));
      }
  for (auto it = L.c.begin(); it != L.c.end();) it = it->second == 0 ? L.c.erase(it) : std::next(it);
  return L;
}

Q apolar(const HarmonicPolynomial& f, const HarmonicPolynomial& g) {
  Q s = 0;
  for (const auto& [e, v] : f.c) {
    auto it = g.c.find(e);
    if (it == g.c.end()) continue;
    Z w = 1;
    for (int a : e) w *= factorial(a);
    s += v * it->second * Q(w);
  }
  return s;
}

Z harmonic_dimension(int r, int h) {
  Z a = zz(binom(r + h - 1, r - 1));
  Z b = h >= 2 ? zz(binom(r + h - 3, r - 1)) : Z(0);
  return a - b;
}

std::vector<HarmonicPolynomial> harmonic_basis(int r, int h) {
  if (r < 1 || h < 0) throw PreconditionError("harmonic_basis: need r >= 1, h >= 0");
  auto mons = all_monomials(r, h);
  std::vector<std::vector<Q>> ker;
  if (h < 2) {
    for (size_t i = 0; i < mons.size(); ++i) {
      std::vector<Q> v(mons.size(), Q(0));
      v[i] = 1;
      ker.push_back(v);
    }
  } else {
    auto low = all_monomials(r, h - 2);
    std::map<std::vector<int>, int> lowidx;
    for (size_t i = 0; i < low.size(); ++i) lowidx[low[i]] = static_cast<int>(i);
    QMat L(static_cast<int>(low.size()), static_cast<int>(mons.size()), Q(0));
    for (size_t j = 0; j < mons.size(); ++j)
      for (int i = 0; i < r; ++i)
        if (mons[j][i] >= 2) {
          auto f = mons[j];
          f[i] -= 2;
          L(lowidx[f], static_cast<int>(j)) += zz(static_cast<long long>(mons[j][i]) * (mons[j][i] - 1));
        }
    ker = kernel(L);
  }
  std::vector<HarmonicPolynomial> basis;
  for (const auto& v : ker) {
    HarmonicPolynomial p;
    p.r = r;
    p.h = h;
    for (size_t i = 0; i < mons.size(); ++i)
      if (v[i] != 0) p.c[mons[i]] = v[i];
    for (const auto& b : basis) {
      Q t = apolar(p, b) / apolar(b, b);
      for (const auto& [e, x] : b.c) p.c[e] -= t * x;
    }
    for (auto it = p.c.begin(); it != p.c.end();) it = it->second == 0 ? p.c.erase(it) : std::next(it);
    basis.push_back(p);
  }
  return basis;
}

Q BiPoly::eval(const Q& x, const Q& y) const {
  Q s = 0;
  for (const auto& [e, v] : c) {
    Q t = v;
    for (int i = 0; i < e.first; ++i) t *= x;
    for (int j = 0; j < e.second; ++j) t *= y;
    s += t;
  }
  return s;
}

namespace {

// coefficient of T^h in (1 - 2xT + yT^2)^{-s}: sum_j (s)_{h-j}/(h-j)! C(h-j, j) (2x)^{h-2j} (-y)^j
BiPoly gegen_s(const Q& s, int h) {
  BiPoly p;
  for (int j = 0; 2 * j <= h; ++j) {
    int n = h - j;
    Q rising = 1;
    for (int t = 0; t < n; ++t) rising *= s + t;
    Q c = rising / Q(factorial(n)) * qq(binom(n, j));
    for (int t = 0; t < h - 2 * j; ++t) c *= 2;
    if (j % 2) c = -c;
    if (c != 0) p.c[{h - 2 * j, j}] = c;
  }
  return p;
}

}  // namespace

BiPoly gegenbauer(int r, int h) {
  if (r < 3) throw PreconditionError("gegenbauer: r >= 3 required");
  if (h < 0) throw PreconditionError("gegenbauer: h >= 0 required");
  return gegen_s(qq(r - 2, 2), h);
}

BiPoly gegenbauer_renormalized(int r, int h) {
  if (r < 2 || h < 1) throw PreconditionError("gegenbauer_renormalized: r >= 2, h >= 1");
  if (r > 2) {
    BiPoly p = gegenbauer(r, h);
    Q s = qq(r - 2, 2);
    for (auto& [e, v] : p.c) v /= s;
    return p;
  }
  // d/ds at s = 0 of (s)_n / n! is 1/n for n >= 1
  BiPoly p;
  for (int j = 0; 2 * j <= h; ++j) {
    int n = h - j;
    Q c = qq(1, n) * qq(binom(n, j));
    for (int t = 0; t < h - 2 * j; ++t) c *= 2;
    if (j % 2) c = -c;
    p.c[{h - 2 * j, j}] = c;
  }
  return p;
}

Q QuadHarmonic::eval(const std::vector<Q>& x) const {
  Q s = 0;
  for (int i = 0; i < C.rows; ++i)
    for (int j = 0; j < C.cols; ++j)
      if (C(i, j) != 0) s += x[i] * C(i, j) * x[j];
  return s;
}

namespace {

Q trace(const QMat& m) {
  Q t = 0;
  for (int i = 0; i < m.rows; ++i) t += m(i, i);
  return t;
}

QMat ginv(const EvenLattice& M) { return inverse(to_qmat(to_zmat(M.gram()))); }

}  // namespace

bool is_harmonic(const EvenLattice& M, const QuadHarmonic& F) { return trace(ginv(M) * F.C) == 0; }

QuadHarmonic F_u(const EvenLattice& M, const std::vector<Q>& u) {
  int r = M.rank();
  QMat G = to_qmat(to_zmat(M.gram()));
  std::vector<Q> Gu = G * u;
  Q uu = 0;
  for (int i = 0; i < r; ++i) uu += u[i] * Gu[i];
  QuadHarmonic F{QMat(r, r, Q(0))};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) F.C(i, j) = Gu[i] * Gu[j] - uu * G(i, j) / zz(r);
  return F;
}

Q quad_inner(const EvenLattice& M, const QuadHarmonic& a, const QuadHarmonic& b) {
  QMat gi = ginv(M);
  return trace(a.C * gi * b.C * gi);
}

std::vector<QuadHarmonic> quad_harmonic_basis(const EvenLattice& M) {
  int r = M.rank();
  QMat gi = ginv(M);
  std::vector<QuadHarmonic> basis;
  std::vector<Q> norms;
  auto try_add = [&](std::vector<Q> u) {
    QuadHarmonic F = F_u(M, u);
    for (size_t t = 0; t < basis.size(); ++t) {
      Q c = trace(F.C * gi * basis[t].C * gi) / norms[t];
      if (c == 0) continue;
      for (size_t k = 0; k < F.C.a.size(); ++k) F.C.a[k] -= c * basis[t].C.a[k];
    }
    Q n = trace(F.C * gi * F.C * gi);
    if (n == 0) return;
    basis.push_back(F);
    norms.push_back(n);
  };
  for (int i = 0; i < r; ++i) {
    std::vector<Q> u(r, Q(0));
    u[i] = 1;
    try_add(u);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      std::vector<Q> u(r, Q(0));
      u[i] = 1;
      u[j] = 1;
      try_add(u);
    }
  return basis;
}

}  // namespace hbb
