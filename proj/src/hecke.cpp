#include "hbb/hecke.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hbb {

namespace {

std::vector<std::pair<long long, int>> factor_pp(long long a) {
  std::vector<std::pair<long long, int>> out;
  for (long long p : prime_factors(a)) {
    int n = 0;
    while (a % p == 0) {
      a /= p;
      ++n;
    }
    out.push_back({p, n});
  }
  return out;
}

std::vector<Mp2> prime_power_reps(long long p, int n) {
  std::vector<Mp2> reps;
  for (int a = 0; a <= 2 * n; ++a) {
    long long pa = ipow(p, a), g = ipow(p, std::min(a, 2 * n - a));
    for (long long b = 0; b < pa; ++b)
      if (gcd_ll(b, g) == 1) reps.push_back(Mp2{ipow(p, 2 * n - a), b, 0, pa, 1});
  }
  return reps;
}

// alpha^{2k-2} D^{-k} branch^{-2k} for an upper triangular rep with lower right entry D
Cyc slash_factor(long long alpha, const Mp2& d, const Q& k) {
  Q tk = 2 * k;
  const long long t = to_ll(tk.get_num());
  Q a2 = Q(zz(alpha)) * zz(alpha);
  Q base = 1;
  // alpha^{t - 2} D^{-floor(t/2)}
  for (long long i = 0; i < t; ++i) base *= zz(alpha);
  base /= a2;
  long long half = t >= 0 ? t / 2 : -((-t + 1) / 2);
  Q Dp = 1;
  for (long long i = 0; i < std::llabs(half); ++i) Dp *= zz(d.d);
  if (half >= 0) base /= Dp;
  else base *= Dp;
  Cyc out(base);
  if (mod_ll(t, 2) == 1) out = out * Cyc::sqrt_int(d.d).inv();
  if (d.branch == -1 && mod_ll(t, 2) == 1) out = -out;
  return out;
}

long long group_exponent(const DiscForm& G) { return G.divisors().empty() ? 1 : G.divisors().back(); }

}  // namespace

HeckeCosetSystem coset_reps(long long alpha) {
  if (alpha < 1) throw PreconditionError("Hecke operators need alpha >= 1");
  HeckeCosetSystem sys;
  sys.alpha = alpha;
  sys.reps = {Mp2::I()};
  for (auto [p, n] : factor_pp(alpha)) {
    auto pr = prime_power_reps(p, n);
    std::vector<Mp2> next;
    for (const auto& x : sys.reps)
      for (const auto& y : pr) next.push_back(x * y);
    sys.reps = std::move(next);
  }
  return sys;
}

long long coset_count(long long alpha) {
  long long c = 1;
  for (auto [p, n] : factor_pp(alpha)) c *= ipow(p, 2 * n) + ipow(p, 2 * n - 1);
  return c;
}

bool distinct_left_cosets(const std::vector<Mp2>& reps) {
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j) {
      const Mp2 &x = reps[i], &y = reps[j];
      // x adj(y) / det(y)
      long long dt = y.det();
      long long m[4] = {x.a * y.d - x.b * y.c, -x.a * y.b + x.b * y.a, x.c * y.d - x.d * y.c, -x.c * y.b + x.d * y.a};
      bool integral = true;
      for (long long v : m) integral = integral && v % dt == 0;
      if (integral) return false;
    }
  return true;
}

FourierExpansion hecke_T(long long alpha, const FourierExpansion& f, const Q& P_out) {
  if (alpha < 1) throw PreconditionError("Hecke operators need alpha >= 1");
  Q need = hecke_required_precision(alpha, P_out);
  if (f.prec < need)
    throw PreconditionError("hecke: input precision " + q_str(f.prec) + " below the required " + q_str(need));
  WeilRep W = f.weil();
  const size_t n = f.G.order();
  HeckeCosetSystem sys = coset_reps(alpha);
  FourierExpansion out;
  out.G = f.G;
  out.dual = f.dual;
  out.k = f.k;
  out.prec = P_out;
  std::map<std::pair<size_t, Q>, Cyc> acc;
  for (const auto& d : sys.reps) {
    std::vector<CVec> img(n);
    Cyc fac = slash_factor(alpha, d, f.k);
    Q scale = qq(d.a, d.d), shift = qq(d.b, d.d);
    for (const auto& [key, c] : f.c) {
      const auto& [g, m] = key;
      Q mo = m * scale;
      if (mo > P_out) continue;
      if (img[g].empty()) img[g] = W.act_extended(d, W.basis(g));
      Cyc v = c * fac * Cyc::e(m * shift);
      for (size_t l = 0; l < n; ++l)
        if (!img[g][l].is_zero()) acc[{l, mo}] += v * img[g][l];
    }
  }
  for (auto& [key, v] : acc)
    if (!v.is_zero()) out.c.emplace(key, v);
  out.validate();
  return out;
}

ScalarExpansion component(const FourierExpansion& f, size_t g) {
  ScalarExpansion s;
  for (const auto& [key, v] : f.c)
    if (key.first == g && !v.is_zero()) s[key.second] = v;
  return s;
}

ScalarExpansion scalar_T(const Q& q_val, long long p, int n, const ScalarExpansion& F, const Q& k, const Q& P_out) {
  (void)k;  // p^{(k-2)n} times the slash factor p^{-nk} leaves p^{-2n}
  if (n == 0) {
    ScalarExpansion out;
    for (const auto& [m, v] : F)
      if (m <= P_out) out[m] = v;
    return out;
  }
  const long long D = ipow(p, 2 * n);
  ScalarExpansion out;
  for (const auto& [m, v] : F) {
    Q mo = m / zz(D);
    if (mo > P_out) continue;
    Cyc s;
    for (long long b = 0; b < D; ++b) s += Cyc::e(Q(zz(b)) * (mo - q_val));
    Cyc t = v * s * qq(1, D);
    if (!t.is_zero()) out[mo] += t;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

bool star_condition(size_t gamma, long long p, const DiscForm& G) {
  for (size_t x = 0; x < G.order(); ++x)
    if (G.mul(p, x) == gamma) return false;
  if (p != 2) return true;
  for (size_t mu = 0; mu < G.order(); ++mu) {
    if (G.mul(2, mu) != 0) continue;
    if (frac(2 * G.q(mu) + G.b(mu, gamma)) != 0) return true;
  }
  return false;
}

size_t p_part(const DiscForm& G, size_t gamma, long long p) {
  long long N = group_exponent(G), pv = 1;
  while (N % (pv * p) == 0) pv *= p;
  long long rest = N / pv;
  // e = 1 mod pv, 0 mod rest
  long long e = 0;
  for (long long t = 0; t < pv; ++t)
    if (mod_ll(t * rest, pv) == 1 % pv) {
      e = t * rest;
      break;
    }
  if (pv == 1) e = 0;
  return G.mul(e, gamma);
}

std::vector<Q> vanishing_vector(size_t gamma, size_t mu, const std::vector<long long>& S, const DiscForm& G) {
  long long prod = 1;
  for (long long p : S) prod *= p;
  if (G.mul(prod, gamma) != G.mul(prod, mu)) throw PreconditionError("vanishing vector: (prod p) gamma != (prod p) mu");
  if (G.q(gamma) != G.q(mu)) throw PreconditionError("vanishing vector: q(gamma) != q(mu)");
  for (long long p : S)
    if (!star_condition(gamma, p, G))
      throw PreconditionError("vanishing vector: condition fails at p = " + std::to_string(p));
  std::vector<Q> v(G.order(), Q(0));
  const size_t s = S.size();
  for (size_t I = 0; I < (size_t(1) << s); ++I) {
    size_t x = gamma;
    int sgn = 1;
    for (size_t t = 0; t < s; ++t)
      if (I >> t & 1) {
        sgn = -sgn;
        x = G.add(G.add(x, G.neg(p_part(G, gamma, S[t]))), p_part(G, mu, S[t]));
      }
    v[x] += sgn;
  }
  return v;
}

SupportReport support_property(const DiscForm& G, long long p, int n) {
  SupportReport rep;
  WeilRep W(G);
  std::set<size_t> allowed;
  for (size_t x : G_upper(G, p)) allowed.insert(x);
  if (p == 2)
    for (size_t x : G_upper_star(G, 2)) allowed.insert(x);
  const long long top = ipow(p, 2 * n);
  for (const auto& d : prime_power_reps(p, n)) {
    if (d.d == top) continue;  // a = 2n
    ++rep.reps_checked;
    for (size_t mu = 0; mu < G.order(); ++mu) {
      CVec img = W.act_extended(d, W.basis(mu));
      ++rep.vectors_checked;
      for (size_t l = 0; l < img.size(); ++l)
        if (!img[l].is_zero() && !allowed.count(l)) rep.holds = false;
    }
  }
  return rep;
}

namespace {

// solve B x = t over Q(zeta); B is rows x cols of full column rank
bool solve_cyc(std::vector<std::vector<Cyc>> B, std::vector<Cyc> t, std::vector<Cyc>& x) {
  const size_t rows = B.size(), cols = rows ? B[0].size() : 0;
  std::vector<size_t> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (!B[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows) return false;
    std::swap(B[piv], B[r]);
    std::swap(t[piv], t[r]);
    Cyc inv = B[r][c].inv();
    for (size_t j = c; j < cols; ++j) B[r][j] = B[r][j] * inv;
    t[r] = t[r] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || B[i][c].is_zero()) continue;
      Cyc f = B[i][c];
      for (size_t j = c; j < cols; ++j) B[i][j] -= f * B[r][j];
      t[i] -= f * t[r];
    }
    pivcol.push_back(c);
    ++r;
  }
  if (pivcol.size() != cols) return false;
  for (size_t i = r; i < rows; ++i)
    if (!t[i].is_zero()) return false;
  x.assign(cols, Cyc());
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = t[i];
  return true;
}

}  // namespace

EigenResult eigenbasis(const std::vector<FourierExpansion>& basis, const std::vector<long long>& alphas, const Q& P) {
  if (basis.empty()) throw PreconditionError("eigenbasis: empty basis");
  EigenResult res;
  res.alphas = alphas;
  const int nb = static_cast<int>(basis.size());
  auto slots = basis[0].slots(P);
  std::vector<std::vector<Cyc>> B(slots.size(), std::vector<Cyc>(basis.size()));
  for (size_t s = 0; s < slots.size(); ++s)
    for (size_t j = 0; j < basis.size(); ++j) B[s][j] = basis[j].get(slots[s].first, slots[s].second);
  for (long long a : alphas) {
    CMat M(nb, nb, Cyc());
    for (int j = 0; j < nb; ++j) {
      FourierExpansion t = hecke_T(a, basis[static_cast<size_t>(j)], P);
      std::vector<Cyc> rhs(slots.size());
      for (size_t s = 0; s < slots.size(); ++s) rhs[s] = t.get(slots[s].first, slots[s].second);
      std::vector<Cyc> x;
      if (!solve_cyc(B, rhs, x))
        throw PreconditionError("eigenbasis: span is not stable under T_" + std::to_string(a * a) + " at this precision");
      for (int i = 0; i < nb; ++i) M(i, j) = x[static_cast<size_t>(i)];
    }
    res.matrices.push_back(M);
  }
  for (size_t i = 0; i < res.matrices.size(); ++i)
    for (size_t j = i + 1; j < res.matrices.size(); ++j)
      if (res.matrices[i] * res.matrices[j] != res.matrices[j] * res.matrices[i]) res.commute = false;
  if (!res.commute) throw PreconditionError("eigenbasis: Hecke matrices do not commute at this precision");

  using MX = Eigen::MatrixXcd;
  std::vector<MX> num;
  for (const auto& M : res.matrices) {
    MX m(nb, nb);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) m(i, j) = M(i, j).to_complex();
    num.push_back(m);
  }
  // a generic combination separates the joint eigenspaces
  MX comb = MX::Zero(nb, nb);
  for (size_t i = 0; i < num.size(); ++i) comb += cplx(1.0 / (i + M_PI), 1.0 / (i + M_E)) * num[i];
  if (num.empty()) comb = MX::Identity(nb, nb);
  Eigen::ComplexEigenSolver<MX> es(comb);
  MX V = es.eigenvectors();
  struct Form {
    std::vector<cplx> v, lam;
  };
  std::vector<Form> forms;
  for (int c = 0; c < nb; ++c) {
    Eigen::VectorXcd v = V.col(c);
    v /= v.norm();
    Form f;
    for (int i = 0; i < nb; ++i) f.v.push_back(v(i));
    for (const auto& m : num) {
      Eigen::VectorXcd w = m * v;
      cplx lam = v.dot(w);
      if ((w - lam * v).norm() > 1e-8 * (1 + m.norm())) throw PreconditionError("eigenbasis: matrices are not diagonalizable");
      f.lam.push_back(lam);
    }
    forms.push_back(f);
  }
  std::sort(forms.begin(), forms.end(), [](const Form& a, const Form& b) {
    for (size_t i = 0; i < a.lam.size(); ++i) {
      if (std::abs(a.lam[i].real() - b.lam[i].real()) > 1e-9) return a.lam[i].real() < b.lam[i].real();
      if (std::abs(a.lam[i].imag() - b.lam[i].imag()) > 1e-9) return a.lam[i].imag() < b.lam[i].imag();
    }
    return false;
  });
  for (auto& f : forms) {
    res.vectors.push_back(f.v);
    res.eigenvalues.push_back(f.lam);
  }
  return res;
}

cplx l_series_partial(const std::map<long long, cplx>& eigenvalues, cplx s, long long cutoff) {
  cplx sum = 0;
  for (const auto& [a, lam] : eigenvalues) {
    if (a > cutoff) break;
    sum += lam * std::exp(-s * std::log(static_cast<double>(a)));
  }
  return sum;
}

}  // namespace hbb
