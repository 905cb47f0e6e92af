#include "hbb/qexp.hpp"

#include "hbb/enumerate.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hbb {

Q FourierExpansion::q_eff(size_t g) const { return frac(dual ? -G.q(g) : G.q(g)); }

void FourierExpansion::add(size_t g, const Q& m, const Cyc& v) {
  if (v.is_zero()) return;
  auto key = std::make_pair(g, m);
  auto it = c.find(key);
  if (it == c.end()) {
    c.emplace(key, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) c.erase(it);
  }
}

Cyc FourierExpansion::get(size_t g, const Q& m) const {
  auto it = c.find({g, m});
  return it == c.end() ? Cyc() : it->second;
}

bool FourierExpansion::is_cusp() const {
  for (const auto& [key, v] : c)
    if (key.second == 0 && !v.is_zero()) return false;
  return true;
}

void FourierExpansion::validate() const {
  Q twok = 2 * k;
  if (twok.get_den() != 1) throw PreconditionError("weight must lie in (1/2)Z");
  long long s = G.signature_mod8();
  if (dual) s = -s;
  if (mod_ll(to_ll(twok.get_num()) + s, 2) != 0) throw PreconditionError("parity condition 2k + sign = 0 mod 2 fails");
  for (const auto& [key, v] : c) {
    if (key.first >= G.order()) throw PreconditionError("coefficient index outside the group");
    if (key.second < 0 || key.second > prec) throw PreconditionError("exponent outside [0, prec]");
    if (frac(key.second) != q_eff(key.first)) throw PreconditionError("exponent congruence m = q(g) mod 1 fails");
  }
}

FourierExpansion FourierExpansion::truncated(const Q& P) const {
  FourierExpansion r = *this;
  r.prec = P < prec ? P : prec;
  r.c.clear();
  for (const auto& [key, v] : c)
    if (key.second <= r.prec) r.c.emplace(key, v);
  return r;
}

std::vector<std::pair<size_t, Q>> FourierExpansion::slots(const Q& P) const {
  std::vector<std::pair<size_t, Q>> out;
  for (size_t g = 0; g < G.order(); ++g)
    for (Q m = q_eff(g); m <= P; m += 1) out.emplace_back(g, m);
  return out;
}

std::vector<cplx> FourierExpansion::eval(cplx tau) const {
  std::vector<cplx> v(G.order(), cplx(0, 0));
  const double twopi = 2 * M_PI;
  for (const auto& [key, x] : c) {
    double m = key.second.get_d();
    v[key.first] += x.to_complex() * std::exp(cplx(0, twopi * m) * tau);
  }
  return v;
}

FourierExpansion operator+(const FourierExpansion& a, const FourierExpansion& b) {
  if (a.G.order() != b.G.order() || a.dual != b.dual || a.k != b.k)
    throw PreconditionError("adding expansions of different type");
  FourierExpansion r = a.truncated(a.prec < b.prec ? a.prec : b.prec);
  for (const auto& [key, v] : b.c)
    if (key.second <= r.prec) r.add(key.first, key.second, v);
  return r;
}

FourierExpansion operator*(const Cyc& s, const FourierExpansion& f) {
  FourierExpansion r = f;
  r.c.clear();
  if (s.is_zero()) return r;
  for (const auto& [key, v] : f.c) r.c.emplace(key, s * v);
  return r;
}

bool same_coefficients(const FourierExpansion& a, const FourierExpansion& b, const Q& P) {
  for (const auto& [key, v] : a.c)
    if (key.second <= P && b.get(key.first, key.second) != v) return false;
  for (const auto& [key, v] : b.c)
    if (key.second <= P && a.get(key.first, key.second) != v) return false;
  return true;
}

FourierExpansion lift_expansion(const DiscForm& G, const Subquotient& sq, const FourierExpansion& f) {
  if (f.G.order() != sq.quotient.order()) throw PreconditionError("lift: expansion does not live on H^perp/H");
  FourierExpansion r;
  r.G = G;
  r.dual = f.dual;
  r.k = f.k;
  r.prec = f.prec;
  for (const auto& [key, v] : f.c)
    for (size_t mu : sq.H) r.add(G.add(sq.rep[key.first], mu), key.second, v);
  return r;
}

FourierExpansion pullback(const FourierExpansion& f, const std::vector<size_t>& sigma) {
  FourierExpansion r = f;
  r.c.clear();
  // (sigma^* f)_g = f_{sigma g}
  std::vector<size_t> inv(sigma.size());
  for (size_t g = 0; g < sigma.size(); ++g) inv[sigma[g]] = g;
  for (const auto& [key, v] : f.c) r.c.emplace(std::make_pair(inv[key.first], key.second), v);
  return r;
}

double TailModel::bound(const Q& P, double y) const {
  double t0 = 2 * P.get_d();
  double total = 0;
  double prev = INFINITY;
  for (long long j = 0; j < 1000000; ++j) {
    double lo = t0 + static_cast<double>(j), hi = lo + 1;
    double count = std::pow((std::sqrt(hi) + rho) / rho, r);
    double w = weight * std::pow(hi, deg / 2.0);
    double term = count * w * std::exp(-M_PI * y * lo);
    total += term;
    if (term < 1e-300 || (term < prev && term < 1e-20 * total)) break;
    prev = term;
  }
  return total;
}

// ------------------------------------------------------------------ theta series

ThetaMoments theta_moments(const EvenLattice& M, const Q& P, bool with_second, int workers) {
  ThetaMoments mom;
  mom.M = M;
  mom.D = discriminant_group(M);
  mom.prec = P;
  mom.with_second = with_second;
  DualEnumerator E(M);
  const int r = M.rank();
  const size_t tri = static_cast<size_t>(r) * (r + 1) / 2;
  const long long det = E.det();
  if (workers < 1) workers = 1;
  struct Acc {
    std::map<std::pair<size_t, long long>, size_t> idx;
    std::vector<long long> slot;  // dense (g, n) -> index + 1, when small enough
    std::vector<long long> count;
    std::vector<std::vector<long long>> second;
  };
  const long long B = to_ll(floor_q(2 * P * zz(det)));
  const size_t order = mom.D.G.order();
  const bool dense = static_cast<double>(order) * static_cast<double>(B + 1) <= 4e6;
  std::vector<Acc> acc(static_cast<size_t>(workers));
  if (dense)
    for (auto& a : acc) a.slot.assign(order * static_cast<size_t>(B + 1), 0);
  const bool trivial = order == 1;
  E.for_each(2 * P, [&](const std::vector<long long>& y, long long n, int w) {
    Acc& a = acc[static_cast<size_t>(w)];
    size_t g = trivial ? 0 : mom.D.class_of_dual(y);
    size_t s;
    long long* sl = dense ? &a.slot[g * static_cast<size_t>(B + 1) + static_cast<size_t>(n)] : nullptr;
    if (sl && *sl) {
      s = static_cast<size_t>(*sl - 1);
    } else {
      auto key = std::make_pair(g, n);
      auto it = a.idx.find(key);
      if (it == a.idx.end()) {
        s = a.count.size();
        a.idx.emplace(key, s);
        a.count.push_back(0);
        if (with_second) a.second.emplace_back(tri, 0);
      } else {
        s = it->second;
      }
      if (sl) *sl = static_cast<long long>(s) + 1;
    }
    a.count[s] += 1;
    if (with_second) {
      long long* S = a.second[s].data();
      size_t t = 0;
      for (int i = 0; i < r; ++i) {
        long long yi = y[i];
        if (yi == 0) {
          t += static_cast<size_t>(r - i);
          continue;
        }
        for (int j = i; j < r; ++j) S[t++] += yi * y[j];
      }
    }
  }, workers);
  for (auto& a : acc)
    for (const auto& [key, s] : a.idx) {
      auto k2 = std::make_pair(key.first, qq(key.second, 2 * det));
      mom.count[k2] += a.count[s];
      if (with_second) {
        auto& dst = mom.second[k2];
        if (dst.empty()) dst.assign(tri, 0);
        for (size_t t = 0; t < tri; ++t) dst[t] += a.second[s][t];
      }
    }
  return mom;
}

FourierExpansion theta_from_moments(const ThetaMoments& mom, const QuadHarmonic* F, bool dual) {
  FourierExpansion f;
  f.G = dual ? mom.D.G.negated() : mom.D.G;
  f.dual = dual;
  const int r = mom.M.rank();
  f.k = qq(r, 2) + (F ? 2 : 0);
  f.prec = mom.prec;
  if (!F) {
    for (const auto& [key, n] : mom.count) f.add(key.first, key.second, Cyc(Q(zz(n))));
    return f;
  }
  if (!mom.with_second) throw std::logic_error("theta_from_moments: second moments were not collected");
  QMat gi = inverse(to_qmat(to_zmat(mom.M.gram())));
  QMat K = gi * F->C * gi;
  std::vector<Q> w;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) w.push_back(i == j ? K(i, j) : 2 * K(i, j));
  for (const auto& [key, S] : mom.second) {
    Q s = 0;
    for (size_t t = 0; t < w.size(); ++t)
      if (S[t] != 0 && w[t] != 0) s += w[t] * zz(S[t]);
    f.add(key.first, key.second, Cyc(s));
  }
  return f;
}

FourierExpansion theta_coeffs(const EvenLattice& M, const Q& P, const QuadHarmonic* F, int workers, TailModel* tail) {
  bool neg = M.negative_definite() && M.rank() > 0 && !M.positive_definite();
  if (!neg && !M.positive_definite()) throw PreconditionError("theta series needs a definite lattice");
  EvenLattice Mp = neg ? rescale(M, -1) : M;
  if (F && !is_harmonic(Mp, *F)) throw PreconditionError("theta series weight polynomial is not harmonic");
  ThetaMoments mom = theta_moments(Mp, P, F != nullptr, workers);
  if (tail) {
    DualEnumerator E(Mp);
    tail->r = Mp.rank();
    tail->rho = std::sqrt(E.min_norm().get_d()) / 2;
    tail->deg = F ? 2 : 0;
    tail->weight = F ? std::sqrt(quad_inner(Mp, *F, *F).get_d()) : 1.0;
  }
  return theta_from_moments(mom, F, neg);
}

FourierExpansion genus_theta(const std::vector<GenusRep>& reps, const Q& P) {
  if (reps.empty()) throw PreconditionError("genus_theta: no representatives");
  DiscriminantData D0 = discriminant_group(reps[0].L);
  const DiscForm& GM = D0.G;
  Q wsum = 0;
  FourierExpansion acc;
  bool first = true;
  for (const auto& rep : reps) {
    if (rep.isos.empty()) throw PreconditionError("genus_theta: representative without isomorphisms");
    FourierExpansion th = theta_coeffs(rep.L, P);
    if (th.G.order() != GM.order()) throw PreconditionError("genus_theta: discriminant forms differ");
    Q w = 1 / rep.aut_count;
    wsum += w;
    for (const auto& s : rep.isos) {
      for (size_t g = 0; g < GM.order(); ++g)
        if (th.G.q(s[g]) != GM.q(g)) throw PreconditionError("genus_theta: map does not preserve q");
      FourierExpansion t;
      t.G = GM;
      t.k = th.k;
      t.prec = P;
      for (size_t g = 0; g < GM.order(); ++g)
        for (Q m = frac(GM.q(g)); m <= P; m += 1) t.add(g, m, th.get(s[g], m) * w);
      if (first) {
        acc = t;
        first = false;
      } else {
        acc = acc + t;
      }
    }
  }
  Q denom = Q(zz(static_cast<long long>(orthogonal_group(GM).size()))) * wsum;
  return Cyc(1 / denom) * acc;
}

Q bernoulli(int n) {
  std::vector<Q> B(static_cast<size_t>(n) + 1);
  B[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Q s = 0;
    for (int j = 0; j < m; ++j) s += qq(binom(m + 1, j)) * B[static_cast<size_t>(j)];
    B[static_cast<size_t>(m)] = -s / zz(m + 1);
  }
  return B[static_cast<size_t>(n)];
}

std::vector<Q> eisenstein_level_one(int k, int nmax) {
  if (k < 4 || k % 2) throw PreconditionError("level-one Eisenstein series needs even k >= 4");
  Q c = -Q(2 * k) / bernoulli(k);
  std::vector<Q> e(static_cast<size_t>(nmax) + 1, Q(0));
  e[0] = 1;
  for (int n = 1; n <= nmax; ++n) {
    Z s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        Z p = 1;
        for (int t = 0; t < k - 1; ++t) p *= d;
        s += p;
      }
    e[static_cast<size_t>(n)] = c * Q(s);
  }
  return e;
}

EisensteinReport eisenstein_identity_check(const EvenLattice& M, const Q& P) {
  if (!M.positive_definite() || M.rank() <= 4) throw PreconditionError("Eisenstein identity needs positive definite M with r/2 > 2");
  EisensteinReport rep;
  DiscriminantData D = discriminant_group(M);
  auto og = orthogonal_group(D.G);
  rep.expansion = genus_theta({GenusRep{M, Q(1), og}}, P);
  rep.constant_term_one = rep.expansion.get(0, Q(0)) == Cyc(1L);
  std::ostringstream os;
  if (D.G.order() == 1) {
    rep.oracle_available = true;
    int k = M.rank() / 2;
    int nmax = to_ll(floor_q(P));
    auto e = eisenstein_level_one(k, nmax);
    rep.matches = true;
    for (int n = 0; n <= nmax; ++n) {
      Cyc got = rep.expansion.get(0, Q(zz(n)));
      if (got != Cyc(e[static_cast<size_t>(n)])) {
        rep.matches = false;
        os << "n=" << n << " theta " << got.str() << " eisenstein " << q_str(e[static_cast<size_t>(n)]) << "; ";
      }
    }
    if (rep.matches) os << "coefficients agree with the divisor-sum oracle for n <= " << nmax;
  } else {
    os << "no independent oracle for nontrivial G; genus theta reported as the Eisenstein expansion";
  }
  rep.detail = os.str();
  return rep;
}

ModularityReport modularity_residual(const FourierExpansion& f, const Mp2& g, const std::vector<cplx>& taus,
                                     const TailModel& tail) {
  WeilRep W = f.weil();
  CMat R = W.matrix(g);
  size_t n = f.G.order();
  std::vector<cplx> Rc(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Rc[i * n + j] = R(static_cast<int>(i), static_cast<int>(j)).to_complex();
  Q twokq = 2 * f.k;
  int twok = static_cast<int>(to_ll(twokq.get_num()));
  ModularityReport rep;
  for (cplx tau : taus) {
    if (tau.imag() <= 0) throw PreconditionError("sample point not in the upper half plane");
    cplx gt = g.act(tau);
    auto fg = f.eval(gt);
    auto ft = f.eval(tau);
    cplx phi = g.phi(tau);
    cplx fac = std::pow(1.0 / phi, twok);
    for (size_t i = 0; i < n; ++i) {
      // rho(g)^{-1} = conjugate transpose
      cplx s = 0;
      for (size_t j = 0; j < n; ++j) s += std::conj(Rc[j * n + i]) * fg[j];
      rep.residual = std::max(rep.residual, std::abs(fac * s - ft[i]));
    }
    double tl = std::abs(fac) * tail.bound(f.prec, gt.imag()) + tail.bound(f.prec, tau.imag());
    rep.tail = std::max(rep.tail, tl);
  }
  return rep;
}

SplitThetaReport split_theta_decomposition_check(const EvenLattice& M, const Q& P) {
  if (!M.positive_definite()) throw PreconditionError("split theta check needs a positive definite lattice");
  if (M.rank() > 8) throw PreconditionError("split theta check limited to rank <= 8");
  const int r = M.rank();
  DualEnumerator E(M);
  DiscriminantData D = discriminant_group(M);
  struct V {
    std::vector<long long> y;
    long long n;
    size_t g;
  };
  std::vector<V> vs;
  E.for_each(2 * P, [&](const std::vector<long long>& y, long long n, int) { vs.push_back({y, n, D.class_of_dual(y)}); });
  if (vs.size() > 20000) throw PreconditionError("split theta check: enumeration budget exceeded");
  const long long det = E.det();
  const LMat& A = E.adj();

  // degree 1 counts keyed by (g, n)
  std::map<std::pair<size_t, long long>, long long> c1;
  for (const auto& v : vs) c1[{v.g, v.n}] += 1;

  BiPoly geg;
  if (r >= 3) geg = gegenbauer(r, 2);
  else if (r == 2) geg = gegenbauer_renormalized(2, 2);
  else geg.c = {{{2, 0}, Q(1)}, {{0, 1}, Q(-1)}};

  using Key4 = std::tuple<size_t, long long, size_t, long long>;
  std::map<std::tuple<size_t, long long, size_t, long long, long long>, long long> c2;  // full degree-2 data
  std::map<Key4, Q> lhs;
  for (const auto& a : vs) {
    std::vector<long long> Ay(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) Ay[i] += A(i, j) * a.y[j];
    for (const auto& b : vs) {
      long long ip = 0;  // det * <v1, v2>
      for (int i = 0; i < r; ++i) ip += Ay[i] * b.y[i];
      c2[{a.g, a.n, b.g, b.n, ip}] += 1;
      Q x = qq(ip, det);
      Q yv = qq(a.n, det) * qq(b.n, det);
      lhs[{a.g, a.n, b.g, b.n}] += geg.eval(x, yv);
    }
  }
  SplitThetaReport rep;
  // restriction to diagonal blocks: summing the off-diagonal entry recovers the tensor product
  std::map<Key4, long long> summed;
  for (const auto& [k, v] : c2) summed[{std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k)}] += v;
  rep.decomposition_holds = true;
  for (const auto& [k1, a1] : c1)
    for (const auto& [k2, a2] : c1) {
      Key4 key{k1.first, k1.second, k2.first, k2.second};
      auto it = summed.find(key);
      long long got = it == summed.end() ? 0 : it->second;
      if (got != a1 * a2) rep.decomposition_holds = false;
      ++rep.slots_checked;
    }

  // sum_i Theta_{F_i} x Theta_{F_i} / |F_i|^2 over an orthogonal harmonic basis
  auto basis = quad_harmonic_basis(M);
  ThetaMoments mom = theta_moments(M, P, true);
  std::vector<FourierExpansion> th;
  std::vector<Q> norms;
  for (const auto& F : basis) {
    th.push_back(theta_from_moments(mom, &F, false));
    norms.push_back(quad_inner(M, F, F));
  }
  rep.constant_consistent = true;
  bool have_C = false;
  for (const auto& [key, L] : lhs) {
    Q m1 = qq(std::get<1>(key), 2 * det), m2 = qq(std::get<3>(key), 2 * det);
    Q R = 0;
    for (size_t i = 0; i < th.size(); ++i) {
      Cyc a = th[i].get(std::get<0>(key), m1), b = th[i].get(std::get<2>(key), m2);
      if (a.is_zero() || b.is_zero()) continue;
      R += (a * b).rational_value() / norms[i];
    }
    if (R == 0) {
      if (L != 0) rep.constant_consistent = false;
      continue;
    }
    Q C = L / R;
    if (!have_C) {
      rep.fitted_C = C;
      have_C = true;
    } else if (C != rep.fitted_C) {
      rep.constant_consistent = false;
    }
    ++rep.constant_slots;
  }
  return rep;
}

}  // namespace hbb
