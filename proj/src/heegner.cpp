#include "hbb/heegner.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hbb {

// ------------------------------------------------------------------ dimensions

DimensionData dimension_data(const Q& k, const DiscForm& G0, bool dual) {
  if (k < qq(5, 2)) throw PreconditionError("dimension formula used only for k >= 5/2");
  Q twok = 2 * k;
  if (twok.get_den() != 1) throw PreconditionError("weight must lie in (1/2)Z");
  DiscForm G = dual ? G0.negated() : G0;
  WeilRep W(G);
  const long long tk = to_ll(twok.get_num());
  const int sign = W.sign();
  if (mod_ll(tk + sign, 2) != 0) throw PreconditionError("parity condition fails; the space is zero");

  const int L = static_cast<int>(lcm_ll(W.conductor(), 24));
  Fp F = Fp::for_conductor(L);
  const int n = static_cast<int>(G.order());
  // e(a) for a in (1/L)Z
  auto E = [&](const Q& a) {
    Q t = a * zz(L);
    if (t.get_den() != 1) throw std::logic_error("dimension_data: root of unity outside the field");
    return F.zeta(to_ll(t.get_num()));
  };
  FpMat S = W.fp_S(F, 1), Sa = W.fp_S(F, 1, true), Ta = W.fp_T(F, 1, true);
  FpMat Zm = fp_mul(F, S, S);
  // projection onto V = {rho(Z) v = e(-k/2) v}
  FpMat P(n, n, 0);
  uint64_t ek2 = E(k / 2), half = F.inv(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      uint64_t v = F.mul(ek2, Zm(i, j));
      if (i == j) v = F.add(v, 1);
      P(i, j) = F.mul(half, v);
    }
  auto lift_count = [&](uint64_t x, const char* what) {
    long long v = F.lift(x);
    if (v < 0 || v > n) throw std::logic_error(std::string("dimension_data: bad multiplicity for ") + what);
    return v;
  };
  long long d = lift_count(fp_trace(F, P), "V");

  // A1 = e(k/4) rho(S) on V squares to 1
  uint64_t ek4 = E(k / 4);
  FpMat A1P = fp_mul(F, S, P);
  uint64_t trA1 = F.mul(ek4, fp_trace(F, A1P));
  long long m_minus = lift_count(F.mul(F.sub(fp_trace(F, P), trA1), half), "S");
  Q alpha1 = qq(m_minus, 2);

  // A2 = (e(k/6) rho(ST))^{-1} = e(-k/6) rho(T)^* rho(S)^* on V cubes to 1
  FpMat A2 = fp_mul(F, Ta, Sa);
  uint64_t emk6 = E(-k / 6);
  for (auto& x : A2.a) x = F.mul(x, emk6);
  FpMat A2P = fp_mul(F, A2, P);
  FpMat A2sqP = fp_mul(F, A2, A2P);
  uint64_t t0 = fp_trace(F, P), t1 = fp_trace(F, A2P), t2 = fp_trace(F, A2sqP);
  uint64_t w = E(qq(1, 3)), w2 = F.mul(w, w), third = F.inv(3);
  // m(w^a) = (t0 + w^{-a} t1 + w^{-2a} t2) / 3
  auto mult = [&](int a) {
    uint64_t wa = a == 1 ? w2 : w;  // w^{-a}
    uint64_t s = F.add(t0, F.add(F.mul(wa, t1), F.mul(F.mul(wa, wa), t2)));
    return lift_count(F.mul(s, third), "ST");
  };
  Q alpha2 = qq(mult(1), 3) + qq(2 * mult(2), 3);

  // rho(T) on V: one basis vector per {g, -g}, self-inverse g only when 2k = sign mod 4
  Q alpha3 = 0;
  long long dV = 0, isotropic = 0;
  bool self_ok = mod_ll(tk - sign, 4) == 0;
  for (size_t g = 0; g < G.order(); ++g) {
    size_t ng = G.neg(g);
    if (ng < g) continue;
    if (ng == g && !self_ok) continue;
    ++dV;
    Q qv = frac(G.q(g));
    alpha3 += qv;
    if (qv == 0) ++isotropic;
  }
  if (dV != d) throw std::logic_error("dimension_data: eigenspace dimension mismatch");
  Q dm = Q(zz(d)) + Q(zz(d)) * k / 12 - alpha1 - alpha2 - alpha3;
  if (dm.get_den() != 1) throw std::logic_error("dimension_data: non-integral dimension " + q_str(dm));
  DimensionData out;
  out.dim_V = d;
  out.dim_modular = to_ll(dm.get_num());
  out.dim_cusp = out.dim_modular - isotropic;
  if (out.dim_cusp < 0) throw std::logic_error("dimension_data: negative cusp dimension");
  return out;
}

long long dim_cusp(const Q& k, const DiscForm& G, bool dual) { return dimension_data(k, G, dual).dim_cusp; }

// ------------------------------------------------------------------ rank formula

RankFormula rank_formula(int g) {
  if (g < 2) throw PreconditionError("rank formula requires g >= 2");
  RankFormula r;
  r.g = g;
  const long long G = g;
  r.main = qq(31 * G + 24, 24);
  r.jacobi_term = -qq(jacobi(2 * G - 2, 2 * G - 3) * (G % 2), 4);
  r.third = -qq(jacobi(G - 1, 4 * G - 5), 6);
  r.fourth = -qq(jacobi(G - 2, 3) == 0 ? 1 : -1, 6);
  const long long den = 4 * G - 4;
  long long hits = 0;
  for (long long k = 0; k < G; ++k) {
    long long k2 = k * k;
    r.frac_sum -= qq(k2 % den, den);
    if (k2 % den == 0) ++hits;
  }
  r.count = -qq(hits);
  r.total = r.main + r.jacobi_term + r.third + r.fourth + r.frac_sum + r.count;
  if (r.total.get_den() != 1)
    throw std::logic_error("rank formula: non-integral value " + q_str(r.total) + " at g = " + std::to_string(g));
  r.value = to_ll(r.total.get_num());
  return r;
}

std::string rank_formula_reading() {
  return "J(g/2) read as 1 for odd g and 0 for even g; the sign term read as (-1)^{J((g-2)/3)}, "
         "which is -1 exactly when g = 0, 1 mod 3; J((2g-2)/(2g-3)) and J((g-1)/(4g-5)) are Jacobi symbols";
}

// ------------------------------------------------------------------ Heegner combinations

void HeegnerCombo::validate() const {
  for (const auto& [key, a] : terms) {
    const auto& [m, g] = key;
    if (g >= G.order()) throw PreconditionError("Heegner term: element index out of range");
    if (m > 0) throw PreconditionError("Heegner term: m must be <= 0");
    if (frac(m - G.q(g)) != 0) throw PreconditionError("Heegner term: m is not congruent to q(gamma) mod 1");
  }
}

namespace {

bool is_U_pair(const LMat& g, int i) {
  const int n = g.rows;
  if (i + 1 >= n) return false;
  if (g(i, i) != 0 || g(i + 1, i + 1) != 0 || g(i, i + 1) == 0) return false;
  for (int j = 0; j < n; ++j) {
    if (j == i || j == i + 1) continue;
    if (g(i, j) != 0 || g(i + 1, j) != 0) return false;
  }
  return true;
}

}  // namespace

AdmissibleDecomposition make_decomposition(const EvenLattice& M, const LMat& P, long long N1, long long N2) {
  const int n = M.rank();
  if (P.rows != n || P.cols != n) throw PreconditionError("decomposition: basis matrix has the wrong shape");
  if (n < 5) throw PreconditionError("decomposition: rank must be at least 5");
  if (N1 == 0 || N2 == 0) throw PreconditionError("decomposition: N1, N2 must be nonzero");
  Q dt = det(to_qmat(to_zmat(P)));
  if (dt != 1 && dt != -1) throw PreconditionError("decomposition: basis matrix is not unimodular");
  ZMat B = to_zmat(P).transpose() * to_zmat(M.gram()) * to_zmat(P);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < n; ++j) {
      Z want = 0;
      if ((i == 0 && j == 1) || (i == 1 && j == 0)) want = zz(N1);
      if ((i == 2 && j == 3) || (i == 3 && j == 2)) want = zz(N2);
      if (B(i, j) != want || B(j, i) != want) throw PreconditionError("decomposition: not of the form U(N1) + U(N2) + L");
    }
  LMat gl(n - 4, n - 4, 0);
  for (int i = 4; i < n; ++i)
    for (int j = 4; j < n; ++j) gl(i - 4, j - 4) = to_ll(B(i, j));
  AdmissibleDecomposition d;
  d.M = M;
  d.P = P;
  d.N1 = N1;
  d.N2 = N2;
  d.L = EvenLattice(gl, "L");
  if (!d.L.negative_definite()) throw PreconditionError("decomposition: L is not negative definite");
  return d;
}

AdmissibleDecomposition standard_decomposition(const EvenLattice& M) {
  const LMat& g = M.gram();
  const int n = M.rank();
  std::vector<int> pairs;
  for (int i = 0; i + 1 < n;) {
    if (is_U_pair(g, i)) {
      pairs.push_back(i);
      i += 2;
    } else {
      ++i;
    }
  }
  if (pairs.size() < 2) throw PreconditionError("standard decomposition: fewer than two hyperbolic blocks");
  int a = pairs[pairs.size() - 2], b = pairs.back();
  std::vector<int> order = {a, a + 1, b, b + 1};
  for (int i = 0; i < n; ++i)
    if (i != a && i != a + 1 && i != b && i != b + 1) order.push_back(i);
  LMat P(n, n, 0);
  for (int c = 0; c < n; ++c) P(order[static_cast<size_t>(c)], c) = 1;
  return make_decomposition(M, P, g(a, a + 1), g(b, b + 1));
}

Cyc coefficient_pairing(const HeegnerCombo& H, const FourierExpansion& f) {
  if (!f.dual) throw PreconditionError("pairing: expansion must transform under the dual representation");
  if (f.G.order() != H.G.order()) throw PreconditionError("pairing: discriminant forms differ");
  Cyc s;
  for (const auto& [key, a] : H.terms) {
    const auto& [m, g] = key;
    if (-m > f.prec) throw PreconditionError("pairing: expansion precision " + q_str(f.prec) + " below " + q_str(-m));
    if (a == 0) continue;
    s += f.get(g, -m) * a;
  }
  return s;
}

HodgeVerdict hodge_criterion(const HeegnerCombo& H, const std::vector<FourierExpansion>& cusp_span) {
  HodgeVerdict v;
  for (const auto& f : cusp_span) {
    v.pairings.push_back(coefficient_pairing(H, f));
    if (!v.pairings.back().is_zero()) v.proportional = false;
  }
  return v;
}

BoundaryData boundary_data(const AdmissibleDecomposition& d) {
  BoundaryData bd;
  bd.DM = discriminant_group(d.M);
  const DiscForm& G = bd.DM.G;
  const int n = d.M.rank();
  ZMat gram = to_zmat(d.M.gram());
  auto class_of = [&](const std::vector<Q>& x) {
    std::vector<long long> y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Q s = 0;
      for (int j = 0; j < n; ++j) s += Q(gram(i, j)) * x[static_cast<size_t>(j)];
      if (s.get_den() != 1) throw std::logic_error("boundary: vector is not in the dual lattice");
      y[static_cast<size_t>(i)] = to_ll(s.get_num());
    }
    return bd.DM.G.order() == 1 ? size_t(0) : bd.DM.class_of_dual(y);
  };
  auto column = [&](int c, const Q& scale) {
    std::vector<Q> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = Q(zz(d.P(i, c))) * scale;
    return x;
  };
  std::vector<size_t> gens = {class_of(column(0, qq(1, d.N1))), class_of(column(2, qq(1, d.N2)))};
  bd.sq = complement_and_quotient(G, gens);
  DiscriminantData DL = discriminant_group(d.L);
  const size_t nl = DL.G.order();
  if (nl != bd.sq.quotient.order()) throw std::logic_error("boundary: |G_L| differs from |H^perp/H|");
  bd.iso.assign(nl, 0);
  std::vector<bool> hit(nl, false);
  for (size_t idx = 0; idx < nl; ++idx) {
    std::vector<Q> xl = nl == 1 ? std::vector<Q>(static_cast<size_t>(d.L.rank()), Q(0)) : DL.lift(idx);
    std::vector<Q> x(static_cast<size_t>(n), Q(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d.L.rank(); ++j) x[static_cast<size_t>(i)] += Q(zz(d.P(i, 4 + j))) * xl[static_cast<size_t>(j)];
    size_t gm = class_of(x);
    size_t c = bd.sq.proj[gm];
    if (c == Subquotient::npos) throw std::logic_error("boundary: image of G_L leaves H^perp");
    if (hit[c]) throw std::logic_error("boundary: G_L -> H^perp/H is not injective");
    if (bd.sq.quotient.q(c) != DL.G.q(idx)) throw std::logic_error("boundary: G_L -> H^perp/H does not preserve q");
    hit[c] = true;
    bd.iso[idx] = c;
  }
  return bd;
}

std::vector<FourierExpansion> boundary_lifts(const AdmissibleDecomposition& d, const Q& P, int workers) {
  BoundaryData bd = boundary_data(d);
  EvenLattice Lm = rescale(d.L, -1);
  ThetaMoments mom = theta_moments(Lm, P, true, workers);
  std::vector<QuadHarmonic> Fs = quad_harmonic_basis(Lm);
  auto perms = orthogonal_group(bd.sq.quotient);
  std::vector<FourierExpansion> out;
  for (const auto& F : Fs) {
    FourierExpansion th = theta_from_moments(mom, &F, true);
    // move from G_L indices to quotient indices
    FourierExpansion t;
    t.G = bd.sq.quotient;
    t.dual = true;
    t.k = th.k;
    t.prec = th.prec;
    for (const auto& [key, v] : th.c) t.c.emplace(std::make_pair(bd.iso[key.first], key.second), v);
    for (const auto& s : perms) {
      FourierExpansion lifted = lift_expansion(bd.DM.G, bd.sq, pullback(t, s));
      out.push_back(std::move(lifted));
    }
  }
  return out;
}

int expansion_rank(const std::vector<FourierExpansion>& fs, const Q& P) {
  if (fs.empty()) return 0;
  auto slots = fs[0].slots(P);
  std::vector<std::vector<Cyc>> rows;
  for (const auto& f : fs) {
    std::vector<Cyc> row;
    bool nz = false;
    for (const auto& [g, m] : slots) {
      row.push_back(f.get(g, m));
      nz = nz || !row.back().is_zero();
    }
    if (nz) rows.push_back(std::move(row));
  }
  int rank = 0;
  const size_t ncols = slots.size();
  for (size_t c = 0; c < ncols && static_cast<size_t>(rank) < rows.size(); ++c) {
    size_t piv = rows.size();
    for (size_t r = static_cast<size_t>(rank); r < rows.size(); ++r)
      if (!rows[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<size_t>(rank)]);
    const auto& pr = rows[static_cast<size_t>(rank)];
    Cyc inv = pr[c].inv();
    for (size_t r = static_cast<size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      Cyc t = rows[r][c] * inv;
      for (size_t j = c; j < ncols; ++j)
        if (!pr[j].is_zero()) rows[r][j] -= t * pr[j];
    }
    ++rank;
  }
  return rank;
}

ObstructionResult obstruction_span(const EvenLattice& M, const std::vector<AdmissibleDecomposition>& decomps,
                                   const Q& P, int workers, int increments) {
  if (increments < 0) throw PreconditionError("obstruction: negative precision increments");
  ObstructionResult res;
  res.prec = P;
  Q Pmax = P + increments;
  for (const auto& d : decomps) {
    if (d.M.gram() != M.gram()) throw PreconditionError("obstruction: decomposition of a different lattice");
    auto lifts = boundary_lifts(d, Pmax, workers);
    for (auto& f : lifts) res.basis.push_back(std::move(f));
  }
  for (int i = 0; i <= increments; ++i) res.rank_history.push_back(expansion_rank(res.basis, P + i));
  res.rank = res.rank_history.front();
  for (int r : res.rank_history) res.stabilized = res.stabilized && r == res.rank;
  return res;
}

BFVerdict bf_boundary_check(const HeegnerCombo& H, const AdmissibleDecomposition& d, const Q& P, int workers) {
  BFVerdict v;
  auto lifts = boundary_lifts(d, P, workers);
  for (size_t i = 0; i < lifts.size(); ++i) {
    Cyc s = coefficient_pairing(H, lifts[i]);
    if (!s.is_zero()) {
      v.obstructed = true;
      v.witness = i;
      v.value = s;
      return v;
    }
  }
  return v;
}

}  // namespace hbb
