#include "hbb/weilrep.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hbb {

const cplx kTau0(0.0, 2.0);

namespace {

constexpr double kBranchTol = 1e-6;

cplx psqrt_lin(long long c, long long d, cplx tau) {
  if (c == 0) {
    if (d > 0) return {std::sqrt(static_cast<double>(d)), 0.0};
    if (d < 0) return {0.0, std::sqrt(static_cast<double>(-d))};
    throw std::domain_error("metaplectic multiplier vanishes");
  }
  return std::sqrt(static_cast<double>(c) * tau + static_cast<double>(d));
}

int branch_of(cplx ratio) {
  if (std::abs(ratio - 1.0) < kBranchTol) return 1;
  if (std::abs(ratio + 1.0) < kBranchTol) return -1;
  throw std::runtime_error("metaplectic branch is not +-1");
}

// point used to evaluate phi_x at y tau0 when y is degenerate (image on the real line)
cplx image_point(const Mp2& y) {
  if (y.det() != 0) return y.act(kTau0);
  cplx t = y.act(kTau0);
  return {t.real(), 1e-12};
}

}  // namespace

cplx Mp2::act(cplx tau) const {
  return (static_cast<double>(a) * tau + static_cast<double>(b)) /
         (static_cast<double>(c) * tau + static_cast<double>(d));
}

cplx Mp2::phi(cplx tau) const { return static_cast<double>(branch) * psqrt_lin(c, d, tau); }

Mp2 Mp2::inverse() const {
  if (det() != 1) throw std::invalid_argument("Mp2::inverse requires det 1");
  Mp2 r{d, -b, -c, a, 1};
  cplx want = 1.0 / phi(r.act(kTau0));
  r.branch = branch_of(want / r.phi(kTau0));
  return r;
}

std::string Mp2::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]," << (branch > 0 ? "+" : "-");
  return os.str();
}

Mp2 from_matrix(long long a, long long b, long long c, long long d, int branch) { return {a, b, c, d, branch}; }

Mp2 operator*(const Mp2& x, const Mp2& y) {
  Mp2 r{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, 1};
  if (r.c == 0 && r.d == 0) throw PreconditionError("product has vanishing multiplier");
  cplx want = x.phi(image_point(y)) * y.phi(kTau0);
  r.branch = branch_of(want / r.phi(kTau0));
  return r;
}

Mp2 word_element(const Word& w) {
  Mp2 g = Mp2::I();
  for (char ch : w) {
    if (ch == 'S') g = g * Mp2::S();
    else if (ch == 'T') g = g * Mp2::T();
    else if (ch == 't') g = g * Mp2::Tinv();
    else throw std::invalid_argument(std::string("bad word letter ") + ch);
  }
  return g;
}

Word decompose(const Mp2& g) {
  if (g.det() != 1) throw std::invalid_argument("decompose requires det 1");
  // M_k = T^n S M_{k+1}; M_{k+1} = S^{-1} T^{-n} M_k
  long long a = g.a, b = g.b, c = g.c, d = g.d;
  Word w;
  auto push_T = [&](long long n) { w.append(static_cast<size_t>(n < 0 ? -n : n), n < 0 ? 't' : 'T'); };
  while (c != 0) {
    long long ac = c < 0 ? -c : c;
    long long r = mod_ll(a, ac);
    long long n = (a - r) / c;
    push_T(n);
    w += 'S';
    long long a1 = r, b1 = b - n * d;
    // S^{-1} = [[0,1],[-1,0]]
    a = c; b = d; c = -a1; d = -b1;
  }
  // remaining matrix is +-T^m
  if (a == 1) {
    push_T(b);
  } else {
    w += "SS";
    push_T(-b);  // [[-1, b], [0, -1]] = S^2 T^{-b}
  }
  if (word_element(w).branch != g.branch) w += "SSSS";
  Mp2 chk = word_element(w);
  if (!chk.same(g)) throw std::logic_error("decompose: reconstruction mismatch " + chk.str() + " vs " + g.str());
  return w;
}

Word parse_word(const std::string& s) {
  Word w;
  size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == ',') { ++i; continue; }
    if (ch != 'S' && ch != 'T' && ch != 't') throw std::invalid_argument("bad word: " + s);
    ++i;
    long long e = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      size_t j = i;
      if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw std::invalid_argument("bad exponent in word: " + s);
      e = std::stoll(s.substr(i, j - i));
      i = j;
    }
    if (ch == 't') e = -e;
    if (ch == 'S') {
      long long k = mod_ll(e, 8);
      w.append(static_cast<size_t>(k), 'S');
    } else {
      w.append(static_cast<size_t>(e < 0 ? -e : e), e < 0 ? 't' : 'T');
    }
  }
  return w;
}

// ------------------------------------------------------------------ WeilRep

WeilRep::WeilRep(DiscForm G) : G_(std::move(G)) {
  sign_ = G_.signature_mod8();
  cS_ = Cyc::e(qq(-sign_, 8)) * Cyc::sqrt_int(static_cast<long long>(G_.order())).inv();
  cSinv_ = cS_.conj();
  L_ = static_cast<int>(lcm_ll(lcm_ll(G_.level(), 8), lcm_ll(4 * static_cast<long long>(G_.order()), cS_.conductor())));
}

CVec WeilRep::basis(size_t g) const {
  CVec v(dim(), Cyc());
  v[g] = Cyc(1L);
  return v;
}

namespace {

// sum_g x_g * zeta_L^{s_g}, accumulated in exponent space and reduced once
struct RootAccumulator {
  int L;
  std::vector<Q> big;
  explicit RootAccumulator(int L_) : L(L_), big(static_cast<size_t>(L_), Q(0)) {}
  void add(const std::vector<Q>& c, long long shift) {
    long long s = mod_ll(shift, L);
    for (size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) big[static_cast<size_t>((static_cast<long long>(j) + s) % L)] += c[j];
  }
  Cyc result() const { return Cyc::from_coeffs(L, big); }
};

int common_conductor(int L, const CVec& v) {
  long long r = L;
  for (const auto& x : v) r = lcm_ll(r, x.conductor());
  return static_cast<int>(r);
}

}  // namespace

CVec WeilRep::apply_T(const CVec& v, long long power) const {
  if (v.size() != dim()) throw std::invalid_argument("apply_T: dimension mismatch");
  int L = common_conductor(L_, v);
  long long N = G_.level();
  CVec r(v.size());
  for (size_t g = 0; g < v.size(); ++g) {
    if (v[g].is_zero()) continue;
    RootAccumulator acc(L);
    acc.add(v[g].coeffs_at(L), (L / N) * mod_ll(power * G_.qN(g), N));
    r[g] = acc.result();
  }
  return r;
}

CVec WeilRep::apply_S(const CVec& v, bool inverse) const {
  if (v.size() != dim()) throw std::invalid_argument("apply_S: dimension mismatch");
  int L = common_conductor(L_, v);
  long long N = G_.level();
  long long step = L / N;
  std::vector<std::vector<Q>> co(v.size());
  for (size_t g = 0; g < v.size(); ++g)
    if (!v[g].is_zero()) co[g] = v[g].coeffs_at(L);
  long long sgn = inverse ? 1 : -1;
  CVec r(v.size());
  for (size_t dl = 0; dl < v.size(); ++dl) {
    RootAccumulator acc(L);
    for (size_t g = 0; g < v.size(); ++g)
      if (!co[g].empty()) acc.add(co[g], sgn * step * G_.bN(g, dl));
    r[dl] = acc.result() * (inverse ? cSinv_ : cS_);
  }
  return r;
}

CVec WeilRep::apply(const Word& w, const CVec& v) const {
  CVec r = v;
  size_t i = w.size();
  while (i > 0) {
    char ch = w[i - 1];
    if (ch == 'S') {
      r = apply_S(r);
      --i;
    } else {
      long long p = 0;
      while (i > 0 && (w[i - 1] == 'T' || w[i - 1] == 't')) p += w[--i] == 'T' ? 1 : -1;
      r = apply_T(r, p);
    }
  }
  return r;
}

CVec WeilRep::apply_inv(const Word& w, const CVec& v) const {
  CVec r = v;
  size_t i = 0;
  while (i < w.size()) {
    if (w[i] == 'S') {
      r = apply_S(r, true);
      ++i;
    } else {
      long long p = 0;
      while (i < w.size() && (w[i] == 'T' || w[i] == 't')) p += w[i++] == 'T' ? 1 : -1;
      r = apply_T(r, -p);
    }
  }
  return r;
}

CVec WeilRep::apply(const Mp2& g, const CVec& v) const { return apply(decompose(g), v); }
CVec WeilRep::apply_inv(const Mp2& g, const CVec& v) const { return apply_inv(decompose(g), v); }

CMat WeilRep::matrix(const Word& w) const {
  int n = static_cast<int>(dim());
  CMat m(n, n, Cyc());
  for (int j = 0; j < n; ++j) {
    CVec col = apply(w, basis(static_cast<size_t>(j)));
    for (int i = 0; i < n; ++i) m(i, j) = col[static_cast<size_t>(i)];
  }
  return m;
}

CMat WeilRep::matrix(const Mp2& g) const { return matrix(decompose(g)); }

ExtFactor factor_extended(const Mp2& delta) {
  long long det = delta.det();
  if (det < 0) throw PreconditionError("extended element must have non-negative determinant");
  long long alpha = 0;
  if (det > 0) {
    alpha = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(det))));
    if (alpha * alpha != det) throw PreconditionError("extended element determinant is not a square");
  }
  ZMat M(2, 2);
  M(0, 0) = zz(delta.a); M(0, 1) = zz(delta.b); M(1, 0) = zz(delta.c); M(1, 1) = zz(delta.d);
  SmithForm sf = smith(M);
  auto dg = sf.diag();
  if (dg[0] != 1) throw PreconditionError("extended element is not primitive");
  LMat P = to_lmat(sf.U), Qm = to_lmat(sf.V);
  long long detP = P(0, 0) * P(1, 1) - P(0, 1) * P(1, 0);
  if (detP == -1) {
    // E P delta Q E = E D E = D with E = diag(-1, 1)
    P(0, 0) = -P(0, 0); P(0, 1) = -P(0, 1);
    Qm(0, 0) = -Qm(0, 0); Qm(1, 0) = -Qm(1, 0);
  }
  // P^{-1} and Q^{-1} (det 1)
  Mp2 Pi{P(1, 1), -P(0, 1), -P(1, 0), P(0, 0), 1};
  Mp2 Qi{Qm(1, 1), -Qm(0, 1), -Qm(1, 0), Qm(0, 0), 1};
  // diag(1, a^2) = S diag(a^2, 1) S^{-1}
  Mp2 Sm{0, -1, 1, 0, 1}, Sinv{0, 1, -1, 0, 1};
  auto mm = [](const Mp2& x, const Mp2& y) {
    return Mp2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, 1};
  };
  Mp2 U = mm(Pi, Sm), V = mm(Sinv, Qi);
  Mp2 prod = U * Mp2::g_alpha(alpha) * V;
  if (prod.a != delta.a || prod.b != delta.b || prod.c != delta.c || prod.d != delta.d)
    throw std::logic_error("factor_extended: reconstruction mismatch");
  if (prod.branch != delta.branch) U.branch = -U.branch;
  return {U, V, alpha};
}

CVec WeilRep::act_factored(const Mp2& U, long long alpha, const Mp2& V, const CVec& v) const {
  CVec r = apply_inv(U, v);
  CVec s(dim(), Cyc());
  for (size_t g = 0; g < dim(); ++g)
    if (!r[g].is_zero()) s[G_.mul(alpha, g)] += r[g];
  return apply_inv(V, s);
}

CVec WeilRep::act_extended(const Mp2& delta, const CVec& v) const {
  ExtFactor f = factor_extended(delta);
  return act_factored(f.U, f.alpha, f.V, v);
}

CMat WeilRep::rho2_n(long long b11, long long b12, long long b22) const {
  size_t n = dim();
  CMat m(static_cast<int>(n * n), static_cast<int>(n * n), Cyc());
  long long N = G_.level();
  for (size_t g1 = 0; g1 < n; ++g1)
    for (size_t g2 = 0; g2 < n; ++g2) {
      long long e = b11 * G_.qN(g1) + b12 * G_.bN(g1, g2) + b22 * G_.qN(g2);
      int k = static_cast<int>(g1 * n + g2);
      m(k, k) = Cyc::zeta(static_cast<int>(N), e);
    }
  return m;
}

CMat WeilRep::rho2_J(bool inverse) const {
  size_t n = dim();
  CMat m(static_cast<int>(n * n), static_cast<int>(n * n), Cyc());
  long long N = G_.level();
  Cyc c = Cyc::e(qq(-2 * sign_, 8)) * Cyc(qq(1, static_cast<long long>(n)));
  if (inverse) c = c.conj();
  long long sg = inverse ? 1 : -1;
  for (size_t g1 = 0; g1 < n; ++g1)
    for (size_t g2 = 0; g2 < n; ++g2)
      for (size_t d1 = 0; d1 < n; ++d1)
        for (size_t d2 = 0; d2 < n; ++d2) {
          long long e = sg * (G_.bN(g1, d1) + G_.bN(g2, d2));
          m(static_cast<int>(d1 * n + d2), static_cast<int>(g1 * n + g2)) = c * Cyc::zeta(static_cast<int>(N), e);
        }
  return m;
}

CMat WeilRep::rho2_m(long long u11, long long u12, long long u21, long long u22) const {
  long long dt = u11 * u22 - u12 * u21;
  if (dt != 1 && dt != -1) throw PreconditionError("m(U) requires U in GL_2(Z)");
  size_t n = dim();
  CMat m(static_cast<int>(n * n), static_cast<int>(n * n), Cyc());
  // U^{-1}
  long long i11 = u22 * dt, i12 = -u12 * dt, i21 = -u21 * dt, i22 = u11 * dt;
  Cyc c = dt == 1 ? Cyc(1L) : Cyc::zeta(4, sign_);  // sqrt(det U^{-1})^sign
  for (size_t g1 = 0; g1 < n; ++g1)
    for (size_t g2 = 0; g2 < n; ++g2) {
      // row vector (g1, g2) times U^{-1}
      size_t h1 = G_.add(G_.mul(i11, g1), G_.mul(i21, g2));
      size_t h2 = G_.add(G_.mul(i12, g1), G_.mul(i22, g2));
      m(static_cast<int>(h1 * n + h2), static_cast<int>(g1 * n + g2)) = c;
    }
  return m;
}

FpMat WeilRep::fp_S(const Fp& F, int j, bool adjoint) const {
  if (F.L % L_ != 0) throw std::invalid_argument("fp_S: field conductor too small");
  int n = static_cast<int>(dim());
  long long step = F.L / G_.level();
  uint64_t c = F.image(adjoint ? cSinv_ : cS_, j);
  long long sg = adjoint ? 1 : -1;
  FpMat m(n, n, 0);
  for (int d = 0; d < n; ++d)
    for (int g = 0; g < n; ++g)
      m(d, g) = F.mul(c, F.zeta(sg * step * G_.bN(static_cast<size_t>(g), static_cast<size_t>(d)), j));
  return m;
}

FpMat WeilRep::fp_T(const Fp& F, int j, bool adjoint) const {
  if (F.L % L_ != 0) throw std::invalid_argument("fp_T: field conductor too small");
  int n = static_cast<int>(dim());
  long long step = F.L / G_.level();
  FpMat m(n, n, 0);
  for (int g = 0; g < n; ++g) m(g, g) = F.zeta((adjoint ? -1 : 1) * step * G_.qN(static_cast<size_t>(g)), j);
  return m;
}

FpMat WeilRep::fp_Z(const Fp& F, int j) const {
  int n = static_cast<int>(dim());
  FpMat m(n, n, 0);
  uint64_t c = F.zeta(-static_cast<long long>(sign_) * (F.L / 4), j);
  for (int g = 0; g < n; ++g) m(static_cast<int>(G_.neg(static_cast<size_t>(g))), g) = c;
  return m;
}

// ------------------------------------------------------------------ Mp4

namespace {

CMat2 mul2(const CMat2& x, const CMat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
CMat2 inv2(const CMat2& x) {
  cplx d = x[0] * x[3] - x[1] * x[2];
  return {x[3] / d, -x[1] / d, -x[2] / d, x[0] / d};
}

struct Blocks {
  CMat2 A, B, C, D;
};
Blocks blocks(const LMat& m) {
  auto e = [&](int i, int j) { return cplx(static_cast<double>(m(i, j)), 0.0); };
  return {{e(0, 0), e(0, 1), e(1, 0), e(1, 1)},
          {e(0, 2), e(0, 3), e(1, 2), e(1, 3)},
          {e(2, 0), e(2, 1), e(3, 0), e(3, 1)},
          {e(2, 2), e(2, 3), e(3, 2), e(3, 3)}};
}

cplx det_cz_d(const Blocks& b, const CMat2& Z) {
  CMat2 m = mul2(b.C, Z);
  for (int i = 0; i < 4; ++i) m[i] += b.D[i];
  return m[0] * m[3] - m[1] * m[2];
}

// continue sqrt(det(CZ+D)) from s0 at Z0 along the segment to Z
cplx continue_sqrt(const Blocks& b, const CMat2& Za, cplx sa, const CMat2& Zb, int depth = 0) {
  const int steps = 64;
  cplx s = sa;
  for (int k = 1; k <= steps; ++k) {
    double t = static_cast<double>(k) / steps;
    CMat2 Z;
    for (int i = 0; i < 4; ++i) Z[i] = Za[i] + t * (Zb[i] - Za[i]);
    cplx r = std::sqrt(det_cz_d(b, Z));
    if (std::abs(r - s) > std::abs(r + s)) r = -r;
    if (std::abs(r - s) > 0.5 * std::abs(s) && depth < 12) {
      // refine this sub-interval
      double t0 = static_cast<double>(k - 1) / steps;
      CMat2 Zs;
      for (int i = 0; i < 4; ++i) Zs[i] = Za[i] + t0 * (Zb[i] - Za[i]);
      r = continue_sqrt(b, Zs, s, Z, depth + 1);
    }
    s = r;
  }
  return s;
}

}  // namespace

CMat2 Z0() { return {cplx(0, 2), cplx(0, 0), cplx(0, 0), cplx(0, 2)}; }

CMat2 Mp4::act(const CMat2& Z) const {
  Blocks b = blocks(m);
  CMat2 num = mul2(b.A, Z), den = mul2(b.C, Z);
  for (int i = 0; i < 4; ++i) {
    num[i] += b.B[i];
    den[i] += b.D[i];
  }
  return mul2(num, inv2(den));
}

cplx Mp4::phi(const CMat2& Z) const { return continue_sqrt(blocks(m), Z0(), phi0, Z); }

Mp4 operator*(const Mp4& x, const Mp4& y) {
  Mp4 r;
  r.m = x.m * y.m;
  r.phi0 = x.phi(y.act(Z0())) * y.phi0;
  return r;
}

Mp4 Mp4::J() {
  Mp4 r;
  r.m = LMat(4, 4, 0);
  r.m(0, 2) = -1; r.m(1, 3) = -1; r.m(2, 0) = 1; r.m(3, 1) = 1;
  r.phi0 = cplx(0, 2);  // sqrt(det 2iI) = sqrt(-4), the principal value at the base point
  return r;
}

Mp4 Mp4::J_inv() {
  Mp4 r;
  r.m = LMat(4, 4, 0);
  r.m(0, 2) = 1; r.m(1, 3) = 1; r.m(2, 0) = -1; r.m(3, 1) = -1;
  r.phi0 = 1.0 / J().phi(r.act(Z0()));
  return r;
}

Mp4 Mp4::n(long long b11, long long b12, long long b22) {
  Mp4 r;
  r.m = LMat::identity(4);
  r.m(0, 2) = b11; r.m(0, 3) = b12; r.m(1, 2) = b12; r.m(1, 3) = b22;
  r.phi0 = 1.0;
  return r;
}

Mp4 Mp4::u(const Mp2& A) {
  Mp4 r;
  r.m = LMat::identity(4);
  r.m(0, 0) = A.a; r.m(0, 2) = A.b; r.m(2, 0) = A.c; r.m(2, 2) = A.d;
  r.phi0 = A.phi(kTau0);
  return r;
}

Mp4 Mp4::d(const Mp2& B) {
  Mp4 r;
  r.m = LMat::identity(4);
  r.m(1, 1) = B.a; r.m(1, 3) = B.b; r.m(3, 1) = B.c; r.m(3, 3) = B.d;
  r.phi0 = B.phi(kTau0);
  return r;
}

Mp4 ctilde(long long al) {
  Mp4 r;
  r.m = LMat(4, 4, 0);
  const long long rows[4][4] = {{al * al + al, -al - 1, -1, -al - 1},
                                {-al - 1, 1, 0, 0},
                                {-al, 1, 0, 0},
                                {0, 0, -1, -al}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m(i, j) = rows[i][j];
  // sqrt(al^2 z - 2 al w + z') at z = z' = 2i, w = 0
  r.phi0 = std::sqrt(cplx(0, 2.0 * static_cast<double>(al * al + 1)));
  return r;
}

std::vector<Mp4> ctilde_factors(long long al) {
  Mp4 Ji = Mp4::J_inv();
  return {Ji, Mp4::n(0, -1, -al), Ji, Mp4::n(al * al + al, -al - 1, 1), Ji, Mp4::n(0, 0, 1)};
}

Mp2 bprime(const Mp2& B) {
  Mp2 r{B.d, B.b, B.c, B.a, 1};
  // phi_{B'}(z) sqrt(z' + B'z) = phi_B(z') sqrt(z + B z'), checked at two choices of z'
  const cplx zs[2] = {kTau0, cplx(0.5, 1.5)};
  int br = 0;
  for (cplx zp : zs) {
    cplx z = kTau0;
    cplx val = B.phi(zp) * std::sqrt(z + B.act(zp)) / std::sqrt(zp + r.act(z));
    int b = branch_of(val / r.phi(z));
    if (br != 0 && b != br) throw std::runtime_error("bprime: multiplier depends on z'");
    br = b;
  }
  r.branch = br;
  return r;
}

Mp2 phi_map(long long alpha, const Mp2& A, const Mp2& B) {
  if (alpha > 0) throw PreconditionError("phi_map requires alpha <= 0");
  return bprime(B) * Mp2::g_alpha(alpha) * A;
}

namespace {

CVec mat_vec(const CMat& m, const CVec& v) {
  CVec r(static_cast<size_t>(m.rows), Cyc());
  for (int i = 0; i < m.rows; ++i)
    for (int k = 0; k < m.cols; ++k)
      if (!v[static_cast<size_t>(k)].is_zero() && !m(i, k).is_zero()) r[static_cast<size_t>(i)] += m(i, k) * v[static_cast<size_t>(k)];
  return r;
}

}  // namespace

bool verify_coset_action(const WeilRep& W, long long alpha, const Mp2& A, const Mp2& B, std::string* why) {
  size_t n = W.dim();
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  // ctilde as the product of its factors, with branch bookkeeping
  auto fac = ctilde_factors(alpha);
  Mp4 prod = fac[0];
  for (size_t i = 1; i < fac.size(); ++i) prod = prod * fac[i];
  Mp4 ct = ctilde(alpha);
  if (prod.m != ct.m) return fail("factor product does not reproduce ctilde matrix");
  bool flip;
  if (std::abs(prod.phi0 - ct.phi0) < kBranchTol) flip = false;
  else if (std::abs(prod.phi0 + ct.phi0) < kBranchTol) flip = true;
  else return fail("factor product multiplier is not +-ctilde multiplier");

  // rho2(g)^{-1} (e0 x e0) for g = ctilde u(A) d(B):
  // (rho(A)^{-1} x rho(B)^{-1}) rho2(ctilde)^{-1}, rho2(ctilde)^{-1} = n3^{-1} J n2^{-1} J n1^{-1} J
  CVec v(n * n, Cyc());
  v[0] = Cyc(1L);
  CMat J = W.rho2_J(false);
  v = mat_vec(J, v);
  v = mat_vec(W.rho2_n(0, 1, alpha), v);
  v = mat_vec(J, v);
  v = mat_vec(W.rho2_n(-(alpha * alpha + alpha), alpha + 1, -1), v);
  v = mat_vec(J, v);
  v = mat_vec(W.rho2_n(0, 0, -1), v);
  if (flip && (W.sign() % 2 != 0))
    for (auto& x : v) x = -x;
  // first tensor factor by rho(A)^{-1}, second by rho(B)^{-1}
  Word wa = decompose(A), wb = decompose(B);
  for (size_t g2 = 0; g2 < n; ++g2) {
    CVec col(n);
    for (size_t g1 = 0; g1 < n; ++g1) col[g1] = v[g1 * n + g2];
    col = W.apply_inv(wa, col);
    for (size_t g1 = 0; g1 < n; ++g1) v[g1 * n + g2] = col[g1];
  }
  for (size_t g1 = 0; g1 < n; ++g1) {
    CVec row(v.begin() + static_cast<long>(g1 * n), v.begin() + static_cast<long>(g1 * n + n));
    row = W.apply_inv(wb, row);
    for (size_t g2 = 0; g2 < n; ++g2) v[g1 * n + g2] = row[g2];
  }

  // e(sign/8)/sqrt|G| sum_g (e_g | phi(g)) x e_g
  Mp2 ph = phi_map(alpha, A, B);
  Cyc c = Cyc::e(qq(W.sign(), 8)) * Cyc::sqrt_int(static_cast<long long>(n)).inv();
  CVec rhs(n * n, Cyc());
  for (size_t g = 0; g < n; ++g) {
    CVec img = W.act_extended(ph, W.basis(g));
    for (size_t h = 0; h < n; ++h)
      if (!img[h].is_zero()) rhs[h * n + g] += c * img[h];
  }
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != rhs[i]) return fail("vectors differ at component " + std::to_string(i));
  if (why) *why = flip ? "ok (factor product carried the opposite branch)" : "ok";
  return true;
}

}  // namespace hbb
