#pragma once

#include "hbb/lattice.hpp"
#include "hbb/modp.hpp"

#include <array>
#include <string>
#include <vector>

namespace hbb {

// Element (g, phi) of the metaplectic extension with integral g of det alpha^2.
// phi(tau) = branch * principal_sqrt(c tau + d); the principal root is continuous on H
// for every integral (c, d), so the sign pins phi everywhere.
struct Mp2 {
  long long a = 1, b = 0, c = 0, d = 1;
  int branch = 1;

  static Mp2 I() { return {}; }
  static Mp2 S() { return {0, -1, 1, 0, 1}; }
  static Mp2 T() { return {1, 1, 0, 1, 1}; }
  static Mp2 Tinv() { return {1, -1, 0, 1, 1}; }
  static Mp2 g_alpha(long long alpha) { return {alpha * alpha, 0, 0, 1, 1}; }

  long long det() const { return a * d - b * c; }
  cplx act(cplx tau) const;  // Moebius action
  cplx phi(cplx tau) const;
  bool same(const Mp2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d && branch == o.branch; }
  Mp2 inverse() const;  // det 1 only
  std::string str() const;
};

// Composition (g, phi)(g', phi') = (g g', phi(g' tau) phi'(tau)); the branch is read off at tau0 = 2i.
Mp2 operator*(const Mp2& x, const Mp2& y);
Mp2 from_matrix(long long a, long long b, long long c, long long d, int branch = 1);

extern const cplx kTau0;  // 2i

// Words over S, T, t (= T^{-1}).
using Word = std::string;
Mp2 word_element(const Word& w);
Word decompose(const Mp2& g);  // det 1; Euclid on (c, d) with non-negative remainders
Word parse_word(const std::string& s);  // accepts "S T t", "ST^-1", "S*T*T"

using CVec = std::vector<Cyc>;
using CMat = Mat<Cyc>;

class WeilRep {
 public:
  explicit WeilRep(DiscForm G);

  const DiscForm& G() const { return G_; }
  int sign() const { return sign_; }
  int conductor() const { return L_; }
  size_t dim() const { return G_.order(); }

  // rho(T)^power v, rho(S) v, rho(S)^{-1} v
  CVec apply_T(const CVec& v, long long power = 1) const;
  CVec apply_S(const CVec& v, bool inverse = false) const;
  CVec apply(const Word& w, const CVec& v) const;      // rho(w) v
  CVec apply_inv(const Word& w, const CVec& v) const;  // rho(w)^{-1} v
  CVec apply(const Mp2& g, const CVec& v) const;
  CVec apply_inv(const Mp2& g, const CVec& v) const;
  CMat matrix(const Word& w) const;
  CMat matrix(const Mp2& g) const;

  // v | [delta]: right action of an element of the double coset of diag(alpha^2, 1)
  CVec act_extended(const Mp2& delta, const CVec& v) const;
  // same action but with an explicitly supplied factorization delta = U g_alpha V
  CVec act_factored(const Mp2& U, long long alpha, const Mp2& V, const CVec& v) const;

  // degree two, basis e_(g1, g2) at index g1 * |G| + g2
  CMat rho2_n(long long b11, long long b12, long long b22) const;
  CMat rho2_J(bool inverse = false) const;
  CMat rho2_m(long long u11, long long u12, long long u21, long long u22) const;

  // images of rho(S), rho(T), rho(S)^* under z_L -> w^j (F.L must be a multiple of conductor())
  FpMat fp_S(const Fp& F, int j, bool adjoint = false) const;
  FpMat fp_T(const Fp& F, int j, bool adjoint = false) const;
  FpMat fp_Z(const Fp& F, int j) const;  // rho(S)^2 from the closed formula

  CVec basis(size_t g) const;

 private:
  DiscForm G_;
  int sign_;
  int L_;
  Cyc cS_;     // e(-sign/8) / sqrt|G|
  Cyc cSinv_;  // conj(cS_)
};

// Factor delta = U diag(alpha^2, 1) V with U, V in SL_2(Z) (branches chosen so the product
// reproduces delta's branch). Requires content 1 when alpha >= 1.
struct ExtFactor {
  Mp2 U, V;
  long long alpha;
};
ExtFactor factor_extended(const Mp2& delta);

// ------------------------------------------------------------------ degree two metaplectic

using CMat2 = std::array<cplx, 4>;  // row-major 2x2

// (g, phi) in Mp_4: phi is pinned by its value at Z0 = 2i I and continued along straight paths.
struct Mp4 {
  LMat m{4, 4, 0};
  cplx phi0{1, 0};
  static Mp4 J();
  static Mp4 J_inv();
  static Mp4 n(long long b11, long long b12, long long b22);
  static Mp4 u(const Mp2& A);
  static Mp4 d(const Mp2& B);
  CMat2 act(const CMat2& Z) const;
  cplx phi(const CMat2& Z) const;
};
Mp4 operator*(const Mp4& x, const Mp4& y);
CMat2 Z0();

Mp4 ctilde(long long alpha);  // alpha <= 0
// the three J^{-1} n(.) blocks whose product is ctilde(alpha)
std::vector<Mp4> ctilde_factors(long long alpha);
Mp2 bprime(const Mp2& B);
Mp2 phi_map(long long alpha, const Mp2& A, const Mp2& B);  // B' g_alpha A
bool verify_coset_action(const WeilRep& W, long long alpha, const Mp2& A, const Mp2& B, std::string* why = nullptr);

}  // namespace hbb
