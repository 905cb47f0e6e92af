#pragma once

#include "hbb/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace hbb {

using cplx = std::complex<double>;

// Integer coefficients of the n-th cyclotomic polynomial, ascending degree.
const std::vector<long long>& cyclotomic_poly(int n);
int euler_phi(int n);

// Element of Q(zeta_L) in the power basis 1, z, ..., z^{phi(L)-1}, z = e(1/L).
// Coefficient vectors are always reduced modulo Phi_L; an empty vector is zero.
// Elements of different conductors are promoted to the lcm on contact.
class Cyc {
 public:
  Cyc() : L_(1) {}
  Cyc(long v) : L_(1) { if (v) c_ = {Q(v)}; }  // NOLINT(runtime/explicit)
  Cyc(const Q& v) : L_(1) { if (v != 0) c_ = {v}; }  // NOLINT(runtime/explicit)

  static Cyc zeta(int L, long long e);  // e(e / L)
  static Cyc e(const Q& x);             // e(x) = exp(2 pi i x)
  static Cyc sqrt_int(long long n);     // principal square root, n may be negative
  static Cyc i() { return zeta(4, 1); }

  int conductor() const { return L_; }
  const std::vector<Q>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const;
  Q rational_value() const;  // throws unless rational

  Cyc promoted(int L) const;  // requires conductor() | L
  Cyc conj() const;
  Cyc inv() const;            // throws on zero
  cplx to_complex() const;

  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator*=(const Q& q);
  Cyc operator-() const;

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator*(Cyc a, const Q& b) { return a *= b; }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inv(); }
  friend bool operator==(const Cyc& a, const Cyc& b);
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // coefficient list at conductor L (L multiple of conductor()), length phi(L)
  std::vector<Q> coeffs_at(int L) const;
  static Cyc from_coeffs(int L, const std::vector<Q>& c);
  std::string str() const;

 private:
  int L_;
  std::vector<Q> c_;
  void trim();
};

}  // namespace hbb
