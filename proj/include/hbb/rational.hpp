#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hbb {

using Z = mpz_class;
using Q = mpq_class;

// long long is ambiguous for gmpxx constructors; long is 64-bit on the supported targets
inline Z zz(long long v) { return Z(static_cast<long>(v)); }
inline Q qq(long long n, long long d = 1) {
  Q r(zz(n), zz(d));
  r.canonicalize();
  return r;
}

inline Q qq_z(const Z& n, const Z& d) {
  Q r(n, d);
  r.canonicalize();
  return r;
}

// x mod 1, in [0, 1)
Q frac(const Q& x);
Z floor_q(const Q& x);

// "a", "a/b", "-a/b"; throws std::invalid_argument
Q parse_q(const std::string& s);
std::string q_str(const Q& x);

long long to_ll(const Z& z);
long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);
long long mod_ll(long long a, long long m);  // in [0, m)
long long ipow(long long b, int e);

bool is_prime_ll(long long n);
std::vector<long long> prime_factors(long long n);  // distinct, ascending
long long binom(long long n, long long k);

// Jacobi symbol (a/n) for odd n > 0
int jacobi(long long a, long long n);
// Kronecker symbol (a/2)
int kronecker2(long long a);

}  // namespace hbb
