#pragma once

#include "hbb/cyclotomic.hpp"
#include "hbb/intmat.hpp"

#include <cstdint>

namespace hbb {

// Prime field F_p with p = 1 mod L, used to evaluate Q(zeta_L) under the
// embedding z -> w^j for a fixed primitive L-th root of unity w.
struct Fp {
  uint64_t p = 0;
  uint64_t w = 0;  // primitive L-th root of unity
  int L = 1;

  static Fp for_conductor(int L);  // largest suitable prime below 2^62

  uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const;
  uint64_t from_q(const Q& q) const;
  uint64_t from_ll(long long v) const;
  // image of e(a/L) under z -> w^j
  uint64_t zeta(long long a, int j = 1) const;
  uint64_t image(const Cyc& x, int j = 1) const;
  // symmetric lift to (-p/2, p/2]
  long long lift(uint64_t a) const;
};

bool is_prime_u64(uint64_t n);

using FpMat = Mat<uint64_t>;
FpMat fp_mul(const Fp& F, const FpMat& a, const FpMat& b);
FpMat fp_identity(int n);
uint64_t fp_trace(const Fp& F, const FpMat& a);

}  // namespace hbb
