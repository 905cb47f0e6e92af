#pragma once

#include "hbb/cyclotomic.hpp"

namespace hbb {

// Both sides of sum_n e(nx) (z+n)^{-k} = ((-2 pi i)^k / Gamma(k)) sum_{r in Z-x, r>0} r^{k-1} e(rz),
// principal branches throughout.
struct LipschitzReport {
  cplx lhs, rhs;
  double diff = 0;
  double tail_lhs = 0;  // size of the last Euler-Maclaurin correction used
  double tail_rhs = 0;  // geometric bound on the omitted terms
};
LipschitzReport lipschitz_check(double k, const Q& x, cplx z, long long n_terms = 10000);

}  // namespace hbb
