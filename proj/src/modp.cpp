#include "hbb/modp.hpp"

#include <stdexcept>

namespace hbb {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit inputs
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

Fp Fp::for_conductor(int L) {
  if (L < 1) throw std::invalid_argument("Fp: conductor must be positive");
  Fp F;
  F.L = L;
  const uint64_t top = (1ull << 62);
  for (uint64_t k = (top - 2) / L; k > 0; --k) {
    uint64_t p = k * static_cast<uint64_t>(L) + 1;
    if (!is_prime_u64(p)) continue;
    F.p = p;
    break;
  }
  if (!F.p) throw std::runtime_error("Fp: no prime found");
  auto primes = prime_factors(L);
  for (uint64_t a = 2;; ++a) {
    uint64_t w = powmod(a, (F.p - 1) / L, F.p);
    bool ok = true;
    for (long long q : primes)
      if (powmod(w, L / q, F.p) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      F.w = w;
      break;
    }
  }
  return F;
}

uint64_t Fp::pow(uint64_t a, uint64_t e) const { return powmod(a, e, p); }

uint64_t Fp::inv(uint64_t a) const {
  if (a % p == 0) throw std::domain_error("Fp: inverse of zero");
  return powmod(a, p - 2, p);
}

uint64_t Fp::from_ll(long long v) const {
  long long r = v % static_cast<long long>(p);
  return static_cast<uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

uint64_t Fp::from_q(const Q& q) const {
  Z pn(std::to_string(p));
  Z a = q.get_num() % pn, b = q.get_den() % pn;
  if (a < 0) a += pn;
  uint64_t an = std::stoull(a.get_str()), bn = std::stoull(b.get_str());
  return mul(an, inv(bn));
}

uint64_t Fp::zeta(long long a, int j) const {
  long long e = mod_ll(static_cast<long long>(j) * mod_ll(a, L), L);
  return pow(w, static_cast<uint64_t>(e));
}

uint64_t Fp::image(const Cyc& x, int j) const {
  if (x.is_zero()) return 0;
  int c = x.conductor();
  if (L % c != 0) throw std::invalid_argument("Fp: element conductor does not divide field conductor");
  int step = L / c;
  uint64_t s = 0;
  const auto& co = x.coeffs();
  for (size_t e = 0; e < co.size(); ++e)
    if (co[e] != 0) s = add(s, mul(from_q(co[e]), zeta(static_cast<long long>(e) * step, j)));
  return s;
}

long long Fp::lift(uint64_t a) const {
  return a > p / 2 ? -static_cast<long long>(p - a) : static_cast<long long>(a);
}

FpMat fp_identity(int n) {
  FpMat m(n, n, 0);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FpMat fp_mul(const Fp& F, const FpMat& a, const FpMat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("fp_mul: shape mismatch");
  FpMat r(a.rows, b.cols, 0);
  std::vector<unsigned __int128> acc(b.cols);
  for (int i = 0; i < a.rows; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int k = 0; k < a.cols; ++k) {
      uint64_t x = a(i, k);
      if (!x) continue;
      for (int j = 0; j < b.cols; ++j) {
        acc[j] += static_cast<unsigned __int128>(x) * b(k, j);
        // keep the accumulator far from overflow
        if (acc[j] >> 125) acc[j] %= F.p;
      }
    }
    for (int j = 0; j < b.cols; ++j) r(i, j) = static_cast<uint64_t>(acc[j] % F.p);
  }
  return r;
}

uint64_t fp_trace(const Fp& F, const FpMat& a) {
  uint64_t s = 0;
  for (int i = 0; i < a.rows; ++i) s = F.add(s, a(i, i));
  return s;
}

}  // namespace hbb
