#include "hbb/rational.hpp"

#include <stdexcept>

namespace hbb {

Z floor_q(const Q& x) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Q frac(const Q& x) {
  Q r = x - Q(floor_q(x));
  r.canonicalize();
  return r;
}

Q parse_q(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto check = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("malformed rational");
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("malformed rational");
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("malformed rational: " + t);
  };
  if (slash == std::string::npos) {
    check(s);
    return Q(Z(s[0] == '+' ? s.substr(1) : s));
  }
  std::string a = s.substr(0, slash), b = s.substr(slash + 1);
  check(a);
  check(b);
  Z den(b[0] == '+' ? b.substr(1) : b);
  if (den == 0) throw std::invalid_argument("zero denominator");
  Q r(Z(a[0] == '+' ? a.substr(1) : a), den);
  r.canonicalize();
  return r;
}

std::string q_str(const Q& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

long long to_ll(const Z& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer exceeds 64 bits");
  return z.get_si();
}

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * (b < 0 ? -b : b);
}

long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  if (n < 0) n = -n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long long binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return to_ll(r);
}

int jacobi(long long a, long long n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
  a = mod_ll(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int kronecker2(long long a) {
  if (a % 2 == 0) return 0;
  long long r = mod_ll(a, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace hbb
