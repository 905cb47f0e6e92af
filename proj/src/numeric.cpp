#include "hbb/numeric.hpp"

#include "hbb/lattice.hpp"

#include <cmath>

namespace hbb {

namespace {

// sum_{j >= J0} (c + s j)^{-k}, s = +-1, by Euler-Maclaurin at J0
cplx em_tail(cplx c, int s, double k, long long J0, double& last) {
  auto pw = [&](double e, double t) { return std::pow(c + static_cast<double>(s) * t, -e); };
  double t = static_cast<double>(J0);
  // integral: (c + sJ0)^{1-k} / (s (k-1))
  cplx sum = std::pow(c + static_cast<double>(s) * t, 1 - k) / (static_cast<double>(s) * (k - 1));
  sum += 0.5 * pw(k, t);
  // f^{(m)}(t) = s^m (-k)(-k-1)...(-k-m+1) (c + s t)^{-k-m}
  auto deriv = [&](int m) {
    double f = 1;
    for (int i = 0; i < m; ++i) f *= -k - i;
    if (m % 2 && s < 0) f = -f;
    return f * pw(k + m, t);
  };
  const double b2[3] = {1.0 / 6, -1.0 / 30, 1.0 / 42};
  const double fact[3] = {2, 24, 720};
  cplx term;
  for (int p = 1; p <= 3; ++p) {
    term = b2[p - 1] / fact[p - 1] * deriv(2 * p - 1);
    sum -= term;
  }
  last = std::abs(term);
  return sum;
}

}  // namespace

LipschitzReport lipschitz_check(double k, const Q& x, cplx z, long long n_terms) {
  if (k <= 1) throw PreconditionError("Lipschitz summation needs Re(k) > 1");
  if (z.imag() <= 0) throw PreconditionError("z must lie in the upper half plane");
  if (n_terms < 10) throw PreconditionError("too few terms");
  LipschitzReport rep;
  const long long D = to_ll(x.get_den());
  const double xd = x.get_d();
  const long long J = std::max<long long>(1, n_terms / (2 * D));
  cplx lhs = 0;
  double tl = 0;
  for (long long rr = 0; rr < D; ++rr) {
    cplx phase = std::exp(cplx(0, 2 * M_PI * static_cast<double>(rr) * xd));
    cplx c = (z + static_cast<double>(rr)) / static_cast<double>(D);
    cplx inner = 0;
    for (long long j = -J; j <= J; ++j) inner += std::pow(c + static_cast<double>(j), -k);
    double l1 = 0, l2 = 0;
    inner += em_tail(c, 1, k, J + 1, l1);
    inner += em_tail(c, -1, k, J + 1, l2);
    tl += l1 + l2;
    lhs += phase * std::pow(static_cast<double>(D), -k) * inner;
  }
  rep.lhs = lhs;
  rep.tail_lhs = tl;

  cplx pref = std::exp(k * std::log(cplx(0, -2 * M_PI))) / std::tgamma(k);
  cplx rhs = 0;
  Q r0 = frac(-x);
  if (r0 == 0) r0 = 1;
  double r = r0.get_d();
  long long m = 0;
  for (; m < n_terms; ++m, r += 1) rhs += std::pow(r, k - 1) * std::exp(cplx(0, 2 * M_PI * r) * z);
  // omitted terms: r^{k-1} e^{-2 pi r y} decreasing once r > (k-1)/(2 pi y); bound by a geometric series
  double y = z.imag();
  double q = std::exp(-2 * M_PI * y);
  double first = std::pow(r, k - 1) * std::exp(-2 * M_PI * r * y);
  double ratio = std::pow((r + 1) / r, std::max(0.0, k - 1)) * q;
  rep.tail_rhs = ratio < 1 ? std::abs(pref) * first / (1 - ratio) : INFINITY;
  rep.rhs = pref * rhs;
  rep.diff = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace hbb
