#include "hbb/cyclotomic.hpp"

#include "hbb/intmat.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hbb {

namespace {

struct FieldData {
  int L = 1, phi = 1;
  // red[e] = coefficients of z^e mod Phi_L, e in [0, L)
  std::vector<std::vector<long long>> red;
};

std::mutex g_mu;
std::map<int, std::vector<long long>> g_phi_polys;
std::map<int, std::shared_ptr<const FieldData>> g_fields;

std::vector<long long> poly_div_exact(std::vector<long long> num, const std::vector<long long>& den) {
  // den monic
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(num.size()) - 1;
  std::vector<long long> q(nn - dn + 1, 0);
  for (int i = nn; i >= dn; --i) {
    long long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (int i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

const std::vector<long long>& phi_poly_locked(int n) {
  auto it = g_phi_polys.find(n);
  if (it != g_phi_polys.end()) return it->second;
  std::vector<long long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, phi_poly_locked(d));
  return g_phi_polys.emplace(n, std::move(p)).first->second;
}

std::shared_ptr<const FieldData> field(int L) {
  std::lock_guard<std::mutex> lk(g_mu);
  auto it = g_fields.find(L);
  if (it != g_fields.end()) return it->second;
  auto f = std::make_shared<FieldData>();
  f->L = L;
  const auto& P = phi_poly_locked(L);
  f->phi = static_cast<int>(P.size()) - 1;
  f->red.assign(L, std::vector<long long>(f->phi, 0));
  std::vector<long long> cur(f->phi, 0);
  cur[0] = 1;
  for (int e = 0; e < L; ++e) {
    f->red[e] = cur;
    // multiply by z and reduce with z^phi = -sum P[j] z^j
    long long top = cur[f->phi - 1];
    for (int j = f->phi - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (int j = 0; j < f->phi; ++j) cur[j] -= top * P[j];
  }
  g_fields.emplace(L, f);
  return f;
}

int lcm_int(int a, int b) { return static_cast<int>(lcm_ll(a, b)); }

}  // namespace

const std::vector<long long>& cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
  std::lock_guard<std::mutex> lk(g_mu);
  return phi_poly_locked(n);
}

int euler_phi(int n) {
  int r = n;
  for (long long p : prime_factors(n)) r = r / static_cast<int>(p) * static_cast<int>(p - 1);
  return r;
}

void Cyc::trim() {
  for (const auto& x : c_)
    if (x != 0) return;
  c_.clear();
}

Cyc Cyc::from_coeffs(int L, const std::vector<Q>& c) {
  auto f = field(L);
  Cyc r;
  r.L_ = L;
  r.c_.assign(f->phi, Q(0));
  for (size_t e = 0; e < c.size(); ++e) {
    if (c[e] == 0) continue;
    const auto& red = f->red[e % L];
    for (int j = 0; j < f->phi; ++j)
      if (red[j]) r.c_[j] += c[e] * zz(red[j]);
  }
  r.trim();
  return r;
}

Cyc Cyc::zeta(int L, long long e) {
  if (L < 1) throw std::invalid_argument("zeta: conductor must be positive");
  long long g = gcd_ll(L, mod_ll(e, L));
  if (g == 0) g = L;
  int L2 = static_cast<int>(L / g);
  long long e2 = mod_ll(e, L) / g;
  auto f = field(L2);
  Cyc r;
  r.L_ = L2;
  r.c_.resize(f->phi);
  for (int j = 0; j < f->phi; ++j) r.c_[j] = Q(static_cast<long>(f->red[e2][j]));
  r.trim();
  return r;
}

Cyc Cyc::e(const Q& x) {
  Q f = frac(x);
  return zeta(static_cast<int>(to_ll(f.get_den())), to_ll(f.get_num()));
}

Cyc Cyc::sqrt_int(long long n) {
  if (n == 0) return Cyc();
  if (n < 0) return i() * sqrt_int(-n);
  long long s = 1, m = 1;
  for (long long p : prime_factors(n)) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    s *= ipow(p, k / 2);
    if (k % 2) m *= p;
  }
  Cyc r(static_cast<long>(s));
  for (long long p : prime_factors(m)) {
    if (p == 2) {
      r *= zeta(8, 1) + zeta(8, 7);
      continue;
    }
    Cyc g;
    for (long long a = 1; a < p; ++a) g += Cyc::zeta(static_cast<int>(p), a) * Q(jacobi(a, p));
    r *= (p % 4 == 1) ? g : -(i() * g);
  }
  return r;
}

bool Cyc::is_rational() const {
  for (size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

Q Cyc::rational_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
  return c_.empty() ? Q(0) : c_[0];
}

Cyc Cyc::promoted(int L) const {
  if (L % L_ != 0) throw std::invalid_argument("promote: conductor does not divide target");
  if (L == L_) return *this;
  if (c_.empty()) {
    Cyc r;
    r.L_ = L;
    return r;
  }
  int step = L / L_;
  std::vector<Q> big(static_cast<size_t>(c_.size() - 1) * step + 1, Q(0));
  for (size_t j = 0; j < c_.size(); ++j) big[j * step] = c_[j];
  return from_coeffs(L, big);
}

std::vector<Q> Cyc::coeffs_at(int L) const {
  Cyc p = promoted(L);
  std::vector<Q> r = p.c_;
  r.resize(euler_phi(L), Q(0));
  return r;
}

Cyc Cyc::conj() const {
  if (c_.empty()) return *this;
  std::vector<Q> big(L_, Q(0));
  for (size_t j = 0; j < c_.size(); ++j) big[(L_ - j) % L_] += c_[j];
  return from_coeffs(L_, big);
}

Cyc& Cyc::operator+=(const Cyc& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  int L = lcm_int(L_, o.L_);
  if (L != L_) *this = promoted(L);
  if (L != o.L_) {
    Cyc t = o.promoted(L);
    for (size_t j = 0; j < t.c_.size(); ++j) c_[j] += t.c_[j];
  } else {
    for (size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  }
  trim();
  return *this;
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc& Cyc::operator*=(const Q& q) {
  if (q == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= q;
  return *this;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  if (c_.empty()) return *this;
  if (o.c_.empty()) {
    c_.clear();
    return *this;
  }
  if (o.L_ == 1) return *this *= o.c_[0];
  if (L_ == 1) {
    Q s = c_[0];
    *this = o;
    return *this *= s;
  }
  int L = lcm_int(L_, o.L_);
  Cyc a = promoted(L), b = o.promoted(L);
  std::vector<Q> t(a.c_.size() + b.c_.size() - 1, Q(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) t[i + j] += a.c_[i] * b.c_[j];
  }
  return *this = from_coeffs(L, t);
}

Cyc Cyc::inv() const {
  if (c_.empty()) throw std::domain_error("inverse of zero");
  if (L_ == 1) return Cyc(Q(1) / c_[0]);
  int n = static_cast<int>(c_.size());
  QMat m(n, n, Q(0));
  for (int j = 0; j < n; ++j) {
    Cyc col = *this * zeta(L_, j);
    auto v = col.coeffs_at(L_);
    for (int i = 0; i < n; ++i) m(i, j) = v[i];
  }
  std::vector<Q> rhs(n, Q(0)), x;
  rhs[0] = 1;
  if (!solve(m, rhs, x)) throw std::logic_error("cyclotomic inverse failed");
  return from_coeffs(L_, x);
}

bool operator==(const Cyc& a, const Cyc& b) {
  if (a.c_.empty() || b.c_.empty()) return a.c_.empty() && b.c_.empty();
  if (a.L_ == b.L_) return a.c_ == b.c_;
  int L = lcm_int(a.L_, b.L_);
  return a.promoted(L).c_ == b.promoted(L).c_;
}

cplx Cyc::to_complex() const {
  cplx s = 0;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    double ang = 2 * std::numbers::pi * static_cast<double>(j) / L_;
    s += c_[j].get_d() * cplx(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string Cyc::str() const {
  if (c_.empty()) return "0";
  if (is_rational()) return q_str(c_[0]);
  std::string s;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    if (!s.empty()) s += " + ";
    s += q_str(c_[j]);
    if (j) s += "*z" + std::to_string(L_) + "^" + std::to_string(j);
  }
  return s;
}

}  // namespace hbb
