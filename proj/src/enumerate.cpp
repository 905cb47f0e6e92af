#include "hbb/enumerate.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace hbb {

DualEnumerator::DualEnumerator(const EvenLattice& M) : r_(M.rank()) {
  if (!M.positive_definite()) throw PreconditionError("enumeration requires a positive definite lattice");
  QMat g = to_qmat(to_zmat(M.gram()));
  Q d = hbb::det(g);
  det_ = to_ll(d.get_num());
  QMat gi = inverse(g);
  adj_ = LMat(r_, r_, 0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) {
      Q v = gi(i, j) * d;
      if (v.get_den() != 1) throw std::logic_error("adjugate not integral");
      adj_(i, j) = to_ll(v.get_num());
    }
  // q(y) = sum_i qd[i][i] (y_i + sum_{j>i} qd[i][j] y_j)^2
  std::vector<long double> q(static_cast<size_t>(r_) * r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) q[static_cast<size_t>(i) * r_ + j] = static_cast<long double>(adj_(i, j));
  auto Qa = [&](int i, int j) -> long double& { return q[static_cast<size_t>(i) * r_ + j]; };
  for (int i = 0; i < r_; ++i) {
    for (int j = i + 1; j < r_; ++j) {
      Qa(j, i) = Qa(i, j);
      Qa(i, j) = Qa(i, j) / Qa(i, i);
    }
    for (int k = i + 1; k < r_; ++k)
      for (int l = k; l < r_; ++l) Qa(k, l) -= Qa(k, i) * Qa(i, l);
  }
  qd_ = q;
}

void DualEnumerator::for_each(const Q& max_norm, const Visitor& f, int workers) const {
  if (max_norm < 0) return;
  Q bq = max_norm * zz(det_);
  long long B = to_ll(floor_q(bq));
  long double Bf = static_cast<long double>(B) * (1 + 1e-9L) + 1e-6L;
  auto Qa = [&](int i, int j) { return qd_[static_cast<size_t>(i) * r_ + j]; };
  int last = r_ - 1;
  long long outer = static_cast<long long>(std::floor(std::sqrt(Bf / Qa(last, last)))) + 1;
  std::vector<long long> outer_vals;
  for (long long v = -outer; v <= outer; ++v) outer_vals.push_back(v);
  if (workers < 1) workers = 1;

  auto run = [&](int w) {
    std::vector<long long> y(r_, 0);
    std::vector<long double> T(r_ + 1, 0), U(r_ + 1, 0);
    std::vector<long long> hi(r_, 0);
    for (size_t oi = static_cast<size_t>(w); oi < outer_vals.size(); oi += static_cast<size_t>(workers)) {
      y[last] = outer_vals[oi];
      long double rem = Bf - Qa(last, last) * static_cast<long double>(y[last]) * y[last];
      if (rem < 0) continue;
      // depth-first over coordinates last-1 .. 0
      T[last] = rem;
      int i = last - 1;
      if (i < 0) {
        __int128 n = static_cast<__int128>(adj_(0, 0)) * y[0] * y[0];
        if (n <= B) f(y, static_cast<long long>(n), w);
        continue;
      }
      auto init = [&](int k) {
        long double c = 0;
        for (int j = k + 1; j < r_; ++j) c += Qa(k, j) * static_cast<long double>(y[j]);
        U[k] = c;
        long double z = std::sqrt(std::max<long double>(T[k + 1], 0) / Qa(k, k));
        y[k] = static_cast<long long>(std::ceil(-z - c - 1e-9L));
        hi[k] = static_cast<long long>(std::floor(z - c + 1e-9L));
      };
      init(i);
      while (true) {
        if (y[i] > hi[i]) {
          ++i;
          if (i >= last) break;
          ++y[i];
          continue;
        }
        long double t = static_cast<long double>(y[i]) + U[i];
        long double Ti = T[i + 1] - Qa(i, i) * t * t;
        if (Ti < -1e-6L) {
          ++y[i];
          continue;
        }
        if (i == 0) {
          long double nf = Bf - Ti;
          long double nr = std::floor(nf + 0.5L);
          if (std::fabs(nf - nr) < 1e-3L) {
            // the float remainder is accurate to far below 1/2, so the rounded value is exact
            long long n = static_cast<long long>(nr);
            if (n <= B) f(y, n, w);
            ++y[0];
            continue;
          }
          __int128 n = 0;
          for (int a = 0; a < r_; ++a) {
            if (!y[a]) continue;
            __int128 s = 0;
            for (int b = 0; b < r_; ++b) s += static_cast<__int128>(adj_(a, b)) * y[b];
            n += s * y[a];
          }
          if (n <= B) f(y, static_cast<long long>(n), w);
          ++y[0];
        } else {
          T[i] = Ti;
          --i;
          init(i);
        }
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> th;
    for (int w = 0; w < workers; ++w) th.emplace_back(run, w);
    for (auto& t : th) t.join();
  }
}

Q DualEnumerator::min_norm() const {
  // grow the radius until a nonzero vector appears
  Q R = qq(1, det_ > 0 ? 1 : 1);
  for (int it = 0; it < 64; ++it) {
    long long best = -1;
    for_each(R, [&](const std::vector<long long>& y, long long n, int) {
      bool zero = true;
      for (auto v : y) zero = zero && v == 0;
      if (!zero && (best < 0 || n < best)) best = n;
    });
    if (best > 0) return qq(best, det_);
    R *= 2;
  }
  throw std::runtime_error("min_norm: no vector found");
}

}  // namespace hbb
