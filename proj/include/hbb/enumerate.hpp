#pragma once

#include "hbb/lattice.hpp"

#include <functional>
#include <vector>

namespace hbb {

// Dual vectors of a positive definite even lattice M, given by dual coordinates
// y = gram * x (x the rational lattice coordinates of v in M^dual). Their norm is
// <v, v> = y^T adj y / det with adj = det * gram^{-1} integral.
class DualEnumerator {
 public:
  explicit DualEnumerator(const EvenLattice& M);

  long long det() const { return det_; }
  const LMat& adj() const { return adj_; }
  int rank() const { return r_; }

  // Calls f(y, n, worker) for every y with n = y^T adj y <= max_norm * det, i.e. <v,v> <= max_norm.
  // The outer coordinate range is split among workers; each worker calls f only with its own id.
  using Visitor = std::function<void(const std::vector<long long>& y, long long n, int worker)>;
  void for_each(const Q& max_norm, const Visitor& f, int workers = 1) const;

  // least positive norm <v,v> over M^dual
  Q min_norm() const;

 private:
  int r_;
  long long det_;
  LMat adj_;
  std::vector<long double> qd_;  // Fincke-Pohst coefficients, row-major upper triangle
};

}  // namespace hbb
