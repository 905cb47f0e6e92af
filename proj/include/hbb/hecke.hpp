#pragma once

#include "hbb/qexp.hpp"

#include <complex>
#include <map>
#include <vector>

namespace hbb {

struct HeckeCosetSystem {
  long long alpha = 1;
  std::vector<Mp2> reps;  // upper triangular, det alpha^2
};
// alpha = p^n: triangular representatives; otherwise products over the prime-power parts
HeckeCosetSystem coset_reps(long long alpha);
// closed-form count prod over p^n || alpha of p^{2n} + p^{2n-1}
long long coset_count(long long alpha);
// pairwise distinct left cosets: R1 R2^{-1} never integral
bool distinct_left_cosets(const std::vector<Mp2>& reps);

// T_{alpha^2} f truncated at P_out; f must be known to precision alpha^2 P_out
FourierExpansion hecke_T(long long alpha, const FourierExpansion& f, const Q& P_out);
// precision f must carry for hecke_T(alpha, f, P_out)
inline Q hecke_required_precision(long long alpha, const Q& P_out) { return Q(zz(alpha * alpha)) * P_out; }

// Scalar expansion sum c(m) q^m, m >= 0.
using ScalarExpansion = std::map<Q, Cyc>;
ScalarExpansion component(const FourierExpansion& f, size_t g);
// T^{q}_{p^{2n}} F = p^{(k-2)n} sum_b e(-b q) F|_k[((1, b; 0, p^{2n}), p^n)], truncated at P_out
ScalarExpansion scalar_T(const Q& q_val, long long p, int n, const ScalarExpansion& F, const Q& k, const Q& P_out);

// gamma not in pG, and for p = 2 some mu with 2 mu = 0 and 2 q(mu) + (mu, gamma) != 0 mod 1
bool star_condition(size_t gamma, long long p, const DiscForm& G);
// sum_{I subset S} (-1)^{|I|} e_{gamma_I}, gamma_I taking its p-parts from mu for p in I
std::vector<Q> vanishing_vector(size_t gamma, size_t mu, const std::vector<long long>& S, const DiscForm& G);
// p-primary component of gamma
size_t p_part(const DiscForm& G, size_t gamma, long long p);

// e_mu | delta supported in G^p (odd p) or G^2 u G^{2*} (p = 2) for every rep with a < 2n
struct SupportReport {
  size_t reps_checked = 0;
  size_t vectors_checked = 0;
  bool holds = true;
};
SupportReport support_property(const DiscForm& G, long long p, int n);

struct EigenResult {
  std::vector<long long> alphas;
  std::vector<CMat> matrices;  // T_{alpha^2} in the given basis, column j = image of basis[j]
  bool commute = true;
  // per eigenform: coefficients in the basis and eigenvalue per alpha
  std::vector<std::vector<cplx>> vectors;
  std::vector<std::vector<cplx>> eigenvalues;
};
// basis must be known to precision max(alpha)^2 * P; matrices are exact on the slots up to P
EigenResult eigenbasis(const std::vector<FourierExpansion>& basis, const std::vector<long long>& alphas, const Q& P);

// sum_{alpha <= cutoff} lambda(alpha^2) alpha^{-s}
cplx l_series_partial(const std::map<long long, cplx>& eigenvalues, cplx s, long long cutoff);

}  // namespace hbb
