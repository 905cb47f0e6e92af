#pragma once

#include "hbb/discform.hpp"
#include "hbb/harmonic.hpp"
#include "hbb/weilrep.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hbb {

// Truncated vector-valued q-expansion sum c(g, m) q^m e_g, 0 <= m <= prec.
// With dual set the expansion transforms under the dual representation (q negated).
struct FourierExpansion {
  DiscForm G;
  bool dual = false;
  Q k = 0;
  Q prec = 0;
  std::map<std::pair<size_t, Q>, Cyc> c;

  Q q_eff(size_t g) const;  // in [0, 1)
  void add(size_t g, const Q& m, const Cyc& v);
  Cyc get(size_t g, const Q& m) const;
  bool is_cusp() const;
  void validate() const;  // parity and exponent congruence, throws PreconditionError
  FourierExpansion truncated(const Q& P) const;
  // admissible (g, m) with m = q_eff(g) mod 1 and 0 <= m <= P, ordered by g then m
  std::vector<std::pair<size_t, Q>> slots(const Q& P) const;
  std::vector<cplx> eval(cplx tau) const;
  WeilRep weil() const { return WeilRep(dual ? G.negated() : G); }
};

FourierExpansion operator+(const FourierExpansion& a, const FourierExpansion& b);
FourierExpansion operator*(const Cyc& s, const FourierExpansion& f);
bool same_coefficients(const FourierExpansion& a, const FourierExpansion& b, const Q& P);
// isotropic lift of an expansion on H^perp/H to G
FourierExpansion lift_expansion(const DiscForm& G, const Subquotient& sq, const FourierExpansion& f);
// (sigma^* f)_g = f_{sigma(g)} for a permutation of element indices
FourierExpansion pullback(const FourierExpansion& f, const std::vector<size_t>& sigma);

// Bound on sum_{q(v) > P} |F(v)| exp(-2 pi y q(v)) over the dual lattice, by a packing
// count: #{v : <v,v> <= t} <= ((sqrt t + rho) / rho)^r, rho = half the minimal dual length.
struct TailModel {
  int r = 1;
  double rho = 0.5;
  double weight = 1.0;  // |F(v)| <= weight * <v,v>^(deg/2)
  int deg = 0;
  double bound(const Q& P, double y) const;
};

// Per-slot vector counts and second moments sum y y^T of dual coordinates.
struct ThetaMoments {
  EvenLattice M;        // positive definite lattice actually enumerated
  DiscriminantData D;
  Q prec;
  std::map<std::pair<size_t, Q>, long long> count;
  std::map<std::pair<size_t, Q>, std::vector<long long>> second;  // upper triangle, row-major
  bool with_second = false;
};
ThetaMoments theta_moments(const EvenLattice& M, const Q& P, bool with_second, int workers = 1);
// Theta series of M against F (F = nullptr for the constant 1), from precomputed moments.
FourierExpansion theta_from_moments(const ThetaMoments& mom, const QuadHarmonic* F, bool dual);

// Theta series; a negative definite M is evaluated on M(-1) and flagged dual.
FourierExpansion theta_coeffs(const EvenLattice& M, const Q& P, const QuadHarmonic* F = nullptr,
                              int workers = 1, TailModel* tail = nullptr);

struct GenusRep {
  EvenLattice L;
  Q aut_count;
  std::vector<std::vector<size_t>> isos;  // maps of G_M element indices into G_L element indices
};
FourierExpansion genus_theta(const std::vector<GenusRep>& reps, const Q& P);

Q bernoulli(int n);
// classical level-one Eisenstein coefficients of weight k (even, k >= 4), n = 0..nmax
std::vector<Q> eisenstein_level_one(int k, int nmax);

struct EisensteinReport {
  bool oracle_available = false;
  bool matches = false;
  bool constant_term_one = false;
  FourierExpansion expansion;
  std::string detail;
};
EisensteinReport eisenstein_identity_check(const EvenLattice& M, const Q& P);

struct ModularityReport {
  double residual = 0;  // max over samples and components of |f|g - f| from truncated sums
  double tail = 0;      // certified bound on the truncation error of both sides
  bool ok(double tol) const { return residual + tail < tol; }
};
ModularityReport modularity_residual(const FourierExpansion& f, const Mp2& g, const std::vector<cplx>& taus,
                                     const TailModel& tail);

struct SplitThetaReport {
  bool decomposition_holds = false;
  size_t slots_checked = 0;
  Q fitted_C = 0;
  bool constant_consistent = false;
  size_t constant_slots = 0;
};
SplitThetaReport split_theta_decomposition_check(const EvenLattice& M, const Q& P);

}  // namespace hbb
