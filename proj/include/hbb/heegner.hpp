#pragma once

#include "hbb/qexp.hpp"

#include <map>
#include <string>
#include <vector>

namespace hbb {

// ------------------------------------------------------------------ dimensions

struct DimensionData {
  long long dim_modular = 0;
  long long dim_cusp = 0;
  long long dim_V = 0;  // rho(Z)-eigenspace carrying the forms
};
// Exact dimension of M_k and S_k for rho_G (rho_G^* when dual); k >= 5/2.
DimensionData dimension_data(const Q& k, const DiscForm& G, bool dual);
long long dim_cusp(const Q& k, const DiscForm& G, bool dual);

// ------------------------------------------------------------------ rank formula

struct RankFormula {
  int g = 0;
  Q main;         // (31g + 24)/24
  Q jacobi_term;  // -1/4 J((2g-2)/(2g-3)) [g odd]
  Q third;        // -1/6 J((g-1)/(4g-5))
  Q fourth;       // -1/6 (-1)^{J((g-2)/3)}, i.e. -1/6 for g = 2 mod 3 and +1/6 otherwise
  Q frac_sum;     // -sum_k {k^2/(4g-4)}
  Q count;        // -#{k : k^2/(4g-4) in Z}
  Q total;
  long long value = 0;
};
// throws std::logic_error on a non-integral total
RankFormula rank_formula(int g);
std::string rank_formula_reading();

// ------------------------------------------------------------------ Heegner combinations

// Finite rational combination of H_{m, g}; the key (0, 0) stands for -lambda.
struct HeegnerCombo {
  DiscForm G;  // discriminant form of the ambient lattice
  std::map<std::pair<Q, size_t>, Q> terms;  // (m <= 0, g) -> coefficient
  void validate() const;
};

// M = U(N1) + U(N2) + L in the basis given by the columns of P (P^T gram P = block form,
// columns e1, f1, e2, f2 then a basis of L).
struct AdmissibleDecomposition {
  EvenLattice M;
  LMat P;
  long long N1 = 1, N2 = 1;
  EvenLattice L;
};
AdmissibleDecomposition make_decomposition(const EvenLattice& M, const LMat& P, long long N1, long long N2);
// the decomposition in the block order of the named standard lattices (U(N1), U(N2), L)
AdmissibleDecomposition standard_decomposition(const EvenLattice& M);

// sum a_{m,g} c_{-m,g}(f)
Cyc coefficient_pairing(const HeegnerCombo& H, const FourierExpansion& f);

struct HodgeVerdict {
  bool proportional = true;
  std::vector<Cyc> pairings;  // one per basis element
};
HodgeVerdict hodge_criterion(const HeegnerCombo& H, const std::vector<FourierExpansion>& cusp_span);

// Isotropic subgroup H_J and the identification G_L -> H_J^perp / H_J.
struct BoundaryData {
  DiscriminantData DM;
  Subquotient sq;
  std::vector<size_t> iso;  // G_L element index -> quotient index
};
BoundaryData boundary_data(const AdmissibleDecomposition& d);

// Lifted theta series up(sigma^* Theta_{L(-1),F}) over F in a harmonic quadratic basis and
// sigma in O(H^perp/H).
std::vector<FourierExpansion> boundary_lifts(const AdmissibleDecomposition& d, const Q& P, int workers = 1);

struct ObstructionResult {
  std::vector<FourierExpansion> basis;  // lifted theta series (all of them, before rank reduction)
  int rank = 0;
  Q prec;
  std::vector<int> rank_history;  // ranks at prec, prec + 1, ..., prec + increments
  bool stabilized = true;         // all entries of rank_history agree
};
ObstructionResult obstruction_span(const EvenLattice& M, const std::vector<AdmissibleDecomposition>& decomps,
                                   const Q& P, int workers = 1, int increments = 0);
// rank of a family of expansions on the admissible slots up to P, exact over Q(zeta)
int expansion_rank(const std::vector<FourierExpansion>& fs, const Q& P);

struct BFVerdict {
  bool obstructed = false;
  size_t witness = 0;  // index into the lifted family
  Cyc value;
};
BFVerdict bf_boundary_check(const HeegnerCombo& H, const AdmissibleDecomposition& d, const Q& P, int workers = 1);

}  // namespace hbb
