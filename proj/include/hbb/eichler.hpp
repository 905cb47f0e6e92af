#pragma once

#include "hbb/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hbb {

using IVec = std::vector<long long>;

// t(x, y)(v) = v - <y, v> x + <x, v> y - <x, v> <y, y> / 2 x for isotropic x and y orthogonal to x.
struct Transvection {
  QMat rational;          // always defined
  bool integral = false;  // callers renormalize when false
  LMat matrix;            // set only when integral
};
Transvection transvection(const EvenLattice& M, const std::vector<Q>& x, const std::vector<Q>& y);

bool is_isometry(const EvenLattice& M, const LMat& g);
IVec act(const LMat& g, const IVec& v);
long long divisibility(const EvenLattice& M, const IVec& u);
bool is_primitive(const IVec& u);

// U + U(2) + A1(-1)^m in the basis e1, f1, e2, f2, r_1..r_m
EvenLattice eichler_lattice(int m);

struct EichlerInvariants {
  long long norm = 0;  // <u, u>
  long long div = 0;
  size_t dual_class = 0;  // u / div in G_M
  bool operator==(const EichlerInvariants& o) const {
    return norm == o.norm && div == o.div && dual_class == o.dual_class;
  }
};
EichlerInvariants eichler_invariants(const EvenLattice& M, const IVec& u);

enum class EichlerCase { Identity, PivotU, PivotU2 };
struct EichlerMove {
  LMat g;
  EichlerCase subcase = EichlerCase::Identity;
  int search_steps = 0;
};
// g in O(M) with g(u) = v. Throws PreconditionError on invariant mismatch and
// std::runtime_error when the bounded normalization search gives up.
EichlerMove eichler_move(const EvenLattice& M, const IVec& u, const IVec& v);
std::string eichler_case_str(EichlerCase c);

enum class OracleVerdict { SameOrbit, Inconclusive };
// breadth-first search over the fixed generators; sound but incomplete
OracleVerdict orbit_oracle(const EvenLattice& M, const IVec& u, const IVec& v, int depth, long long coord_bound = 12);

// generators used by the normalization search and the oracle (all act trivially on G_M)
std::vector<LMat> eichler_generators(const EvenLattice& M);

}  // namespace hbb
