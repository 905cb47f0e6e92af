#pragma once

#include "hbb/lattice.hpp"

#include <map>
#include <vector>

namespace hbb {

// Homogeneous polynomial in r orthonormal coordinates, exact coefficients.
struct HarmonicPolynomial {
  int r = 1;
  int h = 0;
  std::map<std::vector<int>, Q> c;  // exponent vector -> coefficient

  Q eval(const std::vector<Q>& x) const;
  HarmonicPolynomial laplacian() const;  // degree h - 2
  bool is_harmonic() const { return laplacian().c.empty(); }
};

// apolar product <x^a, x^b> = a! [a = b]
Q apolar(const HarmonicPolynomial& f, const HarmonicPolynomial& g);
Z harmonic_dimension(int r, int h);
// orthogonal (apolar) basis of the harmonic space of degree h in r variables
std::vector<HarmonicPolynomial> harmonic_basis(int r, int h);

// Bivariate polynomial sum c[i][j] x^i y^j.
struct BiPoly {
  std::map<std::pair<int, int>, Q> c;
  Q eval(const Q& x, const Q& y) const;
};
// coefficient of T^h in (1 - 2xT + yT^2)^{-(r/2 - 1)}; r >= 3
BiPoly gegenbauer(int r, int h);
// r = 2 limit: coefficient divided by (r/2 - 1), which stays finite (used only for rank-2 checks)
BiPoly gegenbauer_renormalized(int r, int h);

// Quadratic polynomial F(v) = x^T C x on M (x) R, written in lattice coordinates x of v.
// Harmonic for the metric gram iff tr(gram^{-1} C) = 0.
struct QuadHarmonic {
  QMat C;
  Q eval(const std::vector<Q>& x) const;
};
bool is_harmonic(const EvenLattice& M, const QuadHarmonic& F);
// F_u(v) = <u, v>^2 - <u, u><v, v>/r for u in lattice coordinates
QuadHarmonic F_u(const EvenLattice& M, const std::vector<Q>& u);
// invariant (apolar) product, tr(C1 G^{-1} C2 G^{-1}) up to a positive constant
Q quad_inner(const EvenLattice& M, const QuadHarmonic& a, const QuadHarmonic& b);
// orthogonal basis of the harmonic quadratics, built from F_u for u = e_i and e_i + e_j
std::vector<QuadHarmonic> quad_harmonic_basis(const EvenLattice& M);

}  // namespace hbb
