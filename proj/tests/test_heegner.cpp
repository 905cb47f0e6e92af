#include "doctest.h"

#include "hbb/heegner.hpp"

using namespace hbb;

TEST_CASE("cusp form dimensions for the trivial form") {
  DiscForm G;
  CHECK(dim_cusp(Q(12), G, false) == 1);
  CHECK(dim_cusp(Q(6), G, false) == 0);
  CHECK(dim_cusp(Q(4), G, false) == 0);
  CHECK(dim_cusp(Q(24), G, false) == 2);
  CHECK(dimension_data(Q(12), G, false).dim_modular == 2);
}

TEST_CASE("rank formula") {
  const std::vector<long long> want{2, 3, 4, 4, 6, 7, 7, 8, 9, 10, 11};
  for (int g = 2; g <= 12; ++g) {
    auto r = rank_formula(g);
    CHECK(r.value == want[static_cast<size_t>(g - 2)]);
    CHECK(r.total == Q(zz(r.value)));
    CHECK(r.main + r.jacobi_term + r.third + r.fourth + r.frac_sum + r.count == r.total);
  }
  for (int g = 13; g <= 120; ++g) CHECK_NOTHROW(rank_formula(g));
}

TEST_CASE("Heegner combinations are validated") {
  HeegnerCombo H;
  H.G = discriminant_group(lattice_A1(-1)).G;  // q(1) = 3/4
  H.terms[{qq(-1, 4), 1}] = 1;
  CHECK_NOTHROW(H.validate());
  H.terms[{qq(-1, 2), 1}] = 1;
  CHECK_THROWS_AS(H.validate(), PreconditionError);
  HeegnerCombo K;
  K.G = H.G;
  K.terms[{Q(1), 0}] = 1;
  CHECK_THROWS_AS(K.validate(), PreconditionError);
  HeegnerCombo R;
  R.G = H.G;
  R.terms[{Q(0), 7}] = 1;
  CHECK_THROWS_AS(R.validate(), PreconditionError);
}

TEST_CASE("coefficient pairing against Theta_{E8(-1)}") {
  auto f = theta_coeffs(lattice_E8(-1), Q(2));
  REQUIRE(f.dual);
  HeegnerCombo H;
  H.G = f.G;
  H.terms[{Q(0), 0}] = 1;
  CHECK(coefficient_pairing(H, f) == Cyc(1L));
  HeegnerCombo H1;
  H1.G = f.G;
  H1.terms[{Q(-1), 0}] = 1;
  CHECK(coefficient_pairing(H1, f) == Cyc(240L));
  H1.terms[{Q(-2), 0}] = 2;
  CHECK(coefficient_pairing(H1, f) == Cyc(240L + 2 * 2160L));
  H1.terms[{Q(-3), 0}] = 1;
  CHECK_THROWS_AS(coefficient_pairing(H1, f), PreconditionError);
  CHECK_THROWS_AS(coefficient_pairing(H1, theta_coeffs(lattice_E8(), Q(3))), PreconditionError);
}

TEST_CASE("decompositions") {
  auto M = standard_lattice("U+U(2)+A1(-1)^4");
  auto d = standard_decomposition(M);
  CHECK(d.N1 == 1);
  CHECK(d.N2 == 2);
  CHECK(d.L.rank() == 4);
  CHECK_THROWS_AS(make_decomposition(M, LMat::identity(3), 1, 1), PreconditionError);
  CHECK_THROWS_AS(make_decomposition(M, LMat::identity(8), 1, 1), PreconditionError);
  CHECK_THROWS_AS(make_decomposition(M, LMat::identity(8), 1, 0), PreconditionError);
  auto small = standard_lattice("U+U");
  CHECK_THROWS_AS(make_decomposition(small, LMat::identity(4), 1, 1), PreconditionError);
}

TEST_CASE("obstruction with no decompositions is empty") {
  auto M = lambda_g(2);
  auto res = obstruction_span(M, {}, Q(1));
  CHECK(res.rank == 0);
  CHECK(res.basis.empty());
}

TEST_CASE("Hodge criterion and boundary check on Lambda_2") {
  auto M = lambda_g(2);
  auto d = standard_decomposition(M);
  auto res = obstruction_span(M, {d}, Q(1));
  REQUIRE(res.rank == 1);
  const auto& G = res.basis.front().G;

  // the constant term of a cusp form pairs to zero
  HeegnerCombo H0;
  H0.G = G;
  H0.terms[{Q(0), 0}] = 1;
  CHECK(hodge_criterion(H0, res.basis).proportional);
  CHECK(!bf_boundary_check(H0, d, Q(1)).obstructed);

  // a single Heegner divisor hitting a nonzero coefficient is a witness
  size_t hit = 0;
  for (const auto& f : res.basis)
    for (const auto& [key, v] : f.c) {
      if (v.is_zero() || key.second == 0 || hit) continue;
      HeegnerCombo H;
      H.G = G;
      H.terms[{-key.second, key.first}] = 1;
      H.validate();
      auto verdict = hodge_criterion(H, res.basis);
      CHECK(!verdict.proportional);
      CHECK(verdict.pairings.size() == res.basis.size());
      auto bf = bf_boundary_check(H, d, Q(1));
      CHECK(bf.obstructed);
      CHECK(!bf.value.is_zero());
      hit = 1;
    }
  CHECK(hit == 1);
}
