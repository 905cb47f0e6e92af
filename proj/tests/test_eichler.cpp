#include "doctest.h"

#include "hbb/eichler.hpp"

using namespace hbb;

namespace {

std::vector<Q> qv(std::initializer_list<long long> xs) {
  std::vector<Q> v;
  for (long long x : xs) v.push_back(Q(zz(x)));
  return v;
}

LMat mul(const LMat& a, const LMat& b) {
  LMat c(a.rows, b.cols, 0);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      for (int k = 0; k < a.cols; ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

}  // namespace

TEST_CASE("transvection table in U + U(2) + A1(-1)") {
  auto M = eichler_lattice(1);
  auto t = transvection(M, qv({-1, 0, 0, 0, 0}), qv({0, 0, 0, 0, 1}));
  REQUIRE(t.integral);
  CHECK(is_isometry(M, t.matrix));
  // f1 -> f1 + e1 - r1
  CHECK(act(t.matrix, {0, 1, 0, 0, 0}) == IVec{1, 1, 0, 0, -1});
  // r1 -> r1 - 2 e1
  CHECK(act(t.matrix, {0, 0, 0, 0, 1}) == IVec{-2, 0, 0, 0, 1});
  CHECK(act(t.matrix, {1, 0, 0, 0, 0}) == IVec{1, 0, 0, 0, 0});
}

TEST_CASE("transvection identities") {
  auto M = eichler_lattice(2);
  auto x = qv({1, 0, 0, 0, 0, 0});
  auto u = qv({0, 0, 1, 1, 1, 0});
  auto w = qv({0, 0, 0, 0, 1, -1});
  auto neg = u;
  for (auto& c : neg) c = -c;
  auto a = transvection(M, x, u), b = transvection(M, x, neg);
  REQUIRE(a.integral);
  REQUIRE(b.integral);
  CHECK(mul(a.matrix, b.matrix) == LMat::identity(6));
  auto sum = u;
  for (size_t i = 0; i < sum.size(); ++i) sum[i] += w[i];
  auto c = transvection(M, x, w), s = transvection(M, x, sum);
  REQUIRE(c.integral);
  REQUIRE(s.integral);
  CHECK(mul(a.matrix, c.matrix) == s.matrix);
  CHECK(act(a.matrix, {1, 0, 0, 0, 0, 0}) == IVec{1, 0, 0, 0, 0, 0});
}

TEST_CASE("invariants") {
  auto M = eichler_lattice(2);
  CHECK(divisibility(M, {0, 0, 1, 0, 0, 0}) == 2);
  CHECK(divisibility(M, {1, 0, 0, 0, 0, 0}) == 1);
  CHECK(divisibility(M, {0, 0, 0, 0, 1, 0}) == 2);
  CHECK(is_primitive({2, 4, 6}) == false);
  CHECK(is_primitive({2, 3}));
  auto inv = eichler_invariants(M, {1, 3, 0, 0, 0, 0});
  CHECK(inv.norm == 6);
  CHECK(inv.div == 1);
}

TEST_CASE("Eichler moves") {
  auto M = eichler_lattice(2);
  IVec u{1, 3, 0, 0, 0, 0};
  auto id = eichler_move(M, u, u);
  CHECK(id.subcase == EichlerCase::Identity);
  CHECK(id.g == LMat::identity(6));

  IVec v{0, 0, 1, 1, 1, 1};
  for (const auto& [a, b] : std::vector<std::pair<IVec, IVec>>{{u, IVec{3, 1, 0, 0, 0, 0}}, {v, IVec{0, 0, -1, -1, 1, 1}}}) {
    REQUIRE(eichler_invariants(M, a) == eichler_invariants(M, b));
    auto mv = eichler_move(M, a, b);
    CHECK(is_isometry(M, mv.g));
    CHECK(act(mv.g, a) == b);
  }
  // u -> -u: the move is built directly; the bounded oracle need not reach it
  IVec w{1, 1, 0, 0, 0, 0};
  IVec mw{-1, -1, 0, 0, 0, 0};
  REQUIRE(eichler_invariants(M, w) == eichler_invariants(M, mw));
  auto mv = eichler_move(M, w, mw);
  CHECK(act(mv.g, w) == mw);
  CHECK(is_isometry(M, mv.g));
  // one generator away is always within depth 1
  for (const auto& g : eichler_generators(M)) CHECK(orbit_oracle(M, w, act(g, w), 1) == OracleVerdict::SameOrbit);
  CHECK(orbit_oracle(M, w, w, 0) == OracleVerdict::SameOrbit);

  // different norms
  CHECK_THROWS_AS(eichler_move(M, u, IVec{1, 1, 0, 0, 0, 0}), PreconditionError);
  // equal norm 2, different divisibility
  CHECK_THROWS_AS(eichler_move(M, IVec{1, 1, 0, 0, 0, 0}, IVec{0, 0, 1, 1, 0, 1}), PreconditionError);
}

TEST_CASE("generators act trivially on the discriminant group") {
  auto M = eichler_lattice(1);
  for (const auto& g : eichler_generators(M)) {
    CHECK(is_isometry(M, g));
    for (const IVec& u : {IVec{0, 0, 1, 0, 0}, IVec{0, 0, 0, 1, 0}, IVec{0, 0, 0, 0, 1}})
      CHECK(eichler_invariants(M, u).dual_class == eichler_invariants(M, act(g, u)).dual_class);
  }
}
