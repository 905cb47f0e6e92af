#include "doctest.h"

#include "hbb/weilrep.hpp"

#include <random>

using namespace hbb;

namespace {

DiscForm z2(const Q& q1) {
  QMat b(1, 1);
  b(0, 0) = frac(2 * q1);
  return DiscForm({2}, {q1}, b);
}

}  // namespace

TEST_CASE("trivial form") {
  WeilRep W{DiscForm()};
  CHECK(W.matrix(Word("S")) == CMat::identity(1));
  CHECK(W.matrix(Word("T")) == CMat::identity(1));
}

TEST_CASE("rho on Z/2 matches the closed formulas") {
  for (auto [q1, phase] : std::vector<std::pair<Q, Q>>{{qq(3, 4), qq(1, 8)}, {qq(1, 4), qq(-1, 8)}}) {
    WeilRep W(z2(q1));
    CMat T = W.matrix(Word("T"));
    CHECK(T(0, 0) == Cyc(1L));
    CHECK(T(1, 1) == Cyc::e(q1));
    CHECK(T(0, 1).is_zero());
    Cyc c = Cyc::e(phase) * Cyc::sqrt_int(2).inv();
    CMat S = W.matrix(Word("S"));
    CHECK(S(0, 0) == c);
    CHECK(S(0, 1) == c);
    CHECK(S(1, 0) == c);
    CHECK(S(1, 1) == -c);
  }
}

TEST_CASE("empty word and decomposition round trip") {
  WeilRep W(z2(qq(1, 4)));
  CHECK(W.matrix(Word("")) == CMat::identity(2));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    Word w;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) w += "STt"[rng() % 3];
    Mp2 g = word_element(w);
    Word back = decompose(g);
    CHECK(word_element(back).same(g));
    CHECK(W.matrix(back) == W.matrix(w));
  }
  Mp2 st = Mp2::S() * Mp2::T();
  CHECK(word_element(decompose(st)).same(st));
}

TEST_CASE("metaplectic relations") {
  Mp2 S = Mp2::S(), T = Mp2::T();
  Mp2 Z = S * S;
  Mp2 st = S * T;
  CHECK((st * st * st).same(Z));
  Mp2 Z4 = Z * Z * Z * Z;
  CHECK(Z4.same(Mp2::I()));
  CHECK(!(Z * Z).same(Mp2::I()));  // (-I, i)^2 = (I, -1)
}

TEST_CASE("extended action of g_alpha on Z/2") {
  WeilRep W(z2(qq(3, 4)));
  auto v = W.act_extended(Mp2::g_alpha(2), W.basis(1));
  CHECK(v == W.basis(0));
  auto v1 = W.act_extended(Mp2::I(), W.basis(1));
  CHECK(v1 == W.basis(1));
}

TEST_CASE("two factorizations of a coset element act identically") {
  DiscForm G = discriminant_group(lattice_angle(12)).G;
  WeilRep W(G);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    Word a, c;
    for (int i = 0; i < 3; ++i) a += "STt"[rng() % 3], c += "STt"[rng() % 3];
    Mp2 U = word_element(a), V = word_element(c);
    Mp2 Tn = Mp2::T();
    // U g V = (U T^4) g (T^-1 V) since T^4 g = g T when alpha^2 = 4
    Mp2 U2 = U * Tn * Tn * Tn * Tn;
    Mp2 V2 = Mp2::Tinv() * V;
    for (size_t g = 0; g < G.order(); ++g)
      CHECK(W.act_factored(U, 2, V, W.basis(g)) == W.act_factored(U2, 2, V2, W.basis(g)));
  }
}

TEST_CASE("degree-two coset action") {
  WeilRep W(z2(qq(3, 4)));
  for (long long al : {0LL, -1LL, -2LL}) {
    std::string why;
    CHECK_MESSAGE(verify_coset_action(W, al, Mp2::S(), Mp2::T(), &why), why);
    CHECK_MESSAGE(verify_coset_action(W, al, Mp2::I(), Mp2::I(), &why), why);
  }
  CHECK(phi_map(-1, Mp2::I(), Mp2::I()).same(Mp2::g_alpha(-1)));
  CHECK(bprime(Mp2::T()).same(Mp2::T()));
}
