#include "doctest.h"

#include "hbb/discform.hpp"
#include "hbb/io.hpp"

#include <algorithm>
#include <random>

using namespace hbb;

namespace {

std::vector<Q> sorted_q_values(const DiscForm& G) {
  std::vector<Q> v;
  for (size_t a = 0; a < G.order(); ++a) v.push_back(G.q(a));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  Cyc r2 = Cyc::sqrt_int(2);
  CHECK(r2 * r2 == Cyc(2L));
  Cyc rm3 = Cyc::sqrt_int(-3);
  CHECK(rm3 * rm3 == Cyc(-3L));
  CHECK(std::abs(rm3.to_complex() - cplx(0, std::sqrt(3.0))) < 1e-14);
  Cyc x = Cyc::zeta(12, 1) + Cyc(3L);
  CHECK(x * x.inv() == Cyc(1L));
  CHECK(Cyc::zeta(8, 2) == Cyc::i());
  // 1 + e(1/4) = sqrt 2 e(1/8)
  CHECK(Cyc(1L) + Cyc::e(qq(1, 4)) == r2 * Cyc::e(qq(1, 8)));
  CHECK(x.conj().conj() == x);
}

TEST_CASE("standard lattices") {
  CHECK(lattice_U().gram()(0, 1) == 1);
  CHECK(lattice_U().gram()(0, 0) == 0);
  auto u2 = rescale(lattice_U(), 2);
  CHECK(u2.gram()(0, 1) == 2);
  CHECK(u2.gram()(1, 1) == 0);
  auto L2 = lambda_g(2);
  CHECK(L2.rank() == 21);
  CHECK(L2.signature() == std::pair<int, int>{2, 19});
  CHECK(L2.gram()(0, 0) == -2);
  CHECK(lattice_E8().det() == 1);
  CHECK_THROWS_AS(EvenLattice(LMat(1, 1, 3)), PreconditionError);
  CHECK_THROWS_AS(EvenLattice(LMat(2, 2, 0)), PreconditionError);
  CHECK_THROWS_AS(standard_lattice("Q7"), PreconditionError);
}

TEST_CASE("discriminant groups against direct dual-basis oracles") {
  CHECK(discriminant_group(lattice_U()).G.order() == 1);
  for (long long k = 1; k <= 12; ++k) {
    auto G = discriminant_group(lattice_angle(2 * k)).G;
    REQUIRE(G.order() == static_cast<size_t>(2 * k));
    // dual vectors j v / (2k) have q = j^2 / (4k)
    std::vector<Q> want;
    for (long long j = 0; j < 2 * k; ++j) want.push_back(frac(qq(j * j, 4 * k)));
    std::sort(want.begin(), want.end());
    CHECK(sorted_q_values(G) == want);
  }
  auto G = discriminant_group(lattice_U(2)).G;
  CHECK(sorted_q_values(G) == std::vector<Q>{Q(0), Q(0), Q(0), qq(1, 2)});
}

TEST_CASE("|G| = |det| and q is additive on direct sums") {
  std::vector<std::string> specs{"A1+<4>", "U(3)+A1(-1)", "E8+<6>", "A1^3", "<10>+<-6>", "U(2)+U(2)"};
  for (const auto& s : specs) {
    auto M = standard_lattice(s);
    auto G = discriminant_group(M).G;
    Z d = M.det();
    CHECK(Z(static_cast<unsigned long>(G.order())) == abs(d));
  }
  auto A = discriminant_group(lattice_angle(4)).G;
  auto B = discriminant_group(lattice_angle(-6)).G;
  auto S = discriminant_group(direct_sum({lattice_angle(4), lattice_angle(-6)})).G;
  std::vector<Q> sum;
  for (size_t a = 0; a < A.order(); ++a)
    for (size_t b = 0; b < B.order(); ++b) sum.push_back(frac(A.q(a) + B.q(b)));
  std::sort(sum.begin(), sum.end());
  CHECK(sorted_q_values(S) == sum);
}

TEST_CASE("M(-1) negates q") {
  for (const char* s : {"A1", "<6>", "U(2)+A1", "E8+<4>"}) {
    auto G = discriminant_group(standard_lattice(s)).G;
    auto Gm = discriminant_group(rescale(standard_lattice(s), -1)).G;
    std::vector<Q> neg;
    for (size_t a = 0; a < G.order(); ++a) neg.push_back(frac(-G.q(a)));
    std::sort(neg.begin(), neg.end());
    CHECK(sorted_q_values(Gm) == neg);
  }
}

TEST_CASE("form invariants") {
  auto T = form_invariants(DiscForm());
  CHECK(T.level == 1);
  CHECK(T.signature_mod8 == 0);
  auto A = form_invariants(discriminant_group(lattice_A1()).G);
  CHECK(A.level == 4);
  CHECK(A.signature_mod8 == 1);
  auto Gm = discriminant_group(lattice_A1(-1)).G;
  CHECK(Gm.q(1) == qq(3, 4));
  CHECK(coparity(Gm) == 1);
  CHECK(characteristic_element(Gm) == 1);
  CHECK_THROWS(coparity(discriminant_group(lattice_angle(6)).G));
  // G^n, G_n, G^{n*} by definition on Z/8
  auto G8 = discriminant_group(lattice_angle(8)).G;
  CHECK(G_upper(G8, 2).size() == 4);
  CHECK(G_lower(G8, 2).size() == 2);
  for (size_t g : G_upper_star(G8, 2)) {
    bool ok = true;
    for (size_t mu = 0; mu < G8.order(); ++mu)
      if (G8.mul(2, mu) == 0) ok = ok && frac(2 * G8.q(mu) + G8.b(mu, g)) == 0;
    CHECK(ok);
  }
}

TEST_CASE("split predicates") {
  CHECK(split_predicates(lambda_g(2), 2).k3_type_sufficient == Verdict::True);
  auto M = standard_lattice("U+U(2)+A1(-1)^8");
  auto s = split_predicates(M, 2);
  CHECK(s.p_elementary);
  CHECK(s.p_elementary_splits_U == Verdict::True);
  // rank_3(G) = 8 = rank: the local criterion cannot decide
  auto R = lattice_E8(-3);
  CHECK(split_predicates(R, 3).local_hyperbolic_sufficient == Verdict::Undecided);
}

TEST_CASE("Milgram formula on random diagonal lattices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    std::vector<EvenLattice> parts;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      long long m = 2 * (1 + static_cast<long long>(rng() % 5));
      parts.push_back(lattice_angle(rng() % 2 ? m : -m));
    }
    auto M = direct_sum(parts);
    auto G = discriminant_group(M).G;
    auto [bp, bm] = M.signature();
    CHECK(G.gauss_sum() == Cyc::sqrt_int(static_cast<long long>(G.order())) * Cyc::e(qq(bp - bm, 8)));
  }
}

TEST_CASE("subquotients and lift/descent") {
  auto G = discriminant_group(lattice_U(2)).G;
  auto sq0 = complement_and_quotient(G, {});
  CHECK(sq0.quotient.order() == G.order());
  size_t estar = 0, fstar = 0;
  for (size_t a = 1; a < G.order(); ++a)
    if (G.q(a) == 0) (estar ? fstar : estar) = a;
  auto sq = complement_and_quotient(G, {estar});
  CHECK(sq.H.size() == 2);
  CHECK(sq.Hperp == sq.H);
  CHECK(sq.quotient.order() == 1);
  auto up = lift_up(G, sq, std::vector<Q>{Q(1)});
  std::vector<Q> want(4, Q(0));
  want[0] = want[estar] = 1;
  CHECK(up == want);
  std::vector<Q> ef(4, Q(0));
  ef[fstar] = 1;
  CHECK(descend_down(G, sq, ef) == std::vector<Q>{Q(0)});

  auto G2 = discriminant_group(standard_lattice("U(2)+U(2)")).G;
  std::vector<size_t> iso;
  for (size_t a = 1; a < G2.order(); ++a)
    if (G2.q(a) == 0) iso.push_back(a);
  bool found_lagrangian = false;
  for (size_t a : iso)
    for (size_t b : iso) {
      if (a >= b || G2.b(a, b) != 0) continue;
      auto sqq = complement_and_quotient(G2, {a, b});
      if (sqq.H.size() == 4) {
        found_lagrangian = true;
        CHECK(sqq.quotient.order() == 1);
      }
    }
  CHECK(found_lagrangian);
}

TEST_CASE("orthogonal groups") {
  CHECK(orthogonal_group(DiscForm()).size() == 1);
  CHECK(orthogonal_group(discriminant_group(lattice_A1()).G).size() == 1);
  CHECK(orthogonal_group(discriminant_group(lattice_U(2)).G).size() == 2);
}

TEST_CASE("characteristic-free isotropic subgroups") {
  auto G = discriminant_group(standard_lattice("U(2)+A1(-1)+A1(-1)")).G;
  std::vector<size_t> iso;
  for (size_t a = 1; a < G.order(); ++a)
    if (G.q(a) == 0) iso.push_back(a);
  REQUIRE(!iso.empty());
  size_t alpha = characteristic_element(G);
  bool some = false;
  for (size_t a : iso)
    if (a != alpha) some = some || is_characteristic_free(G, subgroup_closure(G, {a}));
  CHECK(some);
}

TEST_CASE("lattice files round-trip byte-stably") {
  auto M = standard_lattice("U+U(2)+A1(-1)^2");
  std::string s = format_lattice(M);
  CHECK(format_lattice(parse_lattice(s)) == s);
  auto A = parse_lattice("# comment\nname: A2\ngram: 2\n2 1\n1 2\n");
  CHECK(A.det() == 3);
  CHECK(format_lattice(parse_lattice(format_lattice(A))) == format_lattice(A));
  CHECK_THROWS_AS(parse_lattice("name: x\ngram: 2\n2 1\n"), PreconditionError);
  CHECK_THROWS_AS(parse_lattice("name: x\nblocks: A1\ngram: 1\n4\n"), PreconditionError);
  CHECK_THROWS_AS(parse_lattice("colour: red\n"), PreconditionError);
}
