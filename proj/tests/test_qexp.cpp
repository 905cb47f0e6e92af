#include "doctest.h"

#include "hbb/enumerate.hpp"
#include "hbb/io.hpp"
#include "hbb/numeric.hpp"
#include "hbb/qexp.hpp"

#include <random>

using namespace hbb;

namespace {

long long sigma3(long long n) {
  long long s = 0;
  for (long long d = 1; d <= n; ++d)
    if (n % d == 0) s += d * d * d;
  return s;
}

}  // namespace

TEST_CASE("theta of <2> by direct count") {
  auto f = theta_coeffs(lattice_A1(), Q(1));
  CHECK(f.k == qq(1, 2));
  CHECK(!f.dual);
  CHECK(f.get(0, Q(0)) == Cyc(1L));
  CHECK(f.get(1, qq(1, 4)) == Cyc(2L));
  CHECK(f.get(0, Q(1)) == Cyc(2L));
  f.validate();
  // dual vectors j/2 v have q = j^2/4: count of j with j^2 = 4m, split by parity
  auto g = theta_coeffs(lattice_A1(), Q(30));
  for (long long n = 1; n <= 120; ++n) {
    long long cnt = 0;
    for (long long j = -12; j <= 12; ++j) cnt += j * j == n;
    size_t cls = n % 4 == 0 ? 0 : 1;
    if (n % 4 == 0 || n % 4 == 1) CHECK(g.get(cls, qq(n, 4)) == Cyc(static_cast<long>(cnt)));
  }
}

TEST_CASE("E8 theta against 240 sigma_3") {
  auto f = theta_coeffs(lattice_E8(), Q(12));
  CHECK(f.get(0, Q(0)) == Cyc(1L));
  for (long long n = 1; n <= 12; ++n) CHECK(f.get(0, Q(zz(n))) == Cyc(static_cast<long>(240 * sigma3(n))));
  auto e = eisenstein_identity_check(lattice_E8(), Q(10));
  CHECK(e.matches);
  CHECK(e.constant_term_one);
}

TEST_CASE("degree-two harmonic theta series are cuspidal") {
  auto M = lattice_E8();
  for (const auto& F : quad_harmonic_basis(M)) {
    CHECK(is_harmonic(M, F));
    auto f = theta_coeffs(M, Q(3), &F);
    CHECK(f.is_cusp());
    CHECK(f.k == Q(6));
  }
  // weight 6 level one has no cusp forms, so every such series vanishes
  std::vector<Q> u(8, Q(0));
  u[0] = 1;
  u[3] = 2;
  auto Fu = F_u(M, u);
  auto f = theta_coeffs(M, Q(4), &Fu);
  CHECK(f.c.empty());
}

TEST_CASE("negative definite input is evaluated on M(-1) and flagged dual") {
  auto f = theta_coeffs(lattice_A1(-1), Q(2));
  CHECK(f.dual);
  f.validate();
}

TEST_CASE("enumeration counts E8 shells") {
  DualEnumerator E(lattice_E8());
  std::vector<long long> cnt(7, 0);
  E.for_each(Q(6), [&](const std::vector<long long>&, long long n, int) { cnt[static_cast<size_t>(n)]++; });
  CHECK(cnt[0] == 1);
  CHECK(cnt[2] == 240);
  CHECK(cnt[4] == 2160);
  CHECK(cnt[6] == 6720);
  CHECK(E.min_norm() == Q(2));
}

TEST_CASE("enumeration is independent of the worker count") {
  auto M = standard_lattice("E8+A1+<4>");
  auto a = theta_coeffs(M, Q(3), nullptr, 1);
  auto b = theta_coeffs(M, Q(3), nullptr, 4);
  CHECK(format_qexp(a) == format_qexp(b));
}

TEST_CASE("harmonic spaces") {
  CHECK(harmonic_basis(3, 2).size() == 5);
  CHECK(harmonic_dimension(3, 2) == 5);
  CHECK(harmonic_basis(2, 2).size() == 2);
  CHECK(harmonic_basis(5, 0).size() == 1);
  for (int r = 2; r <= 5; ++r)
    for (int h = 0; h <= 4; ++h) {
      auto B = harmonic_basis(r, h);
      CHECK(Z(static_cast<unsigned long>(B.size())) == harmonic_dimension(r, h));
      for (size_t i = 0; i < B.size(); ++i) {
        CHECK(B[i].is_harmonic());
        for (size_t j = 0; j < i; ++j) CHECK(apolar(B[i], B[j]) == 0);
      }
    }
}

TEST_CASE("Gegenbauer polynomials") {
  for (int r = 3; r <= 12; ++r) {
    CHECK(gegenbauer(r, 0).eval(Q(1), Q(1)) == Q(1));
    auto g1 = gegenbauer(r, 1);
    CHECK(g1.eval(Q(1), Q(0)) == Q(r - 2));
    CHECK(g1.eval(Q(3), Q(5)) == Q(3 * (r - 2)));
    for (int h = 0; h <= 6; ++h) CHECK(gegenbauer(r, h).eval(Q(1), Q(1)) == Q(zz(binom(r - 3 + h, h))));
  }
}

TEST_CASE("split theta decomposition") {
  auto s1 = split_theta_decomposition_check(lattice_A1(), Q(2));
  CHECK(s1.decomposition_holds);
  auto s3 = split_theta_decomposition_check(direct_sum({lattice_A1(), lattice_A1(), lattice_A1()}), Q(2));
  CHECK(s3.decomposition_holds);
  CHECK(s3.constant_consistent);
  CHECK(s3.constant_slots >= 10);
}

TEST_CASE("modularity residuals") {
  const std::vector<cplx> taus{{0, 2}, {1, 2}, {0.5, 1.5}};
  TailModel t;
  auto f = theta_coeffs(lattice_A1(), Q(25), nullptr, 1, &t);
  CHECK(modularity_residual(f, Mp2::S(), taus, t).ok(1e-8));
  CHECK(modularity_residual(f, Mp2::T(), taus, t).ok(1e-12));
  // a corrupted coefficient must be detected
  auto g = f;
  g.add(0, Q(1), Cyc(1L));
  CHECK(!modularity_residual(g, Mp2::S(), taus, t).ok(1e-8));
}

TEST_CASE("Lipschitz summation") {
  CHECK(lipschitz_check(2, Q(0), cplx(0, 2)).diff < 1e-8);
  CHECK(lipschitz_check(2.5, qq(1, 4), cplx(1.0 / 3, 1)).diff < 1e-6);
  auto a = lipschitz_check(4, qq(1, 3), cplx(0, 3));
  auto b = lipschitz_check(4, qq(4, 3), cplx(0, 3));
  CHECK(std::abs(a.lhs - b.lhs) < 1e-12);
  CHECK(std::abs(a.rhs - b.rhs) < 1e-12);
  CHECK_THROWS_AS(lipschitz_check(1, Q(0), cplx(0, 1)), PreconditionError);
}

TEST_CASE("q-expansion files round-trip byte-stably") {
  auto f = theta_coeffs(standard_lattice("A1+<4>"), Q(4));
  std::string s = format_qexp(f);
  auto g = parse_qexp(s);
  CHECK(format_qexp(g) == s);
  CHECK(same_coefficients(f, g, Q(4)));
  CHECK(g.G.order() == f.G.order());
  CHECK_THROWS_AS(parse_qexp("group=2 dual=0 k=1/2 prec=1/1\n#form q=1/4 b=1/2\n0 ; 1/4 ; cyc:1:1\n"), PreconditionError);
  CHECK_THROWS_AS(parse_qexp("group=2 dual=0 k=1/2\n"), PreconditionError);
}

TEST_CASE("exponent congruence is enforced") {
  FourierExpansion f;
  f.G = discriminant_group(lattice_A1()).G;
  f.k = qq(1, 2);
  f.prec = Q(2);
  f.add(1, qq(1, 2), Cyc(1L));
  CHECK_THROWS_AS(f.validate(), PreconditionError);
}
