#include "hbb/discform.hpp"

#include <algorithm>

namespace hbb {

std::vector<size_t> subgroup_closure(const DiscForm& G, const std::vector<size_t>& gens) {
  std::vector<bool> in(G.order(), false);
  std::vector<size_t> elems{0};
  in[0] = true;
  for (size_t g : gens) {
    if (in[g]) continue;
    // add g repeatedly to the current subgroup until closed
    std::vector<size_t> cur = elems;
    size_t m = g;
    while (!in[m]) {
      for (size_t e : cur) {
        size_t s = G.add(e, m);
        if (!in[s]) {
          in[s] = true;
          elems.push_back(s);
        }
      }
      m = G.add(m, g);
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<size_t> subgroup_generators(const DiscForm& G, const std::vector<size_t>& elems) {
  std::vector<size_t> gens, span{0};
  for (size_t e : elems) {
    if (std::binary_search(span.begin(), span.end(), e)) continue;
    gens.push_back(e);
    span = subgroup_closure(G, gens);
    if (span.size() == elems.size()) break;
  }
  return gens;
}

bool is_isotropic(const DiscForm& G, const std::vector<size_t>& elems) {
  for (size_t e : elems)
    if (G.qN(e) != 0) return false;
  return true;
}

Subquotient complement_and_quotient(const DiscForm& G, const std::vector<size_t>& H_gens) {
  Subquotient sq;
  sq.H = subgroup_closure(G, H_gens);
  if (!is_isotropic(G, sq.H)) throw PreconditionError("complement_and_quotient: H is not isotropic");
  for (size_t g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (size_t h : H_gens)
      if (G.bN(g, h) != 0) {
        ok = false;
        break;
      }
    if (ok) sq.Hperp.push_back(g);
  }
  const int k = G.ngens();
  const auto& d = G.divisors();
  if (sq.Hperp.size() * sq.H.size() != G.order()) throw std::logic_error("|H^perp| |H| != |G|");
  sq.proj.assign(G.order(), Subquotient::npos);
  if (k == 0) {
    sq.quotient = G;
    sq.proj[0] = 0;
    sq.rep = {0};
    return sq;
  }
  // preimage lattices in Z^k: P over H^perp, R over H
  auto gens_P = subgroup_generators(G, sq.Hperp);
  auto gens_R = subgroup_generators(G, sq.H);
  auto build = [&](const std::vector<size_t>& gs) {
    ZMat A(k, static_cast<int>(gs.size()) + k, Z(0));
    for (size_t c = 0; c < gs.size(); ++c) {
      auto x = G.coords(gs[c]);
      for (int i = 0; i < k; ++i) A(i, static_cast<int>(c)) = Z(static_cast<long>(x[i]));
    }
    for (int i = 0; i < k; ++i) A(i, static_cast<int>(gs.size()) + i) = Z(static_cast<long>(d[i]));
    return A;
  };
  ZMat BP = column_basis(build(gens_P));
  QMat BPi = inverse(to_qmat(BP));
  ZMat Rg = build(gens_R);
  QMat relq = BPi * to_qmat(Rg);
  ZMat rel(relq.rows, relq.cols);
  for (size_t i = 0; i < relq.a.size(); ++i) {
    if (relq.a[i].get_den() != 1) throw std::logic_error("H is not contained in H^perp");
    rel.a[i] = relq.a[i].get_num();
  }
  SmithForm s = smith(rel);
  ZMat U2i = inverse_unimodular(s.U);
  ZMat genmat = BP * U2i;  // column t: lift of quotient generator t
  std::vector<int> pos;
  std::vector<long long> nd;
  for (int t = 0; t < k; ++t) {
    long long dt = to_ll(s.D(t, t));
    if (dt == 0) throw std::logic_error("quotient is infinite");
    if (dt > 1) {
      pos.push_back(t);
      nd.push_back(dt);
    }
  }
  const int m = static_cast<int>(pos.size());
  std::vector<size_t> gidx(m);
  for (int a = 0; a < m; ++a) {
    std::vector<long long> x(k);
    for (int i = 0; i < k; ++i) x[i] = mod_ll(to_ll(genmat(i, pos[a]) % Z(static_cast<long>(d[i]))), d[i]);
    gidx[a] = G.index(x);
  }
  std::vector<Q> qn(m);
  QMat bn(m, m, Q(0));
  for (int a = 0; a < m; ++a) {
    qn[a] = G.q(gidx[a]);
    for (int b = 0; b < m; ++b) bn(a, b) = G.b(gidx[a], gidx[b]);
  }
  sq.quotient = DiscForm(nd, qn, bn);
  if (sq.quotient.order() * sq.H.size() * sq.H.size() != G.order()) throw std::logic_error("|H^perp/H| != |G|/|H|^2");
  // projection: c = U2 * BP^{-1} * x mod nd
  QMat T = to_qmat(s.U) * BPi;
  sq.rep.assign(sq.quotient.order(), Subquotient::npos);
  for (size_t g : sq.Hperp) {
    auto x = G.coords(g);
    std::vector<long long> c(m);
    for (int a = 0; a < m; ++a) {
      Q acc = 0;
      for (int i = 0; i < k; ++i) acc += T(pos[a], i) * qq(x[i]);
      if (acc.get_den() != 1) throw std::logic_error("projection not integral");
      c[a] = mod_ll(to_ll(acc.get_num() % Z(static_cast<long>(nd[a]))), nd[a]);
    }
    size_t ci = sq.quotient.index(c);
    sq.proj[g] = ci;
    if (sq.rep[ci] == Subquotient::npos) sq.rep[ci] = g;
  }
  for (size_t c = 0; c < sq.rep.size(); ++c)
    if (sq.rep[c] == Subquotient::npos) throw std::logic_error("projection not surjective");
  return sq;
}

namespace {

size_t element_order(const DiscForm& G, size_t a) {
  size_t n = 1, m = a;
  while (m != 0) {
    m = G.add(m, a);
    ++n;
  }
  return n;
}

}  // namespace

std::vector<std::vector<size_t>> orthogonal_group(const DiscForm& G, size_t bound, size_t max_count) {
  if (G.order() > bound) throw PreconditionError("orthogonal_group: |G| exceeds the search bound");
  const int k = G.ngens();
  std::vector<size_t> gen(k);
  for (int i = 0; i < k; ++i) {
    std::vector<long long> e(k, 0);
    e[i] = 1;
    gen[i] = G.index(e);
  }
  std::vector<size_t> ord(G.order());
  for (size_t a = 0; a < G.order(); ++a) ord[a] = element_order(G, a);
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> img(k);
  auto build_perm = [&]() {
    std::vector<size_t> perm(G.order());
    std::vector<bool> seen(G.order(), false);
    for (size_t a = 0; a < G.order(); ++a) {
      auto c = G.coords(a);
      size_t s = 0;
      for (int i = 0; i < k; ++i) s = G.add(s, G.mul(c[i], img[i]));
      if (seen[s]) return std::vector<size_t>{};
      seen[s] = true;
      perm[a] = s;
    }
    for (size_t a = 0; a < G.order(); ++a)
      if (G.qN(perm[a]) != G.qN(a)) return std::vector<size_t>{};
    return perm;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      auto p = build_perm();
      if (!p.empty()) {
        out.push_back(std::move(p));
        if (out.size() > max_count) throw PreconditionError("orthogonal_group: automorphism count exceeds cap");
      }
      return;
    }
    for (size_t h = 0; h < G.order(); ++h) {
      if (ord[h] != static_cast<size_t>(G.divisors()[i])) continue;
      if (G.qN(h) != G.qN(gen[i])) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (G.bN(h, img[j]) != G.bN(gen[i], gen[j])) ok = false;
      if (!ok) continue;
      img[i] = h;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

bool is_characteristic_free(const DiscForm& G, const std::vector<size_t>& H_elems) {
  size_t alpha = characteristic_element(G);  // throws unless 2-torsion
  if (alpha == 0) return true;
  return !std::binary_search(H_elems.begin(), H_elems.end(), alpha);
}

}  // namespace hbb
