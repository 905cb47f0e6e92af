#include "hbb/eichler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hbb {

Transvection transvection(const EvenLattice& M, const std::vector<Q>& x, const std::vector<Q>& y);

namespace {

Q qinner(const EvenLattice& M, const std::vector<Q>& x, const std::vector<Q>& y) {
  Q s = 0;
  for (int i = 0; i < M.rank(); ++i)
    for (int j = 0; j < M.rank(); ++j)
      if (M.gram()(i, j) != 0) s += x[static_cast<size_t>(i)] * zz(M.gram()(i, j)) * y[static_cast<size_t>(j)];
  return s;
}

std::vector<Q> to_q(const IVec& v) {
  std::vector<Q> r;
  for (long long x : v) r.push_back(qq(x));
  return r;
}

IVec unit(int n, int i, long long s = 1) {
  IVec v(static_cast<size_t>(n), 0);
  v[static_cast<size_t>(i)] = s;
  return v;
}

LMat mul(const LMat& a, const LMat& b) { return a * b; }

LMat inverse_isometry(const EvenLattice& M, const LMat& g) {
  // g^{-1} = G^{-1} g^T G
  QMat G = to_qmat(to_zmat(M.gram()));
  QMat r = inverse(G) * to_qmat(to_zmat(g)).transpose() * G;
  LMat out(r.rows, r.cols, 0);
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < r.cols; ++j) {
      if (r(i, j).get_den() != 1) throw std::logic_error("inverse of an isometry is not integral");
      out(i, j) = to_ll(r(i, j).get_num());
    }
  return out;
}

long long score(const IVec& u, const std::vector<int>& zero_idx) {
  long long s = 0;
  for (int i : zero_idx) s += std::llabs(u[static_cast<size_t>(i)]);
  return s;
}

long long max_abs(const IVec& u) {
  long long s = 0;
  for (long long x : u) s = std::max(s, std::llabs(x));
  return s;
}

long long size_of(const IVec& u) {
  long long s = 0;
  for (long long x : u) s += std::llabs(x);
  return s;
}

// gcd of the coordinates on the other hyperbolic block (the pivot); small values let one
// transvection clear the target block
long long pivot_gcd(const IVec& u, const std::vector<int>& zero_idx) {
  int p0 = zero_idx[0] == 0 ? 2 : 0;
  long long g = gcd_ll(u[static_cast<size_t>(p0)], u[static_cast<size_t>(p0 + 1)]);
  return g == 0 ? (1LL << 40) : g;
}

std::optional<LMat> clearing_transvection(const EvenLattice& M, const IVec& u, const std::vector<int>& zero_idx) {
  const int n = M.rank();
  const int z0 = zero_idx[0], p0 = z0 == 0 ? 2 : 0;
  // x = pivot basis vector, <x, u> multiplies y in t(x, y)(u)
  for (int xi = p0; xi < p0 + 2; ++xi) {
    IVec x = unit(n, xi);
    long long c = M.inner(x, u);
    if (c == 0) continue;
    if (u[static_cast<size_t>(z0)] % c != 0 || u[static_cast<size_t>(z0 + 1)] % c != 0) continue;
    IVec y(static_cast<size_t>(n), 0);
    y[static_cast<size_t>(z0)] = -u[static_cast<size_t>(z0)] / c;
    y[static_cast<size_t>(z0 + 1)] = -u[static_cast<size_t>(z0 + 1)] / c;
    Transvection t = transvection(M, to_q(x), to_q(y));
    if (t.integral) return t.matrix;
  }
  return std::nullopt;
}

struct Found {
  LMat h;
  int steps = 0;
};

// isometry h in the group generated by gens with h(u) zero at zero_idx
std::optional<Found> normalize(const EvenLattice& M, const std::vector<LMat>& gens, const IVec& u0,
                               const std::vector<int>& zero_idx, int max_rounds = 200) {
  const int n = M.rank();
  LMat h = LMat::identity(n);
  IVec u = u0;
  int steps = 0;
  for (int round = 0; round < max_rounds; ++round) {
    if (score(u, zero_idx) == 0) return Found{h, steps};
    // one transvection clears the target block when a pivot pairing divides it
    if (auto t = clearing_transvection(M, u, zero_idx)) {
      u = act(*t, u);
      h = mul(*t, h);
      ++steps;
      continue;
    }
    // greedy: strict decrease of (score, pivot gcd, size)
    auto key = [&](const IVec& w) { return std::make_tuple(score(w, zero_idx), pivot_gcd(w, zero_idx), size_of(w)); };
    auto bk = key(u);
    int best = -1;
    for (size_t i = 0; i < gens.size(); ++i) {
      auto k = key(act(gens[i], u));
      if (k < bk) {
        bk = k;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) {
      u = act(gens[static_cast<size_t>(best)], u);
      h = mul(gens[static_cast<size_t>(best)], h);
      ++steps;
      continue;
    }
    // stuck: breadth-first search for any word of length <= 6 lowering the score
    const long long s0 = score(u, zero_idx);
    long long maxc = 0;
    for (long long c : u) maxc = std::max(maxc, std::llabs(c));
    const long long bound = 3 * maxc + 6;
    struct Node {
      IVec v;
      int parent;
      int gen;
    };
    std::vector<Node> nodes = {{u, -1, -1}};
    std::set<IVec> seen = {u};
    size_t level_start = 0;
    int hit = -1;
    for (int depth = 0; depth < 6 && hit < 0 && nodes.size() < 2000000; ++depth) {
      size_t level_end = nodes.size();
      for (size_t k = level_start; k < level_end && hit < 0; ++k)
        for (size_t i = 0; i < gens.size(); ++i) {
          IVec w = act(gens[i], nodes[k].v);
          if (max_abs(w) > bound || !seen.insert(w).second) continue;
          nodes.push_back({w, static_cast<int>(k), static_cast<int>(i)});
          if (score(w, zero_idx) < s0) {
            hit = static_cast<int>(nodes.size() - 1);
            break;
          }
        }
      level_start = level_end;
    }
    if (hit < 0) return std::nullopt;
    std::vector<int> word;
    for (int k = hit; nodes[static_cast<size_t>(k)].parent >= 0; k = nodes[static_cast<size_t>(k)].parent)
      word.push_back(nodes[static_cast<size_t>(k)].gen);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      h = mul(gens[static_cast<size_t>(*it)], h);
      ++steps;
    }
    u = nodes[static_cast<size_t>(hit)].v;
  }
  return std::nullopt;
}

// u' in the span of the basis vectors idx with <u, u'> = d (extended Euclid on the coordinate functional)
IVec dual_partner(const EvenLattice& M, const IVec& u, const std::vector<int>& idx, long long d) {
  const int n = M.rank();
  long long g = 0;
  IVec x(static_cast<size_t>(n), 0);
  // maintain <u, x> = g
  for (int i : idx) {
    long long c = M.inner(u, unit(n, i));
    if (c == 0) continue;
    if (g == 0) {
      g = c;
      x = unit(n, i);
      continue;
    }
    // extended gcd of g and c
    long long a0 = g, b0 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b0 != 0) {
      long long q = a0 / b0;
      std::tie(a0, b0) = std::make_pair(b0, a0 - q * b0);
      std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
      std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    for (auto& xv : x) xv *= s0;
    x[static_cast<size_t>(i)] += t0;
    g = a0;
  }
  if (g < 0) {
    g = -g;
    for (auto& xv : x) xv = -xv;
  }
  if (g == 0 || d % g != 0) throw std::logic_error("dual partner: divisibility mismatch");
  for (auto& xv : x) xv *= d / g;
  return x;
}

LMat transvection_int(const EvenLattice& M, const IVec& x, const IVec& y) {
  Transvection t = transvection(M, to_q(x), to_q(y));
  if (!t.integral) throw std::logic_error("transvection expected to be integral");
  return t.matrix;
}

}  // namespace

Transvection transvection(const EvenLattice& M, const std::vector<Q>& x, const std::vector<Q>& y) {
  const int n = M.rank();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) throw PreconditionError("transvection: dimension mismatch");
  if (qinner(M, x, x) != 0) throw PreconditionError("transvection: x is not isotropic");
  if (qinner(M, x, y) != 0) throw PreconditionError("transvection: y is not orthogonal to x");
  Q yy = qinner(M, y, y);
  Transvection t;
  t.rational = QMat(n, n, Q(0));
  for (int j = 0; j < n; ++j) {
    std::vector<Q> nu(static_cast<size_t>(n), Q(0));
    nu[static_cast<size_t>(j)] = 1;
    Q yn = qinner(M, y, nu), xn = qinner(M, x, nu);
    for (int i = 0; i < n; ++i)
      t.rational(i, j) = nu[static_cast<size_t>(i)] - yn * x[static_cast<size_t>(i)] + xn * y[static_cast<size_t>(i)] -
                         xn * yy / 2 * x[static_cast<size_t>(i)];
  }
  t.integral = true;
  for (const auto& v : t.rational.a) t.integral = t.integral && v.get_den() == 1;
  if (t.integral) {
    t.matrix = LMat(n, n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.matrix(i, j) = to_ll(t.rational(i, j).get_num());
    if (!is_isometry(M, t.matrix)) throw std::logic_error("transvection does not preserve the Gram matrix");
  }
  return t;
}

bool is_isometry(const EvenLattice& M, const LMat& g) {
  if (g.rows != M.rank() || g.cols != M.rank()) return false;
  if (g.transpose() * M.gram() * g != M.gram()) return false;
  Q d = det(to_qmat(to_zmat(g)));
  return d == 1 || d == -1;
}

IVec act(const LMat& g, const IVec& v) { return g * v; }

long long divisibility(const EvenLattice& M, const IVec& u) {
  long long d = 0;
  for (int i = 0; i < M.rank(); ++i) d = gcd_ll(d, M.inner(u, unit(M.rank(), i)));
  return d;
}

bool is_primitive(const IVec& u) {
  long long g = 0;
  for (long long x : u) g = gcd_ll(g, x);
  return g == 1;
}

EvenLattice eichler_lattice(int m) {
  if (m < 1) throw PreconditionError("eichler lattice needs m >= 1");
  std::vector<EvenLattice> parts = {lattice_U(), lattice_U(2)};
  for (int i = 0; i < m; ++i) parts.push_back(lattice_A1(-1));
  EvenLattice s = direct_sum(parts);
  return EvenLattice(s.gram(), "U+U(2)+A1(-1)^" + std::to_string(m));
}

EichlerInvariants eichler_invariants(const EvenLattice& M, const IVec& u) {
  EichlerInvariants inv;
  inv.norm = M.inner(u, u);
  inv.div = divisibility(M, u);
  if (inv.div == 0) throw PreconditionError("zero vector has no invariants");
  DiscriminantData D = discriminant_group(M);
  IVec y(static_cast<size_t>(M.rank()));
  for (int i = 0; i < M.rank(); ++i) y[static_cast<size_t>(i)] = M.inner(unit(M.rank(), i), u) / inv.div;
  inv.dual_class = D.G.order() == 1 ? 0 : D.class_of_dual(y);
  return inv;
}

std::vector<LMat> eichler_generators(const EvenLattice& M) {
  const int n = M.rank();
  std::vector<LMat> gens;
  // transvections t(x, +-b) for x in {e1, f1, e2, f2} and basis vectors b orthogonal to x
  for (int xi = 0; xi < 4; ++xi) {
    IVec x = unit(n, xi);
    for (int b = 0; b < n; ++b) {
      if (b == xi || M.inner(x, unit(n, b)) != 0) continue;
      for (long long s : {1LL, -1LL}) gens.push_back(transvection_int(M, x, unit(n, b, s)));
    }
  }
  // sign changes of the r_i and the swap e1 <-> f1
  for (int i = 4; i < n; ++i) {
    LMat g = LMat::identity(n);
    g(i, i) = -1;
    gens.push_back(g);
  }
  LMat sw = LMat::identity(n);
  sw(0, 0) = sw(1, 1) = 0;
  sw(0, 1) = sw(1, 0) = 1;
  gens.push_back(sw);
  return gens;
}

std::string eichler_case_str(EichlerCase c) {
  switch (c) {
    case EichlerCase::Identity: return "identity";
    case EichlerCase::PivotU: return "pivot-U";
    case EichlerCase::PivotU2: return "pivot-U(2)";
  }
  return "?";
}

EichlerMove eichler_move(const EvenLattice& M, const IVec& u, const IVec& v) {
  const int n = M.rank();
  if (n < 5) throw PreconditionError("eichler move: lattice must be U + U(2) + A1(-1)^m with m >= 1");
  if (M.gram() != eichler_lattice(n - 4).gram()) throw PreconditionError("eichler move: lattice is not U + U(2) + A1(-1)^m");
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n) throw PreconditionError("eichler move: dimension mismatch");
  if (!is_primitive(u) || !is_primitive(v)) throw PreconditionError("eichler move: vectors must be primitive");
  EichlerInvariants iu = eichler_invariants(M, u), iv = eichler_invariants(M, v);
  if (iu.norm != iv.norm) throw PreconditionError("eichler move: invariant mismatch (u^2 != v^2)");
  if (!(iu == iv)) throw PreconditionError("eichler move: invariant mismatch (u* != v*)");
  EichlerMove res;
  if (u == v) {
    res.g = LMat::identity(n);
    return res;
  }
  const long long d = iu.div;
  auto gens = eichler_generators(M);
  std::vector<int> rest;
  for (int i = 4; i < n; ++i) rest.push_back(i);

  // pivot U: move both vectors into U(2) + A1(-1)^m, then t(e1, -v') t(f1, w) t(e1, u')
  if (d % 2 == 0) {
    auto hu = normalize(M, gens, u, {0, 1});
    auto hv = hu ? normalize(M, gens, v, {0, 1}) : std::nullopt;
    if (hu && hv) {
      IVec un = act(hu->h, u), vn = act(hv->h, v);
      std::vector<int> span = {2, 3};
      span.insert(span.end(), rest.begin(), rest.end());
      IVec up = dual_partner(M, un, span, d), vp = dual_partner(M, vn, span, d);
      IVec w(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = (un[static_cast<size_t>(i)] - vn[static_cast<size_t>(i)]) / d;
      IVec nvp = vp;
      for (auto& x : nvp) x = -x;
      LMat core = transvection_int(M, unit(n, 0), nvp) * transvection_int(M, unit(n, 1), w) * transvection_int(M, unit(n, 0), up);
      res.g = inverse_isometry(M, hv->h) * core * hu->h;
      res.subcase = EichlerCase::PivotU;
      res.search_steps = hu->steps + hv->steps;
      if (!is_isometry(M, res.g) || act(res.g, u) != v) throw std::logic_error("eichler move: pivot-U certificate failed");
      return res;
    }
  }

  // pivot U(2): move both into U + A1(-1)^m, fix the parity of w with O(U + A1(-1)^m), then
  // t(e2, -v') t(f2, w/2) t(e2, u')
  auto hu = normalize(M, gens, u, {2, 3});
  auto hv = hu ? normalize(M, gens, v, {2, 3}) : std::nullopt;
  if (!hu || !hv) throw std::runtime_error("eichler move: normalization search hit its bound");
  IVec un = act(hu->h, u), vn = act(hv->h, v);
  // generators preserving U + A1(-1)^m: those fixing e2 and f2
  std::vector<LMat> fix;
  for (const auto& g : gens) {
    bool ok = true;
    for (int c = 2; c < 4 && ok; ++c)
      for (int r = 0; r < n; ++r)
        if (g(r, c) != (r == c ? 1 : 0) || g(c, r) != (r == c ? 1 : 0)) ok = false;
    if (ok) fix.push_back(g);
  }
  auto w_ok = [&](const IVec& uu) {
    IVec w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      long long diff = uu[static_cast<size_t>(i)] - vn[static_cast<size_t>(i)];
      if (diff % d != 0) return false;
      w[static_cast<size_t>(i)] = diff / d;
    }
    return divisibility(M, w) % 2 == 0 && M.inner(w, w) % 4 == 0;
  };
  // breadth-first over the fixing group applied to un
  struct Node {
    IVec v;
    LMat h;
  };
  std::deque<Node> queue = {{un, LMat::identity(n)}};
  std::set<IVec> seen = {un};
  const long long bound = 4 * (size_of(un) + size_of(vn) + 6);
  std::optional<Node> phi;
  int expanded = 0;
  while (!queue.empty() && expanded < 200000) {
    Node cur = queue.front();
    queue.pop_front();
    ++expanded;
    if (w_ok(cur.v)) {
      phi = cur;
      break;
    }
    for (const auto& g : fix) {
      IVec w = act(g, cur.v);
      if (size_of(w) > bound || !seen.insert(w).second) continue;
      queue.push_back({w, g * cur.h});
    }
  }
  if (!phi) throw std::runtime_error("eichler move: parity normalization search hit its bound");
  IVec uu = phi->v;
  std::vector<int> span = {0, 1};
  span.insert(span.end(), rest.begin(), rest.end());
  IVec up = dual_partner(M, uu, span, d), vp = dual_partner(M, vn, span, d);
  std::vector<Q> whalf(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) whalf[static_cast<size_t>(i)] = qq(uu[static_cast<size_t>(i)] - vn[static_cast<size_t>(i)], 2 * d);
  Transvection mid = transvection(M, to_q(unit(n, 3)), whalf);
  if (!mid.integral) throw std::logic_error("eichler move: t(f2, w/2) is not integral after parity normalization");
  IVec nvp = vp;
  for (auto& x : nvp) x = -x;
  LMat core = transvection_int(M, unit(n, 2), nvp) * mid.matrix * transvection_int(M, unit(n, 2), up);
  res.g = inverse_isometry(M, hv->h) * core * phi->h * hu->h;
  res.subcase = EichlerCase::PivotU2;
  res.search_steps = hu->steps + hv->steps + expanded;
  if (!is_isometry(M, res.g) || act(res.g, u) != v) throw std::logic_error("eichler move: pivot-U(2) certificate failed");
  return res;
}

OracleVerdict orbit_oracle(const EvenLattice& M, const IVec& u, const IVec& v, int depth, long long coord_bound) {
  if (u == v) return OracleVerdict::SameOrbit;
  auto gens = eichler_generators(M);
  std::set<IVec> seen = {u};
  std::vector<IVec> frontier = {u};
  for (int dpt = 0; dpt < depth && !frontier.empty(); ++dpt) {
    std::vector<IVec> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IVec y = act(g, x);
        bool small = true;
        for (long long c : y) small = small && std::llabs(c) <= coord_bound;
        if (!small || !seen.insert(y).second) continue;
        if (y == v) return OracleVerdict::SameOrbit;
        next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return OracleVerdict::Inconclusive;
}

}  // namespace hbb
