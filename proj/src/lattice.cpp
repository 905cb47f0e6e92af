#include "hbb/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <regex>

namespace hbb {

EvenLattice::EvenLattice(LMat gram, std::string name, std::vector<std::string> blocks)
    : gram_(std::move(gram)), name_(std::move(name)), blocks_(std::move(blocks)) {
  if (gram_.rows != gram_.cols || gram_.rows == 0) throw PreconditionError("gram must be a non-empty square matrix");
  for (int i = 0; i < gram_.rows; ++i) {
    if (gram_(i, i) % 2 != 0) throw PreconditionError("gram diagonal must be even");
    for (int j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw PreconditionError("gram must be symmetric");
  }
  if (det() == 0) throw PreconditionError("degenerate lattice: det(gram) = 0");
  sig_ = inertia(to_qmat(to_zmat(gram_)));
}

Z EvenLattice::det() const {
  Q d = hbb::det(to_qmat(to_zmat(gram_)));
  return d.get_num();
}

long long EvenLattice::inner(const std::vector<long long>& x, const std::vector<long long>& y) const {
  long long s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) s += x[i] * gram_(i, j) * y[j];
  return s;
}

EvenLattice lattice_U(long long N) {
  if (N == 0) throw PreconditionError("U(N) requires N != 0");
  LMat g(2, 2, 0);
  g(0, 1) = g(1, 0) = N;
  return EvenLattice(g, N == 1 ? "U" : "U(" + std::to_string(N) + ")");
}

EvenLattice lattice_A1(long long s) {
  if (s == 0) throw PreconditionError("A1(s) requires s != 0");
  LMat g(1, 1, 2 * s);
  return EvenLattice(g, s == 1 ? "A1" : "A1(" + std::to_string(s) + ")");
}

EvenLattice lattice_E8(long long s) {
  if (s == 0) throw PreconditionError("E8(s) requires s != 0");
  LMat g(8, 8, 0);
  for (int i = 0; i < 8; ++i) g(i, i) = 2 * s;
  const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto& e : edges) g(e[0], e[1]) = g(e[1], e[0]) = -s;
  return EvenLattice(g, s == 1 ? "E8" : "E8(" + std::to_string(s) + ")");
}

EvenLattice lattice_angle(long long m) {
  if (m % 2 != 0) throw PreconditionError("<m> requires m even");
  if (m == 0) throw PreconditionError("<m> requires m != 0");
  LMat g(1, 1, m);
  return EvenLattice(g, "<" + std::to_string(m) + ">");
}

EvenLattice direct_sum(const std::vector<EvenLattice>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.rank();
  if (n == 0) throw PreconditionError("direct sum of nothing");
  LMat g(n, n, 0);
  int off = 0;
  std::string name;
  for (const auto& p : parts) {
    for (int i = 0; i < p.rank(); ++i)
      for (int j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
    off += p.rank();
    if (!name.empty()) name += "+";
    name += p.name();
  }
  return EvenLattice(g, name);
}

EvenLattice rescale(const EvenLattice& M, long long N) {
  if (N == 0) throw PreconditionError("rescale requires N != 0");
  LMat g = M.gram();
  for (auto& x : g.a) x *= N;
  return EvenLattice(g, M.name() + "(" + std::to_string(N) + ")");
}

EvenLattice lambda_g(int g) {
  if (g < 2) throw PreconditionError("lambda_g requires g >= 2");
  auto L = direct_sum({lattice_angle(2 - 2 * g), lattice_E8(-1), lattice_E8(-1), lattice_U(), lattice_U()});
  return EvenLattice(L.gram(), "Lambda_" + std::to_string(g));
}

namespace {

EvenLattice one_block(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  std::smatch m;
  int rep = 1;
  static const std::regex pw(R"(^(.*)\^(\d+)$)");
  if (std::regex_match(s, m, pw)) {
    rep = std::stoi(m[2]);
    s = m[1];
  }
  static const std::regex par(R"(^([A-Za-z0-9_]+)(?:\((-?\d+)\))?$)");
  static const std::regex ang(R"(^<(-?\d+)>$)");
  EvenLattice base;
  if (std::regex_match(s, m, ang)) {
    base = lattice_angle(std::stoll(m[1]));
  } else if (std::regex_match(s, m, par)) {
    std::string nm = m[1];
    long long p = m[2].matched ? std::stoll(m[2]) : 1;
    if (nm == "U") base = lattice_U(p);
    else if (nm == "A1") base = lattice_A1(p);
    else if (nm == "E8") base = lattice_E8(p);
    else if (nm == "Lambda" || nm == "lambda_g") base = lambda_g(static_cast<int>(p));
    else throw PreconditionError("unknown standard lattice: " + nm);
  } else {
    throw PreconditionError("malformed lattice block: " + s);
  }
  if (rep == 1) return base;
  std::vector<EvenLattice> v(rep, base);
  return direct_sum(v);
}

}  // namespace

EvenLattice standard_lattice(const std::string& spec) {
  std::vector<EvenLattice> parts;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i <= spec.size(); ++i) {
    if (i < spec.size() && (spec[i] == '(' || spec[i] == '<')) ++depth;
    if (i < spec.size() && (spec[i] == ')' || spec[i] == '>')) --depth;
    if (i == spec.size() || (spec[i] == '+' && depth == 0)) {
      parts.push_back(one_block(spec.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (parts.size() == 1) return EvenLattice(parts[0].gram(), spec, {spec});
  EvenLattice s = direct_sum(parts);
  return EvenLattice(s.gram(), spec, {spec});
}

// ---------------------------------------------------------------- DiscForm

DiscForm::DiscForm(std::vector<long long> divisors, std::vector<Q> q_gens, const QMat& bil)
    : d_(std::move(divisors)), qg_(std::move(q_gens)), bil_(bil) {
  const int k = ngens();
  if (static_cast<int>(qg_.size()) != k || bil_.rows != k || bil_.cols != k)
    throw PreconditionError("discriminant form: shape mismatch");
  for (auto d : d_)
    if (d < 2) throw PreconditionError("discriminant form: elementary divisors must exceed 1");
  for (int i = 0; i + 1 < k; ++i)
    if (d_[i + 1] % d_[i] != 0) throw PreconditionError("discriminant form: divisors must form a chain");
  for (auto& x : qg_) x = frac(x);
  for (auto& x : bil_.a) x = frac(x);
  Z L = 1;
  for (int i = 0; i < k; ++i) {
    L = lcm(L, qg_[i].get_den());
    for (int j = 0; j < k; ++j) L = lcm(L, bil_(i, j).get_den());
  }
  N_ = to_ll(L);
  order_ = 1;
  for (auto d : d_) order_ *= static_cast<size_t>(d);
  B_.assign(static_cast<size_t>(k) * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Q v = bil_(i, j) * zz(N_);
      B_[i * k + j] = to_ll(v.get_num());
    }
  for (int i = 0; i < k; ++i) {
    if (bil_(i, i) != frac(2 * qg_[i])) throw PreconditionError("discriminant form: (g,g) != 2q(g)");
    for (int j = 0; j < k; ++j) {
      if (bil_(i, j) != bil_(j, i)) throw PreconditionError("discriminant form: bilinear form not symmetric");
      if (frac(bil_(i, j) * zz(d_[i])) != 0) throw PreconditionError("discriminant form: bilinear form not well defined");
    }
    if (frac(qg_[i] * zz(d_[i]) * zz(d_[i])) != 0) throw PreconditionError("discriminant form: q not well defined");
  }
  qtab_.resize(order_);
  std::vector<long long> qi(k);
  for (int i = 0; i < k; ++i) qi[i] = to_ll(Q(qg_[i] * zz(N_)).get_num());
  for (size_t a = 0; a < order_; ++a) {
    auto c = coords(a);
    __int128 s = 0;
    for (int i = 0; i < k; ++i) {
      s += static_cast<__int128>(c[i]) * c[i] * qi[i];
      for (int j = i + 1; j < k; ++j) s += static_cast<__int128>(c[i]) * c[j] * B_[i * k + j];
    }
    long long r = static_cast<long long>(s % N_);
    qtab_[a] = r < 0 ? r + N_ : r;
  }
  // level is the exact annihilator of q; shrink N if possible
  long long g = N_;
  for (auto v : qtab_) g = gcd_ll(g, v);
  if (g > 1 && N_ > 1) {
    long long newN = N_ / g;
    // the bilinear form has denominators dividing the q-level
    bool ok = true;
    for (auto v : B_)
      if (v % g != 0) ok = false;
    if (ok) {
      for (auto& v : qtab_) v /= g;
      for (auto& v : B_) v /= g;
      N_ = newN;
    }
  }
  // non-degeneracy: the only element orthogonal to all generators is 0
  for (size_t a = 1; a < order_; ++a) {
    auto c = coords(a);
    bool rad = true;
    for (int j = 0; j < k && rad; ++j) {
      __int128 s = 0;
      for (int i = 0; i < k; ++i) s += static_cast<__int128>(c[i]) * B_[i * k + j];
      if (s % N_ != 0) rad = false;
    }
    if (rad) throw PreconditionError("discriminant form: bilinear form is degenerate");
  }
}

std::vector<long long> DiscForm::coords(size_t idx) const {
  std::vector<long long> c(d_.size());
  for (int i = ngens() - 1; i >= 0; --i) {
    c[i] = static_cast<long long>(idx % static_cast<size_t>(d_[i]));
    idx /= static_cast<size_t>(d_[i]);
  }
  return c;
}

size_t DiscForm::index(const std::vector<long long>& c) const {
  size_t idx = 0;
  for (int i = 0; i < ngens(); ++i) idx = idx * static_cast<size_t>(d_[i]) + static_cast<size_t>(mod_ll(c[i], d_[i]));
  return idx;
}

size_t DiscForm::add(size_t a, size_t b) const {
  auto x = coords(a), y = coords(b);
  for (int i = 0; i < ngens(); ++i) x[i] += y[i];
  return index(x);
}

size_t DiscForm::neg(size_t a) const {
  auto x = coords(a);
  for (auto& v : x) v = -v;
  return index(x);
}

size_t DiscForm::mul(long long n, size_t a) const {
  auto x = coords(a);
  for (int i = 0; i < ngens(); ++i) x[i] = mod_ll(static_cast<long long>(static_cast<__int128>(x[i]) * mod_ll(n, d_[i]) % d_[i]), d_[i]);
  return index(x);
}

long long DiscForm::bN(size_t a, size_t b) const {
  auto x = coords(a), y = coords(b);
  const int k = ngens();
  __int128 s = 0;
  for (int i = 0; i < k; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < k; ++j) s += static_cast<__int128>(x[i]) * y[j] * B_[i * k + j];
  }
  long long r = static_cast<long long>(s % N_);
  return r < 0 ? r + N_ : r;
}

DiscForm DiscForm::negated() const {
  std::vector<Q> q = qg_;
  for (auto& x : q) x = -x;
  QMat b = bil_;
  for (auto& x : b.a) x = -x;
  return DiscForm(d_, q, b);
}

DiscForm DiscForm::direct_sum(const DiscForm& o) const {
  // concatenation is not in chain form in general, so rebuild via SNF of the relation matrix
  const int k1 = ngens(), k2 = o.ngens(), k = k1 + k2;
  if (k == 0) return *this;
  ZMat R(k, k, Z(0));
  for (int i = 0; i < k1; ++i) R(i, i) = Z(static_cast<long>(d_[i]));
  for (int i = 0; i < k2; ++i) R(k1 + i, k1 + i) = Z(static_cast<long>(o.d_[i]));
  SmithForm s = smith(R);
  // new generators: columns of V, divisors diag(D); old coordinates x = V * new coords
  std::vector<Q> qall(k);
  QMat ball(k, k, Q(0));
  for (int i = 0; i < k1; ++i) {
    qall[i] = qg_[i];
    for (int j = 0; j < k1; ++j) ball(i, j) = bil_(i, j);
  }
  for (int i = 0; i < k2; ++i) {
    qall[k1 + i] = o.qg_[i];
    for (int j = 0; j < k2; ++j) ball(k1 + i, k1 + j) = o.bil_(i, j);
  }
  // U R V = D: new generator t corresponds to old vector U^{-1}... use columns of U^{-1}
  ZMat Ui = inverse_unimodular(s.U);
  std::vector<long long> nd;
  std::vector<std::vector<Z>> gens;
  for (int t = 0; t < k; ++t) {
    if (s.D(t, t) == 1) continue;
    nd.push_back(to_ll(s.D(t, t)));
    std::vector<Z> v(k);
    for (int i = 0; i < k; ++i) v[i] = Ui(i, t);
    gens.push_back(v);
  }
  const int m = static_cast<int>(nd.size());
  std::vector<Q> qn(m);
  QMat bn(m, m, Q(0));
  for (int a = 0; a < m; ++a) {
    Q qq = 0;
    for (int i = 0; i < k; ++i) {
      qq += Q(gens[a][i] * gens[a][i]) * qall[i];
      for (int j = i + 1; j < k; ++j) qq += Q(gens[a][i] * gens[a][j]) * ball(i, j);
    }
    qn[a] = frac(qq);
    for (int b = 0; b < m; ++b) {
      Q bb = 0;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) bb += Q(gens[a][i] * gens[b][j]) * ball(i, j);
      bn(a, b) = frac(bb);
    }
  }
  return DiscForm(nd, qn, bn);
}

Cyc DiscForm::gauss_sum() const {
  std::vector<Q> cnt(N_, Q(0));
  for (auto v : qtab_) cnt[v] += 1;
  return Cyc::from_coeffs(static_cast<int>(N_), cnt);
}

int DiscForm::signature_mod8() const {
  if (sign_cache_ >= 0) return sign_cache_;
  Cyc g = gauss_sum();
  Cyc r = Cyc::sqrt_int(static_cast<long long>(order_));
  for (int s = 0; s < 8; ++s)
    if (g == r * Cyc::zeta(8, s)) return sign_cache_ = s;
  throw std::logic_error("Gauss sum has unexpected absolute value");
}

bool DiscForm::is_two_torsion() const {
  for (auto d : d_)
    if (d != 2) return false;
  return true;
}

int DiscForm::p_rank(long long p) const {
  int r = 0;
  for (auto d : d_)
    if (d % p == 0) ++r;
  return r;
}

// ---------------------------------------------------------------- discriminant group of a lattice

size_t DiscriminantData::class_of_dual(const std::vector<long long>& y) const {
  std::vector<long long> c(pos.size());
  for (size_t t = 0; t < pos.size(); ++t) {
    long long d = dfull[pos[t]];
    const auto& u = urows[t];
    __int128 s = 0;
    for (size_t j = 0; j < u.size(); ++j) s += static_cast<__int128>(u[j]) * y[j];
    c[t] = mod_ll(static_cast<long long>(s % d), d);
  }
  return G.index(c);
}

std::vector<Q> DiscriminantData::lift(size_t idx) const {
  auto c = G.coords(idx);
  const int n = V.rows;
  std::vector<Q> x(n, Q(0));
  for (size_t t = 0; t < pos.size(); ++t) {
    int r = pos[t];
    for (int i = 0; i < n; ++i) x[i] += qq_z(V(i, r) * zz(c[t]), zz(dfull[r]));
  }
  return x;
}

DiscriminantData discriminant_group(const EvenLattice& M) {
  DiscriminantData D;
  SmithForm s = smith(to_zmat(M.gram()));
  D.U = s.U;
  D.V = s.V;
  const int n = M.rank();
  D.dfull.resize(n);
  for (int i = 0; i < n; ++i) {
    D.dfull[i] = to_ll(s.D(i, i));
    if (D.dfull[i] > 1) D.pos.push_back(i);
  }
  for (int r : D.pos) {
    std::vector<long long> u(n);
    Z d = zz(D.dfull[r]);
    for (int j = 0; j < n; ++j) {
      Z v = s.U(r, j) % d;
      u[j] = to_ll(v);
    }
    D.urows.push_back(u);
  }
  const int k = static_cast<int>(D.pos.size());
  QMat G = to_qmat(to_zmat(M.gram()));
  std::vector<std::vector<Q>> gens(k, std::vector<Q>(n));
  for (int t = 0; t < k; ++t)
    for (int i = 0; i < n; ++i) gens[t][i] = qq_z(s.V(i, D.pos[t]), zz(D.dfull[D.pos[t]]));
  auto ip = [&](const std::vector<Q>& x, const std::vector<Q>& y) {
    Q acc = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n; ++j) acc += x[i] * G(i, j) * y[j];
    }
    return acc;
  };
  std::vector<long long> dv;
  std::vector<Q> qv(k);
  QMat bv(k, k, Q(0));
  for (int t = 0; t < k; ++t) {
    dv.push_back(D.dfull[D.pos[t]]);
    qv[t] = frac(ip(gens[t], gens[t]) / 2);
    for (int u = 0; u < k; ++u) bv(t, u) = frac(ip(gens[t], gens[u]));
  }
  D.G = DiscForm(dv, qv, bv);
  return D;
}

// ---------------------------------------------------------------- invariants

int coparity(const DiscForm& G) {
  if (!G.is_two_torsion()) throw PreconditionError("coparity requires a 2-torsion discriminant form");
  for (size_t a = 0; a < G.order(); ++a)
    if (frac(2 * G.q(a)) != 0) return 1;
  return 0;
}

size_t characteristic_element(const DiscForm& G) {
  if (!G.is_two_torsion()) throw PreconditionError("characteristic element requires a 2-torsion discriminant form");
  for (size_t al = 0; al < G.order(); ++al) {
    bool ok = true;
    for (size_t g = 0; g < G.order() && ok; ++g)
      if (frac(2 * G.q(g) - G.b(g, al)) != 0) ok = false;
    if (ok) return al;
  }
  throw std::logic_error("no characteristic element found");
}

std::vector<size_t> G_upper(const DiscForm& G, long long n) {
  std::vector<bool> hit(G.order(), false);
  for (size_t a = 0; a < G.order(); ++a) hit[G.mul(n, a)] = true;
  std::vector<size_t> out;
  for (size_t a = 0; a < G.order(); ++a)
    if (hit[a]) out.push_back(a);
  return out;
}

std::vector<size_t> G_lower(const DiscForm& G, long long n) {
  std::vector<size_t> out;
  for (size_t a = 0; a < G.order(); ++a)
    if (G.mul(n, a) == 0) out.push_back(a);
  return out;
}

std::vector<size_t> G_upper_star(const DiscForm& G, long long n) {
  auto low = G_lower(G, n);
  std::vector<size_t> out;
  for (size_t g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (size_t mu : low)
      if (frac(qq(n) * G.q(mu) + G.b(mu, g)) != 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

FormInvariants form_invariants(const DiscForm& G) {
  FormInvariants f;
  f.level = G.level();
  f.ell = G.ngens();
  std::vector<long long> primes;
  for (auto d : G.divisors())
    for (auto p : prime_factors(d))
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  for (auto p : primes) f.p_ranks.push_back({p, G.p_rank(p)});
  f.signature_mod8 = G.signature_mod8();
  if (G.is_two_torsion()) {
    f.coparity = coparity(G);
    f.characteristic = characteristic_element(G);
  }
  return f;
}

std::string verdict_str(Verdict v) {
  return v == Verdict::True ? "true" : "false (criterion fails, undecided)";
}

SplitReport split_predicates(const EvenLattice& M, long long p) {
  auto D = discriminant_group(M);
  const DiscForm& G = D.G;
  const int r = M.rank();
  const int n = M.signature().second;
  const int ell = G.ngens();
  const bool sig2n = M.signature().first == 2;
  SplitReport s{};
  s.local_hyperbolic_sufficient = G.p_rank(p) < r - 2 ? Verdict::True : Verdict::Undecided;
  s.two_global_U_sufficient = (sig2n && ell <= n - 2) ? Verdict::True : Verdict::Undecided;
  s.p_elementary = true;
  for (auto d : G.divisors())
    if (d != p) s.p_elementary = false;
  bool splits = false;
  if (s.p_elementary && sig2n) {
    if (p == 2) splits = ell <= n;
    else splits = ell < n || (ell == n && mod_ll(n, 8) == 2);
  }
  s.p_elementary_splits_U = splits ? Verdict::True : Verdict::Undecided;
  bool k3 = s.two_global_U_sufficient == Verdict::True;
  for (auto q : prime_factors(to_ll(abs(M.det()))))
    if (!(G.p_rank(q) < r - 4)) k3 = false;
  s.k3_type_sufficient = k3 ? Verdict::True : Verdict::Undecided;
  return s;
}

}  // namespace hbb
