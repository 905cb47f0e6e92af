#include "hbb/checks.hpp"
#include "hbb/discform.hpp"
#include "hbb/eichler.hpp"
#include "hbb/hecke.hpp"
#include "hbb/heegner.hpp"
#include "hbb/io.hpp"
#include "hbb/weilrep.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

using namespace hbb;

namespace {

constexpr int kOk = 0;
constexpr int kPrecondition = 2;
constexpr int kUndecided = 3;

// Human section first, then a machine section whose key/value lines also appear above.
struct Report {
  std::string command;
  std::vector<std::string> human;
  std::vector<std::pair<std::string, std::string>> machine;
  void line(const std::string& s) { human.push_back(s); }
  void fact(const std::string& k, const std::string& v) {
    machine.emplace_back(k, v);
    human.push_back(k + ": " + v);
  }
  std::string render(double seconds) const {
    std::ostringstream o;
    o << "== hbb " << command << "\n";
    for (const auto& h : human) o << h << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "wall-clock: %.3fs\n", seconds);
    o << buf;
    o << "-- machine\n";
    o << "command=" << command << "\n";
    for (const auto& [k, v] : machine) o << k << "=" << v << "\n";
    o << "-- end\n";
    return o.str();
  }
};

struct Global {
  uint64_t seed = 20240601;
  int workers = 1;
  std::string report_out;
};

std::string join_ll(const std::vector<long long>& v, const char* sep = ",") {
  std::ostringstream o;
  for (size_t i = 0; i < v.size(); ++i) o << (i ? sep : "") << v[i];
  return o.str();
}

IVec parse_ivec(const std::string& s) {
  IVec v;
  std::string t;
  for (char c : s) t += (c == ',' || c == '[' || c == ']' || c == '(' || c == ')') ? ' ' : c;
  std::istringstream in(t);
  long long x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw PreconditionError("malformed integer vector: " + s);
  return v;
}

Q parse_flag_q(const std::string& s, const char* flag) {
  try {
    return parse_q(s);
  } catch (const std::exception&) {
    throw PreconditionError(std::string(flag) + " expects num/den, got " + s);
  }
}

// isotropic subgroups by closure: every isotropic subgroup is reached from {0}
// by adjoining isotropic elements orthogonal to what is already there
std::map<size_t, size_t> isotropic_subgroup_counts(const DiscForm& G) {
  std::set<std::vector<size_t>> seen{{0}};
  std::vector<std::vector<size_t>> frontier{{0}};
  while (!frontier.empty()) {
    std::vector<std::vector<size_t>> next;
    for (const auto& H : frontier)
      for (size_t g = 1; g < G.order(); ++g) {
        if (G.q(g) != 0 || std::binary_search(H.begin(), H.end(), g)) continue;
        bool orth = true;
        for (size_t h : H) orth = orth && G.b(g, h) == 0;
        if (!orth) continue;
        auto gens = subgroup_generators(G, H);
        gens.push_back(g);
        auto K = subgroup_closure(G, gens);
        if (seen.insert(K).second) next.push_back(K);
      }
    frontier = std::move(next);
  }
  std::map<size_t, size_t> counts;
  for (const auto& H : seen) counts[H.size()]++;
  return counts;
}

void lattice_facts(Report& r, const EvenLattice& M, const std::string& digest_of) {
  auto D = discriminant_group(M);
  auto [bp, bm] = M.signature();
  r.fact("input_digest", digest_of);
  r.fact("name", M.name());
  r.fact("rank", std::to_string(M.rank()));
  r.fact("signature", std::to_string(bp) + "," + std::to_string(bm));
  r.fact("det", M.det().get_str());
  r.fact("discriminant_order", std::to_string(D.G.order()));
  r.fact("elementary_divisors", D.G.divisors().empty() ? "1" : join_ll(D.G.divisors()));
}

int cmd_lattice_info(const Global&, Report& r, const std::string& path) {
  std::string text = read_file(path);
  auto M = parse_lattice(text);
  lattice_facts(r, M, digest(text));
  auto G = discriminant_group(M).G;
  auto inv = form_invariants(G);
  r.fact("level", std::to_string(inv.level));
  r.fact("signature_mod8", std::to_string(inv.signature_mod8));
  r.fact("ell", std::to_string(inv.ell));
  std::vector<long long> primes{2};
  for (long long p : prime_factors(std::max<long long>(inv.level, 1)))
    if (p != 2) primes.push_back(p);
  for (long long p : primes) {
    auto s = split_predicates(M, p);
    std::string pre = "p" + std::to_string(p) + "_";
    r.fact(pre + "local_hyperbolic_sufficient", verdict_str(s.local_hyperbolic_sufficient));
    r.fact(pre + "two_global_U_sufficient", verdict_str(s.two_global_U_sufficient));
    r.fact(pre + "p_elementary", s.p_elementary ? "yes" : "no");
    r.fact(pre + "p_elementary_splits_U", verdict_str(s.p_elementary_splits_U));
    r.fact(pre + "k3_type_sufficient", verdict_str(s.k3_type_sufficient));
  }
  r.line("canonical form:");
  std::istringstream canon(format_lattice(M));
  for (std::string l; std::getline(canon, l);) r.line("  " + l);
  return kOk;
}

int cmd_discform_info(const Global&, Report& r, const std::string& path) {
  std::string text = read_file(path);
  auto M = parse_lattice(text);
  auto G = discriminant_group(M).G;
  r.fact("input_digest", digest(text));
  r.fact("order", std::to_string(G.order()));
  r.fact("divisors", G.divisors().empty() ? "1" : join_ll(G.divisors()));
  std::ostringstream qs;
  for (size_t i = 0; i < G.q_gens().size(); ++i) qs << (i ? "," : "") << q_str(G.q_gens()[i]);
  r.fact("q_generators", G.order() == 1 ? "-" : qs.str());
  auto inv = form_invariants(G);
  r.fact("level", std::to_string(inv.level));
  r.fact("signature_mod8", std::to_string(inv.signature_mod8));
  r.fact("ell", std::to_string(inv.ell));
  std::ostringstream pr;
  for (size_t i = 0; i < inv.p_ranks.size(); ++i) pr << (i ? "," : "") << inv.p_ranks[i].first << ":" << inv.p_ranks[i].second;
  r.fact("p_ranks", inv.p_ranks.empty() ? "-" : pr.str());
  r.fact("coparity", inv.coparity ? std::to_string(*inv.coparity) : "undefined (not 2-torsion)");
  r.fact("characteristic_element", inv.characteristic ? join_ll(G.coords(*inv.characteristic)) : "undefined (not 2-torsion)");
  if (G.order() > 4096) {
    r.line("isotropic subgroup counts skipped: |G| > 4096");
    return kOk;
  }
  size_t iso_elems = 0;
  for (size_t g = 1; g < G.order(); ++g) iso_elems += G.q(g) == 0;
  r.fact("isotropic_elements", std::to_string(iso_elems));
  std::ostringstream cs;
  bool first = true;
  for (const auto& [sz, n] : isotropic_subgroup_counts(G)) {
    cs << (first ? "" : ",") << sz << ":" << n;
    first = false;
  }
  r.fact("isotropic_subgroups_by_order", cs.str());
  return kOk;
}

int cmd_weil_matrix(const Global&, Report& r, const std::string& path, const std::string& element, bool dual) {
  std::string text = read_file(path);
  auto M = parse_lattice(text);
  auto G = discriminant_group(M).G;
  WeilRep W(dual ? G.negated() : G);
  Word w = parse_word(element);
  CMat m = W.matrix(w);
  r.fact("input_digest", digest(text));
  r.fact("element", w.empty() ? "I" : w);
  r.fact("dual", dual ? "1" : "0");
  r.fact("dimension", std::to_string(W.dim()));
  r.line("exact entries (row, column):");
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.fact("entry_" + std::to_string(i) + "_" + std::to_string(j), m(i, j).str());
  r.line("float rendering:");
  for (int i = 0; i < m.rows; ++i) {
    std::ostringstream row;
    for (int j = 0; j < m.cols; ++j) {
      cplx z = m(i, j).to_complex();
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s(%.6f%+.6fi)", j ? " " : "", z.real(), z.imag());
      row << buf;
    }
    r.line("  " + row.str());
  }
  return kOk;
}

int cmd_theta(const Global& g, Report& r, const std::string& path, const std::string& prec, const std::string& out,
              const std::string& harmonic, bool floats) {
  std::string text = read_file(path);
  auto M = parse_lattice(text);
  Q P = parse_flag_q(prec, "--prec");
  std::optional<QuadHarmonic> F;
  if (!harmonic.empty()) {
    auto u = parse_ivec(harmonic);
    if (static_cast<int>(u.size()) != M.rank()) throw PreconditionError("--harmonic vector has the wrong length");
    std::vector<Q> uq;
    for (long long x : u) uq.push_back(Q(zz(x)));
    F = F_u(M, uq);
  }
  auto f = theta_coeffs(M, P, F ? &*F : nullptr, g.workers);
  std::string body = format_qexp(f, !floats);
  r.fact("input_digest", digest(text));
  r.fact("weight", q_str(f.k));
  r.fact("dual", f.dual ? "1" : "0");
  r.fact("precision", q_str(f.prec));
  r.fact("nonzero_coefficients", std::to_string(f.c.size()));
  r.fact("qexp_digest", digest(body));
  std::vector<std::pair<size_t, Q>> shown;
  for (const auto& [key, v] : f.c) {
    if (key.first != 0 || shown.size() >= 6) continue;
    shown.push_back(key);
    r.fact("c(0," + q_str(key.second) + ")", v.str());
  }
  if (!out.empty()) {
    write_file(out, body);
    r.line("wrote " + out);
  } else {
    r.line("q-expansion:");
    std::istringstream b(body);
    for (std::string l; std::getline(b, l);) r.line("  " + l);
  }
  return kOk;
}

int cmd_hecke_apply(const Global&, Report& r, long long alpha2, const std::string& in, const std::string& out,
                    const std::string& prec) {
  long long alpha = std::llround(std::sqrt(static_cast<double>(alpha2)));
  while (alpha * alpha > alpha2) --alpha;
  while ((alpha + 1) * (alpha + 1) <= alpha2) ++alpha;
  if (alpha < 1 || alpha * alpha != alpha2) throw PreconditionError("--alpha2 must be a positive perfect square");
  Q P = parse_flag_q(prec, "--prec");
  Q need = hecke_required_precision(alpha, P);
  std::string text = read_file(in);
  auto f = parse_qexp(text);
  r.fact("input_digest", digest(text));
  r.fact("alpha", std::to_string(alpha));
  r.fact("output_precision", q_str(P));
  r.fact("required_input_precision", q_str(need));
  r.fact("input_precision", q_str(f.prec));
  if (f.prec < need) {
    r.line("input precision is too small; recompute the input to precision " + q_str(need));
    return kPrecondition;
  }
  auto t = hecke_T(alpha, f, P);
  std::string body = format_qexp(t);
  r.fact("output_digest", digest(body));
  r.fact("nonzero_coefficients", std::to_string(t.c.size()));
  if (!out.empty()) {
    write_file(out, body);
    r.line("wrote " + out);
  } else {
    std::istringstream b(body);
    for (std::string l; std::getline(b, l);) r.line("  " + l);
  }
  return kOk;
}

int cmd_obstruction(const Global& g, Report& r, const std::string& path, const std::string& decomp, const std::string& prec,
                    int increments) {
  std::string text = read_file(path);
  auto M = parse_lattice(text);
  std::string dtext = decomp.empty() ? std::string(R"({"decompositions":[{"standard":true}]})") : read_file(decomp);
  auto ds = parse_decompositions(M, dtext);
  Q P = parse_flag_q(prec, "--prec");
  auto [bp, bm] = M.signature();
  if (bp != 2) throw PreconditionError("obstruction: the lattice must have signature (2, n)");
  auto G = discriminant_group(M).G;
  Q k = qq(2 + bm, 2);
  long long dc = dim_cusp(k, G, true);
  auto res = obstruction_span(M, ds, P, g.workers, increments);
  std::ostringstream hist;
  for (size_t i = 0; i < res.rank_history.size(); ++i) hist << (i ? "," : "") << res.rank_history[i];
  r.fact("input_digest", digest(text));
  r.fact("decomposition_digest", digest(dtext));
  r.fact("decompositions", std::to_string(ds.size()));
  r.fact("weight", q_str(k));
  r.fact("precision", q_str(P));
  r.fact("lifted_series", std::to_string(res.basis.size()));
  r.fact("rank_history", hist.str());
  r.fact("obstruction_rank", std::to_string(res.rank));
  r.fact("dim_cusp", std::to_string(dc));
  r.fact("stabilized", res.stabilized ? "yes" : "no");
  bool maximal = res.stabilized && res.rank == dc;
  r.fact("verdict", !res.stabilized ? "not-stabilized" : maximal ? "maximal" : "undecided");
  if (maximal) {
    r.line("every boundary-extendable Heegner combination is a multiple of the Hodge bundle");
    r.line("Pic(F\xCC\x84)^Heegner rank = 1");
  }
  return maximal ? kOk : kUndecided;
}

int cmd_rank_formula(const Global&, Report& r, int g) {
  if (g < 2) throw PreconditionError("--g must be at least 2");
  auto f = rank_formula(g);
  r.fact("g", std::to_string(g));
  r.fact("main", q_str(f.main));
  r.fact("jacobi_term", q_str(f.jacobi_term));
  r.fact("third", q_str(f.third));
  r.fact("fourth", q_str(f.fourth));
  r.fact("frac_sum", q_str(f.frac_sum));
  r.fact("count", q_str(f.count));
  r.fact("total", q_str(f.total));
  r.fact("r_g", std::to_string(f.value));
  r.line("reading: " + rank_formula_reading());
  return kOk;
}

int cmd_eichler_move(const Global&, Report& r, const std::string& path, int m, const std::string& us, const std::string& vs) {
  EvenLattice M;
  std::string dig;
  if (!path.empty()) {
    std::string text = read_file(path);
    M = parse_lattice(text);
    dig = digest(text);
  } else {
    if (m < 1) throw PreconditionError("give --lattice or --m >= 1");
    M = eichler_lattice(m);
    dig = digest(format_lattice(M));
  }
  IVec u = parse_ivec(us), v = parse_ivec(vs);
  if (static_cast<int>(u.size()) != M.rank() || static_cast<int>(v.size()) != M.rank())
    throw PreconditionError("u and v must have one coordinate per basis vector");
  auto Iu = eichler_invariants(M, u), Iv = eichler_invariants(M, v);
  r.fact("input_digest", dig);
  r.fact("u", join_ll(u));
  r.fact("v", join_ll(v));
  r.fact("norm", std::to_string(Iu.norm) + "," + std::to_string(Iv.norm));
  r.fact("divisibility", std::to_string(Iu.div) + "," + std::to_string(Iv.div));
  auto mv = eichler_move(M, u, v);
  r.fact("subcase", eichler_case_str(mv.subcase));
  r.fact("search_steps", std::to_string(mv.search_steps));
  bool ok = is_isometry(M, mv.g) && act(mv.g, u) == v;
  r.fact("certificate_verified", ok ? "yes" : "no");
  r.line("certificate matrix g (columns are images of basis vectors):");
  for (int i = 0; i < mv.g.rows; ++i) {
    std::vector<long long> row;
    for (int j = 0; j < mv.g.cols; ++j) row.push_back(mv.g(i, j));
    r.fact("g_row_" + std::to_string(i), join_ll(row, " "));
  }
  return ok ? kOk : 1;
}

int cmd_checks(const Global& g, Report& r, const std::string& suite) {
  CheckOptions o;
  o.seed = g.seed;
  o.workers = g.workers;
  std::vector<std::string> names = suite == "all" ? acceptance_suites() : std::vector<std::string>{suite};
  bool all = true;
  r.fact("seed", std::to_string(g.seed));
  for (const auto& n : names) {
    auto res = run_suite(n, o);
    all = all && res.pass;
    char buf[48];
    std::snprintf(buf, sizeof buf, " (%.2fs)", res.seconds);
    r.line(std::string(res.pass ? "PASS " : "FAIL ") + n + ": " + res.summary + buf);
    for (const auto& d : res.details) r.line("    " + d);
    r.fact(n + ".pass", res.pass ? "yes" : "no");
    for (const auto& [k, v] : res.facts) r.fact(n + "." + k, v);
  }
  return all ? kOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hbb: exact lattice, Weil representation and Heegner divisor computations"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads for enumeration")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--report", g.report_out, "also write the report to this path");

  std::string lattice, prec = "5", out, element = "S", in, decomp, u, v, harmonic, suite;
  long long alpha2 = 0;
  int gg = 0, m = 0, increments = 2;
  bool dual = false, floats = false;

  auto* li = app.add_subcommand("lattice-info", "lattice invariants and split predicates");
  li->add_option("--lattice", lattice, "lattice file")->required();

  auto* df = app.add_subcommand("discform", "discriminant form commands");
  auto* dfi = df->add_subcommand("info", "invariants and isotropic subgroup counts");
  dfi->add_option("--lattice", lattice, "lattice file")->required();
  df->require_subcommand(1);
  auto* dfi2 = app.add_subcommand("discform-info", "same as 'discform info'");
  dfi2->add_option("--lattice", lattice, "lattice file")->required();

  auto add_weil = [&](CLI::App* s) {
    s->add_option("--lattice", lattice, "lattice file")->required();
    s->add_option("--element", element, "word in S, T, t (= T^-1)")->capture_default_str();
    s->add_flag("--dual", dual, "use the dual representation");
  };
  auto* wm = app.add_subcommand("weil-matrix", "exact Weil representation matrix");
  add_weil(wm);
  auto* wg = app.add_subcommand("weil", "Weil representation commands");
  auto* wgm = wg->add_subcommand("matrix", "same as weil-matrix");
  add_weil(wgm);
  wg->require_subcommand(1);

  auto* th = app.add_subcommand("theta", "theta series q-expansion");
  th->add_option("--lattice", lattice, "positive or negative definite lattice file")->required();
  th->add_option("--prec", prec, "precision num/den")->capture_default_str();
  th->add_option("--out", out, "write the q-expansion file here");
  th->add_option("--harmonic", harmonic, "u for the quadratic harmonic <u,v>^2 - <u,u><v,v>/r");
  th->add_flag("--float", floats, "write float coefficients");

  auto add_hecke = [&](CLI::App* s) {
    s->add_option("--alpha2", alpha2, "alpha^2")->required();
    s->add_option("--in", in, "input q-expansion file")->required();
    s->add_option("--out", out, "output q-expansion file");
    s->add_option("--prec", prec, "output precision num/den")->required();
  };
  auto* ha = app.add_subcommand("hecke-apply", "apply T_{alpha^2}");
  add_hecke(ha);
  auto* hg = app.add_subcommand("hecke", "Hecke commands");
  auto* hga = hg->add_subcommand("apply", "same as hecke-apply");
  add_hecke(hga);
  hg->require_subcommand(1);

  auto* ob = app.add_subcommand("obstruction", "obstruction span rank against dim S_k");
  ob->add_option("--lattice", lattice, "lattice file of signature (2, n)")->required();
  ob->add_option("--decomp", decomp, "decomposition JSON (default: standard block decomposition)");
  ob->add_option("--prec", prec, "precision num/den")->required();
  ob->add_option("--increments", increments, "precision increments for the stabilization test")->capture_default_str();

  auto* rf = app.add_subcommand("rank-formula", "r_g with its term breakdown");
  rf->add_option("--g", gg, "g >= 2")->required();

  auto* em = app.add_subcommand("eichler-move", "isometry g with g(u) = v on U + U(2) + A1(-1)^m");
  em->add_option("--lattice", lattice, "lattice file in the basis e1, f1, e2, f2, r_1..r_m");
  em->add_option("--m", m, "use the standard lattice with m copies of A1(-1)");
  em->add_option("--u", u, "coordinates of u")->required();
  em->add_option("--v", v, "coordinates of v")->required();

  auto* ck = app.add_subcommand("checks", "run a named property suite, or 'all'");
  std::vector<std::string> names = all_suites();
  names.push_back("all");
  ck->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(names));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kPrecondition;
  }

  Report rep;
  std::ostringstream echo;
  for (int i = 1; i < argc; ++i) echo << (i > 1 ? " " : "") << argv[i];
  rep.command = echo.str();
  auto t0 = std::chrono::steady_clock::now();
  int rc = kOk;
  try {
    if (li->parsed()) rc = cmd_lattice_info(g, rep, lattice);
    else if (dfi->parsed() || dfi2->parsed()) rc = cmd_discform_info(g, rep, lattice);
    else if (wm->parsed() || wgm->parsed()) rc = cmd_weil_matrix(g, rep, lattice, element, dual);
    else if (th->parsed()) rc = cmd_theta(g, rep, lattice, prec, out, harmonic, floats);
    else if (ha->parsed() || hga->parsed()) rc = cmd_hecke_apply(g, rep, alpha2, in, out, prec);
    else if (ob->parsed()) rc = cmd_obstruction(g, rep, lattice, decomp, prec, increments);
    else if (rf->parsed()) rc = cmd_rank_formula(g, rep, gg);
    else if (em->parsed()) rc = cmd_eichler_move(g, rep, lattice, m, u, v);
    else if (ck->parsed()) rc = cmd_checks(g, rep, suite);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string text = rep.render(secs);
  std::cout << text;
  if (!g.report_out.empty()) write_file(g.report_out, text);
  return rc;
}
