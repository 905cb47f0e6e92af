#include "hbb/io.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hbb {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string q_frac(const Q& x) {
  Q c = x;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace

// ------------------------------------------------------------------ lattice files

EvenLattice parse_lattice(const std::string& text) {
  std::istringstream in(text);
  std::string line, name, blocks;
  int n = -1;
  std::vector<long long> entries;
  bool in_gram = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (in_gram && static_cast<long long>(entries.size()) < static_cast<long long>(n) * n) {
      std::istringstream row(t);
      long long v;
      int cnt = 0;
      while (row >> v) {
        entries.push_back(v);
        ++cnt;
      }
      if (cnt != n || !row.eof()) throw PreconditionError("lattice file line " + std::to_string(lineno) + ": bad gram row");
      continue;
    }
    size_t colon = t.find(':');
    if (colon == std::string::npos) throw PreconditionError("lattice file line " + std::to_string(lineno) + ": expected key: value");
    std::string key = trim(t.substr(0, colon)), val = trim(t.substr(colon + 1));
    if (key == "name") {
      name = val;
    } else if (key == "blocks") {
      blocks = val;
    } else if (key == "gram") {
      try {
        n = std::stoi(val);
      } catch (const std::exception&) {
        throw PreconditionError("lattice file: gram size is not an integer");
      }
      if (n < 1) throw PreconditionError("lattice file: gram size must be positive");
      in_gram = true;
    } else {
      throw PreconditionError("lattice file: unknown key '" + key + "'");
    }
  }
  if (n < 0) {
    if (blocks.empty()) throw PreconditionError("lattice file: neither gram nor blocks given");
    EvenLattice b = standard_lattice(blocks);
    return EvenLattice(b.gram(), name.empty() ? blocks : name, {blocks});
  }
  if (static_cast<long long>(entries.size()) != static_cast<long long>(n) * n)
    throw PreconditionError("lattice file: gram has too few rows");
  LMat g(n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = entries[static_cast<size_t>(i) * n + j];
  if (!blocks.empty() && standard_lattice(blocks).gram() != g)
    throw PreconditionError("lattice file: gram does not match the block list");
  std::vector<std::string> bl;
  if (!blocks.empty()) bl.push_back(blocks);
  return EvenLattice(g, name, bl);
}

std::string format_lattice(const EvenLattice& M) {
  std::ostringstream out;
  out << "name: " << M.name() << "\n";
  if (!M.blocks().empty()) out << "blocks: " << M.blocks()[0] << "\n";
  out << "gram: " << M.rank() << "\n";
  for (int i = 0; i < M.rank(); ++i) {
    for (int j = 0; j < M.rank(); ++j) out << (j ? " " : "") << M.gram()(i, j);
    out << "\n";
  }
  return out.str();
}

EvenLattice read_lattice_file(const std::string& path) { return parse_lattice(read_file(path)); }

// ------------------------------------------------------------------ q-expansion files

std::string format_qexp(const FourierExpansion& f, bool exact) {
  std::ostringstream out;
  const DiscForm& G = f.G;
  out << "group=";
  if (G.divisors().empty()) out << "1";
  for (size_t i = 0; i < G.divisors().size(); ++i) out << (i ? "," : "") << G.divisors()[i];
  out << " dual=" << (f.dual ? 1 : 0) << " k=" << q_frac(f.k) << " prec=" << q_frac(f.prec) << "\n";
  out << "#form q=";
  for (size_t i = 0; i < G.q_gens().size(); ++i) out << (i ? "," : "") << q_str(G.q_gens()[i]);
  out << " b=";
  const QMat& B = G.bil_gens();
  for (size_t i = 0; i < B.a.size(); ++i) out << (i ? "," : "") << q_str(B.a[i]);
  out << "\n";
  // map keys are ordered by (element index, m): index order is lexicographic in the coordinates
  for (const auto& [key, v] : f.c) {
    if (v.is_zero()) continue;
    auto c = G.coords(key.first);
    if (c.empty()) out << "0";
    for (size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << " ; " << q_frac(key.second) << " ; ";
    if (exact) {
      out << "cyc:" << v.conductor() << ":";
      const auto co = v.coeffs_at(v.conductor());
      for (size_t i = 0; i < co.size(); ++i) out << (i ? "," : "") << q_str(co[i]);
    } else {
      cplx z = v.to_complex();
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

FourierExpansion parse_qexp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("qexp file: empty");
  std::vector<long long> divs;
  FourierExpansion f;
  bool have_k = false, have_p = false, have_dual = false;
  {
    std::istringstream h(line);
    std::string tok;
    while (h >> tok) {
      size_t eq = tok.find('=');
      if (eq == std::string::npos) throw PreconditionError("qexp header: malformed token " + tok);
      std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
      if (k == "group") {
        for (const auto& s : split(v, ',')) {
          long long d = std::stoll(s);
          if (d > 1) divs.push_back(d);
        }
      } else if (k == "dual") {
        f.dual = v == "1";
        have_dual = true;
      } else if (k == "k") {
        f.k = parse_q(v);
        have_k = true;
      } else if (k == "prec") {
        f.prec = parse_q(v);
        have_p = true;
      } else {
        throw PreconditionError("qexp header: unknown key " + k);
      }
    }
  }
  if (!have_k || !have_p || !have_dual) throw PreconditionError("qexp header: missing dual, k or prec");
  const size_t ng = divs.size();
  std::vector<Q> qg(ng, Q(0));
  QMat B(static_cast<int>(ng), static_cast<int>(ng), Q(0));
  bool have_form = ng == 0;
  std::vector<std::pair<std::vector<long long>, std::pair<Q, Cyc>>> rows;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("#form", 0) == 0) {
      std::istringstream h(t.substr(5));
      std::string tok;
      while (h >> tok) {
        if (tok.rfind("q=", 0) == 0 && ng) {
          auto parts = split(tok.substr(2), ',');
          if (parts.size() != ng) throw PreconditionError("qexp #form: wrong number of q values");
          for (size_t i = 0; i < ng; ++i) qg[i] = parse_q(parts[i]);
        } else if (tok.rfind("b=", 0) == 0 && ng) {
          auto parts = split(tok.substr(2), ',');
          if (parts.size() != ng * ng) throw PreconditionError("qexp #form: wrong number of bilinear values");
          for (size_t i = 0; i < parts.size(); ++i) B.a[i] = parse_q(parts[i]);
        }
      }
      have_form = true;
      continue;
    }
    if (t[0] == '#') continue;
    auto parts = split(t, ';');
    if (parts.size() != 3) throw PreconditionError("qexp line: expected 'coords ; m ; coeff'");
    std::vector<long long> c;
    if (ng) {
      for (const auto& s : split(trim(parts[0]), ',')) c.push_back(std::stoll(s));
      if (c.size() != ng) throw PreconditionError("qexp line: wrong number of coordinates");
    }
    Q m = parse_q(trim(parts[1]));
    std::string cs = trim(parts[2]);
    if (cs.rfind("cyc:", 0) != 0) throw PreconditionError("qexp line: float coefficients cannot be read exactly");
    auto cp = split(cs.substr(4), ':');
    if (cp.size() != 2) throw PreconditionError("qexp line: malformed cyc coefficient");
    int L = std::stoi(cp[0]);
    std::vector<Q> co;
    for (const auto& s : split(cp[1], ',')) co.push_back(parse_q(trim(s)));
    rows.push_back({c, {m, Cyc::from_coeffs(L, co)}});
  }
  if (!have_form) throw PreconditionError("qexp file: nontrivial group without a #form line");
  f.G = DiscForm(divs, qg, B);
  for (const auto& [c, mv] : rows) f.add(f.G.index(c), mv.first, mv.second);
  f.validate();
  return f;
}

// ------------------------------------------------------------------ decompositions

std::vector<AdmissibleDecomposition> parse_decompositions(const EvenLattice& M, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw PreconditionError(std::string("decomposition file: ") + e.what());
  }
  if (!j.contains("decompositions") || !j["decompositions"].is_array())
    throw PreconditionError("decomposition file: missing 'decompositions' array");
  std::vector<AdmissibleDecomposition> out;
  for (const auto& d : j["decompositions"]) {
    if (d.value("standard", false)) {
      out.push_back(standard_decomposition(M));
      continue;
    }
    if (!d.contains("P")) throw PreconditionError("decomposition: need 'P' or 'standard'");
    const auto& rowsj = d["P"];
    int n = static_cast<int>(rowsj.size());
    LMat P(n, n, 0);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rowsj[r].size()) != n) throw PreconditionError("decomposition: P is not square");
      for (int c = 0; c < n; ++c) P(r, c) = rowsj[r][c].get<long long>();
    }
    out.push_back(make_decomposition(M, P, d.value("N1", 1LL), d.value("N2", 1LL)));
  }
  return out;
}

std::string format_decomposition(const AdmissibleDecomposition& d) {
  nlohmann::ordered_json j;
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < d.P.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < d.P.cols; ++c) row.push_back(d.P(r, c));
    rows.push_back(row);
  }
  j["N1"] = d.N1;
  j["N2"] = d.N2;
  j["P"] = rows;
  nlohmann::ordered_json top;
  top["decompositions"] = nlohmann::json::array({j});
  return top.dump() + "\n";
}

// ------------------------------------------------------------------ files

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

std::string digest(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

}  // namespace hbb
