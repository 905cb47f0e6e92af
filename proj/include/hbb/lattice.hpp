#pragma once

#include "hbb/cyclotomic.hpp"
#include "hbb/intmat.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hbb {

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Even lattice given by a symmetric integral Gram matrix with even diagonal and det != 0.
class EvenLattice {
 public:
  EvenLattice() = default;
  explicit EvenLattice(LMat gram, std::string name = "", std::vector<std::string> blocks = {});

  const LMat& gram() const { return gram_; }
  int rank() const { return gram_.rows; }
  std::pair<int, int> signature() const { return sig_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& blocks() const { return blocks_; }
  Z det() const;
  bool positive_definite() const { return sig_.second == 0; }
  bool negative_definite() const { return sig_.first == 0; }
  long long inner(const std::vector<long long>& x, const std::vector<long long>& y) const;

 private:
  LMat gram_;
  std::pair<int, int> sig_{0, 0};
  std::string name_;
  std::vector<std::string> blocks_;
};

EvenLattice lattice_U(long long N = 1);
EvenLattice lattice_A1(long long s = 1);   // <2s>
EvenLattice lattice_E8(long long s = 1);   // E8 Cartan form scaled by s
EvenLattice lattice_angle(long long m);    // <m>, m even
EvenLattice direct_sum(const std::vector<EvenLattice>& parts);
EvenLattice rescale(const EvenLattice& M, long long N);
EvenLattice lambda_g(int g);               // <2-2g> + E8(-1)^2 + U^2
// "U(2)", "A1(-1)", "E8(-1)", "<4>", "L+..." style names
EvenLattice standard_lattice(const std::string& spec);

// Finite quadratic module G = (Z/d_1 x ... x Z/d_k, q), elements addressed by a mixed-radix index.
class DiscForm {
 public:
  DiscForm() : DiscForm({}, {}, QMat(0, 0)) {}
  // q_gens[i] = q(g_i), bil(i, j) = (g_i, g_j); both taken mod 1
  DiscForm(std::vector<long long> divisors, std::vector<Q> q_gens, const QMat& bil);

  size_t order() const { return order_; }
  const std::vector<long long>& divisors() const { return d_; }
  int ngens() const { return static_cast<int>(d_.size()); }
  long long level() const { return N_; }

  std::vector<long long> coords(size_t idx) const;
  size_t index(const std::vector<long long>& c) const;  // reduces mod d_i
  size_t add(size_t a, size_t b) const;
  size_t neg(size_t a) const;
  size_t mul(long long n, size_t a) const;

  // q(gamma) * level mod level, and bilinear * level mod level
  long long qN(size_t a) const { return qtab_[a]; }
  long long bN(size_t a, size_t b) const;
  Q q(size_t a) const { return qq(qtab_[a], N_); }
  Q b(size_t a, size_t b) const { return qq(bN(a, b), N_); }
  const std::vector<Q>& q_gens() const { return qg_; }
  const QMat& bil_gens() const { return bil_; }

  DiscForm negated() const;
  DiscForm direct_sum(const DiscForm& o) const;

  Cyc gauss_sum() const;
  int signature_mod8() const;  // from the exact Gauss sum
  bool is_two_torsion() const;
  int p_rank(long long p) const;

 private:
  std::vector<long long> d_;
  std::vector<Q> qg_;
  QMat bil_;
  std::vector<long long> B_;  // bilinear gens * N mod N, row-major
  long long N_ = 1;
  size_t order_ = 1;
  std::vector<long long> qtab_;
  mutable int sign_cache_ = -1;
};

// Discriminant group of M with the lift data used to classify dual vectors.
struct DiscriminantData {
  DiscForm G;
  std::vector<int> pos;  // SNF positions with d > 1
  ZMat U;                // from U * gram * V = D
  ZMat V;
  std::vector<long long> dfull;
  std::vector<std::vector<long long>> urows;  // rows of U at pos, reduced mod d
  // class of the dual vector with dual coordinates y = gram * x (integral)
  size_t class_of_dual(const std::vector<long long>& y) const;
  // lattice-coordinate lift (rational) of an element
  std::vector<Q> lift(size_t idx) const;
};
DiscriminantData discriminant_group(const EvenLattice& M);

struct FormInvariants {
  long long level = 1;
  std::vector<std::pair<long long, int>> p_ranks;
  int ell = 0;
  int signature_mod8 = 0;
  std::optional<int> coparity;
  std::optional<size_t> characteristic;
};
FormInvariants form_invariants(const DiscForm& G);
int coparity(const DiscForm& G);                    // throws unless 2-torsion
size_t characteristic_element(const DiscForm& G);   // throws unless 2-torsion
std::vector<size_t> G_upper(const DiscForm& G, long long n);       // image of x n
std::vector<size_t> G_lower(const DiscForm& G, long long n);       // kernel of x n
std::vector<size_t> G_upper_star(const DiscForm& G, long long n);  // G^{n*}

enum class Verdict { True, Undecided };
struct SplitReport {
  Verdict local_hyperbolic_sufficient;
  Verdict two_global_U_sufficient;
  bool p_elementary;
  Verdict p_elementary_splits_U;
  Verdict k3_type_sufficient;
};
SplitReport split_predicates(const EvenLattice& M, long long p);
std::string verdict_str(Verdict v);

}  // namespace hbb
