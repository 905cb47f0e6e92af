#pragma once

#include "hbb/lattice.hpp"

#include <vector>

namespace hbb {

// Subgroup generated by gens, as a sorted element list.
std::vector<size_t> subgroup_closure(const DiscForm& G, const std::vector<size_t>& gens);
// small generating set of a subgroup given by its elements
std::vector<size_t> subgroup_generators(const DiscForm& G, const std::vector<size_t>& elems);
bool is_isotropic(const DiscForm& G, const std::vector<size_t>& elems);

// H^perp / H for an isotropic subgroup H.
struct Subquotient {
  std::vector<size_t> H;       // sorted elements
  std::vector<size_t> Hperp;   // sorted elements
  DiscForm quotient;
  std::vector<size_t> proj;    // proj[g] = quotient index for g in Hperp, npos otherwise
  std::vector<size_t> rep;     // rep[c] = some g in Hperp projecting to c
  static constexpr size_t npos = static_cast<size_t>(-1);
};
Subquotient complement_and_quotient(const DiscForm& G, const std::vector<size_t>& H_gens);

// Arrow-up: coefficient vector over H^perp/H to one over G; arrow-down: the adjoint.
template <class S>
std::vector<S> lift_up(const DiscForm& G, const Subquotient& sq, const std::vector<S>& v) {
  if (v.size() != sq.quotient.order()) throw PreconditionError("lift_up: vector does not live on H^perp/H");
  std::vector<S> out(G.order(), S(0));
  for (size_t c = 0; c < v.size(); ++c) {
    if (v[c] == S(0)) continue;
    for (size_t mu : sq.H) out[G.add(sq.rep[c], mu)] += v[c];
  }
  return out;
}

template <class S>
std::vector<S> descend_down(const DiscForm& G, const Subquotient& sq, const std::vector<S>& w) {
  if (w.size() != G.order()) throw PreconditionError("descend_down: vector does not live on G");
  std::vector<S> out(sq.quotient.order(), S(0));
  for (size_t g : sq.Hperp) out[sq.proj[g]] += w[g];
  return out;
}

// Automorphisms preserving q, as permutations of element indices; deterministic order.
std::vector<std::vector<size_t>> orthogonal_group(const DiscForm& G, size_t bound = 10000,
                                                  size_t max_count = 1000000);

bool is_characteristic_free(const DiscForm& G, const std::vector<size_t>& H_elems);

}  // namespace hbb
