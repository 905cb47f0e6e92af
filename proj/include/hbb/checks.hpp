#pragma once

#include "hbb/lattice.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hbb {

struct CheckOptions {
  uint64_t seed = 20240601;
  int workers = 1;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string summary;                                     // one line
  std::vector<std::string> details;                        // human-readable extra lines
  std::vector<std::pair<std::string, std::string>> facts;  // deterministic key/value pairs
  double seconds = 0;
};

// lattices whose discriminant forms make up the relation corpus (|G| <= 48)
std::vector<EvenLattice> weil_corpus();

CheckResult check_weil_relations(const CheckOptions& o);
CheckResult check_milgram(const CheckOptions& o);
CheckResult check_theta_modularity(const CheckOptions& o);
CheckResult check_eisenstein(const CheckOptions& o);
CheckResult check_hecke(const CheckOptions& o);
CheckResult check_lift_descent(const CheckOptions& o);
CheckResult check_lipschitz(const CheckOptions& o);
CheckResult check_eichler(const CheckOptions& o);
CheckResult check_flagship(const CheckOptions& o);
CheckResult check_easy_instance(const CheckOptions& o);
CheckResult check_rank_formula(const CheckOptions& o);
// not part of the acceptance list: commuting Hecke matrices on a two-dimensional cusp space
CheckResult check_hecke_eigen(const CheckOptions& o);

// acceptance order; rank-formula last
std::vector<std::string> acceptance_suites();
std::vector<std::string> all_suites();
// throws PreconditionError on an unknown name
CheckResult run_suite(const std::string& name, const CheckOptions& o);

}  // namespace hbb
