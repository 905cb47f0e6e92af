// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// The rank formula gates the rest: without it the flagship comparison is meaningless.
#include "hbb/checks.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

using namespace hbb;

namespace {

void print(size_t idx, const CheckResult& r) {
  std::printf("criterion %zu: %s %s: %s (%.1f s)\n", idx, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.summary.c_str(),
              r.seconds);
  for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CheckOptions o;
  if (argc > 1) o.workers = std::max(1, std::atoi(argv[1]));
  const auto names = acceptance_suites();

  auto gate = run_suite(names.back(), o);
  if (!gate.pass) {
    print(names.size(), gate);
    std::printf("rank formula gate failed; remaining criteria not run\n");
    return 1;
  }

  size_t failed = 0;
  for (size_t i = 0; i + 1 < names.size(); ++i) {
    auto r = run_suite(names[i], o);
    print(i + 1, r);
    failed += !r.pass;
  }
  print(names.size(), gate);
  failed += !gate.pass;
  std::printf("%zu/%zu criteria passed\n", names.size() - failed, names.size());
  return failed == 0 ? 0 : 1;
}
