#include <cstdio>

#include <fmt/core.h>

#include "checks.hpp"

int main() {
  const auto results = quench::checks::figure_suite();
  int failed = 0;
  for (const auto& r : results) {
    fmt::print("{} criterion {}: {} ({}) [{:.1f} s]\n", r.passed ? "PASS" : "FAIL", r.id, r.title, r.detail,
               r.seconds);
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  fmt::print("{} of {} criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
