#pragma once

#include <string>
#include <vector>

namespace quench::checks {

struct CheckResult {
  std::string id;
  std::string title;
  bool passed;
  std::string detail;
  double seconds;
};

/// Module invariants at reduced sizes; meant to finish well under two minutes.
std::vector<CheckResult> fast_suite();

/// The nine acceptance criteria, in order. The evolution runs are shared by
/// criteria 6 and 7.
std::vector<CheckResult> figure_suite();

CheckResult slab_identity_criterion();
CheckResult table_criterion();
CheckResult beta_intercept_criterion();
CheckResult horizon_criterion();
CheckResult gap_asymptotics_criterion();
CheckResult quasi_adiabatic_criterion();
CheckResult vertex_criterion();
/// Criteria 6 and 7 together.
std::vector<CheckResult> evolution_criteria();

}  // namespace quench::checks
