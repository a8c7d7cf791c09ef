#pragma once

// Acceptance battery: each criterion runs one scenario end to end and
// reports a pass/fail with a short detail string.

#include <string>
#include <vector>

namespace lck {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CriterionResult> run_acceptance();

}  // namespace lck
