#pragma once

#include <string>
#include <vector>

namespace cldecohere {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant suite across all modules (well under a second).
std::vector<SelfTestResult> run_selftest();

}  // namespace cldecohere
