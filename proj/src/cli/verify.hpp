#pragma once

#include <string>
#include <vector>

namespace bohrlab::cli {

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Names accepted by --only, in run order.
const std::vector<std::string>& verify_groups();

/// Runs the named groups (all when only is empty). Throws UsageError on an unknown name.
std::vector<CheckResult> run_verify(const std::vector<std::string>& only, unsigned threads);

}  // namespace bohrlab::cli
