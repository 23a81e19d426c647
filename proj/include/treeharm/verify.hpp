#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeharm/jsonio.hpp"
#include "treeharm/tree.hpp"
#include "treeharm/types.hpp"

namespace treeharm {

struct VerifyOptions {
  bool tits_independence = true;
  Tolerances tol;
  long long vertex_budget = 0;  // 0 selects the environment default
  bool corrupt_kernel = false;  // negative-control hook: poisons one kernel
  std::uint64_t seed = 0x7ee5eedULL;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  real_t measured = 0;   // measured error (or eigenvalue floor)
  real_t tolerance = 0;  // the bound it was held to
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  TreeParams params;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// The individual suites, in execution order of "all".
const std::vector<std::string>& suite_names();

/// Runs one named suite (or "all"). Classification-dependent suites
/// propagate ClassificationUnavailableError when the independence flag is
/// cleared.
SuiteReport run_suite(const TreeParams& params, const std::string& suite,
                      const VerifyOptions& opts = {});

ordered_json to_json(const SuiteReport& report);

}  // namespace treeharm
