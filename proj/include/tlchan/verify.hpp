#pragma once

#include <string>
#include <vector>

#include "tlchan/recoupling.hpp"
#include "tlchan/structure.hpp"

namespace tlchan {

struct CheckResult {
  enum class Status { Pass, Fail, Skip };
  std::string suite;
  std::string name;
  Status status;
  double value;  // the measured deviation / quantity the check thresholds
  std::string detail;
};

// Suite names: snake, loop, projector, jwcups, adjacent, isometry,
// bistochastic, choi. "all" runs every suite applicable to the group.
std::vector<std::string> available_suites();

// Runs one suite against the context's group. Checks whose ambient size
// exceeds the context cap are reported as skipped, not failed.
std::vector<CheckResult> run_suite(const TLContext& ctx, const std::string& suite);

std::vector<CheckResult> run_all_suites(const TLContext& ctx);

// Admissible triples with l + m <= max_lm whose ambient dimension fits the
// context cap; the shared grid for isometry/bistochastic/choi checks.
std::vector<AdmissibleTriple> triple_grid(const TLContext& ctx, int max_lm);

}  // namespace tlchan
