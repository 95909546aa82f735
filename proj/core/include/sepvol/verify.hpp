#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sepvol::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 20030617;
  std::int64_t samples = 0;  // 0: per-check defaults
  long precision_bits = 256;
};

// suite: "golden" (frozen pipeline numbers), "mc" (sampling vs analytic
// bounds), or "desk" (golden + invariants + reduced mc).
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const SuiteOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sepvol::verify
