#pragma once

#include <string>
#include <vector>

namespace lowreg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst observed value vs. tolerance
};

/// Oracle/invariant suite behind the `selftest` command: multiplier
/// unitarity and group law, phi identities and bounds, zero fixed points,
/// Parseval, datagen determinism and grid consistency, the K=8 convolution
/// oracle, and plane-wave accuracy.
std::vector<CheckResult> run_selftest(int oracle_seeds = 5);

} // namespace lowreg
