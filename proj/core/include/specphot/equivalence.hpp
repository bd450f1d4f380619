#ifndef SPECPHOT_EQUIVALENCE_HPP
#define SPECPHOT_EQUIVALENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace specphot {

struct CheckResult {
  std::string name;
  int n_trials;
  double max_abs_error;
  bool passed;
};

struct EquivalenceOptions {
  int trials = 100;     // randomized cases per check
  int max_bins = 10;    // bin-count ceiling for randomized grids
  std::uint64_t seed = 0x5eedULL;
};

// Cross-checks every closed-form probability against the brute-force
// simulator, plus the simulator's own unitarity identities. All
// tolerances are fixed; a failed check names itself in the result row.
std::vector<CheckResult> run_equivalence_suite(const EquivalenceOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace specphot

#endif
