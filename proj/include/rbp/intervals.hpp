#pragma once

#include <string>
#include <vector>

#include "rbp/instance.hpp"
#include "rbp/lp.hpp"

namespace rbp {

// Tolerance absorbed by the half-mass threshold test, so simplex round-off
// can only delay a deadline by a negligible margin, never advance it.
inline constexpr double kHalfMassTol = 1e-6;

// Per-request batching deadlines: request j may be batched in any window of
// [release(j), deadline(j)].
struct ServiceIntervals {
  std::vector<int> release;   // w(j)
  std::vector<int> deadline;  // h(j)

  int request_count() const { return static_cast<int>(release.size()); }
  bool contains(int j, int window) const {
    return release[j] <= window && window <= deadline[j];
  }
};

// deadline(j) = smallest window i >= release(j) whose cumulative fractional
// assignment reaches 1/2.  Throws std::logic_error if the mass never gets
// there (the relaxation guarantees total mass >= 1 per request).
ServiceIntervals derive_intervals(const LpSolution& x_star,
                                  const WindowPartition& windows);

struct FeasibilityCheck {
  bool ok = true;
  int window = -1;       // first violating window (0-based), -1 if none
  long long have = 0;    // violating side: achieved prefix count
  long long need = 0;    // required prefix count
  std::string message;
};

// Verifies the prefix cardinality bound sum_{l<=i} |B_l| >= (2k+1)(i+1) - 2k
// for batch sizes, and the same bound for deadline counts
// |{j : deadline(j) <= i}|.  Windows are 0-based throughout.
FeasibilityCheck check_two_feasibility(const ServiceIntervals& intervals,
                                       const std::vector<int>& batch_sizes,
                                       const WindowPartition& windows);

}  // namespace rbp
