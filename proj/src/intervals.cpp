#include "rbp/intervals.hpp"

#include <cstdio>
#include <stdexcept>

namespace rbp {

ServiceIntervals derive_intervals(const LpSolution& x_star,
                                  const WindowPartition& windows) {
  ServiceIntervals out;
  const int n = x_star.n;
  const int m = x_star.m;
  out.release.resize(n);
  out.deadline.resize(n);
  for (int j = 0; j < n; ++j) {
    const int w = windows.window_of(j);
    out.release[j] = w;
    double mass = 0.0;
    int h = -1;
    for (int i = w; i < m; ++i) {
      mass += x_star.x_at(j, i);
      if (mass >= 0.5 - kHalfMassTol) {
        h = i;
        break;
      }
    }
    if (h < 0) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "request %d accumulates only %.9f assignment mass; "
                    "the relaxation guarantees at least 1",
                    j, mass);
      throw std::logic_error(buf);
    }
    out.deadline[j] = h;
  }
  return out;
}

FeasibilityCheck check_two_feasibility(const ServiceIntervals& intervals,
                                       const std::vector<int>& batch_sizes,
                                       const WindowPartition& windows) {
  FeasibilityCheck result;
  const int m = windows.m;
  const long long width = windows.window_size;
  const long long slack = width - 1;  // 2k

  std::vector<long long> deadline_counts(m, 0);
  for (int j = 0; j < intervals.request_count(); ++j)
    ++deadline_counts[intervals.deadline[j]];

  auto fail = [&](const char* what, int i, long long have, long long need) {
    result.ok = false;
    result.window = i;
    result.have = have;
    result.need = need;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%s prefix too small at window %d: have %lld, need %lld",
                  what, i + 1, have, need);
    result.message = buf;
  };

  long long batch_prefix = 0;
  long long deadline_prefix = 0;
  for (int i = 0; i < m; ++i) {
    const long long need = width * (i + 1) - slack;
    batch_prefix += batch_sizes[i];
    deadline_prefix += deadline_counts[i];
    if (deadline_prefix < need) {
      fail("deadline", i, deadline_prefix, need);
      return result;
    }
    if (batch_prefix < need) {
      fail("batch", i, batch_prefix, need);
      return result;
    }
  }
  result.message = "prefix cardinality bounds hold";
  return result;
}

}  // namespace rbp
