#pragma once

#include <string>
#include <vector>

#include "rbp/instance.hpp"
#include "rbp/oracle.hpp"
#include "rbp/server.hpp"

namespace rbp {

// Adversarial request family on a unit-weight line graph.  For a buffer of
// size k the line has 2^k vertices, and the request order is produced by a
// divide-and-conquer sweep over the leaves of a depth-k binary tree: a
// capacity-k server can clear everything in a single left-to-right pass,
// while servers with much smaller buffers are forced to zig-zag.
struct LowerBoundInstance {
  int k = 0;
  int line_length = 0;            // number of line vertices (= 2^k)
  std::vector<int> requests;      // request positions, 0-based line vertices

  int request_count() const { return static_cast<int>(requests.size()); }
};

// Builds the family for buffer size k (1 <= k <= 20).
LowerBoundInstance generate_lower_bound(int k);

// Converts the family to a standard instance: unit line edges, start at the
// leftmost vertex, buffer size k.
RbpInstance lower_bound_to_instance(const LowerBoundInstance& family);

// Runs the designed single-sweep schedule: walk the line left to right, and
// at each vertex serve whatever is held there, then consume or buffer input
// requests until the buffer is full.  Total distance is exactly
// line_length - 1 and the buffer never holds more than k requests.
ServerTrace run_lower_bound_server(const LowerBoundInstance& family);

// Cost comparison between the full buffer (size k) and a reduced buffer
// (size max(1, k/4)) on the same family.
struct GapReport {
  int k = 0;
  int reduced_capacity = 0;
  int request_count = 0;
  double cost_full = 0.0;     // travel with a size-k buffer
  double cost_reduced = 0.0;  // travel (or surrogate) with the reduced buffer
  double ratio = 0.0;         // cost_reduced / cost_full
  std::string full_method;
  std::string reduced_method;
};

// When the instance is small enough the reduced-buffer cost comes from the
// exact search; otherwise it falls back to the in-order walk (serve requests
// in arrival order), reported as a labelled upper-bound surrogate.
GapReport gap_report(int k, int oracle_limit = kDefaultOracleLimit);

}  // namespace rbp
