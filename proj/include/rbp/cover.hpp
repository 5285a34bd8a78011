#pragma once

#include <utility>
#include <vector>

#include "rbp/instance.hpp"
#include "rbp/intervals.hpp"
#include "rbp/terminals.hpp"
#include "rbp/tree.hpp"

namespace rbp {

// Hitting-set demand attached to one directed arc: the requests whose path
// toward their candidate terminal paths crosses the arc, and their batching
// intervals.
struct ArcDemand {
  Arc arc;
  std::vector<int> requests;                      // ascending request ids
  std::vector<std::pair<int, int>> intervals;     // parallel to requests
  bool is_cut() const { return !requests.empty(); }
};

// Record of one processed cut arc: the windows it was bought for and the
// exact maximum number of pairwise-disjoint demand intervals.
struct ProcessedArc {
  Arc arc;
  std::vector<int> hitting_set;  // ascending windows
  int max_disjoint = 0;
};

struct RequestCover {
  int m = 0;
  std::vector<int> assign;                // request -> window
  std::vector<std::vector<Arc>> arcs;     // bought arcs per window
  std::vector<std::vector<int>> edges;    // undirected edge ids per window,
                                          // ascending, terminal-path edges
                                          // stripped
  std::vector<std::vector<int>> batches;  // request ids per window, ascending
  std::vector<ProcessedArc> processed;    // in processing order

  std::vector<int> batch_sizes() const;
};

// Demands for every arc crossed by some request's path to the union of its
// interval's terminal paths.  Sorted by (tail, head).
std::vector<ArcDemand> compute_arc_demands(const RbpInstance& inst,
                                           const Tree& tree,
                                           const Terminals& terminals,
                                           const ServiceIntervals& intervals);

// Inclusion-minimal subset of `candidates` hitting every interval, obtained
// by attempting deletions in ascending window order.  Requires `candidates`
// itself to hit everything (violations indicate a processing-order bug).
std::vector<int> minimal_hitting_set(
    const std::vector<int>& candidates,
    const std::vector<std::pair<int, int>>& intervals);

// Exact maximum number of pairwise-disjoint intervals.
int max_disjoint_intervals(std::vector<std::pair<int, int>> intervals);

// Processes cut arcs outward from the terminal paths, extending the hitting
// sets of nearer arcs, and assigns every request to the earliest window of
// its interval whose bought arcs or terminal path touch it.
RequestCover greedy_extension(const RbpInstance& inst, const Tree& tree,
                              const Terminals& terminals,
                              const ServiceIntervals& intervals);

// Total edge length bought across windows (after terminal-path stripping).
double cover_length(const RequestCover& cover, const Tree& tree);

}  // namespace rbp
