#pragma once

#include <cstdint>
#include <vector>

#include "rbp/instance.hpp"
#include "rbp/metric.hpp"
#include "rbp/server.hpp"

namespace rbp {

// A randomized hierarchical tree approximation of a finite metric.  Every
// original point becomes a leaf; internal vertices are cluster centers of a
// laminar decomposition whose radii shrink by a factor of two per level.
// Guarantees:
//   * non-contraction: tree distance >= original distance for every pair;
//   * expected stretch O(log n) over the random seed (random shift and a
//     random point order shared by all levels).
struct EmbeddedTree {
  int vertex_count = 0;
  std::vector<EdgeSpec> edges;
  std::vector<int> leaf_of_point;    // original point -> tree vertex
  std::vector<int> level_of_vertex;  // decomposition level per tree vertex
  int root = 0;
  uint64_t seed = 0;
};

// Requires a valid metric with strictly positive off-diagonal distances
// (coincident points cannot be separated by any non-contracting tree).
EmbeddedTree embed_metric(const DenseMetric& metric, uint64_t seed);

// Rewrites an instance onto the embedded tree: same buffer size, requests and
// start vertex mapped to their leaves.
RbpInstance lift_instance(const RbpInstance& original,
                          const EmbeddedTree& tree);

// Maps a schedule on the embedded tree back to the original metric: moves
// between consecutive distinct leaf arrivals become direct moves between the
// corresponding points, reads and serves pass through unchanged.  Each
// pulled-back move is no longer than the tree walk it replaces, so the total
// distance never increases.
ServerTrace pull_back_schedule(const ServerTrace& tree_trace,
                               const EmbeddedTree& tree,
                               const DenseMetric& metric, int original_start);

}  // namespace rbp
