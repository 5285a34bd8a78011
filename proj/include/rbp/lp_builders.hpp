#pragma once

#include <map>
#include <vector>

#include "rbp/instance.hpp"
#include "rbp/intervals.hpp"
#include "rbp/lp.hpp"
#include "rbp/terminals.hpp"
#include "rbp/tree.hpp"

namespace rbp {

// Encodes a directed arc as a single int for solution maps.
inline int arc_key(const Arc& a, int vertex_count) {
  return a.tail * vertex_count + a.head;
}
inline Arc arc_from_key(int key, int vertex_count) {
  return Arc{key / vertex_count, key % vertex_count};
}

// A relaxation together with the variable layout needed to unpack its
// solution: x_var[j][i] is the column of the assignment variable (or -1),
// y_var[i] maps an edge id (undirected form) or an arc key (directed form)
// to its column.
struct BuiltLp {
  LinearProgram lp;
  int n = 0;
  int m = 0;
  int vertex_count = 0;
  bool directed = false;
  std::vector<std::vector<int>> x_var;
  std::vector<std::map<int, int>> y_var;
};

// Window-assignment relaxation: per-request coverage over windows at or
// after release, prefix cardinality lower bounds, and edge-purchase coupling
// along each request's path to the window's terminal path.  Edge variables
// exist only where some request couples to them.
BuiltLp build_assignment_lp(const RbpInstance& inst, const Tree& tree,
                            const Terminals& terminals);

// Interval relaxation over bidirected arcs: coverage restricted to each
// request's batching interval, coupling along the directed path toward the
// union of the interval's terminal paths.  For each (edge, window) only the
// single orientation used by some request exists.
BuiltLp build_interval_lp(const RbpInstance& inst, const Tree& tree,
                          const Terminals& terminals,
                          const ServiceIntervals& intervals);

// Unpacks a solved relaxation into dense x and per-window y maps.
LpSolution unpack_solution(const BuiltLp& built, const LpResult& result);

}  // namespace rbp
