#pragma once

#include <vector>

#include "rbp/instance.hpp"
#include "rbp/tree.hpp"

namespace rbp {

// Window terminals v_1..v_m plus the connecting paths P_i.  paths[i] runs
// from v_{i-1} to v_i, where v_0 is the instance start vertex.
struct Terminals {
  std::vector<int> vertices;
  std::vector<TreePath> paths;

  int m() const { return static_cast<int>(vertices.size()); }
};

// Orients every tree edge for one window: the side of the edge holding at
// most k of the window's 2k+1 requests (counted with multiplicity) points
// toward the other side.  Exactly one side qualifies because the two sides
// partition an odd request count.  Returns one arc per edge id.
std::vector<Arc> orient_window(const RbpInstance& inst, const Tree& tree,
                               const WindowPartition& windows, int window);

// The unique vertex with no outgoing arc under a window orientation.
// Zero or several such vertices indicate a broken orientation and throw.
int find_terminal(const Tree& tree, const std::vector<Arc>& orientation);

// Terminals and connecting paths for every window of a padded instance.
Terminals find_terminals(const RbpInstance& inst, const Tree& tree,
                         const WindowPartition& windows);

}  // namespace rbp
