#include "rbp/terminals.hpp"

#include <stdexcept>
#include <string>

namespace rbp {

std::vector<Arc> orient_window(const RbpInstance& inst, const Tree& tree,
                               const WindowPartition& windows, int window) {
  if (window < 0 || window >= windows.m)
    throw std::invalid_argument("window index out of range");
  int v_count = tree.vertex_count();

  // Requests of this window per vertex, then per-subtree sums via one pass
  // in reverse DFS-discovery order (children always deeper than parents).
  std::vector<int> count(v_count, 0);
  for (int j = windows.window_begin(window); j < windows.window_end(window); ++j)
    ++count[inst.requests[j]];

  std::vector<int> order;
  order.reserve(v_count);
  {
    std::vector<int> stack = {0};
    std::vector<char> seen(v_count, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto [w, id] : tree.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  std::vector<int> subtree = count;
  for (size_t t = order.size(); t-- > 0;) {
    int v = order[t];
    if (tree.parent(v) >= 0) subtree[tree.parent(v)] += subtree[v];
  }

  int total = windows.window_size;
  std::vector<Arc> orientation(tree.edge_count());
  for (int id = 0; id < tree.edge_count(); ++id) {
    const EdgeSpec& e = tree.edge(id);
    // The child side of the edge is the endpoint whose parent edge this is.
    int child = (tree.parent_edge(e.u) == id) ? e.u : e.v;
    int parent = (child == e.u) ? e.v : e.u;
    int below = subtree[child];
    int above = total - below;
    if ((below <= inst.k) == (above <= inst.k))
      throw std::logic_error("window orientation: edge " + std::to_string(id) +
                             " has no unique light side");
    orientation[id] = (below <= inst.k) ? Arc{child, parent} : Arc{parent, child};
  }
  return orientation;
}

int find_terminal(const Tree& tree, const std::vector<Arc>& orientation) {
  if (static_cast<int>(orientation.size()) != tree.edge_count())
    throw std::invalid_argument("orientation size does not match edge count");
  std::vector<char> has_outgoing(tree.vertex_count(), 0);
  for (const Arc& a : orientation) has_outgoing[a.tail] = 1;
  int sink = -1;
  for (int v = 0; v < tree.vertex_count(); ++v) {
    if (has_outgoing[v]) continue;
    if (sink >= 0)
      throw std::logic_error("window orientation has several all-incoming vertices");
    sink = v;
  }
  if (sink < 0)
    throw std::logic_error("window orientation has no all-incoming vertex");
  return sink;
}

Terminals find_terminals(const RbpInstance& inst, const Tree& tree,
                         const WindowPartition& windows) {
  Terminals result;
  int previous = inst.start_vertex;
  for (int i = 0; i < windows.m; ++i) {
    std::vector<Arc> orientation = orient_window(inst, tree, windows, i);
    int v_i = find_terminal(tree, orientation);
    result.vertices.push_back(v_i);
    result.paths.push_back(tree.path_between(previous, v_i));
    previous = v_i;
  }
  return result;
}

}  // namespace rbp
