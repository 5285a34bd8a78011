#pragma once

#include <vector>

#include "rbp/instance.hpp"

namespace rbp {

// A walk along a tree between two vertices.  vertices.front() is the source
// and vertices.back() the destination; edge_ids[t] joins vertices[t] and
// vertices[t+1].  A path with a single vertex (edge_ids empty) is the
// trivial path.
struct TreePath {
  std::vector<int> vertices;
  std::vector<int> edge_ids;
  double total_length = 0.0;

  bool trivial() const { return edge_ids.empty(); }
  bool contains_vertex(int v) const {
    for (int u : vertices)
      if (u == v) return true;
    return false;
  }
};

// A directed copy of a tree edge.
struct Arc {
  int tail = -1;
  int head = -1;

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.tail == b.tail && a.head == b.head;
  }
  friend bool operator<(const Arc& a, const Arc& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  }
};

// Rooted representation of an edge-weighted tree with path and precedence
// queries.  All queries run in O(depth); nothing quadratic is materialized.
class Tree {
 public:
  Tree(int vertex_count, const std::vector<EdgeSpec>& edges);
  static Tree from_instance(const RbpInstance& inst);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const EdgeSpec& edge(int id) const { return edges_[id]; }
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adjacency_[v];  // (neighbor, edge id)
  }

  int parent(int v) const { return parent_[v]; }
  int parent_edge(int v) const { return parent_edge_[v]; }

  int lca(int u, int v) const;
  double distance(int u, int v) const;
  TreePath path_between(int u, int v) const;

  // The unique shortest path from `from` to the nearest vertex of a
  // non-empty connected target set (trivial if `from` is inside).
  TreePath path_to_subgraph(int from, const std::vector<char>& in_target) const;

  // a precedes a_prime iff some directed simple path traverses a_prime first
  // and a later.  The relation is a strict partial order on arcs.
  bool precedes(const Arc& a, const Arc& a_prime) const;

  // -1 if no edge joins u and v.
  int edge_between(int u, int v) const;

 private:
  int vertex_count_ = 0;
  std::vector<EdgeSpec> edges_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<int> depth_;
  std::vector<double> dist_root_;
};

}  // namespace rbp
