#include "rbp/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbp {

Tree::Tree(int vertex_count, const std::vector<EdgeSpec>& edges)
    : vertex_count_(vertex_count), edges_(edges) {
  if (vertex_count < 1) throw std::invalid_argument("tree needs at least one vertex");
  if (static_cast<int>(edges.size()) != vertex_count - 1)
    throw std::invalid_argument("a tree on " + std::to_string(vertex_count) +
                                " vertices needs exactly " +
                                std::to_string(vertex_count - 1) + " edges");
  adjacency_.assign(vertex_count, {});
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    const EdgeSpec& e = edges[id];
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.length < 0) throw std::invalid_argument("negative edge length");
    adjacency_[e.u].emplace_back(e.v, id);
    adjacency_[e.v].emplace_back(e.u, id);
  }
  parent_.assign(vertex_count, -1);
  parent_edge_.assign(vertex_count, -1);
  depth_.assign(vertex_count, -1);
  dist_root_.assign(vertex_count, 0.0);

  // Iterative DFS from vertex 0; the edge count check above makes any
  // unreached vertex a proof of a cycle elsewhere.
  std::vector<int> stack = {0};
  depth_[0] = 0;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, id] : adjacency_[v]) {
      if (depth_[w] >= 0) continue;
      depth_[w] = depth_[v] + 1;
      parent_[w] = v;
      parent_edge_[w] = id;
      dist_root_[w] = dist_root_[v] + edges_[id].length;
      ++visited;
      stack.push_back(w);
    }
  }
  if (visited != vertex_count)
    throw std::invalid_argument("graph is not connected, so not a tree");
}

Tree Tree::from_instance(const RbpInstance& inst) {
  if (!inst.is_tree)
    throw std::invalid_argument("instance metric is not a tree");
  return Tree(inst.vertex_count, inst.edges);
}

int Tree::lca(int u, int v) const {
  while (depth_[u] > depth_[v]) u = parent_[u];
  while (depth_[v] > depth_[u]) v = parent_[v];
  while (u != v) {
    u = parent_[u];
    v = parent_[v];
  }
  return u;
}

double Tree::distance(int u, int v) const {
  int a = lca(u, v);
  return dist_root_[u] + dist_root_[v] - 2.0 * dist_root_[a];
}

TreePath Tree::path_between(int u, int v) const {
  int a = lca(u, v);
  TreePath path;
  // u up to the meeting point ...
  for (int x = u; x != a; x = parent_[x]) {
    path.vertices.push_back(x);
    path.edge_ids.push_back(parent_edge_[x]);
    path.total_length += edges_[parent_edge_[x]].length;
  }
  path.vertices.push_back(a);
  // ... then down to v, collected in reverse.
  std::vector<int> down_vertices;
  std::vector<int> down_edges;
  for (int x = v; x != a; x = parent_[x]) {
    down_vertices.push_back(x);
    down_edges.push_back(parent_edge_[x]);
    path.total_length += edges_[parent_edge_[x]].length;
  }
  for (size_t i = down_edges.size(); i-- > 0;) {
    path.edge_ids.push_back(down_edges[i]);
    path.vertices.push_back(down_vertices[i]);
  }
  return path;
}

TreePath Tree::path_to_subgraph(int from, const std::vector<char>& in_target) const {
  if (static_cast<int>(in_target.size()) != vertex_count_)
    throw std::invalid_argument("target mask has wrong size");
  int any = -1;
  for (int v = 0; v < vertex_count_; ++v)
    if (in_target[v]) {
      any = v;
      break;
    }
  if (any < 0) throw std::invalid_argument("target subgraph is empty");

  // A connected target has a unique entry vertex: the first target vertex on
  // the path from `from` to an arbitrary target vertex.
  TreePath full = path_between(from, any);
  TreePath path;
  for (size_t t = 0; t < full.vertices.size(); ++t) {
    int v = full.vertices[t];
    path.vertices.push_back(v);
    if (in_target[v]) return path;
    path.edge_ids.push_back(full.edge_ids[t]);
    path.total_length += edges_[full.edge_ids[t]].length;
  }
  throw std::logic_error("path to target never entered the target set");
}

bool Tree::precedes(const Arc& a, const Arc& a_prime) const {
  if (a == a_prime) return false;
  // The witnessing directed path must run tail(a') -> head(a') -> ... ->
  // tail(a) -> head(a); by path uniqueness it is the tree path from
  // tail(a') to head(a) and we only check its first and last hops.
  TreePath p = path_between(a_prime.tail, a.head);
  size_t len = p.vertices.size();
  if (len < 3) return false;  // needs two distinct edges
  return p.vertices[0] == a_prime.tail && p.vertices[1] == a_prime.head &&
         p.vertices[len - 2] == a.tail && p.vertices[len - 1] == a.head;
}

int Tree::edge_between(int u, int v) const {
  for (auto [w, id] : adjacency_[u])
    if (w == v) return id;
  return -1;
}

}  // namespace rbp
