#include "rbp/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace rbp {

namespace {

// Uniform draw from [0, 1) built from the top 53 bits of the generator, so
// the value is identical on every platform.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

EmbeddedTree embed_metric(const DenseMetric& metric, uint64_t seed) {
  const int n = metric.n;
  if (n < 1) throw std::invalid_argument("metric must contain a point");

  EmbeddedTree tree;
  tree.seed = seed;
  if (n == 1) {
    tree.vertex_count = 1;
    tree.leaf_of_point = {0};
    tree.level_of_vertex = {0};
    tree.root = 0;
    return tree;
  }

  double min_d = 0.0, max_d = 0.0;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = metric.at(i, j);
      if (d <= 0.0) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "points %d and %d coincide; the embedding needs "
                      "strictly positive distances",
                      i + 1, j + 1);
        throw std::invalid_argument(buf);
      }
      if (first || d < min_d) min_d = d;
      if (first || d > max_d) max_d = d;
      first = false;
    }
  }
  const double sigma = min_d;  // unit of the normalized metric
  const double spread = max_d / sigma;

  // Smallest L with 2^(L-1) >= spread; the root cluster lives at level L.
  int top_level = 1;
  double cap = 1.0;
  while (cap < spread) {
    cap *= 2.0;
    ++top_level;
  }

  std::mt19937_64 rng(seed);
  const double beta = std::exp2(unit_draw(rng));  // random shift in [1, 2)

  // One random order of the points, shared by every level.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<uint64_t>(i + 1));
    std::swap(order[i], order[j]);
  }

  // First point in the shared order within `radius` (in sigma units) of p.
  auto capture = [&](int p, double radius) {
    for (int c : order)
      if (metric.at(c, p) <= radius * sigma) return c;
    throw std::logic_error("capture failed: a point should capture itself");
  };

  auto new_vertex = [&](int level) {
    tree.level_of_vertex.push_back(level);
    return tree.vertex_count++;
  };

  tree.leaf_of_point.assign(n, -1);
  tree.root = new_vertex(top_level);

  // Splits a cluster of points at `level` into sub-clusters of half the
  // radius.  Singleton clusters become leaves immediately.
  std::function<void(const std::vector<int>&, int, int)> split =
      [&](const std::vector<int>& cluster, int level, int vertex) {
        if (cluster.size() == 1) {
          tree.leaf_of_point[cluster[0]] = vertex;
          return;
        }
        if (level <= 0)
          throw std::logic_error(
              "cluster radius shrank below the minimum distance without "
              "separating the points");
        const double child_radius = beta * std::exp2(level - 2);
        std::vector<std::vector<int>> groups;
        std::vector<int> group_center;
        for (int p : cluster) {
          const int c = capture(p, child_radius);
          bool placed = false;
          for (size_t g = 0; g < group_center.size(); ++g) {
            if (group_center[g] == c) {
              groups[g].push_back(p);
              placed = true;
              break;
            }
          }
          if (!placed) {
            group_center.push_back(c);
            groups.push_back({p});
          }
        }
        // Children ordered by their center's position in the shared order.
        std::vector<size_t> by_rank(groups.size());
        for (size_t g = 0; g < groups.size(); ++g) by_rank[g] = g;
        std::vector<int> rank(n, 0);
        for (int i = 0; i < n; ++i) rank[order[i]] = i;
        std::sort(by_rank.begin(), by_rank.end(), [&](size_t a, size_t b) {
          return rank[group_center[a]] < rank[group_center[b]];
        });
        for (size_t g : by_rank) {
          const int child = new_vertex(level - 1);
          tree.edges.push_back(
              EdgeSpec{vertex, child, sigma * std::exp2(level)});
          split(groups[g], level - 1, child);
        }
      };

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  split(all, top_level, tree.root);
  return tree;
}

RbpInstance lift_instance(const RbpInstance& original,
                          const EmbeddedTree& tree) {
  if (static_cast<int>(tree.leaf_of_point.size()) != original.vertex_count)
    throw std::invalid_argument(
        "embedded tree does not cover the instance's vertices");
  RbpInstance lifted;
  lifted.vertex_count = tree.vertex_count;
  lifted.edges = tree.edges;
  lifted.k = original.k;
  lifted.start_vertex = tree.leaf_of_point[original.start_vertex];
  lifted.is_tree = true;
  lifted.requests.reserve(original.requests.size());
  for (int v : original.requests)
    lifted.requests.push_back(tree.leaf_of_point[v]);
  lifted.original_request_count = original.original_request_count;
  return lifted;
}

ServerTrace pull_back_schedule(const ServerTrace& tree_trace,
                               const EmbeddedTree& tree,
                               const DenseMetric& metric, int original_start) {
  std::vector<int> point_of_leaf(tree.vertex_count, -1);
  for (size_t p = 0; p < tree.leaf_of_point.size(); ++p)
    point_of_leaf[tree.leaf_of_point[p]] = static_cast<int>(p);

  ServerTrace pulled;
  int pos = original_start;
  for (const TraceEvent& ev : tree_trace.events) {
    if (ev.kind == EventKind::kMove) {
      const int point = point_of_leaf[ev.to];
      if (point >= 0 && point != pos) {
        pulled.events.push_back(
            TraceEvent::move(pos, point, metric.at(pos, point)));
        pos = point;
      }
    } else {
      pulled.events.push_back(ev);
    }
  }
  refresh_trace_summary(pulled);
  return pulled;
}

}  // namespace rbp
