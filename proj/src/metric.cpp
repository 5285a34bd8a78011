#include "rbp/metric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rbp/tree.hpp"

namespace rbp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DenseMetric metric_from_instance(const RbpInstance& inst) {
  int n = inst.vertex_count;
  DenseMetric metric;
  metric.n = n;

  if (inst.is_tree) {
    // One DFS per source keeps this O(V^2) instead of Floyd-Warshall.
    Tree tree(inst.vertex_count, inst.edges);
    metric.d.assign(static_cast<size_t>(n) * n, 0.0);
    for (int s = 0; s < n; ++s) {
      std::vector<int> stack = {s};
      std::vector<char> seen(n, 0);
      seen[s] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, id] : tree.neighbors(v)) {
          if (seen[w]) continue;
          seen[w] = 1;
          metric.at(s, w) = metric.at(s, v) + tree.edge(id).length;
          stack.push_back(w);
        }
      }
    }
    return metric;
  }

  metric.d.assign(static_cast<size_t>(n) * n, kInf);
  for (int v = 0; v < n; ++v) metric.at(v, v) = 0.0;
  for (const EdgeSpec& e : inst.edges) {
    metric.at(e.u, e.v) = std::min(metric.at(e.u, e.v), e.length);
    metric.at(e.v, e.u) = std::min(metric.at(e.v, e.u), e.length);
  }
  for (int via = 0; via < n; ++via)
    for (int u = 0; u < n; ++u) {
      double du = metric.at(u, via);
      if (du == kInf) continue;
      for (int v = 0; v < n; ++v) {
        double cand = du + metric.at(via, v);
        if (cand < metric.at(u, v)) metric.at(u, v) = cand;
      }
    }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (metric.at(u, v) == kInf)
        throw std::invalid_argument("graph is disconnected: no path between vertices " +
                                    std::to_string(u + 1) + " and " +
                                    std::to_string(v + 1));
  return metric;
}

void validate_metric(const DenseMetric& metric) {
  int n = metric.n;
  if (n < 1 || static_cast<size_t>(n) * n != metric.d.size())
    throw std::invalid_argument("metric table has inconsistent size");
  const double tol = 1e-9;
  for (int u = 0; u < n; ++u) {
    if (std::abs(metric.at(u, u)) > tol)
      throw std::invalid_argument("metric diagonal entry (" + std::to_string(u + 1) +
                                  "," + std::to_string(u + 1) + ") is not zero");
    for (int v = 0; v < n; ++v) {
      if (!std::isfinite(metric.at(u, v)))
        throw std::invalid_argument("metric entry (" + std::to_string(u + 1) + "," +
                                    std::to_string(v + 1) + ") is not finite");
      if (std::abs(metric.at(u, v) - metric.at(v, u)) > tol)
        throw std::invalid_argument("metric is not symmetric at pair (" +
                                    std::to_string(u + 1) + "," +
                                    std::to_string(v + 1) + ")");
      if (u != v && metric.at(u, v) <= 0)
        throw std::invalid_argument("metric distance between distinct points (" +
                                    std::to_string(u + 1) + "," +
                                    std::to_string(v + 1) + ") is not positive");
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (metric.at(u, w) > metric.at(u, v) + metric.at(v, w) + tol)
          throw std::invalid_argument(
              "triangle inequality violated by points (" + std::to_string(u + 1) +
              "," + std::to_string(v + 1) + "," + std::to_string(w + 1) + ")");
}

DenseMetric parse_metric_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  DenseMetric metric;
  int row = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (!saw_header) {
      int n = 0;
      if (tok != "METRIC" || !(ls >> n) || n < 1)
        throw ParseError(lineno, "expected header 'METRIC <n>'");
      metric.n = n;
      metric.d.assign(static_cast<size_t>(n) * n, 0.0);
      saw_header = true;
      continue;
    }
    if (row >= metric.n) throw ParseError(lineno, "more rows than declared");
    ls.clear();
    ls.str(line);
    for (int col = 0; col < metric.n; ++col) {
      double value;
      if (!(ls >> value))
        throw ParseError(lineno, "row " + std::to_string(row + 1) + " has fewer than " +
                                     std::to_string(metric.n) + " entries");
      metric.at(row, col) = value;
    }
    double extra;
    if (ls >> extra) throw ParseError(lineno, "row has too many entries");
    ++row;
  }
  if (!saw_header) throw ParseError(lineno + 1, "missing header 'METRIC <n>'");
  if (row != metric.n)
    throw ParseError(lineno + 1, "expected " + std::to_string(metric.n) + " rows, got " +
                                     std::to_string(row));
  return metric;
}

std::string serialize_metric(const DenseMetric& metric) {
  std::ostringstream out;
  out << "METRIC " << metric.n << "\n";
  char buf[64];
  for (int u = 0; u < metric.n; ++u) {
    for (int v = 0; v < metric.n; ++v) {
      std::snprintf(buf, sizeof(buf), "%.9g", metric.at(u, v));
      out << (v ? " " : "") << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace rbp
