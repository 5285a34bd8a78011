#include "rbp/lp_builders.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace rbp {

namespace {

std::string var_name(const char* prefix, int a, int b) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%d_w%d", prefix, a, b);
  return buf;
}

std::vector<char> path_membership(const TreePath& path, int vcount) {
  std::vector<char> member(vcount, 0);
  for (int v : path.vertices) member[v] = 1;
  return member;
}

}  // namespace

BuiltLp build_assignment_lp(const RbpInstance& inst, const Tree& tree,
                            const Terminals& terminals) {
  const WindowPartition windows = partition_windows(inst);
  const int n = inst.request_count();
  const int m = windows.m;
  const int vcount = tree.vertex_count();

  BuiltLp built;
  built.n = n;
  built.m = m;
  built.vertex_count = vcount;
  built.directed = false;
  built.x_var.assign(n, std::vector<int>(m, -1));
  built.y_var.assign(m, {});

  LinearProgram& lp = built.lp;
  for (int j = 0; j < n; ++j)
    for (int i = windows.window_of(j); i < m; ++i)
      built.x_var[j][i] = lp.add_variable(var_name("x", j + 1, i + 1), 0.0);

  // Paths from each request to each window's terminal path; edge variables
  // only where at least one request couples.
  std::vector<std::vector<char>> on_path;
  on_path.reserve(m);
  for (int i = 0; i < m; ++i)
    on_path.push_back(path_membership(terminals.paths[i], vcount));

  std::vector<std::vector<std::vector<int>>> coupling(
      n, std::vector<std::vector<int>>(m));
  for (int j = 0; j < n; ++j) {
    for (int i = windows.window_of(j); i < m; ++i) {
      TreePath path = tree.path_to_subgraph(inst.requests[j], on_path[i]);
      coupling[j][i] = path.edge_ids;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int e : coupling[j][i]) {
        if (!built.y_var[i].count(e))
          built.y_var[i][e] = lp.add_variable(var_name("y", e + 1, i + 1),
                                              tree.edge(e).length);
      }
    }
  }

  // Exactly one unit of service mass per request.  An inequality here would
  // let the solver satisfy the prefix constraint below with duplicate mass on
  // requests whose vertex already lies on a terminal path (zero cost), which
  // breaks the half-mass deadline derivation downstream.
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int i = windows.window_of(j); i < m; ++i)
      terms.emplace_back(built.x_var[j][i], 1.0);
    lp.add_constraint(std::move(terms), Sense::kEq, 1.0);
  }

  const double width = windows.window_size;
  const double k = inst.k;
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j) {
      if (windows.window_of(j) > i) continue;
      for (int ip = windows.window_of(j); ip <= i; ++ip)
        terms.emplace_back(built.x_var[j][ip], 1.0);
    }
    lp.add_constraint(std::move(terms), Sense::kGe, width * (i + 1) - k);
  }

  for (int j = 0; j < n; ++j) {
    for (int i = windows.window_of(j); i < m; ++i) {
      for (int e : coupling[j][i]) {
        lp.add_constraint({{built.y_var[i][e], 1.0}, {built.x_var[j][i], -1.0}},
                          Sense::kGe, 0.0);
      }
    }
  }
  return built;
}

BuiltLp build_interval_lp(const RbpInstance& inst, const Tree& tree,
                          const Terminals& terminals,
                          const ServiceIntervals& intervals) {
  const int n = inst.request_count();
  const int m = terminals.m();
  const int vcount = tree.vertex_count();

  BuiltLp built;
  built.n = n;
  built.m = m;
  built.vertex_count = vcount;
  built.directed = true;
  built.x_var.assign(n, std::vector<int>(m, -1));
  built.y_var.assign(m, {});

  LinearProgram& lp = built.lp;
  for (int j = 0; j < n; ++j)
    for (int i = intervals.release[j]; i <= intervals.deadline[j]; ++i)
      built.x_var[j][i] = lp.add_variable(var_name("x", j + 1, i + 1), 0.0);

  std::vector<std::vector<char>> on_path;
  on_path.reserve(m);
  for (int i = 0; i < m; ++i)
    on_path.push_back(path_membership(terminals.paths[i], vcount));

  // Directed coupling paths; each (edge, window) may appear in one
  // orientation only.
  std::vector<std::vector<std::vector<Arc>>> coupling(
      n, std::vector<std::vector<Arc>>(m));
  std::vector<std::map<int, int>> orientation(m);  // edge id -> arc key
  for (int j = 0; j < n; ++j) {
    for (int i = intervals.release[j]; i <= intervals.deadline[j]; ++i) {
      TreePath path = tree.path_to_subgraph(inst.requests[j], on_path[i]);
      for (size_t step = 0; step + 1 < path.vertices.size(); ++step) {
        Arc a{path.vertices[step], path.vertices[step + 1]};
        const int e = path.edge_ids[step];
        const int key = arc_key(a, vcount);
        auto [it, inserted] = orientation[i].emplace(e, key);
        if (!inserted && it->second != key) {
          char buf[96];
          std::snprintf(buf, sizeof(buf),
                        "edge %d is coupled in both directions in window %d",
                        e + 1, i + 1);
          throw std::logic_error(buf);
        }
        coupling[j][i].push_back(a);
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const Arc& a : coupling[j][i]) {
        const int key = arc_key(a, vcount);
        if (!built.y_var[i].count(key)) {
          const int e = tree.edge_between(a.tail, a.head);
          built.y_var[i][key] = lp.add_variable(
              var_name(("y" + std::to_string(a.tail + 1) + "_").c_str(),
                       a.head + 1, i + 1),
              tree.edge(e).length);
        }
      }
    }
  }

  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int i = intervals.release[j]; i <= intervals.deadline[j]; ++i)
      terms.emplace_back(built.x_var[j][i], 1.0);
    lp.add_constraint(std::move(terms), Sense::kGe, 1.0);
  }
  for (int j = 0; j < n; ++j) {
    for (int i = intervals.release[j]; i <= intervals.deadline[j]; ++i) {
      for (const Arc& a : coupling[j][i]) {
        lp.add_constraint({{built.y_var[i][arc_key(a, vcount)], 1.0},
                           {built.x_var[j][i], -1.0}},
                          Sense::kGe, 0.0);
      }
    }
  }
  return built;
}

LpSolution unpack_solution(const BuiltLp& built, const LpResult& result) {
  LpSolution sol;
  sol.n = built.n;
  sol.m = built.m;
  sol.x.assign(static_cast<size_t>(built.n) * built.m, 0.0);
  sol.y.assign(built.m, {});
  for (int j = 0; j < built.n; ++j)
    for (int i = 0; i < built.m; ++i)
      if (built.x_var[j][i] >= 0)
        sol.x[static_cast<size_t>(j) * built.m + i] =
            result.values[built.x_var[j][i]];
  for (int i = 0; i < built.m; ++i)
    for (const auto& [key, var] : built.y_var[i])
      sol.y[i][key] = result.values[var];
  sol.objective = result.stats.objective;
  sol.dual_bound = result.stats.dual_bound;
  sol.max_residual = result.stats.max_residual;
  return sol;
}

}  // namespace rbp
