#include "rbp/cover.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace rbp {

namespace {

bool hits_all(const std::vector<int>& chosen,
              const std::vector<std::pair<int, int>>& intervals,
              const std::pair<int, int>** missed = nullptr) {
  for (const auto& iv : intervals) {
    bool hit = false;
    for (int w : chosen) {
      if (iv.first <= w && w <= iv.second) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      if (missed) *missed = &iv;
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<int> RequestCover::batch_sizes() const {
  std::vector<int> sizes(m, 0);
  for (int i = 0; i < m; ++i) sizes[i] = static_cast<int>(batches[i].size());
  return sizes;
}

std::vector<ArcDemand> compute_arc_demands(const RbpInstance& inst,
                                           const Tree& tree,
                                           const Terminals& terminals,
                                           const ServiceIntervals& intervals) {
  const int vcount = tree.vertex_count();
  std::map<Arc, ArcDemand> by_arc;
  for (int j = 0; j < inst.request_count(); ++j) {
    std::vector<char> target(vcount, 0);
    for (int i = intervals.release[j]; i <= intervals.deadline[j]; ++i)
      for (int v : terminals.paths[i].vertices) target[v] = 1;
    TreePath path = tree.path_to_subgraph(inst.requests[j], target);
    for (size_t step = 0; step + 1 < path.vertices.size(); ++step) {
      Arc a{path.vertices[step], path.vertices[step + 1]};
      ArcDemand& demand = by_arc[a];
      demand.arc = a;
      demand.requests.push_back(j);
      demand.intervals.emplace_back(intervals.release[j],
                                    intervals.deadline[j]);
    }
  }
  std::vector<ArcDemand> out;
  out.reserve(by_arc.size());
  for (auto& [arc, demand] : by_arc) out.push_back(std::move(demand));
  return out;
}

std::vector<int> minimal_hitting_set(
    const std::vector<int>& candidates,
    const std::vector<std::pair<int, int>>& intervals) {
  const std::pair<int, int>* missed = nullptr;
  if (!hits_all(candidates, intervals, &missed)) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "candidate windows miss interval [%d, %d]; the arc "
                  "processing order is broken",
                  missed->first + 1, missed->second + 1);
    throw std::logic_error(buf);
  }
  std::vector<int> chosen(candidates);
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  for (size_t idx = 0; idx < chosen.size();) {
    std::vector<int> trial(chosen);
    trial.erase(trial.begin() + static_cast<long>(idx));
    if (hits_all(trial, intervals)) {
      chosen = std::move(trial);  // keep idx: the next candidate shifted in
    } else {
      ++idx;
    }
  }
  return chosen;
}

int max_disjoint_intervals(std::vector<std::pair<int, int>> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
              return a.second != b.second ? a.second < b.second
                                          : a.first < b.first;
            });
  int count = 0;
  long long frontier = -1;
  for (const auto& iv : intervals) {
    if (iv.first > frontier) {
      ++count;
      frontier = iv.second;
    }
  }
  return count;
}

RequestCover greedy_extension(const RbpInstance& inst, const Tree& tree,
                              const Terminals& terminals,
                              const ServiceIntervals& intervals) {
  const int m = terminals.m();
  const int vcount = tree.vertex_count();

  std::vector<std::vector<char>> on_path(m, std::vector<char>(vcount, 0));
  for (int i = 0; i < m; ++i)
    for (int v : terminals.paths[i].vertices) on_path[i][v] = 1;

  std::vector<ArcDemand> demands =
      compute_arc_demands(inst, tree, terminals, intervals);
  std::map<Arc, const ArcDemand*> demand_of;
  std::set<Arc> unprocessed;
  for (const ArcDemand& d : demands) {
    demand_of[d.arc] = &d;
    unprocessed.insert(d.arc);
  }

  RequestCover cover;
  cover.m = m;
  cover.arcs.assign(m, {});
  cover.edges.assign(m, {});
  cover.batches.assign(m, {});

  std::map<Arc, std::vector<int>> hitting;
  const size_t total_arcs = unprocessed.size();
  size_t processed_count = 0;

  while (!unprocessed.empty()) {
    if (++processed_count > total_arcs)
      throw std::logic_error("arc processing visited more arcs than exist");
    Arc a = *unprocessed.begin();
    // Descend to an arc with no unprocessed arc strictly closer to the
    // terminal paths along a shared directed path.
    for (size_t depth = 0;; ++depth) {
      if (depth > total_arcs)
        throw std::logic_error("arc precedence descent did not terminate");
      Arc next = a;
      bool found = false;
      for (const Arc& candidate : unprocessed) {
        if (candidate == a) continue;
        if (tree.precedes(candidate, a)) {
          next = candidate;
          found = true;
          break;
        }
      }
      if (!found) break;
      a = next;
    }

    // Candidate windows: where the arc's head already sits on a terminal
    // path, plus everything bought for the processed arcs one step closer.
    std::set<int> candidate_set;
    for (int i = 0; i < m; ++i)
      if (on_path[i][a.head]) candidate_set.insert(i);
    for (const auto& [neighbor, edge_id] : tree.neighbors(a.head)) {
      (void)edge_id;
      if (neighbor == a.tail) continue;
      auto it = hitting.find(Arc{a.head, neighbor});
      if (it != hitting.end())
        candidate_set.insert(it->second.begin(), it->second.end());
    }
    std::vector<int> candidates(candidate_set.begin(), candidate_set.end());

    const ArcDemand& demand = *demand_of.at(a);
    std::vector<int> chosen = minimal_hitting_set(candidates, demand.intervals);
    hitting[a] = chosen;
    for (int i : chosen) cover.arcs[i].push_back(a);
    cover.processed.push_back(
        ProcessedArc{a, chosen, max_disjoint_intervals(demand.intervals)});
    unprocessed.erase(a);
  }

  // Undirected edge sets, with terminal-path edges stripped: walking the
  // terminal path already covers them, so buying them adds nothing.
  std::vector<std::set<int>> path_edges(m);
  for (int i = 0; i < m; ++i)
    path_edges[i].insert(terminals.paths[i].edge_ids.begin(),
                         terminals.paths[i].edge_ids.end());
  for (int i = 0; i < m; ++i) {
    std::set<int> ids;
    for (const Arc& a : cover.arcs[i]) {
      const int e = tree.edge_between(a.tail, a.head);
      if (!path_edges[i].count(e)) ids.insert(e);
    }
    cover.edges[i].assign(ids.begin(), ids.end());
  }

  // Vertices touched by each window's bought arcs.
  std::vector<std::set<int>> touched(m);
  for (int i = 0; i < m; ++i) {
    for (const Arc& a : cover.arcs[i]) {
      touched[i].insert(a.tail);
      touched[i].insert(a.head);
    }
  }

  const int n = inst.request_count();
  cover.assign.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    const int vertex = inst.requests[j];
    for (int i = intervals.release[j]; i <= intervals.deadline[j]; ++i) {
      if (on_path[i][vertex] || touched[i].count(vertex)) {
        cover.assign[j] = i;
        break;
      }
    }
    if (cover.assign[j] < 0) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "request %d touches no bought arc or terminal path "
                    "within its interval",
                    j + 1);
      throw std::logic_error(buf);
    }
    cover.batches[cover.assign[j]].push_back(j);
  }
  return cover;
}

double cover_length(const RequestCover& cover, const Tree& tree) {
  double total = 0.0;
  for (const auto& ids : cover.edges)
    for (int e : ids) total += tree.edge(e).length;
  return total;
}

}  // namespace rbp
