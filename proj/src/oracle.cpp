#include "rbp/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rbp {

namespace {

struct SearchState {
  int pos;
  unsigned mask;  // read-but-unserved requests
  int next;       // requests read so far
};

struct StateCodec {
  int n;
  int vcount;
  uint64_t encode(const SearchState& s) const {
    return ((static_cast<uint64_t>(s.next) << n) | s.mask) *
               static_cast<uint64_t>(vcount) +
           static_cast<uint64_t>(s.pos);
  }
};

// Free actions applied until fixpoint: serve any held request standing at
// the server's vertex, then consume input requests that sit exactly at the
// server's vertex (they never touch the buffer).  Optionally records the
// implied trace events.
SearchState settle(const RbpInstance& inst, SearchState s,
                   std::vector<TraceEvent>* events) {
  for (int j = 0; j < inst.request_count(); ++j) {
    if ((s.mask >> j) & 1u) {
      if (inst.requests[j] == s.pos) {
        s.mask &= ~(1u << j);
        if (events) events->push_back(TraceEvent::serve(j));
      }
    }
  }
  while (s.next < inst.request_count() && inst.requests[s.next] == s.pos) {
    if (events) {
      events->push_back(TraceEvent::read(s.next));
      events->push_back(TraceEvent::serve(s.next));
    }
    ++s.next;
  }
  return s;
}

}  // namespace

OracleResult solve_exact_capacity(const RbpInstance& inst,
                                  const DenseMetric& metric, int capacity,
                                  int limit) {
  const int n = inst.request_count();
  if (capacity < 1)
    throw std::invalid_argument("buffer capacity must be at least 1");
  if (n > limit) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "exact search refused: %d requests exceed the limit of %d "
                  "(the state space is exponential in the request count)",
                  n, limit);
    throw std::invalid_argument(buf);
  }
  if (metric.n != inst.vertex_count)
    throw std::invalid_argument("metric size does not match the instance");

  const StateCodec codec{n, inst.vertex_count};
  const SearchState start =
      settle(inst, SearchState{inst.start_vertex, 0u, 0}, nullptr);

  // Dijkstra over settled states; reads are free, moves cost the metric
  // distance.  Actions: -1 = read next request, otherwise move to vertex.
  std::unordered_map<uint64_t, double> best;
  std::unordered_map<uint64_t, std::pair<uint64_t, int>> parent;
  using QueueItem = std::pair<double, uint64_t>;
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
  std::unordered_map<uint64_t, SearchState> decode;

  const uint64_t start_key = codec.encode(start);
  best[start_key] = 0.0;
  decode[start_key] = start;
  queue.push({0.0, start_key});

  uint64_t goal_key = 0;
  bool found = false;
  while (!queue.empty()) {
    const auto [cost, key] = queue.top();
    queue.pop();
    auto it = best.find(key);
    if (it == best.end() || cost > it->second) continue;
    const SearchState s = decode.at(key);
    if (s.mask == 0u && s.next == n) {
      goal_key = key;
      found = true;
      break;
    }

    auto relax = [&](const SearchState& raw, double step, int action) {
      const SearchState t = settle(inst, raw, nullptr);
      const uint64_t tkey = codec.encode(t);
      const double total = cost + step;
      auto bit = best.find(tkey);
      if (bit == best.end() || total < bit->second - 1e-15) {
        best[tkey] = total;
        decode[tkey] = t;
        parent[tkey] = {key, action};
        queue.push({total, tkey});
      }
    };

    if (s.next < n &&
        __builtin_popcount(s.mask) < capacity) {
      relax(SearchState{s.pos, s.mask | (1u << s.next), s.next + 1}, 0.0, -1);
    }
    std::set<int> targets;
    for (int j = 0; j < n; ++j)
      if ((s.mask >> j) & 1u) targets.insert(inst.requests[j]);
    if (s.next < n) targets.insert(inst.requests[s.next]);
    for (int t : targets) {
      if (t == s.pos) continue;
      relax(SearchState{t, s.mask, s.next}, metric.at(s.pos, t), t);
    }
  }
  if (!found)
    throw std::logic_error("exact search exhausted its states without "
                           "serving everything");

  // Replay the parent chain to rebuild the schedule.
  std::vector<int> actions;
  for (uint64_t key = goal_key; key != start_key;) {
    const auto& [prev, action] = parent.at(key);
    actions.push_back(action);
    key = prev;
  }
  std::reverse(actions.begin(), actions.end());

  OracleResult result;
  SearchState s{inst.start_vertex, 0u, 0};
  s = settle(inst, s, &result.trace.events);
  for (int action : actions) {
    if (action < 0) {
      result.trace.events.push_back(TraceEvent::read(s.next));
      s.mask |= 1u << s.next;
      ++s.next;
    } else {
      result.trace.events.push_back(
          TraceEvent::move(s.pos, action, metric.at(s.pos, action)));
      s.pos = action;
    }
    s = settle(inst, s, &result.trace.events);
  }
  refresh_trace_summary(result.trace);
  result.cost = best.at(goal_key);
  return result;
}

OracleResult solve_exact(const RbpInstance& inst, const DenseMetric& metric,
                         int limit) {
  return solve_exact_capacity(inst, metric, inst.k, limit);
}

bool window_avoidance_feasible(const RbpInstance& inst, const Tree& tree,
                               int capacity, int window_begin, int window_end,
                               int forbidden_vertex) {
  const int n = inst.request_count();
  if (n > 24)
    throw std::invalid_argument(
        "window avoidance search handles at most 24 requests");
  const StateCodec codec{n, tree.vertex_count()};

  // The forbidden window is "open" from the moment request window_begin is
  // read until request window_end - 1 is read; standing at the forbidden
  // vertex in between (including at those two reads) is disallowed.
  auto read_allowed = [&](int j, int pos) {
    return !(window_begin <= j && j < window_end && pos == forbidden_vertex);
  };
  auto move_allowed = [&](int to, int next) {
    return !(to == forbidden_vertex && next >= window_begin + 1 &&
             next <= window_end - 1);
  };
  auto serve_colocated = [&](SearchState s) {
    for (int j = 0; j < n; ++j)
      if (((s.mask >> j) & 1u) && inst.requests[j] == s.pos)
        s.mask &= ~(1u << j);
    return s;
  };

  std::unordered_set<uint64_t> seen;
  std::vector<SearchState> stack;
  const SearchState start =
      serve_colocated(SearchState{inst.start_vertex, 0u, 0});
  stack.push_back(start);
  seen.insert(codec.encode(start));

  while (!stack.empty()) {
    const SearchState s = stack.back();
    stack.pop_back();
    if (s.next >= window_end) return true;

    auto push = [&](SearchState raw) {
      const SearchState t = serve_colocated(raw);
      if (seen.insert(codec.encode(t)).second) stack.push_back(t);
    };

    if (s.next < n && read_allowed(s.next, s.pos)) {
      if (inst.requests[s.next] == s.pos) {
        push(SearchState{s.pos, s.mask, s.next + 1});  // consume in place
      } else if (__builtin_popcount(s.mask) < capacity) {
        push(SearchState{s.pos, s.mask | (1u << s.next), s.next + 1});
      }
    }
    for (const auto& [neighbor, edge_id] : tree.neighbors(s.pos)) {
      (void)edge_id;
      if (move_allowed(neighbor, s.next))
        push(SearchState{neighbor, s.mask, s.next});
    }
  }
  return false;
}

bool trace_visits_during_window(const RbpInstance& inst, const Tree& tree,
                                const ServerTrace& trace, int window_begin,
                                int window_end, int vertex) {
  int pos = inst.start_vertex;
  int next = 0;
  for (const TraceEvent& ev : trace.events) {
    switch (ev.kind) {
      case EventKind::kRead:
        if (window_begin <= ev.request && ev.request < window_end &&
            pos == vertex)
          return true;
        ++next;
        break;
      case EventKind::kMove: {
        const bool open =
            next >= window_begin + 1 && next <= window_end - 1;
        if (open && tree.path_between(ev.from, ev.to).contains_vertex(vertex))
          return true;
        pos = ev.to;
        break;
      }
      case EventKind::kServe:
        break;
    }
  }
  return false;
}

}  // namespace rbp
