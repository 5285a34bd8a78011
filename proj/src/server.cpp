#include "rbp/server.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rbp {

namespace {

std::string format_msg(const char* fmt, ...) {
  char buf[192];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

struct CoverSim {
  const RbpInstance& inst;
  const Tree& tree;
  CoverRunResult out;
  std::map<int, std::vector<int>> buffered;  // vertex -> request ids
  std::vector<char> served;
  int pos;

  CoverSim(const RbpInstance& instance, const Tree& tree_in)
      : inst(instance),
        tree(tree_in),
        served(instance.request_count(), 0),
        pos(instance.start_vertex) {
    out.serve_event.assign(instance.request_count(), 0);
  }

  void serve_here() {
    auto it = buffered.find(pos);
    if (it == buffered.end()) return;
    for (int j : it->second) {
      out.serve_event[j] = out.trace.events.size();
      out.trace.events.push_back(TraceEvent::serve(j));
      served[j] = 1;
    }
    buffered.erase(it);
  }

  void move_edge(int to, double length) {
    out.trace.events.push_back(TraceEvent::move(pos, to, length));
    out.trace.distance += length;
    pos = to;
    serve_here();
  }

  void read_window(int window, const WindowPartition& windows) {
    for (int j = windows.window_begin(window); j < windows.window_end(window);
         ++j) {
      out.trace.events.push_back(TraceEvent::read(j));
      if (inst.requests[j] == pos) {
        out.serve_event[j] = out.trace.events.size();
        out.trace.events.push_back(TraceEvent::serve(j));
        served[j] = 1;
      } else {
        buffered[inst.requests[j]].push_back(j);
      }
    }
  }

  // Closed depth-first tour of the bought component hanging off `anchor`,
  // taking each edge down and back up once.
  void tour(int anchor, const std::vector<std::vector<std::pair<int, int>>>& adj,
            std::vector<char>& edge_done) {
    for (const auto& [neighbor, edge_id] : adj[anchor]) {
      if (edge_done[edge_id]) continue;
      edge_done[edge_id] = 1;
      const double len = tree.edge(edge_id).length;
      move_edge(neighbor, len);
      tour(neighbor, adj, edge_done);
      move_edge(anchor, len);
    }
  }
};

}  // namespace

CoverRunResult run_cover_server(const RbpInstance& inst, const Tree& tree,
                                const Terminals& terminals,
                                const RequestCover& cover) {
  const WindowPartition windows = partition_windows(inst);
  const int m = windows.m;
  const int vcount = tree.vertex_count();

  CoverSim sim(inst, tree);
  sim.out.iteration_end.reserve(m);

  for (int i = 0; i < m; ++i) {
    const TreePath& path = terminals.paths[i];

    // Bought-edge adjacency for this window, neighbors in ascending order.
    std::vector<std::vector<std::pair<int, int>>> adj(vcount);
    for (int e : cover.edges[i]) {
      const EdgeSpec& spec = tree.edge(e);
      adj[spec.u].emplace_back(spec.v, e);
      adj[spec.v].emplace_back(spec.u, e);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    // Every bought edge must hang off the terminal path.
    {
      std::vector<char> seen(vcount, 0);
      std::vector<int> queue(path.vertices);
      for (int v : queue) seen[v] = 1;
      while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        for (const auto& [u, e] : adj[v]) {
          (void)e;
          if (!seen[u]) {
            seen[u] = 1;
            queue.push_back(u);
          }
        }
      }
      for (int e : cover.edges[i]) {
        const EdgeSpec& spec = tree.edge(e);
        if (!seen[spec.u] || !seen[spec.v])
          throw std::invalid_argument(format_msg(
              "window %d: bought edge %d-%d is disconnected from the "
              "terminal path",
              i + 1, spec.u + 1, spec.v + 1));
      }
    }

    if (sim.pos != path.vertices.front())
      throw std::logic_error("terminal paths do not chain up");

    sim.read_window(i, windows);

    std::vector<char> edge_done(tree.edge_count(), 0);
    sim.serve_here();
    sim.tour(path.vertices.front(), adj, edge_done);
    for (size_t step = 1; step < path.vertices.size(); ++step) {
      const int to = path.vertices[step];
      sim.move_edge(to, tree.edge(path.edge_ids[step - 1]).length);
      sim.tour(to, adj, edge_done);
    }

    sim.out.iteration_end.push_back(sim.out.trace.events.size());
  }

  for (int j = 0; j < inst.request_count(); ++j)
    if (!sim.served[j])
      throw std::logic_error(
          format_msg("request %d was never served by the cover walk", j + 1));

  refresh_trace_summary(sim.out.trace);
  return sim.out;
}

void refresh_trace_summary(ServerTrace& trace) {
  double dist = 0.0;
  int occ = 0;
  int peak = 0;
  for (size_t idx = 0; idx < trace.events.size(); ++idx) {
    const TraceEvent& ev = trace.events[idx];
    switch (ev.kind) {
      case EventKind::kRead: {
        ++occ;
        const bool pass_through = idx + 1 < trace.events.size() &&
                                  trace.events[idx + 1].kind ==
                                      EventKind::kServe &&
                                  trace.events[idx + 1].request == ev.request;
        if (!pass_through) peak = std::max(peak, occ);
        break;
      }
      case EventKind::kServe:
        --occ;
        break;
      case EventKind::kMove:
        dist += ev.length;
        break;
    }
  }
  trace.distance = dist;
  trace.peak_occupancy = peak;
}

TraceVerdict validate_trace(const RbpInstance& inst, const DenseMetric& metric,
                            const ServerTrace& trace, int capacity) {
  TraceVerdict verdict;
  auto fail = [&](size_t idx, std::string reason) {
    verdict.ok = false;
    verdict.event_index = idx;
    verdict.reason = std::move(reason);
    return verdict;
  };

  const int n = inst.request_count();
  std::vector<char> read(n, 0), served(n, 0);
  int pos = inst.start_vertex;
  int next_read = 0;
  int occ = 0;
  int peak = 0;
  double dist = 0.0;

  for (size_t idx = 0; idx < trace.events.size(); ++idx) {
    const TraceEvent& ev = trace.events[idx];
    switch (ev.kind) {
      case EventKind::kRead: {
        if (ev.request != next_read)
          return fail(idx, format_msg("read of request %d out of order "
                                      "(expected request %d)",
                                      ev.request + 1, next_read + 1));
        read[ev.request] = 1;
        ++next_read;
        ++occ;
        const bool pass_through = idx + 1 < trace.events.size() &&
                                  trace.events[idx + 1].kind ==
                                      EventKind::kServe &&
                                  trace.events[idx + 1].request == ev.request;
        if (!pass_through) {
          peak = std::max(peak, occ);
          if (occ > capacity)
            return fail(idx, format_msg("buffer holds %d requests, capacity "
                                        "is %d",
                                        occ, capacity));
        }
        break;
      }
      case EventKind::kServe: {
        const int j = ev.request;
        if (j < 0 || j >= n)
          return fail(idx, format_msg("serve of unknown request %d", j + 1));
        if (!read[j])
          return fail(idx,
                      format_msg("request %d served before read", j + 1));
        if (served[j])
          return fail(idx, format_msg("request %d served twice", j + 1));
        if (inst.requests[j] != pos)
          return fail(idx, format_msg("request %d served at vertex %d but "
                                      "lives at vertex %d",
                                      j + 1, pos + 1, inst.requests[j] + 1));
        served[j] = 1;
        --occ;
        break;
      }
      case EventKind::kMove: {
        if (ev.from != pos)
          return fail(idx, format_msg("move starts at vertex %d but the "
                                      "server is at vertex %d",
                                      ev.from + 1, pos + 1));
        if (ev.to < 0 || ev.to >= metric.n)
          return fail(idx, format_msg("move to unknown vertex %d", ev.to + 1));
        const double actual = metric.at(ev.from, ev.to);
        if (std::fabs(actual - ev.length) > 1e-6 * std::max(1.0, actual))
          return fail(idx, format_msg("move length %.9g disagrees with the "
                                      "metric distance %.9g",
                                      ev.length, actual));
        dist += actual;
        pos = ev.to;
        break;
      }
    }
  }

  const size_t end = trace.events.size();
  if (next_read != n)
    return fail(end, format_msg("only %d of %d requests were read", next_read,
                                n));
  for (int j = 0; j < n; ++j)
    if (!served[j])
      return fail(end, format_msg("request %d was never served", j + 1));
  if (std::fabs(dist - trace.distance) > 1e-6 * std::max(1.0, dist))
    return fail(end, format_msg("distance summary %.9g disagrees with "
                                "recomputed %.9g",
                                trace.distance, dist));
  if (peak != trace.peak_occupancy)
    return fail(end, format_msg("peak summary %d disagrees with recomputed %d",
                                trace.peak_occupancy, peak));
  verdict.reason = "trace is valid";
  return verdict;
}

double inorder_cost(const RbpInstance& inst, const DenseMetric& metric) {
  double total = 0.0;
  int pos = inst.start_vertex;
  for (int vertex : inst.requests) {
    total += metric.at(pos, vertex);
    pos = vertex;
  }
  return total;
}

std::string serialize_trace(const ServerTrace& trace) {
  std::ostringstream out;
  char buf[96];
  for (const TraceEvent& ev : trace.events) {
    switch (ev.kind) {
      case EventKind::kRead:
        out << "R " << ev.request + 1 << '\n';
        break;
      case EventKind::kServe:
        out << "S " << ev.request + 1 << '\n';
        break;
      case EventKind::kMove:
        std::snprintf(buf, sizeof(buf), "M %d %d %.9g", ev.from + 1,
                      ev.to + 1, ev.length);
        out << buf << '\n';
        break;
    }
  }
  std::snprintf(buf, sizeof(buf), "dist %.9g", trace.distance);
  out << buf << '\n';
  out << "peak " << trace.peak_occupancy << '\n';
  return out.str();
}

ServerTrace parse_trace(const std::string& text) {
  ServerTrace trace;
  bool have_dist = false;
  bool have_peak = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    auto want_int = [&](const char* what) {
      long long value = 0;
      if (!(ls >> value))
        throw ParseError(line_no,
                         format_msg("expected %s after '%s'", what,
                                    tag.c_str()));
      return value;
    };
    if (tag == "R" || tag == "S") {
      const long long j = want_int("a request id");
      if (j < 1) throw ParseError(line_no, "request ids start at 1");
      TraceEvent ev = tag == "R" ? TraceEvent::read(static_cast<int>(j - 1))
                                 : TraceEvent::serve(static_cast<int>(j - 1));
      trace.events.push_back(ev);
    } else if (tag == "M") {
      const long long u = want_int("a vertex id");
      const long long v = want_int("a vertex id");
      double len = 0.0;
      if (!(ls >> len))
        throw ParseError(line_no, "expected a length after 'M <u> <v>'");
      if (u < 1 || v < 1) throw ParseError(line_no, "vertex ids start at 1");
      trace.events.push_back(TraceEvent::move(static_cast<int>(u - 1),
                                              static_cast<int>(v - 1), len));
    } else if (tag == "dist") {
      if (!(ls >> trace.distance))
        throw ParseError(line_no, "expected a value after 'dist'");
      have_dist = true;
    } else if (tag == "peak") {
      trace.peak_occupancy = static_cast<int>(want_int("a value"));
      have_peak = true;
    } else {
      throw ParseError(line_no,
                       format_msg("unknown trace line '%s'", tag.c_str()));
    }
    std::string extra;
    if (ls >> extra)
      throw ParseError(line_no,
                       format_msg("unexpected trailing '%s'", extra.c_str()));
  }
  if (!have_dist || !have_peak) refresh_trace_summary(trace);
  return trace;
}

}  // namespace rbp
