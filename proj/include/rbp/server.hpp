#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rbp/cover.hpp"
#include "rbp/instance.hpp"
#include "rbp/metric.hpp"
#include "rbp/terminals.hpp"
#include "rbp/tree.hpp"

namespace rbp {

enum class EventKind { kRead, kMove, kServe };

struct TraceEvent {
  EventKind kind = EventKind::kRead;
  int request = -1;     // kRead / kServe
  int from = -1;        // kMove
  int to = -1;          // kMove
  double length = 0.0;  // kMove

  static TraceEvent read(int j) { return {EventKind::kRead, j, -1, -1, 0.0}; }
  static TraceEvent serve(int j) {
    return {EventKind::kServe, j, -1, -1, 0.0};
  }
  static TraceEvent move(int from, int to, double length) {
    return {EventKind::kMove, -1, from, to, length};
  }
};

// Buffer accounting: a request that is read while the server already stands
// at its vertex and is served by the immediately following event passes
// through without ever occupying a buffer slot.
struct ServerTrace {
  std::vector<TraceEvent> events;
  double distance = 0.0;
  int peak_occupancy = 0;
};

struct TraceVerdict {
  bool ok = true;
  size_t event_index = 0;  // first offending event when !ok
  std::string reason;
};

// Result of simulating the cover-walking server: the trace plus, per
// iteration, the number of trace events emitted by its end, and per request
// the index of its serve event.
struct CoverRunResult {
  ServerTrace trace;
  std::vector<size_t> iteration_end;
  std::vector<size_t> serve_event;
};

// Walks each window's terminal path, detouring through the bought edge
// components with closed depth-first tours, reading each window up front and
// serving every buffered request the walk passes.  Total distance is exactly
// sum(path lengths) + 2*sum(bought edge lengths).
CoverRunResult run_cover_server(const RbpInstance& inst, const Tree& tree,
                                const Terminals& terminals,
                                const RequestCover& cover);

// Checks ordering, location, occupancy (with the pass-through exemption
// above), capacity, and distance bookkeeping of an arbitrary trace.
TraceVerdict validate_trace(const RbpInstance& inst, const DenseMetric& metric,
                            const ServerTrace& trace, int capacity);

// Recomputes distance and peak occupancy (pass-through exempt) from events.
void refresh_trace_summary(ServerTrace& trace);

// Cost of serving requests strictly in input order starting from the start
// vertex; an upper bound on any buffered schedule and exact for the forced
// capacity-1 schedule that never holds a request across a move.
double inorder_cost(const RbpInstance& inst, const DenseMetric& metric);

// One event per line: `R <j>` / `M <u> <v> <len>` / `S <j>` with 1-based
// ids, then `dist <real>` and `peak <int>`.
std::string serialize_trace(const ServerTrace& trace);
ServerTrace parse_trace(const std::string& text);

}  // namespace rbp
