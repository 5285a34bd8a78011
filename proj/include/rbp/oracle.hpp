#pragma once

#include <vector>

#include "rbp/instance.hpp"
#include "rbp/metric.hpp"
#include "rbp/server.hpp"
#include "rbp/tree.hpp"

namespace rbp {

inline constexpr int kDefaultOracleLimit = 14;

struct OracleResult {
  double cost = 0.0;
  ServerTrace trace;
};

// Minimum-cost schedule by shortest-path search over (position, held
// requests, next unread) states.  A request read at its own vertex is
// consumed in place without taking a buffer slot; serving co-located
// requests is free and therefore folded into arrival.  Refuses instances
// with more than `limit` requests.
OracleResult solve_exact_capacity(const RbpInstance& inst,
                                  const DenseMetric& metric, int capacity,
                                  int limit = kDefaultOracleLimit);

// solve_exact_capacity at the instance's own buffer capacity.
OracleResult solve_exact(const RbpInstance& inst, const DenseMetric& metric,
                         int limit = kDefaultOracleLimit);

// Decides whether any schedule with the given capacity can read the whole
// request window [window_begin, window_end) while never standing at
// `forbidden_vertex` from the moment the window's first request is read
// until its last is read.  Movement is restricted to tree edges so passing
// through the vertex counts as standing there.
bool window_avoidance_feasible(const RbpInstance& inst, const Tree& tree,
                               int capacity, int window_begin, int window_end,
                               int forbidden_vertex);

// True when the trace's server stands at `vertex` at some point between
// reading request `window_begin` and request `window_end - 1`, counting
// tree-path pass-throughs of move events.
bool trace_visits_during_window(const RbpInstance& inst, const Tree& tree,
                                const ServerTrace& trace, int window_begin,
                                int window_end, int vertex);

}  // namespace rbp
