#include "rbp/lowerbound.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "rbp/metric.hpp"

namespace rbp {

LowerBoundInstance generate_lower_bound(int k) {
  if (k < 1 || k > 20) {
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "lower-bound family accepts 1 <= k <= 20, got %d", k);
    throw std::invalid_argument(buf);
  }
  LowerBoundInstance family;
  family.k = k;
  family.line_length = 1 << k;
  family.requests.reserve((family.line_length - 1) +
                          static_cast<size_t>(k) * family.line_length);

  // Divide-and-conquer sweep over leaf blocks [lo, hi]: announce the far end
  // of the block first, then recurse left, then right.  A block of one leaf
  // emits the k requests that pin the leaf itself.
  std::function<void(int, int)> emit = [&](int lo, int hi) {
    if (lo == hi) {
      for (int c = 0; c < k; ++c) family.requests.push_back(lo);
      return;
    }
    family.requests.push_back(hi);
    const int mid = lo + (hi - lo) / 2;
    emit(lo, mid);
    emit(mid + 1, hi);
  };
  emit(0, family.line_length - 1);
  return family;
}

RbpInstance lower_bound_to_instance(const LowerBoundInstance& family) {
  RbpInstance inst;
  inst.vertex_count = family.line_length;
  inst.k = family.k;
  inst.start_vertex = 0;
  inst.is_tree = true;
  for (int v = 0; v + 1 < family.line_length; ++v)
    inst.edges.push_back(EdgeSpec{v, v + 1, 1.0});
  inst.requests = family.requests;
  inst.original_request_count = family.request_count();
  return inst;
}

ServerTrace run_lower_bound_server(const LowerBoundInstance& family) {
  const int n = family.request_count();
  ServerTrace trace;
  std::vector<char> held(n, 0);
  int occupancy = 0;
  int next = 0;

  auto visit = [&](int pos) {
    // Serve everything held at this vertex, oldest first.
    for (int j = 0; j < n; ++j) {
      if (held[j] && family.requests[j] == pos) {
        held[j] = 0;
        --occupancy;
        trace.events.push_back(TraceEvent::serve(j));
      }
    }
    // Drain the input: requests at this vertex pass straight through the
    // server, others are buffered until the buffer is full.
    while (next < n) {
      if (family.requests[next] == pos) {
        trace.events.push_back(TraceEvent::read(next));
        trace.events.push_back(TraceEvent::serve(next));
        ++next;
      } else if (occupancy < family.k) {
        trace.events.push_back(TraceEvent::read(next));
        held[next] = 1;
        ++occupancy;
        ++next;
      } else {
        break;
      }
    }
  };

  visit(0);
  for (int pos = 1; pos < family.line_length; ++pos) {
    trace.events.push_back(TraceEvent::move(pos - 1, pos, 1.0));
    visit(pos);
  }

  if (next < n || occupancy != 0)
    throw std::logic_error(
        "single-sweep schedule failed to serve the whole family");
  refresh_trace_summary(trace);
  return trace;
}

GapReport gap_report(int k, int oracle_limit) {
  const LowerBoundInstance family = generate_lower_bound(k);
  GapReport report;
  report.k = k;
  report.reduced_capacity = std::max(1, k / 4);
  report.request_count = family.request_count();

  const ServerTrace sweep = run_lower_bound_server(family);
  if (family.request_count() <= oracle_limit) {
    const RbpInstance inst = lower_bound_to_instance(family);
    const DenseMetric metric = metric_from_instance(inst);
    report.cost_full = solve_exact_capacity(inst, metric, k, oracle_limit).cost;
    report.full_method = "exact search";
  } else {
    report.cost_full = sweep.distance;
    report.full_method = "single-sweep schedule (cost matches the line span)";
  }

  if (family.request_count() <= oracle_limit) {
    const RbpInstance inst = lower_bound_to_instance(family);
    const DenseMetric metric = metric_from_instance(inst);
    report.cost_reduced =
        solve_exact_capacity(inst, metric, report.reduced_capacity,
                             oracle_limit)
            .cost;
    report.reduced_method = "exact search";
  } else {
    // In-order walk: serve requests in arrival order; an upper-bound
    // surrogate for the reduced-buffer cost on instances too large for the
    // exact search.
    double total = 0.0;
    int pos = 0;
    for (int r : family.requests) {
      total += std::abs(r - pos);
      pos = r;
    }
    report.cost_reduced = total;
    report.reduced_method = "in-order walk (upper-bound surrogate)";
  }

  report.ratio =
      report.cost_full > 0.0 ? report.cost_reduced / report.cost_full : 0.0;
  return report;
}

}  // namespace rbp
