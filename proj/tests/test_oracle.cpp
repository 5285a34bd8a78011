#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "rbp/lowerbound.hpp"
#include "rbp/metric.hpp"
#include "rbp/oracle.hpp"
#include "rbp/server.hpp"
#include "test_util.hpp"

using rbp::DenseMetric;
using rbp::OracleResult;
using rbp::RbpInstance;
using rbp::ServerTrace;
using rbp::TraceEvent;
using rbp::Tree;

namespace {

RbpInstance line_instance(int vertex_count, std::vector<int> requests,
                          int k = 1, int start = 0) {
  RbpInstance inst;
  inst.vertex_count = vertex_count;
  for (int v = 0; v + 1 < vertex_count; ++v)
    inst.edges.push_back({v, v + 1, 1.0});
  inst.requests = std::move(requests);
  inst.k = k;
  inst.start_vertex = start;
  inst.original_request_count = inst.request_count();
  return inst;
}

}  // namespace

TEST_CASE("exact search agrees with serve-order enumeration") {
  std::mt19937 rng(915237);
  int checked = 0;
  while (checked < 120) {
    const RbpInstance inst =
        rbp_test::random_tree_instance(rng, /*max_vertices=*/5,
                                       /*k=*/1 + static_cast<int>(rng() % 3),
                                       /*max_requests=*/7);
    const DenseMetric metric = rbp::metric_from_instance(inst);

    const OracleResult exact =
        rbp::solve_exact_capacity(inst, metric, inst.k);
    const double enumerated =
        rbp_test::permutation_optimum(inst, metric, inst.k);
    CHECK(exact.cost == doctest::Approx(enumerated).epsilon(1e-9));

    const rbp::TraceVerdict verdict =
        rbp::validate_trace(inst, metric, exact.trace, inst.k);
    INFO(verdict.reason);
    CHECK(verdict.ok);
    CHECK(exact.trace.distance == doctest::Approx(exact.cost));

    // More room never hurts.
    const OracleResult looser =
        rbp::solve_exact_capacity(inst, metric, inst.k + 1);
    CHECK(looser.cost <= exact.cost + 1e-9);

    // The forced in-order schedule is always available.
    CHECK(exact.cost <= rbp::inorder_cost(inst, metric) + 1e-9);
    ++checked;
  }
}

TEST_CASE("alternating star requests collapse under enough buffer room") {
  // Star with center 0 and leaves 1, 2; requests alternate 1,2,1,2,1 from
  // start 1.  Requests read at the server's own vertex are consumed on the
  // spot, so only the leaf-2 requests ever need buffer slots.
  RbpInstance inst;
  inst.vertex_count = 3;
  inst.edges = {{0, 1, 1.0}, {0, 2, 1.0}};
  inst.requests = {1, 2, 1, 2, 1};
  inst.k = 1;
  inst.start_vertex = 1;
  inst.original_request_count = 5;
  const DenseMetric metric = rbp::metric_from_instance(inst);

  // With two slots both leaf-2 requests ride along: one trip, cost 2.
  const OracleResult tight = rbp::solve_exact_capacity(inst, metric, 2);
  CHECK(tight.cost == doctest::Approx(2.0));

  // One slot forces a round trip: out to serve the first held request,
  // back to finish at leaf 1.
  const OracleResult forced = rbp::solve_exact_capacity(inst, metric, 1);
  CHECK(forced.cost == doctest::Approx(4.0));
  CHECK(rbp::inorder_cost(inst, metric) == doctest::Approx(8.0));
}

TEST_CASE("a single request costs its distance from the start") {
  const RbpInstance inst = line_instance(4, {3});
  const DenseMetric metric = rbp::metric_from_instance(inst);
  const OracleResult result = rbp::solve_exact(inst, metric);
  CHECK(result.cost == doctest::Approx(3.0));
  REQUIRE(result.trace.events.size() >= 2);
  CHECK(result.trace.events.back().kind == rbp::EventKind::kServe);
  CHECK(rbp::validate_trace(inst, metric, result.trace, inst.k).ok);
}

TEST_CASE("the search refuses oversized request sequences") {
  const RbpInstance inst = line_instance(2, std::vector<int>(15, 1));
  const DenseMetric metric = rbp::metric_from_instance(inst);
  CHECK_THROWS_WITH_AS(rbp::solve_exact(inst, metric),
                       doctest::Contains("exceed"), std::invalid_argument);
  CHECK_NOTHROW(rbp::solve_exact(inst, metric, /*limit=*/15));
}

TEST_CASE("adversarial family at its design capacity") {
  const rbp::LowerBoundInstance family = rbp::generate_lower_bound(2);
  const RbpInstance inst = rbp::lower_bound_to_instance(family);
  const DenseMetric metric = rbp::metric_from_instance(inst);
  const OracleResult result = rbp::solve_exact_capacity(inst, metric, 2);
  CHECK(result.cost == doctest::Approx(3.0));
}

TEST_CASE("window avoidance on a single edge") {
  // Three requests at the far end of one edge form the whole window.  A
  // capacity-1 server must stand at their vertex inside the window; with
  // room for all three it can wait out the window and serve afterwards.
  RbpInstance inst;
  inst.vertex_count = 2;
  inst.edges = {{0, 1, 1.0}};
  inst.requests = {0, 0, 0};
  inst.k = 1;
  inst.start_vertex = 1;
  inst.original_request_count = 3;
  const Tree tree = Tree::from_instance(inst);

  CHECK(!rbp::window_avoidance_feasible(inst, tree, 1, 0, 3, 0));
  CHECK(rbp::window_avoidance_feasible(inst, tree, 3, 0, 3, 0));
  // The constraint opens at the window's first read, so the server may
  // reposition off the start vertex beforehand and consume everything at
  // the requests' own vertex.
  CHECK(rbp::window_avoidance_feasible(inst, tree, 1, 0, 3, 1));
}

TEST_CASE("window visits are detected in traces") {
  const RbpInstance inst = line_instance(3, {2, 0, 2});
  const Tree tree = Tree::from_instance(inst);

  SUBCASE("standing at the vertex while reading") {
    ServerTrace trace;
    trace.events = {
        TraceEvent::read(0),
        TraceEvent::move(0, 1, 1.0),
        TraceEvent::move(1, 2, 1.0),
        TraceEvent::serve(0),
        TraceEvent::read(1),
        TraceEvent::read(2),
        TraceEvent::serve(2),
        TraceEvent::move(2, 1, 1.0),
        TraceEvent::move(1, 0, 1.0),
        TraceEvent::serve(1),
    };
    rbp::refresh_trace_summary(trace);
    CHECK(rbp::trace_visits_during_window(inst, tree, trace, 0, 3, 2));
    CHECK(rbp::trace_visits_during_window(inst, tree, trace, 1, 3, 2));
    // Vertex 0 is only revisited after the last read.
    CHECK(!rbp::trace_visits_during_window(inst, tree, trace, 1, 3, 0));
  }

  SUBCASE("passing through the vertex counts") {
    ServerTrace trace;
    trace.events = {
        TraceEvent::read(0),
        TraceEvent::read(1),
        TraceEvent::serve(1),
        TraceEvent::move(0, 2, 2.0),  // passes through vertex 1
        TraceEvent::serve(0),
        TraceEvent::read(2),
        TraceEvent::serve(2),
    };
    rbp::refresh_trace_summary(trace);
    CHECK(rbp::trace_visits_during_window(inst, tree, trace, 0, 3, 1));
  }

  SUBCASE("the starting position counts for the opening window") {
    ServerTrace trace;
    trace.events = {TraceEvent::read(0)};
    rbp::refresh_trace_summary(trace);
    CHECK(rbp::trace_visits_during_window(inst, tree, trace, 0, 1, 0));
    CHECK(!rbp::trace_visits_during_window(inst, tree, trace, 0, 1, 1));
  }
}
