#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "rbp/lowerbound.hpp"
#include "rbp/metric.hpp"
#include "rbp/server.hpp"

using rbp::GapReport;
using rbp::LowerBoundInstance;
using rbp::RbpInstance;
using rbp::ServerTrace;

TEST_CASE("the family enumerates segment midpoints before their halves") {
  SUBCASE("k = 1") {
    const LowerBoundInstance family = rbp::generate_lower_bound(1);
    CHECK(family.line_length == 2);
    CHECK(family.requests == std::vector<int>{1, 0, 1});
  }
  SUBCASE("k = 2") {
    const LowerBoundInstance family = rbp::generate_lower_bound(2);
    CHECK(family.line_length == 4);
    CHECK(family.requests ==
          std::vector<int>{3, 1, 0, 0, 1, 1, 3, 2, 2, 3, 3});
  }
  SUBCASE("request counts follow (2^k - 1) + k 2^k") {
    for (int k = 1; k <= 6; ++k) {
      const LowerBoundInstance family = rbp::generate_lower_bound(k);
      const int leaves = 1 << k;
      CHECK(family.request_count() == (leaves - 1) + k * leaves);
      CHECK(family.line_length == leaves);
    }
  }
  SUBCASE("out-of-range sizes are refused") {
    CHECK_THROWS_AS(rbp::generate_lower_bound(0), std::invalid_argument);
    CHECK_THROWS_AS(rbp::generate_lower_bound(21), std::invalid_argument);
  }
}

TEST_CASE("the single sweep clears the family in one pass") {
  for (int k = 1; k <= 6; ++k) {
    const LowerBoundInstance family = rbp::generate_lower_bound(k);
    const ServerTrace trace = rbp::run_lower_bound_server(family);
    CHECK(trace.distance == doctest::Approx((1 << k) - 1.0));
    CHECK(trace.peak_occupancy <= k);

    const RbpInstance inst = rbp::lower_bound_to_instance(family);
    const rbp::DenseMetric metric = rbp::metric_from_instance(inst);
    const rbp::TraceVerdict verdict =
        rbp::validate_trace(inst, metric, trace, k);
    INFO("k=" << k << ": " << verdict.reason);
    CHECK(verdict.ok);
  }
}

TEST_CASE("the instance conversion yields a unit line from the left end") {
  const LowerBoundInstance family = rbp::generate_lower_bound(2);
  const RbpInstance inst = rbp::lower_bound_to_instance(family);
  CHECK(inst.vertex_count == 4);
  CHECK(inst.k == 2);
  CHECK(inst.start_vertex == 0);
  CHECK(inst.is_tree);
  REQUIRE(inst.edges.size() == 3);
  for (const auto& e : inst.edges) CHECK(e.length == doctest::Approx(1.0));
  CHECK(inst.requests == family.requests);

  // Serving strictly in arrival order zig-zags across the line.
  const rbp::DenseMetric metric = rbp::metric_from_instance(inst);
  CHECK(rbp::inorder_cost(inst, metric) == doctest::Approx(11.0));
}

TEST_CASE("shrinking the buffer blows up the travel cost") {
  SUBCASE("small families are settled exactly") {
    const GapReport report = rbp::gap_report(2);
    CHECK(report.reduced_capacity == 1);
    CHECK(report.cost_full == doctest::Approx(3.0));
    CHECK(report.cost_reduced == doctest::Approx(7.0));
    CHECK(report.ratio == doctest::Approx(7.0 / 3.0));
    CHECK(report.full_method.find("exact") != std::string::npos);
    CHECK(report.reduced_method.find("exact") != std::string::npos);
  }
  SUBCASE("large families fall back to the labelled in-order surrogate") {
    const GapReport report = rbp::gap_report(4);
    CHECK(report.reduced_capacity == 1);
    CHECK(report.request_count == 15 + 4 * 16);
    CHECK(report.cost_full == doctest::Approx(15.0));
    CHECK(report.cost_reduced == doctest::Approx(79.0));
    CHECK(report.ratio >= 1.0);
    CHECK(report.full_method.find("single-sweep") != std::string::npos);
    CHECK(report.reduced_method.find("in-order") != std::string::npos);
  }
}
