#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "rbp/cover.hpp"
#include "rbp/terminals.hpp"

using rbp::Arc;
using rbp::RbpInstance;
using rbp::RequestCover;
using rbp::ServiceIntervals;
using rbp::Terminals;
using rbp::Tree;

namespace {

using Interval = std::pair<int, int>;

RbpInstance star_instance() {
  RbpInstance inst;
  inst.vertex_count = 5;
  inst.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}};
  inst.requests = {1, 1, 2, 3, 3, 4};
  inst.k = 1;
  inst.start_vertex = 0;
  inst.original_request_count = 6;
  return inst;
}

RbpInstance chain_instance() {
  RbpInstance inst;
  inst.vertex_count = 4;
  inst.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}};
  inst.requests = {2, 3, 2, 3, 2, 3};
  inst.k = 1;
  inst.start_vertex = 0;
  inst.original_request_count = 6;
  return inst;
}

ServiceIntervals two_window_split() {
  ServiceIntervals intervals;
  intervals.release = {0, 0, 0, 1, 1, 1};
  intervals.deadline = {0, 0, 0, 1, 1, 1};
  return intervals;
}

}  // namespace

TEST_CASE("deletion keeps the earliest windows it cannot drop") {
  const std::vector<int> candidates = {0, 1, 2};
  const std::vector<Interval> intervals = {{0, 1}, {1, 2}, {2, 2}};
  // Dropping 0 leaves {1,2}, which still hits everything; dropping either
  // survivor then misses an interval.
  CHECK(rbp::minimal_hitting_set(candidates, intervals) ==
        std::vector<int>{1, 2});
}

TEST_CASE("candidates that miss an interval are a processing bug") {
  CHECK_THROWS_AS(rbp::minimal_hitting_set({0}, {{1, 2}}), std::logic_error);
}

TEST_CASE("maximum pairwise-disjoint intervals") {
  CHECK(rbp::max_disjoint_intervals({{0, 1}, {1, 2}, {2, 2}}) == 2);
  CHECK(rbp::max_disjoint_intervals({{0, 3}, {1, 2}}) == 1);
  CHECK(rbp::max_disjoint_intervals({}) == 0);
  CHECK(rbp::max_disjoint_intervals({{0, 0}, {1, 1}, {2, 2}}) == 3);
}

TEST_CASE("star: each off-path request buys its own spoke") {
  const RbpInstance inst = star_instance();
  const Tree tree = Tree::from_instance(inst);
  const rbp::WindowPartition windows = rbp::partition_windows(inst);
  const Terminals terminals = rbp::find_terminals(inst, tree, windows);
  REQUIRE(terminals.vertices == std::vector<int>{1, 3});

  const ServiceIntervals intervals = two_window_split();

  SUBCASE("demands cross exactly the two off-path spokes") {
    const auto demands =
        rbp::compute_arc_demands(inst, tree, terminals, intervals);
    REQUIRE(demands.size() == 2);
    CHECK(demands[0].arc == Arc{2, 0});
    CHECK(demands[0].requests == std::vector<int>{2});
    CHECK(demands[0].intervals == std::vector<Interval>{{0, 0}});
    CHECK(demands[1].arc == Arc{4, 0});
    CHECK(demands[1].requests == std::vector<int>{5});
    CHECK(demands[1].intervals == std::vector<Interval>{{1, 1}});
  }

  SUBCASE("the extension buys one spoke per window") {
    const RequestCover cover =
        rbp::greedy_extension(inst, tree, terminals, intervals);
    REQUIRE(cover.processed.size() == 2);
    CHECK(cover.processed[0].arc == Arc{2, 0});
    CHECK(cover.processed[0].hitting_set == std::vector<int>{0});
    CHECK(cover.processed[1].arc == Arc{4, 0});
    CHECK(cover.processed[1].hitting_set == std::vector<int>{1});
    CHECK(cover.edges[0] == std::vector<int>{tree.edge_between(0, 2)});
    CHECK(cover.edges[1] == std::vector<int>{tree.edge_between(0, 4)});
    CHECK(cover.batches[0] == std::vector<int>{0, 1, 2});
    CHECK(cover.batches[1] == std::vector<int>{3, 4, 5});
    CHECK(cover.batch_sizes() == std::vector<int>{3, 3});
    CHECK(rbp::cover_length(cover, tree) == doctest::Approx(2.0));
  }
}

TEST_CASE("chain: nearer purchases seed the candidates of farther arcs") {
  const RbpInstance inst = chain_instance();
  const Tree tree = Tree::from_instance(inst);

  // Both window anchors held at vertex 1: the first walks there, the second
  // stays.  Every request then lives strictly beyond the anchor path.
  Terminals terminals;
  terminals.vertices = {1, 1};
  terminals.paths = {tree.path_between(0, 1), tree.path_between(1, 1)};

  ServiceIntervals intervals = two_window_split();
  intervals.deadline[1] = 1;  // request 1 may slip to the second window

  const RequestCover cover =
      rbp::greedy_extension(inst, tree, terminals, intervals);

  // The inner arc is processed first and must keep both windows; the outer
  // arc inherits them as candidates and drops the first.
  REQUIRE(cover.processed.size() == 2);
  CHECK(cover.processed[0].arc == Arc{2, 1});
  CHECK(cover.processed[0].hitting_set == std::vector<int>{0, 1});
  CHECK(cover.processed[0].max_disjoint == 2);
  CHECK(cover.processed[1].arc == Arc{3, 2});
  CHECK(cover.processed[1].hitting_set == std::vector<int>{1});
  CHECK(cover.processed[1].max_disjoint == 1);

  const int inner = tree.edge_between(1, 2);
  const int outer = tree.edge_between(2, 3);
  CHECK(cover.edges[0] == std::vector<int>{inner});
  CHECK(cover.edges[1] == std::vector<int>{inner, outer});
  CHECK(rbp::cover_length(cover, tree) == doctest::Approx(3.0));

  // Request 1 sits at the chain's end; window 0 buys nothing incident to
  // it, so the assignment slips to its deadline window.
  CHECK(cover.assign == std::vector<int>{0, 1, 0, 1, 1, 1});
  CHECK(cover.batches[0] == std::vector<int>{0, 2});
  CHECK(cover.batches[1] == std::vector<int>{1, 3, 4, 5});

  // Hitting sets stay within twice the disjoint-interval packing.
  for (const auto& processed : cover.processed) {
    const int bound = (static_cast<int>(processed.hitting_set.size()) + 1) / 2;
    CHECK(processed.max_disjoint >= bound);
  }
}
