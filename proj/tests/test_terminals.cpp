#include <doctest.h>

#include "rbp/instance.hpp"
#include "rbp/terminals.hpp"
#include "rbp/tree.hpp"

using rbp::Arc;
using rbp::EdgeSpec;
using rbp::RbpInstance;
using rbp::Terminals;
using rbp::Tree;

namespace {

RbpInstance star_instance(std::vector<int> requests, int k, int start) {
  RbpInstance inst;
  inst.vertex_count = 4;  // center 0, leaves 1..3
  inst.edges = {EdgeSpec{0, 1, 1.0}, EdgeSpec{0, 2, 1.0}, EdgeSpec{0, 3, 1.0}};
  inst.requests = std::move(requests);
  inst.k = k;
  inst.start_vertex = start;
  inst.original_request_count = inst.request_count();
  return inst;
}

}  // namespace

TEST_CASE("a window with a heavy vertex is anchored there") {
  // Two of three requests at leaf 1: every edge must point toward leaf 1.
  const RbpInstance inst = star_instance({1, 1, 2}, 1, 0);
  const Tree tree = Tree::from_instance(inst);
  const rbp::WindowPartition windows = rbp::partition_windows(inst);

  const std::vector<Arc> orientation =
      rbp::orient_window(inst, tree, windows, 0);
  CHECK(rbp::find_terminal(tree, orientation) == 1);

  const Terminals terminals = rbp::find_terminals(inst, tree, windows);
  REQUIRE(terminals.m() == 1);
  CHECK(terminals.vertices[0] == 1);
  CHECK(terminals.paths[0].vertices == std::vector<int>{0, 1});
}

TEST_CASE("a balanced window is anchored at the center") {
  // One request per leaf: every leaf side holds 1 <= k, so all edges point
  // inward and the center is the unique sink.
  const RbpInstance inst = star_instance({1, 2, 3}, 1, 3);
  const Tree tree = Tree::from_instance(inst);
  const rbp::WindowPartition windows = rbp::partition_windows(inst);
  const Terminals terminals = rbp::find_terminals(inst, tree, windows);
  REQUIRE(terminals.m() == 1);
  CHECK(terminals.vertices[0] == 0);
  CHECK(terminals.paths[0].vertices == std::vector<int>{3, 0});
}

TEST_CASE("all requests at one endpoint of an edge anchor that endpoint") {
  RbpInstance inst;
  inst.vertex_count = 2;
  inst.edges = {EdgeSpec{0, 1, 1.0}};
  inst.requests = {0, 0, 0};
  inst.k = 1;
  inst.start_vertex = 1;
  inst.original_request_count = 3;

  const Tree tree = Tree::from_instance(inst);
  const rbp::WindowPartition windows = rbp::partition_windows(inst);
  const Terminals terminals = rbp::find_terminals(inst, tree, windows);
  REQUIRE(terminals.m() == 1);
  CHECK(terminals.vertices[0] == 0);
  CHECK(terminals.paths[0].vertices == std::vector<int>{1, 0});
  CHECK(terminals.paths[0].total_length == doctest::Approx(1.0));
}

TEST_CASE("terminal paths chain across windows") {
  // Window 1 anchored at leaf 1, window 2 at leaf 3.
  const RbpInstance inst = star_instance({1, 1, 0, 3, 3, 2}, 1, 2);
  const Tree tree = Tree::from_instance(inst);
  const rbp::WindowPartition windows = rbp::partition_windows(inst);
  const Terminals terminals = rbp::find_terminals(inst, tree, windows);
  REQUIRE(terminals.m() == 2);
  CHECK(terminals.vertices[0] == 1);
  CHECK(terminals.vertices[1] == 3);
  CHECK(terminals.paths[0].vertices == std::vector<int>{2, 0, 1});
  CHECK(terminals.paths[1].vertices == std::vector<int>{1, 0, 3});
  CHECK(terminals.paths[1].total_length == doctest::Approx(2.0));
}

TEST_CASE("every window size stays odd so orientation is total") {
  // k = 2, window of five requests, mixed placement: 3 at leaf 2 beats k.
  const RbpInstance inst = star_instance({2, 2, 2, 1, 3}, 2, 0);
  const Tree tree = Tree::from_instance(inst);
  const rbp::WindowPartition windows = rbp::partition_windows(inst);
  const Terminals terminals = rbp::find_terminals(inst, tree, windows);
  CHECK(terminals.vertices[0] == 2);
}
