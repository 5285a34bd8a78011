#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rbp/metric.hpp"
#include "rbp/oracle.hpp"
#include "rbp/pipeline.hpp"
#include "test_util.hpp"

using rbp::RbpInstance;
using rbp::SolveOptions;
using rbp::SolveReport;

namespace {

RbpInstance pendant_instance() {
  // A path 0-1-2 with a heavier pendant edge 1-3.
  RbpInstance inst;
  inst.vertex_count = 4;
  inst.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {1, 3, 2.0}};
  inst.requests = {2, 2, 3};
  inst.k = 1;
  inst.start_vertex = 0;
  inst.original_request_count = 3;
  return inst;
}

RbpInstance triangle_instance() {
  RbpInstance inst;
  inst.vertex_count = 3;
  inst.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.5}};
  inst.requests = {1, 2, 1};
  inst.k = 1;
  inst.start_vertex = 0;
  inst.is_tree = false;
  inst.original_request_count = 3;
  return inst;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("a pendant window walks its terminal path and buys the detour") {
  const RbpInstance inst = pendant_instance();
  SolveOptions opt;
  opt.run_oracle = true;
  const SolveReport report = rbp::solve_pipeline(inst, opt);

  CHECK(report.m == 1);
  CHECK(report.request_count == 3);

  // The window's majority sits at vertex 2, so the walk ends there and the
  // pendant request is bought as a side trip from vertex 1.
  REQUIRE(report.terminal_vertices.size() == 1);
  CHECK(report.terminal_vertices[0] == 2);
  CHECK(report.path_total == doctest::Approx(2.0));
  CHECK(report.cover_total == doctest::Approx(2.0));
  CHECK(report.walk_distance == doctest::Approx(6.0));
  CHECK(report.final_distance == doctest::Approx(6.0));

  // The exact server visits the pendant before finishing at vertex 2.
  CHECK(report.oracle_ran);
  CHECK(report.oracle_cost == doctest::Approx(5.0));
  CHECK(report.ratio == doctest::Approx(6.0 / 5.0));

  CHECK(rbp::all_certificates_pass(report));
  CHECK(report.certs.within_nine_opt);
  CHECK(report.certs.paths_within_opt);
  CHECK(report.peak_bound == 5);
  CHECK(report.final_peak <= report.peak_bound);
}

TEST_CASE("the sample instance is certified end to end") {
  const RbpInstance inst = rbp::parse_instance(slurp(
      std::string(TEST_DATA_DIR) + "/sample.rbp"));
  SolveOptions opt;
  opt.run_oracle = true;
  const SolveReport report = rbp::solve_pipeline(inst, opt);
  CHECK(rbp::all_certificates_pass(report));
  CHECK(report.oracle_ran);
  CHECK(report.final_distance <= 9.0 * report.oracle_cost + 1e-9);
  CHECK(report.walk_distance ==
        doctest::Approx(report.path_total + 2.0 * report.cover_total));
}

TEST_CASE("non-tree inputs demand the embedding") {
  const RbpInstance inst = triangle_instance();

  SolveOptions opt;
  CHECK_THROWS_WITH_AS(rbp::solve_pipeline(inst, opt),
                       doctest::Contains("not a tree"), std::invalid_argument);

  opt.embed = true;
  opt.seed = 31;
  opt.run_oracle = true;
  const SolveReport report = rbp::solve_pipeline(inst, opt);
  CHECK(report.embedded);
  CHECK(report.seed == 31);
  CHECK(report.tree_vertex_count > report.vertex_count);
  CHECK(rbp::all_certificates_pass(report));
  // The pulled-back walk must hold in the original metric, not the tree's.
  CHECK(report.final_distance <= report.walk_distance + 1e-9);
}

TEST_CASE("relaxation dumps are written when requested") {
  const RbpInstance inst = pendant_instance();
  SolveOptions opt;
  opt.dump_lp_prefix = "pipeline_dump_test";
  (void)rbp::solve_pipeline(inst, opt);

  const std::string assignment = slurp("pipeline_dump_test.assignment.lp");
  const std::string interval = slurp("pipeline_dump_test.interval.lp");
  CHECK(assignment.find("Minimize") != std::string::npos);
  CHECK(interval.find("Minimize") != std::string::npos);
  CHECK(assignment.find("Subject To") != std::string::npos);
  std::remove("pipeline_dump_test.assignment.lp");
  std::remove("pipeline_dump_test.interval.lp");
}

TEST_CASE("reports render deterministically in text and JSON") {
  const RbpInstance inst = pendant_instance();
  SolveOptions opt;
  opt.run_oracle = true;
  const SolveReport report = rbp::solve_pipeline(inst, opt);

  const std::string text_a = rbp::render_report_text(report);
  const std::string text_b =
      rbp::render_report_text(rbp::solve_pipeline(inst, opt));
  CHECK(text_a == text_b);
  CHECK(text_a.find("certificates") != std::string::npos);

  const nlohmann::json doc =
      nlohmann::json::parse(rbp::render_report_json(report));
  CHECK(doc.at("overall").get<bool>());
  CHECK(doc.at("instance").at("buffer").get<int>() == 1);
  CHECK(doc.at("terminals").size() == 1);
  CHECK(doc.at("terminals")[0].get<int>() == 3);  // 1-based in the report
  CHECK(doc.at("certificates").is_object());
  CHECK(doc.at("walk").at("distance").get<double>() ==
        doctest::Approx(6.0));
  CHECK(doc.at("exact").at("optimum").get<double>() == doctest::Approx(5.0));
}

TEST_CASE("padding never changes the exact optimum") {
  std::mt19937 rng(20240815);
  for (int trial = 0; trial < 40; ++trial) {
    const RbpInstance inst =
        rbp_test::random_tree_instance(rng, 5, 1 + static_cast<int>(rng() % 2),
                                       6);
    const RbpInstance padded = rbp::pad_to_window_multiple(inst);
    const rbp::DenseMetric metric = rbp::metric_from_instance(inst);
    const double bare = rbp::solve_exact(inst, metric).cost;
    const double grown = rbp::solve_exact(padded, metric).cost;
    CHECK(bare == doctest::Approx(grown).epsilon(1e-9));
  }
}

TEST_CASE("random tree instances are certified against the exact optimum") {
  std::mt19937 rng(424242);
  int solved = 0;
  while (solved < 30) {
    const RbpInstance inst = rbp_test::random_tree_instance(rng, 6, 1, 7);
    SolveOptions opt;
    opt.run_oracle = true;
    const SolveReport report = rbp::solve_pipeline(inst, opt);
    INFO("instance " << solved << ": " << rbp::render_report_text(report));
    CHECK(rbp::all_certificates_pass(report));
    CHECK(report.final_distance <= 9.0 * report.oracle_cost + 1e-9);
    ++solved;
  }
}
