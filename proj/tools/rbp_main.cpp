// Command-line front end for the reordering-buffer solver toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbp/embed.hpp"
#include "rbp/instance.hpp"
#include "rbp/lowerbound.hpp"
#include "rbp/metric.hpp"
#include "rbp/oracle.hpp"
#include "rbp/pipeline.hpp"
#include "rbp/server.hpp"
#include "rbp/tree.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int cmd_solve(const std::string& instance_path, const rbp::SolveOptions& opt,
              const std::string& trace_path, bool json) {
  const rbp::RbpInstance inst = rbp::parse_instance(read_file(instance_path));
  const rbp::SolveReport report = rbp::solve_pipeline(inst, opt);
  std::cout << (json ? rbp::render_report_json(report)
                     : rbp::render_report_text(report));
  if (!trace_path.empty())
    write_file(trace_path, rbp::serialize_trace(report.final_trace));
  return rbp::all_certificates_pass(report) ? 0 : 1;
}

int cmd_brute(const std::string& instance_path, int capacity, int limit,
              const std::string& trace_path) {
  const rbp::RbpInstance inst = rbp::parse_instance(read_file(instance_path));
  const rbp::DenseMetric metric = rbp::metric_from_instance(inst);
  const int cap = capacity > 0 ? capacity : inst.k;
  const rbp::OracleResult result =
      rbp::solve_exact_capacity(inst, metric, cap, limit);
  std::printf("optimum %.9g\n", result.cost);
  std::printf("peak %d\n", result.trace.peak_occupancy);
  if (!trace_path.empty())
    write_file(trace_path, rbp::serialize_trace(result.trace));
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& trace_path,
               int capacity) {
  const rbp::RbpInstance inst = rbp::parse_instance(read_file(instance_path));
  const rbp::DenseMetric metric = rbp::metric_from_instance(inst);
  const rbp::ServerTrace trace = rbp::parse_trace(read_file(trace_path));
  const int cap = capacity > 0 ? capacity : 4 * inst.k + 1;
  const rbp::TraceVerdict verdict =
      rbp::validate_trace(inst, metric, trace, cap);
  if (verdict.ok) {
    std::printf("valid: distance %.9g, peak %d (capacity %d)\n",
                trace.distance, trace.peak_occupancy, cap);
    return 0;
  }
  std::printf("invalid at event %zu: %s\n", verdict.event_index + 1,
              verdict.reason.c_str());
  return 1;
}

int cmd_gen_lower(int k, const std::string& out_path) {
  const rbp::LowerBoundInstance family = rbp::generate_lower_bound(k);
  const std::string text =
      rbp::serialize_instance(rbp::lower_bound_to_instance(family));
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int cmd_gap(int k, int limit, bool json) {
  const rbp::GapReport report = rbp::gap_report(k, limit);
  if (json) {
    nlohmann::ordered_json j;
    j["k"] = report.k;
    j["reduced_capacity"] = report.reduced_capacity;
    j["requests"] = report.request_count;
    j["cost_full"] = report.cost_full;
    j["cost_reduced"] = report.cost_reduced;
    j["ratio"] = report.ratio;
    j["full_method"] = report.full_method;
    j["reduced_method"] = report.reduced_method;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("k %d: full buffer cost %.9g (%s)\n", report.k,
                report.cost_full, report.full_method.c_str());
    std::printf("reduced buffer %d: cost %.9g (%s)\n",
                report.reduced_capacity, report.cost_reduced,
                report.reduced_method.c_str());
    std::printf("ratio %.9g\n", report.ratio);
  }
  return 0;
}

int cmd_embed(const std::string& metric_path, uint64_t seed, bool json) {
  const rbp::DenseMetric metric =
      rbp::parse_metric_file(read_file(metric_path));
  rbp::validate_metric(metric);
  const rbp::EmbeddedTree embedded = rbp::embed_metric(metric, seed);

  double max_stretch = 0.0;
  if (metric.n >= 2) {
    const rbp::Tree tree(embedded.vertex_count, embedded.edges);
    for (int i = 0; i < metric.n; ++i) {
      for (int j = i + 1; j < metric.n; ++j) {
        const double tree_d = tree.distance(embedded.leaf_of_point[i],
                                            embedded.leaf_of_point[j]);
        max_stretch = std::max(max_stretch, tree_d / metric.at(i, j));
      }
    }
  }

  if (json) {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["points"] = metric.n;
    j["tree_vertices"] = embedded.vertex_count;
    j["max_stretch"] = max_stretch;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const rbp::EdgeSpec& e : embedded.edges)
      edges.push_back({{"u", e.u + 1}, {"v", e.v + 1}, {"length", e.length}});
    j["edges"] = edges;
    nlohmann::ordered_json leaves = nlohmann::ordered_json::array();
    for (int leaf : embedded.leaf_of_point) leaves.push_back(leaf + 1);
    j["leaf_of_point"] = leaves;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("points %d -> tree vertices %d (seed %llu)\n", metric.n,
                embedded.vertex_count,
                static_cast<unsigned long long>(seed));
    for (const rbp::EdgeSpec& e : embedded.edges)
      std::printf("edge %d %d %.9g\n", e.u + 1, e.v + 1, e.length);
    std::printf("leaves");
    for (int leaf : embedded.leaf_of_point) std::printf(" %d", leaf + 1);
    std::printf("\n");
    std::printf("max stretch %.9g\n", max_stretch);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Reordering-buffer solver: batched tree schedules with certified "
      "approximation bounds"};
  app.require_subcommand(1);

  // solve
  std::string solve_instance, solve_trace, dump_lp;
  rbp::SolveOptions opt;
  bool solve_json = false;
  auto* solve = app.add_subcommand(
      "solve", "run the full pipeline and print a certified report");
  solve->add_option("instance", solve_instance, "instance file")->required();
  solve->add_flag("--oracle", opt.run_oracle,
                  "also compute the exact optimum (small instances only)");
  solve->add_option("--oracle-limit", opt.oracle_limit,
                    "maximum request count for the exact search");
  solve->add_flag("--embed", opt.embed,
                  "embed the metric into a random tree first");
  solve->add_option("--seed", opt.seed, "embedding seed");
  solve->add_option("--dump-lp", dump_lp,
                    "write <prefix>.assignment.lp and <prefix>.interval.lp");
  solve->add_option("--trace", solve_trace, "write the final schedule here");
  solve->add_flag("--json", solve_json, "print the report as JSON");

  // brute
  std::string brute_instance, brute_trace;
  int brute_capacity = 0;
  int brute_limit = rbp::kDefaultOracleLimit;
  auto* brute = app.add_subcommand(
      "brute", "exact optimum by exhaustive state search");
  brute->add_option("instance", brute_instance, "instance file")->required();
  brute->add_option("--capacity", brute_capacity,
                    "buffer size (default: the instance's)");
  brute->add_option("--limit", brute_limit,
                    "maximum request count accepted by the search");
  brute->add_option("--trace", brute_trace, "write the optimal schedule here");

  // verify
  std::string verify_instance, verify_trace;
  int verify_capacity = 0;
  auto* verify =
      app.add_subcommand("verify", "replay-check a schedule file");
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("trace", verify_trace, "schedule file")->required();
  verify->add_option("--capacity", verify_capacity,
                     "buffer size to check against (default: 4k+1)");

  // gen-lower
  int lower_k = 0;
  std::string lower_out;
  auto* gen_lower = app.add_subcommand(
      "gen-lower", "emit the adversarial line family as an instance");
  gen_lower->add_option("k", lower_k, "buffer size parameter")->required();
  gen_lower->add_option("-o,--output", lower_out, "output file");

  // gap
  int gap_k = 0;
  int gap_limit = rbp::kDefaultOracleLimit;
  bool gap_json = false;
  auto* gap = app.add_subcommand(
      "gap", "full-versus-reduced buffer cost on the line family");
  gap->add_option("k", gap_k, "buffer size parameter")->required();
  gap->add_option("--limit", gap_limit,
                  "maximum request count for the exact search");
  gap->add_flag("--json", gap_json, "print as JSON");

  // embed
  std::string embed_metric_path;
  uint64_t embed_seed = 0;
  bool embed_json = false;
  auto* embed = app.add_subcommand(
      "embed", "embed a metric file into a random tree");
  embed->add_option("metric", embed_metric_path, "metric file")->required();
  embed->add_option("--seed", embed_seed, "embedding seed");
  embed->add_flag("--json", embed_json, "print as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      opt.dump_lp_prefix = dump_lp;
      return cmd_solve(solve_instance, opt, solve_trace, solve_json);
    }
    if (brute->parsed())
      return cmd_brute(brute_instance, brute_capacity, brute_limit,
                       brute_trace);
    if (verify->parsed())
      return cmd_verify(verify_instance, verify_trace, verify_capacity);
    if (gen_lower->parsed()) return cmd_gen_lower(lower_k, lower_out);
    if (gap->parsed()) return cmd_gap(gap_k, gap_limit, gap_json);
    if (embed->parsed())
      return cmd_embed(embed_metric_path, embed_seed, embed_json);
  } catch (const rbp::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const rbp::LpError& e) {
    std::fprintf(stderr, "relaxation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
