#include "rbp/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rbp {

namespace {

constexpr double kCertTol = 1e-6;

void dump_lp(const LinearProgram& lp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_lp_format(lp, out);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

SolveReport solve_pipeline(const RbpInstance& input, const SolveOptions& opt) {
  if (input.requests.empty())
    throw std::invalid_argument("instance has no requests");

  const RbpInstance padded = pad_to_window_multiple(input);
  const DenseMetric original_metric = metric_from_instance(padded);

  SolveReport report;
  report.vertex_count = padded.vertex_count;
  report.request_count = padded.request_count();
  report.original_request_count = padded.original_request_count;
  report.k = padded.k;
  report.peak_bound = 4 * padded.k + 1;
  report.seed = opt.seed;

  // Working instance: the input tree itself, or a random tree approximation
  // of the metric.
  RbpInstance working = padded;
  EmbeddedTree embedding;
  if (opt.embed) {
    embedding = embed_metric(original_metric, opt.seed);
    working = lift_instance(padded, embedding);
    report.embedded = true;
  } else if (!padded.is_tree) {
    throw std::invalid_argument(
        "instance is not a tree; rerun with embedding enabled");
  }
  const Tree tree = Tree::from_instance(working);
  report.tree_vertex_count = tree.vertex_count();

  const WindowPartition windows = partition_windows(working);
  report.m = windows.m;

  const Terminals terminals = find_terminals(working, tree, windows);
  report.terminal_vertices = terminals.vertices;
  report.path_total = 0.0;
  for (const TreePath& path : terminals.paths)
    report.path_total += path.total_length;

  // Stage 1: window-assignment relaxation.
  BuiltLp assignment = build_assignment_lp(working, tree, terminals);
  if (!opt.dump_lp_prefix.empty())
    dump_lp(assignment.lp, opt.dump_lp_prefix + ".assignment.lp");
  const LpResult assignment_raw = solve_lp(assignment.lp);
  const LpSolution assignment_sol = unpack_solution(assignment, assignment_raw);
  report.assignment_objective = assignment_sol.objective;
  report.assignment_dual = assignment_sol.dual_bound;

  // Stage 2: per-request service intervals at half fractional mass.
  const ServiceIntervals intervals =
      derive_intervals(assignment_sol, windows);

  // Stage 3: interval relaxation over directed arcs.
  BuiltLp interval = build_interval_lp(working, tree, terminals, intervals);
  if (!opt.dump_lp_prefix.empty())
    dump_lp(interval.lp, opt.dump_lp_prefix + ".interval.lp");
  const LpResult interval_raw = solve_lp(interval.lp);
  const LpSolution interval_sol = unpack_solution(interval, interval_raw);
  report.interval_objective = interval_sol.objective;
  report.interval_dual = interval_sol.dual_bound;

  // Stage 4: greedy extension and the cover-walking server.
  const RequestCover cover =
      greedy_extension(working, tree, terminals, intervals);
  report.cover_total = cover_length(cover, tree);

  const CoverRunResult run = run_cover_server(working, tree, terminals, cover);
  report.walk_distance = run.trace.distance;
  report.walk_peak = run.trace.peak_occupancy;

  // Stage 5: pull the schedule back to the original metric if we embedded.
  if (opt.embed) {
    report.final_trace = pull_back_schedule(run.trace, embedding,
                                            original_metric,
                                            padded.start_vertex);
  } else {
    report.final_trace = run.trace;
  }
  report.final_distance = report.final_trace.distance;
  report.final_peak = report.final_trace.peak_occupancy;

  // Certificates.
  Certificates& certs = report.certs;

  certs.batch_in_interval = true;
  for (int j = 0; j < working.request_count(); ++j)
    if (!intervals.contains(j, cover.assign[j]))
      certs.batch_in_interval = false;

  certs.prefix_feasible =
      check_two_feasibility(intervals, cover.batch_sizes(), windows).ok;

  certs.interval_within_double =
      report.interval_objective <=
      2.0 * report.assignment_objective + kCertTol;
  certs.cover_within_double =
      report.cover_total <= 2.0 * report.interval_objective + kCertTol;

  certs.hitting_vs_disjoint = true;
  certs.arc_mass_bound = true;
  for (const ProcessedArc& pa : cover.processed) {
    const int needed =
        (static_cast<int>(pa.hitting_set.size()) + 1) / 2;
    if (pa.max_disjoint < needed) certs.hitting_vs_disjoint = false;
    double mass = 0.0;
    const int key = arc_key(pa.arc, tree.vertex_count());
    for (int i = 0; i < windows.m; ++i) {
      auto it = interval_sol.y[i].find(key);
      if (it != interval_sol.y[i].end()) mass += it->second;
    }
    if (mass < pa.max_disjoint - kCertTol) certs.arc_mass_bound = false;
  }

  const double expected_walk = report.path_total + 2.0 * report.cover_total;
  certs.walk_length_exact =
      std::abs(report.walk_distance - expected_walk) <=
      kCertTol * std::max(1.0, expected_walk);

  certs.batches_on_time = true;
  for (int j = 0; j < working.request_count(); ++j)
    if (run.serve_event[j] >= run.iteration_end[cover.assign[j]])
      certs.batches_on_time = false;

  certs.peak_within_bound = report.walk_peak <= report.peak_bound &&
                            report.final_peak <= report.peak_bound;

  TraceVerdict verdict = validate_trace(padded, original_metric,
                                        report.final_trace, report.peak_bound);
  if (opt.embed && verdict.ok) {
    const DenseMetric tree_metric = metric_from_instance(working);
    verdict = validate_trace(working, tree_metric, run.trace,
                             report.peak_bound);
  }
  certs.trace_valid = verdict.ok;

  const auto gap_ok = [](double objective, double dual) {
    return objective - dual <= kLpObjTol * std::max(1.0, std::abs(objective));
  };
  certs.lp_gap_within_tol =
      gap_ok(report.assignment_objective, report.assignment_dual) &&
      gap_ok(report.interval_objective, report.interval_dual);

  // Optional exact comparison.  The approximation guarantee is a statement
  // about the tree the batching ran on, so an embedded run certifies against
  // the exact optimum of the lifted instance; the original-metric optimum is
  // still reported for the headline ratio.
  if (opt.run_oracle) {
    const OracleResult oracle =
        solve_exact(padded, original_metric, opt.oracle_limit);
    report.oracle_ran = true;
    report.oracle_cost = oracle.cost;
    report.ratio = oracle.cost > 0.0
                       ? report.final_distance / oracle.cost
                       : (report.final_distance > 0.0 ? HUGE_VAL : 1.0);
    double reference = oracle.cost;
    if (opt.embed) {
      const DenseMetric tree_metric = metric_from_instance(working);
      reference = solve_exact(working, tree_metric, opt.oracle_limit).cost;
      report.tree_oracle_cost = reference;
    }
    certs.paths_within_opt = report.path_total <= reference + kCertTol;
    certs.within_nine_opt =
        report.walk_distance <= 9.0 * reference + kCertTol &&
        report.final_distance <= 9.0 * reference + kCertTol;
  }

  return report;
}

bool all_certificates_pass(const SolveReport& report) {
  const Certificates& c = report.certs;
  return c.batch_in_interval && c.prefix_feasible &&
         c.interval_within_double && c.cover_within_double &&
         c.hitting_vs_disjoint && c.arc_mass_bound && c.walk_length_exact &&
         c.batches_on_time && c.peak_within_bound && c.trace_valid &&
         c.lp_gap_within_tol && c.paths_within_opt && c.within_nine_opt;
}

namespace {

struct CertLine {
  const char* label;
  bool value;
  bool applicable;
};

std::vector<CertLine> cert_lines(const SolveReport& report) {
  const Certificates& c = report.certs;
  return {
      {"batch windows lie inside service intervals", c.batch_in_interval,
       true},
      {"prefix feasibility of the batching", c.prefix_feasible, true},
      {"interval relaxation within twice the assignment relaxation",
       c.interval_within_double, true},
      {"bought length within twice the interval relaxation",
       c.cover_within_double, true},
      {"hitting sets within twice the disjoint-interval packing",
       c.hitting_vs_disjoint, true},
      {"cut-arc fractional mass covers the disjoint packing",
       c.arc_mass_bound, true},
      {"walk length equals paths plus twice the bought length",
       c.walk_length_exact, true},
      {"every batch served within its iteration", c.batches_on_time, true},
      {"peak occupancy within 4k+1", c.peak_within_bound, true},
      {"schedule replay is valid", c.trace_valid, true},
      {"relaxation primal-dual gaps within tolerance", c.lp_gap_within_tol,
       true},
      {"terminal paths within the exact optimum", c.paths_within_opt,
       report.oracle_ran},
      {"final distance within nine times the exact optimum",
       c.within_nine_opt, report.oracle_ran},
  };
}

}  // namespace

std::string render_report_text(const SolveReport& report) {
  std::string out;
  char buf[256];

  std::snprintf(buf, sizeof(buf),
                "instance: %d vertices, %d requests (%d before padding), "
                "buffer %d, %d windows\n",
                report.vertex_count, report.request_count,
                report.original_request_count, report.k, report.m);
  out += buf;

  if (report.embedded) {
    std::snprintf(buf, sizeof(buf),
                  "embedding: seed %llu, %d tree vertices\n",
                  static_cast<unsigned long long>(report.seed),
                  report.tree_vertex_count);
    out += buf;
  } else {
    out += "embedding: none\n";
  }

  out += "terminals:";
  for (int v : report.terminal_vertices) {
    std::snprintf(buf, sizeof(buf), " %d", v + 1);
    out += buf;
  }
  out += "\n";

  out += "assignment relaxation: objective " +
         fmt(report.assignment_objective) + " (dual bound " +
         fmt(report.assignment_dual) + ")\n";
  out += "interval relaxation: objective " + fmt(report.interval_objective) +
         " (dual bound " + fmt(report.interval_dual) + ")\n";
  out += "cover: paths " + fmt(report.path_total) + ", bought edges " +
         fmt(report.cover_total) + "\n";
  std::snprintf(buf, sizeof(buf), "walk: distance %s, peak %d (bound %d)\n",
                fmt(report.walk_distance).c_str(), report.walk_peak,
                report.peak_bound);
  out += buf;
  std::snprintf(buf, sizeof(buf), "final: distance %s, peak %d\n",
                fmt(report.final_distance).c_str(), report.final_peak);
  out += buf;

  if (report.oracle_ran) {
    const double ratio = report.oracle_cost > 0.0
                             ? report.final_distance / report.oracle_cost
                             : 0.0;
    out += "exact optimum: " + fmt(report.oracle_cost) + ", ratio " +
           fmt(ratio) + " (guarantee 9)\n";
    if (report.embedded) {
      out += "exact optimum on the working tree: " +
             fmt(report.tree_oracle_cost) +
             " (reference for the guarantee certificates)\n";
    }
  }

  out += "certificates:\n";
  for (const CertLine& line : cert_lines(report)) {
    if (!line.applicable) continue;
    out += std::string("  [") + (line.value ? "PASS" : "FAIL") + "] " +
           line.label + "\n";
  }
  out += std::string("overall: ") +
         (all_certificates_pass(report) ? "PASS" : "FAIL") + "\n";
  return out;
}

std::string render_report_json(const SolveReport& report) {
  nlohmann::ordered_json j;
  j["instance"] = {{"vertices", report.vertex_count},
                   {"requests", report.request_count},
                   {"requests_before_padding", report.original_request_count},
                   {"buffer", report.k},
                   {"windows", report.m}};
  if (report.embedded) {
    j["embedding"] = {{"seed", report.seed},
                      {"tree_vertices", report.tree_vertex_count}};
  } else {
    j["embedding"] = nullptr;
  }
  {
    std::vector<int> terminals;
    terminals.reserve(report.terminal_vertices.size());
    for (int v : report.terminal_vertices) terminals.push_back(v + 1);
    j["terminals"] = terminals;
  }
  j["assignment_relaxation"] = {{"objective", report.assignment_objective},
                                {"dual_bound", report.assignment_dual}};
  j["interval_relaxation"] = {{"objective", report.interval_objective},
                              {"dual_bound", report.interval_dual}};
  j["cover"] = {{"paths", report.path_total},
                {"bought", report.cover_total}};
  j["walk"] = {{"distance", report.walk_distance},
               {"peak", report.walk_peak},
               {"peak_bound", report.peak_bound}};
  j["final"] = {{"distance", report.final_distance},
                {"peak", report.final_peak}};
  if (report.oracle_ran) {
    j["exact"] = {{"optimum", report.oracle_cost},
                  {"ratio", report.oracle_cost > 0.0
                                ? report.final_distance / report.oracle_cost
                                : 0.0},
                  {"guarantee", 9.0}};
    if (report.embedded) j["exact"]["tree_optimum"] = report.tree_oracle_cost;
  } else {
    j["exact"] = nullptr;
  }
  nlohmann::ordered_json certs = nlohmann::ordered_json::object();
  for (const CertLine& line : cert_lines(report)) {
    if (!line.applicable) continue;
    certs[line.label] = line.value;
  }
  j["certificates"] = certs;
  j["overall"] = all_certificates_pass(report);
  return j.dump(2) + "\n";
}

}  // namespace rbp
