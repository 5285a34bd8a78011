#pragma once

#include <cstdint>
#include <string>

#include "rbp/cover.hpp"
#include "rbp/embed.hpp"
#include "rbp/instance.hpp"
#include "rbp/intervals.hpp"
#include "rbp/lp_builders.hpp"
#include "rbp/metric.hpp"
#include "rbp/oracle.hpp"
#include "rbp/server.hpp"
#include "rbp/terminals.hpp"
#include "rbp/tree.hpp"

namespace rbp {

struct SolveOptions {
  bool run_oracle = false;          // also compute the exact optimum
  int oracle_limit = kDefaultOracleLimit;
  bool embed = false;               // embed the metric into a random tree
  uint64_t seed = 0;                // embedding seed
  std::string dump_lp_prefix;       // when set, write <prefix>.assignment.lp
                                    // and <prefix>.interval.lp
};

// Machine-checkable guarantees collected while solving.  Every field must be
// true for the run to count as certified; the oracle comparisons are only
// meaningful (and only required) when the oracle ran.
struct Certificates {
  bool batch_in_interval = false;    // every batch window inside its interval
  bool prefix_feasible = false;      // batching keeps a bounded backlog
  bool interval_within_double = false;   // interval LP <= 2 * assignment LP
  bool cover_within_double = false;      // bought length <= 2 * interval LP
  bool hitting_vs_disjoint = false;  // |hitting set| <= 2 * disjoint count
  bool arc_mass_bound = false;       // LP mass on each cut arc >= disjoint count
  bool walk_length_exact = false;    // distance == paths + 2 * bought length
  bool batches_on_time = false;      // batch B_i fully served in iteration i
  bool peak_within_bound = false;    // peak occupancy <= 4k+1
  bool trace_valid = false;          // replay-checked schedule
  bool lp_gap_within_tol = false;    // primal-dual gap of both relaxations
  bool paths_within_opt = true;      // sum of path lengths <= exact optimum
  bool within_nine_opt = true;       // final distance <= 9 * exact optimum
};

struct SolveReport {
  // Instance summary (after padding).
  int vertex_count = 0;
  int request_count = 0;
  int original_request_count = 0;
  int k = 0;
  int m = 0;

  bool embedded = false;
  uint64_t seed = 0;
  int tree_vertex_count = 0;  // equals vertex_count when not embedded

  std::vector<int> terminal_vertices;  // on the working tree
  double assignment_objective = 0.0;
  double assignment_dual = 0.0;
  double interval_objective = 0.0;
  double interval_dual = 0.0;
  double path_total = 0.0;   // sum of terminal path lengths
  double cover_total = 0.0;  // bought edge length across windows
  double walk_distance = 0.0;
  int walk_peak = 0;
  double final_distance = 0.0;  // after pulling back to the original metric
  int final_peak = 0;
  int peak_bound = 0;  // 4k+1

  Certificates certs;
  ServerTrace final_trace;

  bool oracle_ran = false;
  double oracle_cost = 0.0;  // exact optimum on the original metric
  // Exact optimum of the lifted instance on the embedded tree; the
  // approximation certificates compare against this when embedding ran,
  // because the guarantee is per working tree (the original-metric ratio is
  // only bounded in expectation over seeds).  Zero when not embedded.
  double tree_oracle_cost = 0.0;
  double ratio = 0.0;  // final_distance / oracle_cost when defined
};

// Full solve: pad -> (embed) -> terminals -> assignment relaxation ->
// service intervals -> interval relaxation -> greedy extension ->
// cover-walking server -> (pull back) -> certificates -> (exact oracle).
// Throws on structural errors (non-tree input without embedding, oversized
// oracle request, relaxation failures).
SolveReport solve_pipeline(const RbpInstance& input, const SolveOptions& opt);

bool all_certificates_pass(const SolveReport& report);

// Deterministic plain-text and JSON renderings; ratios are recomputed at
// print time from the reported quantities.
std::string render_report_text(const SolveReport& report);
std::string render_report_json(const SolveReport& report);

}  // namespace rbp
