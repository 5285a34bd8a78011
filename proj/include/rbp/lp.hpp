#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbp {

inline constexpr double kLpFeasTol = 1e-7;
inline constexpr double kLpObjTol = 1e-7;

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class LpInfeasibleError : public LpError {
 public:
  using LpError::LpError;
};
class LpUnboundedError : public LpError {
 public:
  using LpError::LpError;
};

enum class Sense { kGe, kLe, kEq };

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Sense sense = Sense::kGe;
  double rhs = 0.0;
};

// min (or max) c.x  subject to  rows,  0 <= x_i <= upper_i (upper may be inf).
struct LinearProgram {
  std::vector<std::string> names;
  std::vector<double> objective;
  std::vector<double> upper;
  std::vector<LpRow> rows;
  bool minimize = true;

  int add_variable(const std::string& name, double objective_coeff,
                   double upper_bound = 1.0);
  // Rejects duplicate columns and out-of-range indices.
  void add_constraint(std::vector<std::pair<int, double>> terms, Sense sense,
                      double rhs);
  int variable_count() const { return static_cast<int>(objective.size()); }
};

struct LpStats {
  double objective = 0.0;
  // Lagrangian bound certified from the final dual multipliers; for a
  // minimization it never exceeds the true optimum.
  double dual_bound = 0.0;
  double max_residual = 0.0;
  long iterations = 0;
};

struct LpResult {
  std::vector<double> values;
  LpStats stats;
};

// Dense two-phase simplex with variable upper bounds and Bland's rule.
// Deterministic for a fixed variable and constraint order.
LpResult solve_lp(const LinearProgram& lp);

// Writes the program in CPLEX LP text format.
void write_lp_format(const LinearProgram& lp, std::ostream& out);

// Fractional solution of a window-assignment relaxation, unpacked from the
// raw variable vector.  x is an n*m row-major matrix (pairs that have no
// variable are zero).  y[i] maps an edge id (undirected relaxation) or an
// arc key tail*V+head (directed relaxation) to its value in window i.
struct LpSolution {
  int n = 0;
  int m = 0;
  std::vector<double> x;
  std::vector<std::map<int, double>> y;
  double objective = 0.0;
  double dual_bound = 0.0;
  double max_residual = 0.0;

  double x_at(int j, int i) const { return x[static_cast<size_t>(j) * m + i]; }
};

}  // namespace rbp
