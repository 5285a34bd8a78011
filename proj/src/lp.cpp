#include "rbp/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

namespace rbp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kEnterTol = 1e-9;
constexpr double kRatioTieTol = 1e-9;

enum class ColStatus : char { kAtLower, kAtUpper, kBasic };

// Dense bounded-variable tableau.  Columns are laid out as
// [structural | slack | artificial]; the tableau always equals B^-1 A for the
// current basis, and beta holds the value of each basic variable.
struct Tableau {
  int nrows = 0;
  int ncols = 0;
  int nstruct = 0;
  int first_art = 0;
  std::vector<double> t;  // nrows * ncols, row-major
  std::vector<double> beta;
  std::vector<double> crow;  // reduced costs of the real objective
  std::vector<double> drow;  // reduced costs of the artificial objective
  std::vector<double> ub;
  std::vector<int> basis;
  std::vector<ColStatus> status;
  std::vector<char> banned;
  long iterations = 0;
  long iteration_cap = 0;

  double& at(int r, int c) { return t[static_cast<size_t>(r) * ncols + c]; }
  double at(int r, int c) const {
    return t[static_cast<size_t>(r) * ncols + c];
  }
  bool is_artificial(int c) const { return c >= first_art; }
  double nonbasic_value(int c) const {
    return status[c] == ColStatus::kAtUpper ? ub[c] : 0.0;
  }

  void pivot_rows(int lr, int e) {
    const double p = at(lr, e);
    assert(std::fabs(p) > kPivotTol);
    const double inv = 1.0 / p;
    for (int c = 0; c < ncols; ++c) at(lr, c) *= inv;
    at(lr, e) = 1.0;
    for (int q = 0; q < nrows; ++q) {
      if (q == lr) continue;
      const double f = at(q, e);
      if (f == 0.0) continue;
      for (int c = 0; c < ncols; ++c) at(q, c) -= f * at(lr, c);
      at(q, e) = 0.0;
    }
    double f = crow[e];
    if (f != 0.0) {
      for (int c = 0; c < ncols; ++c) crow[c] -= f * at(lr, c);
      crow[e] = 0.0;
    }
    f = drow[e];
    if (f != 0.0) {
      for (int c = 0; c < ncols; ++c) drow[c] -= f * at(lr, c);
      drow[e] = 0.0;
    }
  }

  void bound_flip(int e) {
    const double delta =
        status[e] == ColStatus::kAtLower ? ub[e] : -ub[e];
    for (int r = 0; r < nrows; ++r) beta[r] -= delta * at(r, e);
    status[e] = status[e] == ColStatus::kAtLower ? ColStatus::kAtUpper
                                                 : ColStatus::kAtLower;
  }

  // Runs Bland-rule iterations against the given reduced-cost row until no
  // eligible entering column remains.
  void run_phase(bool phase_one) {
    for (;;) {
      if (++iterations > iteration_cap)
        throw LpError("simplex iteration limit exceeded");
      const std::vector<double>& rc = phase_one ? drow : crow;
      int e = -1;
      double dir = 0.0;
      for (int c = 0; c < ncols; ++c) {
        if (status[c] == ColStatus::kBasic || banned[c]) continue;
        if (status[c] == ColStatus::kAtLower && rc[c] < -kEnterTol) {
          e = c;
          dir = 1.0;
          break;
        }
        if (status[c] == ColStatus::kAtUpper && rc[c] > kEnterTol) {
          e = c;
          dir = -1.0;
          break;
        }
      }
      if (e < 0) return;

      double tmin = ub[e];  // distance to the entering variable's other bound
      for (int r = 0; r < nrows; ++r) {
        const double a = dir * at(r, e);
        if (a > kPivotTol) {
          tmin = std::min(tmin, beta[r] / a);
        } else if (a < -kPivotTol && ub[basis[r]] < kInf) {
          tmin = std::min(tmin, (ub[basis[r]] - beta[r]) / (-a));
        }
      }
      if (!(tmin < kInf)) {
        if (phase_one)
          throw LpError("internal simplex failure: phase one is unbounded");
        throw LpUnboundedError("linear program is unbounded");
      }
      if (tmin < 0.0) tmin = 0.0;

      if (ub[e] < kInf && ub[e] <= tmin + kRatioTieTol) {
        bound_flip(e);
        continue;
      }

      int lr = -1;
      bool leaves_at_upper = false;
      for (int r = 0; r < nrows; ++r) {
        const double a = dir * at(r, e);
        double ratio;
        bool to_upper;
        if (a > kPivotTol) {
          ratio = beta[r] / a;
          to_upper = false;
        } else if (a < -kPivotTol && ub[basis[r]] < kInf) {
          ratio = (ub[basis[r]] - beta[r]) / (-a);
          to_upper = true;
        } else {
          continue;
        }
        if (ratio <= tmin + kRatioTieTol &&
            (lr < 0 || basis[r] < basis[lr])) {
          lr = r;
          leaves_at_upper = to_upper;
        }
      }
      if (lr < 0)
        throw LpError("internal simplex failure: no leaving row found");

      const double enter_val = nonbasic_value(e) + dir * tmin;
      for (int q = 0; q < nrows; ++q) {
        if (q != lr) beta[q] -= dir * tmin * at(q, e);
      }
      const int leaving = basis[lr];
      pivot_rows(lr, e);
      basis[lr] = e;
      status[e] = ColStatus::kBasic;
      status[leaving] =
          leaves_at_upper ? ColStatus::kAtUpper : ColStatus::kAtLower;
      beta[lr] = enter_val;
      if (is_artificial(leaving)) banned[leaving] = 1;
    }
  }
};

}  // namespace

int LinearProgram::add_variable(const std::string& name,
                                double objective_coeff, double upper_bound) {
  if (name.empty()) throw std::invalid_argument("variable name is empty");
  if (!std::isfinite(objective_coeff))
    throw std::invalid_argument("objective coefficient must be finite");
  if (std::isnan(upper_bound) || upper_bound < 0.0)
    throw std::invalid_argument("variable upper bound must be >= 0");
  names.push_back(name);
  objective.push_back(objective_coeff);
  upper.push_back(upper_bound);
  return static_cast<int>(objective.size()) - 1;
}

void LinearProgram::add_constraint(std::vector<std::pair<int, double>> terms,
                                   Sense sense, double rhs) {
  if (terms.empty())
    throw std::invalid_argument("constraint has no terms");
  if (!std::isfinite(rhs))
    throw std::invalid_argument("constraint right-hand side must be finite");
  std::set<int> seen;
  for (const auto& [var, coeff] : terms) {
    if (var < 0 || var >= variable_count())
      throw std::invalid_argument("constraint references unknown variable");
    if (!std::isfinite(coeff))
      throw std::invalid_argument("constraint coefficient must be finite");
    if (!seen.insert(var).second)
      throw std::invalid_argument(
          "constraint lists variable " + names[var] + " twice");
  }
  rows.push_back(LpRow{std::move(terms), sense, rhs});
}

LpResult solve_lp(const LinearProgram& lp) {
  const int nstruct = lp.variable_count();
  const int nrows = static_cast<int>(lp.rows.size());

  // Minimization costs; a maximization is solved as min of the negation.
  std::vector<double> cost(lp.objective);
  if (!lp.minimize)
    for (double& c : cost) c = -c;

  int nslack = 0;
  for (const LpRow& row : lp.rows)
    if (row.sense != Sense::kEq) ++nslack;

  Tableau tb;
  tb.nrows = nrows;
  tb.nstruct = nstruct;
  tb.first_art = nstruct + nslack;
  tb.ncols = nstruct + nslack + nrows;
  tb.t.assign(static_cast<size_t>(nrows) * tb.ncols, 0.0);
  tb.beta.assign(nrows, 0.0);
  tb.crow.assign(tb.ncols, 0.0);
  tb.drow.assign(tb.ncols, 0.0);
  tb.ub.assign(tb.ncols, kInf);
  tb.basis.assign(nrows, -1);
  tb.status.assign(tb.ncols, ColStatus::kAtLower);
  tb.banned.assign(tb.ncols, 0);
  tb.iteration_cap = 50000 + 200L * (nrows + tb.ncols);

  for (int j = 0; j < nstruct; ++j) {
    tb.ub[j] = lp.upper[j];
    tb.crow[j] = cost[j];
  }

  std::vector<char> flipped(nrows, 0);
  double rhs_scale = 1.0;
  {
    int slack = nstruct;
    for (int r = 0; r < nrows; ++r) {
      const LpRow& row = lp.rows[r];
      for (const auto& [var, coeff] : row.terms) tb.at(r, var) = coeff;
      if (row.sense == Sense::kLe) tb.at(r, slack++) = 1.0;
      if (row.sense == Sense::kGe) tb.at(r, slack++) = -1.0;
      double rhs = row.rhs;
      if (rhs < 0.0) {
        flipped[r] = 1;
        rhs = -rhs;
        for (int c = 0; c < tb.first_art; ++c) tb.at(r, c) = -tb.at(r, c);
      }
      const int art = tb.first_art + r;
      tb.at(r, art) = 1.0;
      tb.basis[r] = art;
      tb.status[art] = ColStatus::kBasic;
      tb.beta[r] = rhs;
      rhs_scale = std::max(rhs_scale, rhs);
    }
  }
  for (int c = 0; c < tb.ncols; ++c) {
    double colsum = 0.0;
    for (int r = 0; r < nrows; ++r) colsum += tb.at(r, c);
    tb.drow[c] = (tb.is_artificial(c) ? 1.0 : 0.0) - colsum;
  }

  tb.run_phase(true);

  double phase_one_value = 0.0;
  for (int r = 0; r < nrows; ++r)
    if (tb.is_artificial(tb.basis[r])) phase_one_value += std::fabs(tb.beta[r]);
  if (phase_one_value > kLpFeasTol * rhs_scale) {
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "linear program is infeasible (residual %.3e)",
                  phase_one_value);
    throw LpInfeasibleError(buf);
  }

  // Swap any artificial still in the basis for a real column, or accept the
  // row as redundant when no such column remains.
  for (int r = 0; r < nrows; ++r) {
    if (!tb.is_artificial(tb.basis[r])) continue;
    int j = -1;
    for (int c = 0; c < tb.first_art; ++c) {
      if (tb.status[c] != ColStatus::kBasic &&
          std::fabs(tb.at(r, c)) > kPivotTol) {
        j = c;
        break;
      }
    }
    if (j < 0) continue;
    const int leaving = tb.basis[r];
    const double jval = tb.nonbasic_value(j);
    tb.pivot_rows(r, j);
    tb.basis[r] = j;
    tb.status[j] = ColStatus::kBasic;
    tb.status[leaving] = ColStatus::kAtLower;
    tb.beta[r] = jval;
  }
  for (int c = tb.first_art; c < tb.ncols; ++c) tb.banned[c] = 1;

  tb.run_phase(false);

  LpResult result;
  result.values.assign(nstruct, 0.0);
  for (int j = 0; j < nstruct; ++j) {
    double v = tb.nonbasic_value(j);
    if (tb.status[j] == ColStatus::kBasic) {
      for (int r = 0; r < nrows; ++r)
        if (tb.basis[r] == j) v = tb.beta[r];
    }
    v = std::max(v, 0.0);
    if (lp.upper[j] < kInf) v = std::min(v, lp.upper[j]);
    result.values[j] = v;
  }

  double objective = 0.0;
  for (int j = 0; j < nstruct; ++j)
    objective += lp.objective[j] * result.values[j];
  result.stats.objective = objective;
  result.stats.iterations = tb.iterations;

  double max_residual = 0.0;
  for (const LpRow& row : lp.rows) {
    double lhs = 0.0;
    for (const auto& [var, coeff] : row.terms)
      lhs += coeff * result.values[var];
    double violation = 0.0;
    switch (row.sense) {
      case Sense::kGe:
        violation = std::max(0.0, row.rhs - lhs);
        break;
      case Sense::kLe:
        violation = std::max(0.0, lhs - row.rhs);
        break;
      case Sense::kEq:
        violation = std::fabs(lhs - row.rhs);
        break;
    }
    max_residual = std::max(max_residual, violation);
  }
  result.stats.max_residual = max_residual;

  // Certify the objective with a Lagrangian bound built from the duals.  The
  // duals fall out of the artificial columns (they hold B^-1), are flipped
  // back for rows that were sign-normalized, and are projected onto the sign
  // their sense requires, so the bound is valid even if the pivoting went
  // astray numerically.
  std::vector<double> dual(nrows, 0.0);
  for (int r = 0; r < nrows; ++r) {
    double y = -tb.crow[tb.first_art + r];
    if (flipped[r]) y = -y;
    switch (lp.rows[r].sense) {
      case Sense::kGe:
        y = std::max(0.0, y);
        break;
      case Sense::kLe:
        y = std::min(0.0, y);
        break;
      case Sense::kEq:
        break;
    }
    dual[r] = y;
  }
  double bound = 0.0;
  std::vector<double> reduced(cost);
  for (int r = 0; r < nrows; ++r) {
    bound += dual[r] * lp.rows[r].rhs;
    for (const auto& [var, coeff] : lp.rows[r].terms)
      reduced[var] -= dual[r] * coeff;
  }
  for (int j = 0; j < nstruct; ++j) {
    if (reduced[j] < 0.0) {
      if (lp.upper[j] >= kInf) {
        bound = -kInf;
        break;
      }
      bound += reduced[j] * lp.upper[j];
    }
  }
  result.stats.dual_bound = lp.minimize ? bound : -bound;
  return result;
}

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
  auto term = [&](double coeff, int var, bool first) {
    std::ostringstream os;
    const double mag = first ? coeff : std::fabs(coeff);
    os << (first ? (coeff < 0 ? "" : "") : (coeff < 0 ? " - " : " + "));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", mag);
    os << buf << ' ' << lp.names[var];
    return os.str();
  };
  out << (lp.minimize ? "Minimize" : "Maximize") << "\n obj:";
  bool first = true;
  for (int j = 0; j < lp.variable_count(); ++j) {
    if (lp.objective[j] == 0.0) continue;
    out << ' ' << term(lp.objective[j], j, first);
    first = false;
  }
  if (first) out << " 0 " << (lp.variable_count() ? lp.names[0] : "x0");
  out << "\nSubject To\n";
  for (size_t r = 0; r < lp.rows.size(); ++r) {
    const LpRow& row = lp.rows[r];
    out << " c" << r << ':';
    first = true;
    for (const auto& [var, coeff] : row.terms) {
      out << ' ' << term(coeff, var, first);
      first = false;
    }
    const char* rel = row.sense == Sense::kGe  ? ">="
                      : row.sense == Sense::kLe ? "<="
                                                : "=";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", row.rhs);
    out << ' ' << rel << ' ' << buf << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.variable_count(); ++j) {
    if (lp.upper[j] >= kInf) {
      out << ' ' << lp.names[j] << " >= 0\n";
    } else {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.12g", lp.upper[j]);
      out << " 0 <= " << lp.names[j] << " <= " << buf << '\n';
    }
  }
  out << "End\n";
}

}  // namespace rbp
