#pragma once

#include <limits>
#include <vector>

#include "ckm/model.hpp"

namespace ckm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LessEq, Eq };

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  RowSense sense = RowSense::LessEq;
  double rhs = 0.0;
};

// Minimization LP over variables with lower bound 0 and optional finite
// upper bounds.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> upper;  // kInf when unbounded above
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

// LP relaxation of a capacitated assignment problem with `nc` candidate
// centers and `m` clients. Variable layout: x(i,j) at i*m + j, then y_i at
// nc*m + i. Rows, in order: m assignment equalities, nc capacity rows, one
// budget row, nc*m coupling rows x(i,j) <= y_i. The y_i <= 1 bounds live in
// `upper`, not in `rows`.
LpProblem build_capacitated_assignment_lp(int nc, int m, const Matrix& cost,
                                          const std::vector<double>& demand,
                                          double capacity, int k);

// The CKM LP relaxation: every location is both a candidate center and a
// client (nc = m = n).
LpProblem build_ckm_lp(const Instance& inst);

// Dense-tableau two-phase simplex. Deterministic: entering column by most
// negative reduced cost with lowest-index ties, switching to Bland's rule
// after a degeneracy stall; leaving row by minimum ratio with lowest basic
// index ties. Throws IterationLimitError if the pivot cap is exceeded.
LpResult solve_lp(const LpProblem& p);

// Solves the CKM LP and packages the result: snaps x and y values within
// kTol of 0 or 1, renormalizes each assignment column to sum exactly 1, and
// computes C_j and C_LP from the cleaned vector. Throws InfeasibleError when
// the LP is infeasible.
FractionalSolution solve_ckm_fractional(const Instance& inst);

// Applies a deterministic pseudo-random permutation to variables and rows,
// producing an equivalent LP that forces a different pivot path. Used by the
// oracle cross-check.
LpProblem permute_lp(const LpProblem& p, std::uint64_t seed);

}  // namespace ckm
