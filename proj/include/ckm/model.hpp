#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ckm/matrix.hpp"

namespace ckm {

// Comparison tolerance used by every metric / feasibility / rounding check
// in the pipeline. LP output is floating point, so equality constraints can
// only be expected to hold up to this slack.
inline constexpr double kTol = 1e-9;

// Relative tolerance layered on top of kTol for cost comparisons that
// accumulate error across the whole pipeline.
inline constexpr double kCostRelTol = 1e-7;

// Raised when a problem (or subproblem) has no feasible solution, e.g. total
// demand exceeds k * capacity.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a comparison lands within kTol of a branching threshold in a
// way that would make the rounding guarantees unverifiable. Callers should
// abort the run rather than continue.
struct NumericalMarginError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the simplex hits its iteration cap (indicates cycling or a
// badly scaled input).
struct IterationLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A capacitated k-median instance: n locations, symmetric metric costs,
// per-location demands, uniform capacity and a center budget.
struct Instance {
  int n = 0;
  Matrix cost;                 // n x n, c(i,j)
  std::vector<double> demand;  // d_j, length n
  double capacity = 0.0;       // M
  int k = 0;

  double total_demand() const;
};

// Returns the list of violated instance invariants (empty when valid):
// metric axioms within kTol and total demand <= k * capacity.
std::vector<std::string> validate_instance(const Instance& inst);

// Optimal solution of the LP relaxation together with the derived
// per-location connection costs.
struct FractionalSolution {
  Matrix x;                       // x(i,j): fraction of j's demand served by i
  std::vector<double> y;          // opening values
  std::vector<double> conn_cost;  // C_j = sum_i c(i,j) x(i,j)
  double objective = 0.0;         // C_LP = sum_j d_j C_j
};

// Integral (0/1 openings, splittable assignment) solution.
struct IntegralSolution {
  std::vector<int> open;  // 0/1 per location
  Matrix assign;          // assign(i,j): fraction of j's demand served by i
  double cost = 0.0;
  double max_load_ratio = 0.0;  // max_i load_i / M over open i
};

// Total connection cost sum_{i,j} d_j c(i,j) assign(i,j).
// Requires assign columns to sum to 1; throws std::invalid_argument on
// dimension mismatch.
double solution_cost(const Instance& inst, const Matrix& assign);

// Demand routed to each center: load_i = sum_j d_j assign(i,j).
std::vector<double> center_loads(const Instance& inst, const Matrix& assign);

// One evaluated invariant: value compared against bound, e.g. "Z_4 >= 0.75".
struct PropertyCheck {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=", "=", ">"
  bool pass = false;
};

inline bool all_pass(const std::vector<PropertyCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace ckm
