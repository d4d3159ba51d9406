#pragma once

#include <utility>

#include "ckm/model.hpp"

namespace ckm {

// Machine-checked restatement of the approximation guarantees: at most k
// centers, every load at most (2 + 2/alpha) M, cost at most
// (6 + 10 alpha) C_LP, and full demand coverage.
struct GuaranteeReport {
  bool centers_ok = false;
  bool load_ok = false;
  bool cost_ok = false;
  bool coverage_ok = false;
  int centers_open = 0;
  double max_load_ratio = 0.0;
  double load_bound = 0.0;  // 2 + 2/alpha
  double cost = 0.0;
  double c_lp = 0.0;
  double cost_bound_factor = 0.0;  // 6 + 10 alpha
  double cost_ratio = 0.0;         // cost / C_LP (0 when C_LP = 0)

  bool all_ok() const { return centers_ok && load_ok && cost_ok && coverage_ok; }
};

GuaranteeReport verify_guarantees(const Instance& inst, const FractionalSolution& frac,
                                  const IntegralSolution& sol, double alpha);

// Stricter bounds available on the easy-case branch: load at most 2M and
// cost at most (3 + 4 alpha) C_LP.
GuaranteeReport verify_easy_case_guarantees(const Instance& inst,
                                            const FractionalSolution& frac,
                                            const IntegralSolution& sol, double alpha);

// Parameter tradeoff: for a permitted capacity violation v > 2, the smallest
// usable alpha is max(4, 2/(v-2)) and the resulting approximation ratio is
// 6 + 10 alpha. Throws std::invalid_argument for v <= 2.
std::pair<double, double> best_ratio_for_violation(double v);

}  // namespace ckm
