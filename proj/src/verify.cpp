#include "ckm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ckm {

namespace {

GuaranteeReport verify_with_bounds(const Instance& inst, const FractionalSolution& frac,
                                   const IntegralSolution& sol, double load_factor,
                                   double cost_factor) {
  GuaranteeReport rep;
  const int n = inst.n;

  rep.centers_open = 0;
  for (const int o : sol.open) rep.centers_open += o;
  rep.centers_ok = rep.centers_open <= inst.k;

  const auto loads = center_loads(inst, sol.assign);
  rep.load_bound = load_factor;
  rep.max_load_ratio = 0.0;
  rep.load_ok = true;
  for (int i = 0; i < n; ++i) {
    const double ratio = loads[i] / inst.capacity;
    rep.max_load_ratio = std::max(rep.max_load_ratio, ratio);
    if (loads[i] > load_factor * inst.capacity + kTol) rep.load_ok = false;
    if (loads[i] > kTol && !sol.open[i]) rep.load_ok = false;
  }

  rep.cost = sol.cost;
  rep.c_lp = frac.objective;
  rep.cost_bound_factor = cost_factor;
  rep.cost_ratio = rep.c_lp > 0.0 ? rep.cost / rep.c_lp : 0.0;
  const double bound = cost_factor * rep.c_lp;
  rep.cost_ok = rep.cost <= bound * (1.0 + kCostRelTol) + kTol;

  rep.coverage_ok = true;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) {
      col += sol.assign(i, j);
      if (sol.assign(i, j) > kTol && !sol.open[i]) rep.coverage_ok = false;
    }
    if (std::abs(col - 1.0) > kTol) rep.coverage_ok = false;
  }
  return rep;
}

}  // namespace

GuaranteeReport verify_guarantees(const Instance& inst, const FractionalSolution& frac,
                                  const IntegralSolution& sol, double alpha) {
  return verify_with_bounds(inst, frac, sol, 2.0 + 2.0 / alpha, 6.0 + 10.0 * alpha);
}

GuaranteeReport verify_easy_case_guarantees(const Instance& inst,
                                            const FractionalSolution& frac,
                                            const IntegralSolution& sol, double alpha) {
  return verify_with_bounds(inst, frac, sol, 2.0, 3.0 + 4.0 * alpha);
}

std::pair<double, double> best_ratio_for_violation(double v) {
  if (!(v > 2.0)) {
    throw std::invalid_argument("capacity violation below 2 is unachievable");
  }
  const double alpha = std::max(4.0, 2.0 / (v - 2.0));
  return {alpha, 6.0 + 10.0 * alpha};
}

}  // namespace ckm
