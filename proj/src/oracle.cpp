#include "ckm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ckm/lp.hpp"
#include "ckm/transport.hpp"

namespace ckm {

namespace {

// Visits all size-`size` subsets of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int size, Fn&& fn) {
  std::vector<int> subset(size);
  for (int i = 0; i < size; ++i) subset[i] = i;
  while (true) {
    fn(subset);
    int i = size - 1;
    while (i >= 0 && subset[i] == n - size + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
  }
}

}  // namespace

std::optional<IntegralSolution> exact_opt(const Instance& inst, double cap_scale) {
  if (inst.n > 16) {
    throw std::invalid_argument("exact_opt: enumeration guard allows n <= 16");
  }
  const double total = inst.total_demand();
  const double per_center = cap_scale * inst.capacity;

  std::optional<IntegralSolution> best;
  const int max_size = std::min(inst.k, inst.n);
  for (int size = 1; size <= max_size; ++size) {
    if (static_cast<double>(size) * per_center + kTol < total) continue;
    for_each_subset(inst.n, size, [&](const std::vector<int>& subset) {
      const auto sol = solve_transportation(inst, subset, cap_scale);
      if (sol && (!best || sol->cost < best->cost - kTol)) best = sol;
    });
  }
  return best;
}

double exact_lp_check(const Instance& inst) {
  if (inst.n > 6) {
    throw std::invalid_argument("exact_lp_check: guard allows n <= 6");
  }
  const LpProblem p = build_ckm_lp(inst);
  const LpResult r = solve_lp(permute_lp(p, 0x51a7e5eedULL));
  if (r.status == LpStatus::Infeasible) {
    throw InfeasibleError("exact_lp_check: LP infeasible");
  }
  if (r.status != LpStatus::Optimal) {
    throw NumericalMarginError("exact_lp_check: no optimum reached");
  }
  return r.objective;
}

std::optional<double> exact_ckl_opt(const CklInstance& inst) {
  if (inst.f > 16) {
    throw std::invalid_argument("exact_ckl_opt: enumeration guard allows |F| <= 16");
  }
  const double total = inst.total_demand();

  Matrix fd_cost(inst.f, inst.m);
  for (int i = 0; i < inst.f; ++i) {
    for (int j = 0; j < inst.m; ++j) fd_cost(i, j) = inst.fd(i, j);
  }

  std::optional<double> best;
  const int max_size = std::min(inst.k, inst.f);
  for (int size = 1; size <= max_size; ++size) {
    if (static_cast<double>(size) * inst.capacity + kTol < total) continue;
    for_each_subset(inst.f, size, [&](const std::vector<int>& subset) {
      const auto sol =
          solve_transportation_costs(fd_cost, subset, inst.demand, inst.capacity);
      if (sol && (!best || sol->cost < *best - kTol)) best = sol->cost;
    });
  }
  return best;
}

}  // namespace ckm
