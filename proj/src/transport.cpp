#include "ckm/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ckm/lp.hpp"

namespace ckm {

namespace {

int nearest_open(const Matrix& cost, const std::vector<int>& open, int j) {
  int best = open.front();
  for (const int i : open) {
    if (cost(i, j) < cost(best, j) || (cost(i, j) == cost(best, j) && i < best)) best = i;
  }
  return best;
}

double assignment_cost(const Matrix& cost, const std::vector<double>& demand,
                       const Matrix& assign) {
  double total = 0.0;
  for (std::size_t i = 0; i < assign.rows(); ++i) {
    for (std::size_t j = 0; j < assign.cols(); ++j) {
      if (assign(i, j) != 0.0) total += demand[j] * cost(i, j) * assign(i, j);
    }
  }
  return total;
}

}  // namespace

std::optional<TransportationResult> solve_transportation_costs(
    const Matrix& cost, const std::vector<int>& open,
    const std::vector<double>& demand, double cap_per_center) {
  if (open.empty()) throw std::invalid_argument("transportation: open set must be nonempty");
  const int nc = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  const double total = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (total > cap_per_center * static_cast<double>(open.size()) + kTol) return std::nullopt;

  TransportationResult res;
  res.assign = Matrix(nc, m);

  // Nearest assignment is optimal for the uncapacitated relaxation; if it
  // happens to respect the caps it is optimal here too.
  {
    std::vector<double> loads(nc, 0.0);
    bool fits = true;
    for (int j = 0; j < m; ++j) {
      const int i = nearest_open(cost, open, j);
      res.assign(i, j) = 1.0;
      loads[i] += demand[j];
      if (loads[i] > cap_per_center) fits = false;
    }
    if (fits) {
      res.cost = assignment_cost(cost, demand, res.assign);
      return res;
    }
    res.assign = Matrix(nc, m);
  }

  std::vector<int> clients;  // positive-demand columns only
  for (int j = 0; j < m; ++j) {
    if (demand[j] > 0.0) clients.push_back(j);
  }
  const int s = static_cast<int>(open.size());
  const int mp = static_cast<int>(clients.size());

  LpProblem p;
  p.num_vars = s * mp;
  p.objective.assign(p.num_vars, 0.0);
  const auto zvar = [mp](int si, int jp) { return si * mp + jp; };
  for (int si = 0; si < s; ++si) {
    for (int jp = 0; jp < mp; ++jp) {
      p.objective[zvar(si, jp)] = demand[clients[jp]] * cost(open[si], clients[jp]);
    }
  }
  for (int jp = 0; jp < mp; ++jp) {
    LpRow row;
    row.sense = RowSense::Eq;
    row.rhs = 1.0;
    for (int si = 0; si < s; ++si) row.coeffs.emplace_back(zvar(si, jp), 1.0);
    p.rows.push_back(std::move(row));
  }
  for (int si = 0; si < s; ++si) {
    LpRow row;
    row.sense = RowSense::LessEq;
    row.rhs = cap_per_center;
    for (int jp = 0; jp < mp; ++jp) {
      row.coeffs.emplace_back(zvar(si, jp), demand[clients[jp]]);
    }
    p.rows.push_back(std::move(row));
  }

  const LpResult r = solve_lp(p);
  if (r.status == LpStatus::Infeasible) return std::nullopt;
  if (r.status != LpStatus::Optimal) {
    throw NumericalMarginError("transportation LP did not reach an optimum");
  }

  for (int si = 0; si < s; ++si) {
    for (int jp = 0; jp < mp; ++jp) {
      double v = r.x[zvar(si, jp)];
      if (std::abs(v) <= kTol) v = 0.0;
      if (std::abs(v - 1.0) <= kTol) v = 1.0;
      res.assign(open[si], clients[jp]) = v;
    }
  }
  for (const int j : clients) {
    double sum = 0.0;
    for (const int i : open) sum += res.assign(i, j);
    if (std::abs(sum - 1.0) > 1e-6) {
      throw NumericalMarginError("transportation column deviates from 1 beyond repair");
    }
    if (sum != 1.0) {
      for (const int i : open) res.assign(i, j) /= sum;
    }
  }
  for (int j = 0; j < m; ++j) {
    if (demand[j] == 0.0) res.assign(nearest_open(cost, open, j), j) = 1.0;
  }
  res.cost = assignment_cost(cost, demand, res.assign);
  return res;
}

std::optional<IntegralSolution> solve_transportation(const Instance& inst,
                                                     const std::vector<int>& open_set,
                                                     double cap_scale) {
  auto t = solve_transportation_costs(inst.cost, open_set, inst.demand,
                                      cap_scale * inst.capacity);
  if (!t) return std::nullopt;
  IntegralSolution sol;
  sol.open.assign(inst.n, 0);
  for (const int i : open_set) sol.open[i] = 1;
  sol.assign = std::move(t->assign);
  sol.cost = t->cost;
  const auto loads = center_loads(inst, sol.assign);
  sol.max_load_ratio = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    sol.max_load_ratio = std::max(sol.max_load_ratio, loads[i] / inst.capacity);
  }
  return sol;
}

}  // namespace ckm
