#include "ckm/ckl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ckm/lp.hpp"

namespace ckm {

double CklInstance::total_demand() const {
  return std::accumulate(demand.begin(), demand.end(), 0.0);
}

std::vector<std::string> validate_ckl_instance(const CklInstance& inst) {
  std::vector<std::string> report;
  if (inst.f < 1) report.push_back("at least one facility required");
  if (inst.m < 1) report.push_back("at least one client required");
  if (!report.empty()) return report;
  if (inst.cost.rows() != static_cast<std::size_t>(inst.f) ||
      inst.cost.cols() != static_cast<std::size_t>(inst.f + inst.m)) {
    report.push_back("cost matrix must be f x (f + |D|)");
    return report;
  }
  if (inst.demand.size() != static_cast<std::size_t>(inst.m)) {
    report.push_back("demand length must equal the number of clients");
    return report;
  }
  if (!(inst.capacity > 0.0)) report.push_back("capacity must be positive");
  if (inst.k < 1) report.push_back("k must be a positive integer");

  for (int i = 0; i < inst.f; ++i) {
    if (std::abs(inst.ff(i, i)) > kTol) report.push_back("nonzero facility self-distance");
    for (int j = 0; j < inst.f; ++j) {
      if (inst.ff(i, j) < -kTol) report.push_back("negative facility-facility cost");
      if (j > i && std::abs(inst.ff(i, j) - inst.ff(j, i)) > kTol) {
        report.push_back("asymmetric facility-facility cost");
      }
    }
    for (int j = 0; j < inst.m; ++j) {
      if (inst.fd(i, j) < -kTol) report.push_back("negative facility-client cost");
    }
  }
  // Triangle inequalities over all triples with at most one client (the
  // client-client block is not part of the input).
  for (int i = 0; i < inst.f; ++i) {
    for (int t = 0; t < inst.f; ++t) {
      if (t == i) continue;
      for (int j = 0; j < inst.f; ++j) {
        if (j == i || j == t) continue;
        if (inst.ff(i, t) + inst.ff(t, j) < inst.ff(i, j) - kTol) {
          report.push_back("triangle inequality violated among facilities");
        }
      }
      for (int j = 0; j < inst.m; ++j) {
        if (inst.ff(i, t) + inst.fd(t, j) < inst.fd(i, j) - kTol) {
          report.push_back("triangle inequality violated (facility-facility-client)");
        }
      }
    }
    for (int t = 0; t < inst.m; ++t) {
      for (int j = 0; j < inst.f; ++j) {
        if (j == i) continue;
        if (inst.fd(i, t) + inst.fd(j, t) < inst.ff(i, j) - kTol) {
          report.push_back("triangle inequality violated (facility-client-facility)");
        }
      }
    }
  }
  for (int j = 0; j < inst.m; ++j) {
    if (inst.demand[j] < -kTol) report.push_back("negative client demand");
  }
  const double total = inst.total_demand();
  if (total > static_cast<double>(inst.k) * inst.capacity + kTol) {
    std::ostringstream os;
    os << "total demand " << total << " exceeds k*M = " << inst.k * inst.capacity;
    report.push_back(os.str());
  }
  return report;
}

CklReduction reduce_to_ckm(const CklInstance& inst) {
  const double total = inst.total_demand();
  if (total > static_cast<double>(inst.k) * inst.capacity + kTol) {
    throw InfeasibleError("CKL LP relaxation is infeasible (total demand exceeds k*M)");
  }

  // Zero-demand clients are dropped before the LP and pinned to their nearest
  // facility afterwards.
  std::vector<int> live;
  for (int j = 0; j < inst.m; ++j) {
    if (inst.demand[j] > 0.0) live.push_back(j);
  }
  const int ml = static_cast<int>(live.size());

  Matrix live_cost(inst.f, ml);
  std::vector<double> live_demand(ml);
  for (int j = 0; j < ml; ++j) {
    live_demand[j] = inst.demand[live[j]];
    for (int i = 0; i < inst.f; ++i) live_cost(i, j) = inst.fd(i, live[j]);
  }

  CklReduction red;
  red.x0 = Matrix(inst.f, inst.m);
  red.y0.assign(inst.f, 0.0);

  if (ml > 0) {
    const LpProblem p = build_capacitated_assignment_lp(inst.f, ml, live_cost, live_demand,
                                                        inst.capacity, inst.k);
    const LpResult r = solve_lp(p);
    if (r.status == LpStatus::Infeasible) {
      throw InfeasibleError("CKL LP relaxation is infeasible");
    }
    if (r.status != LpStatus::Optimal) {
      throw NumericalMarginError("CKL LP relaxation did not reach an optimum");
    }
    const auto snap = [](double v) {
      if (std::abs(v) <= kTol) return 0.0;
      if (std::abs(v - 1.0) <= kTol) return 1.0;
      return v;
    };
    for (int i = 0; i < inst.f; ++i) {
      for (int j = 0; j < ml; ++j) red.x0(i, live[j]) = snap(r.x[i * ml + j]);
      red.y0[i] = snap(r.x[inst.f * ml + i]);
    }
    for (int j = 0; j < ml; ++j) {
      double s = 0.0;
      for (int i = 0; i < inst.f; ++i) s += red.x0(i, live[j]);
      if (std::abs(s - 1.0) > 1e-6) {
        throw NumericalMarginError("CKL LP column deviates from 1 beyond repair");
      }
      if (s != 1.0) {
        for (int i = 0; i < inst.f; ++i) red.x0(i, live[j]) /= s;
      }
    }
  } else {
    // No demand at all: any single facility serves everything for free.
    red.y0[0] = 1.0;
  }
  for (int j = 0; j < inst.m; ++j) {
    if (inst.demand[j] > 0.0) continue;
    int nearest = 0;
    for (int i = 1; i < inst.f; ++i) {
      if (inst.fd(i, j) < inst.fd(nearest, j)) nearest = i;
    }
    red.x0(nearest, j) = 1.0;
  }

  red.cost0 = 0.0;
  for (int i = 0; i < inst.f; ++i) {
    for (int j = 0; j < inst.m; ++j) {
      if (red.x0(i, j) != 0.0) red.cost0 += inst.demand[j] * inst.fd(i, j) * red.x0(i, j);
    }
  }

  red.ckm.n = inst.f;
  red.ckm.cost = Matrix(inst.f, inst.f);
  for (int i = 0; i < inst.f; ++i) {
    for (int j = 0; j < inst.f; ++j) red.ckm.cost(i, j) = inst.ff(i, j);
  }
  red.ckm.demand.assign(inst.f, 0.0);
  for (int i = 0; i < inst.f; ++i) {
    double d1 = 0.0;
    for (int j = 0; j < inst.m; ++j) d1 += inst.demand[j] * red.x0(i, j);
    red.ckm.demand[i] = d1;
  }
  red.ckm.capacity = inst.capacity;
  red.ckm.k = inst.k;
  return red;
}

CklSolution compose_back(const CklInstance& inst, const IntegralSolution& ckm_sol,
                         const Matrix& x0) {
  CklSolution sol;
  sol.open = ckm_sol.open;
  sol.assign = Matrix(inst.f, inst.m);
  for (int i = 0; i < inst.f; ++i) {
    for (int j = 0; j < inst.m; ++j) {
      double v = 0.0;
      for (int ip = 0; ip < inst.f; ++ip) {
        if (ckm_sol.assign(i, ip) != 0.0 && x0(ip, j) != 0.0) {
          v += ckm_sol.assign(i, ip) * x0(ip, j);
        }
      }
      sol.assign(i, j) = v;
    }
  }
  sol.cost = 0.0;
  std::vector<double> loads(inst.f, 0.0);
  for (int i = 0; i < inst.f; ++i) {
    for (int j = 0; j < inst.m; ++j) {
      if (sol.assign(i, j) != 0.0) {
        sol.cost += inst.demand[j] * inst.fd(i, j) * sol.assign(i, j);
        loads[i] += inst.demand[j] * sol.assign(i, j);
      }
    }
  }
  sol.max_load_ratio = 0.0;
  for (int i = 0; i < inst.f; ++i) {
    sol.max_load_ratio = std::max(sol.max_load_ratio, loads[i] / inst.capacity);
  }
  return sol;
}

}  // namespace ckm
