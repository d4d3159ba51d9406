#include "ckm/concentrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ckm {

namespace {

bool is_fractional(double v) { return v > kTol && v < 1.0 - kTol; }

}  // namespace

void move(WorkingSolution& s, int j_a, int j_b, const TransferHook& hook) {
  double& ya = s.y[j_a];
  double& yb = s.y[j_b];
  const double delta = std::min(1.0 - ya, yb);
  if (delta <= 0.0) throw std::logic_error("move: delta <= 0, caller ordering bug");
  const double frac = delta / yb;
  const std::size_t n = s.x.cols();
  if (frac >= 1.0) {
    for (std::size_t j = 0; j < n; ++j) {
      s.x(j_a, j) += s.x(j_b, j);
      s.x(j_b, j) = 0.0;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double slice = frac * s.x(j_b, j);
      s.x(j_a, j) += slice;
      s.x(j_b, j) -= slice;
    }
  }
  ya += delta;
  yb -= delta;
  if (std::abs(ya - 1.0) <= kTol) ya = 1.0;
  if (std::abs(yb) <= kTol) yb = 0.0;
  if (hook) hook(s, j_a, j_b, frac);
}

void concentrate_cluster(WorkingSolution& s, std::span<const int> members,
                         const TransferHook& hook) {
  const int u = static_cast<int>(members.size());
  while (true) {
    bool any_fractional = false;
    for (const int j : members) {
      if (is_fractional(s.y[j])) {
        any_fractional = true;
        break;
      }
    }
    if (!any_fractional) return;

    int a = -1;
    for (int i = 0; i < u; ++i) {
      if (s.y[members[i]] < 1.0 - kTol) {
        a = i;
        break;
      }
    }
    // A fractional member is itself < 1, so a is always found here.
    int b = -1;
    for (int i = a + 1; i < u; ++i) {
      if (s.y[members[i]] > kTol) {
        b = i;
        break;
      }
    }

    if (a >= 0 && b >= 0) {
      move(s, members[a], members[b], hook);
      continue;
    }
    if (a >= 1) {
      // Terminal cluster: fold the trailing fractional opening into its
      // predecessor, which holds exactly 1 at this point.
      const int prev = members[a - 1];
      const int cur = members[a];
      s.y[prev] += s.y[cur];
      s.y[cur] = 0.0;
      for (std::size_t j = 0; j < s.x.cols(); ++j) {
        s.x(prev, j) += s.x(cur, j);
        s.x(cur, j) = 0.0;
      }
      if (hook) hook(s, prev, cur, 1.0);
    }
    return;
  }
}

ConcentratedSolution concentrate_all(const Instance& inst, const FractionalSolution& frac,
                                     const ClusterStructure& clusters,
                                     const TransferHook& hook) {
  WorkingSolution s{frac.x, frac.y};
  for (const auto& members : clusters.members) {
    concentrate_cluster(s, members, hook);
  }

  ConcentratedSolution conc;
  conc.alpha = clusters.alpha;
  conc.xprime = std::move(s.x);
  conc.yprime = std::move(s.y);
  const int n = inst.n;
  conc.dprime.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double di = 0.0;
    for (int j = 0; j < n; ++j) di += inst.demand[j] * conc.xprime(i, j);
    conc.dprime[i] = di;
  }
  for (int i = 0; i < n; ++i) {
    if (conc.yprime[i] >= 1.0 - kTol) {
      conc.n1.push_back(i);
    } else if (conc.yprime[i] > kTol) {
      conc.n2.push_back(i);
      conc.fractional_mass += conc.yprime[i];
    }
  }
  return conc;
}

std::optional<IntegralSolution> try_easy_case(const Instance& inst,
                                              const ConcentratedSolution& conc) {
  const double lhs = static_cast<double>(conc.n2.size()) - 1.0;
  if (!(conc.fractional_mass > lhs + kTol)) return std::nullopt;

  const int n = inst.n;
  IntegralSolution sol;
  sol.open.assign(n, 0);
  for (const int i : conc.n1) sol.open[i] = 1;
  for (const int i : conc.n2) sol.open[i] = 1;
  const int opened = static_cast<int>(conc.n1.size() + conc.n2.size());
  if (opened > inst.k) {
    throw NumericalMarginError("easy case opened more than k centers");
  }
  sol.assign = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    if (!sol.open[i]) continue;
    for (int j = 0; j < n; ++j) sol.assign(i, j) = conc.xprime(i, j);
  }
  sol.cost = solution_cost(inst, sol.assign);
  const auto loads = center_loads(inst, sol.assign);
  for (int i = 0; i < n; ++i) {
    sol.max_load_ratio = std::max(sol.max_load_ratio, loads[i] / inst.capacity);
  }
  return sol;
}

std::vector<PropertyCheck> check_concentrate_properties(const Instance& inst,
                                                        const FractionalSolution& frac,
                                                        const ConcentratedSolution& conc) {
  std::vector<PropertyCheck> checks;
  const int n = inst.n;
  const double alpha = conc.alpha;
  const double lo = (alpha - 1.0) / alpha;

  for (int i = 0; i < n; ++i) {
    const double yi = conc.yprime[i];
    std::ostringstream label;
    label << "y'_" << i << " in {0} U [(a-1)/a, 2)";
    const bool ok = yi == 0.0 || (yi >= lo - kTol && yi < 2.0);
    checks.push_back({label.str(), yi, lo, ">=", ok});
  }
  for (int i = 0; i < n; ++i) {
    double load = 0.0;
    for (int j = 0; j < n; ++j) load += inst.demand[j] * conc.xprime(i, j);
    std::ostringstream label;
    label << "load_" << i << " <= M*y'_" << i;
    const double bound = inst.capacity * conc.yprime[i];
    checks.push_back({label.str(), load, bound, "<=", load <= bound + kTol * (1.0 + bound)});
  }
  {
    double before = 0.0;
    double after = 0.0;
    for (int i = 0; i < n; ++i) {
      before += frac.y[i];
      after += conc.yprime[i];
    }
    checks.push_back({"sum y' = sum y", after, before, "=",
                      std::abs(after - before) <= kTol * (1.0 + std::abs(before))});
    checks.push_back({"sum y' <= k", after, static_cast<double>(inst.k), "<=",
                      after <= inst.k + kTol});
  }
  {
    bool coupling = true;
    double worst = 0.0;
    for (int i = 0; i < n && coupling; ++i) {
      for (int j = 0; j < n; ++j) {
        worst = std::max(worst, conc.xprime(i, j) - conc.yprime[i]);
        if (conc.xprime(i, j) > conc.yprime[i] + kTol) {
          coupling = false;
          break;
        }
      }
    }
    checks.push_back({"x' <= y' coupling", worst, 0.0, "<=", coupling});
  }
  {
    bool cols = true;
    for (int j = 0; j < n && cols; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += conc.xprime(i, j);
      if (std::abs(s - 1.0) > kTol) cols = false;
    }
    checks.push_back({"x' columns sum to 1", cols ? 1.0 : 0.0, 1.0, "=", cols});
  }
  {
    double dsum = 0.0;
    for (const double d : conc.dprime) dsum += d;
    const double total = inst.total_demand();
    checks.push_back({"sum d' = sum d", dsum, total, "=",
                      std::abs(dsum - total) <= kTol * (1.0 + total)});
  }
  return checks;
}

}  // namespace ckm
