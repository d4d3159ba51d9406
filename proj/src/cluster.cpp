#include "ckm/cluster.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ckm {

int ClusterStructure::core_slot(int location) const {
  for (std::size_t s = 0; s < cores.size(); ++s) {
    if (cores[s] == location) return static_cast<int>(s);
  }
  return -1;
}

ClusterStructure run_clustering(const Instance& inst, const FractionalSolution& frac,
                                double alpha) {
  if (alpha < 4.0) throw std::invalid_argument("clustering requires alpha >= 4");
  const int n = inst.n;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return frac.conn_cost[a] < frac.conn_cost[b];
  });

  ClusterStructure cs;
  cs.alpha = alpha;
  cs.core_of.assign(n, -1);

  for (const int j : order) {
    const double radius = 2.0 * alpha * frac.conn_cost[j];
    bool covered = false;
    for (const int l : cs.cores) {
      // kTol slack on the rejection side only: a location within tolerance of
      // the radius does not become a new core, keeping core separation strict.
      if (inst.cost(l, j) <= radius + kTol) {
        covered = true;
        break;
      }
    }
    if (!covered) cs.cores.push_back(j);
  }

  for (int j = 0; j < n; ++j) {
    int best = cs.cores.front();
    for (const int l : cs.cores) {
      if (inst.cost(l, j) < inst.cost(best, j) ||
          (inst.cost(l, j) == inst.cost(best, j) && l < best)) {
        best = l;
      }
    }
    cs.core_of[j] = best;
  }

  cs.members.assign(cs.cores.size(), {});
  cs.mass.assign(cs.cores.size(), 0.0);
  for (std::size_t s = 0; s < cs.cores.size(); ++s) {
    const int core = cs.cores[s];
    for (int j = 0; j < n; ++j) {
      if (cs.core_of[j] == core && j != core) cs.members[s].push_back(j);
    }
    std::stable_sort(cs.members[s].begin(), cs.members[s].end(), [&](int a, int b) {
      return inst.cost(core, a) < inst.cost(core, b);
    });
    cs.members[s].insert(cs.members[s].begin(), core);
    for (const int j : cs.members[s]) cs.mass[s] += frac.y[j];
  }
  return cs;
}

std::vector<PropertyCheck> check_cluster_properties(const Instance& inst,
                                                    const FractionalSolution& frac,
                                                    const ClusterStructure& cs) {
  std::vector<PropertyCheck> checks;
  const double alpha = cs.alpha;

  for (std::size_t s = 0; s < cs.cores.size(); ++s) {
    const int l = cs.cores[s];
    for (const int j : cs.members[s]) {
      std::ostringstream label;
      label << "member radius c(" << l << "," << j << ") <= 2a*C_" << j;
      const double bound = 2.0 * alpha * frac.conn_cost[j];
      checks.push_back({label.str(), inst.cost(l, j), bound, "<=",
                        inst.cost(l, j) <= bound + kTol});
    }
  }
  for (std::size_t s = 0; s < cs.cores.size(); ++s) {
    for (std::size_t t = s + 1; t < cs.cores.size(); ++t) {
      const int l = cs.cores[s];
      const int lp = cs.cores[t];
      std::ostringstream label;
      label << "core separation c(" << l << "," << lp << ") > 2a*max(C)";
      const double bound =
          2.0 * alpha * std::max(frac.conn_cost[l], frac.conn_cost[lp]);
      checks.push_back({label.str(), inst.cost(l, lp), bound, ">",
                        inst.cost(l, lp) > bound - kTol});
    }
  }
  const double mass_bound = (alpha - 1.0) / alpha;
  for (std::size_t s = 0; s < cs.cores.size(); ++s) {
    std::ostringstream label;
    label << "cluster mass Z_" << cs.cores[s] << " >= (a-1)/a";
    checks.push_back({label.str(), cs.mass[s], mass_bound, ">=",
                      cs.mass[s] >= mass_bound - kTol});
  }
  {
    std::size_t covered = 0;
    for (std::size_t s = 0; s < cs.cores.size(); ++s) covered += cs.members[s].size();
    bool each_once = covered == static_cast<std::size_t>(inst.n);
    for (int j = 0; j < inst.n && each_once; ++j) {
      each_once = cs.core_of[j] >= 0 && cs.core_slot(cs.core_of[j]) >= 0;
    }
    checks.push_back({"clusters partition N", static_cast<double>(covered),
                      static_cast<double>(inst.n), "=", each_once});
  }
  return checks;
}

}  // namespace ckm
