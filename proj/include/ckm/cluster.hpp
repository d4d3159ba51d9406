#pragma once

#include <vector>

#include "ckm/model.hpp"

namespace ckm {

// Partition of the locations into clusters around greedily chosen cores.
struct ClusterStructure {
  double alpha = 4.0;
  std::vector<int> cores;                 // N', in selection order
  std::vector<int> core_of;               // length n: N'(j)
  std::vector<std::vector<int>> members;  // per core (parallel to cores); the
                                          // core first, then by (c_core, index)
  std::vector<double> mass;               // Z_l per core (parallel to cores)

  // Index into cores/members/mass for a core location, -1 if not a core.
  int core_slot(int location) const;
};

// Greedy clustering: locations in nondecreasing C_j order (ties by index)
// become cores unless an existing core lies within 2*alpha*C_j (checked with
// kTol slack on the rejection side); every location then joins its nearest
// core (ties by lowest core index). Requires alpha >= 4.
ClusterStructure run_clustering(const Instance& inst, const FractionalSolution& frac,
                                double alpha);

// Evaluates the four clustering properties: member radius c_lj <= 2*alpha*C_j,
// core separation c_ll' > 2*alpha*max(C_l, C_l'), cluster mass
// Z_l >= (alpha-1)/alpha, and that clusters partition the location set.
std::vector<PropertyCheck> check_cluster_properties(const Instance& inst,
                                                    const FractionalSolution& frac,
                                                    const ClusterStructure& clusters);

}  // namespace ckm
