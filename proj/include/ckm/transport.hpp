#pragma once

#include <optional>
#include <vector>

#include "ckm/model.hpp"

namespace ckm {

struct TransportationResult {
  Matrix assign;  // nc x m, rows outside the open set are zero
  double cost = 0.0;
};

// Min-cost splittable assignment of all client demand to the open centers,
// each loaded at most `cap_per_center`. Returns nullopt when total demand
// exceeds |open| * cap_per_center. When capacity cannot bind, short-circuits
// to nearest-open-center assignment; otherwise solves the flow LP with the
// shared simplex kernel.
std::optional<TransportationResult> solve_transportation_costs(
    const Matrix& cost, const std::vector<int>& open,
    const std::vector<double>& demand, double cap_per_center);

// CKM wrapper: assignment of the instance's demands to open_set with loads
// at most cap_scale * M, packaged as an IntegralSolution.
std::optional<IntegralSolution> solve_transportation(const Instance& inst,
                                                     const std::vector<int>& open_set,
                                                     double cap_scale);

}  // namespace ckm
