#pragma once

#include <cstdint>
#include <optional>

#include "ckm/ckl.hpp"
#include "ckm/model.hpp"

namespace ckm {

enum class GenGeometry { Plane, UniformMatrix };

struct GenParams {
  int n = 8;
  std::uint64_t seed = 0;
  double demand_max = 10.0;
  std::optional<double> capacity;  // when unset: total_demand / (k * utilization)
  std::optional<int> k;            // when unset: max(1, n / 3)
  double utilization = 0.8;
  GenGeometry geometry = GenGeometry::Plane;
};

// Deterministic instance generator. Plane geometry draws points uniformly in
// the unit square with Euclidean costs (exactly metric); uniform-matrix draws
// symmetric costs in [1, 2], which satisfy the triangle inequality by
// construction. About one location in eight gets zero demand. With an
// explicit capacity, demands are redrawn up to a retry cap when they exceed
// k*M, then the instance is rejected with InfeasibleError.
Instance generate_instance(const GenParams& params);

struct CklGenParams {
  int facilities = 4;
  int clients = 6;
  std::uint64_t seed = 0;
  double demand_max = 10.0;
  std::optional<double> capacity;
  std::optional<int> k;
  double utilization = 0.8;
};

// Facility/client instance with both sets drawn in the unit square.
CklInstance generate_ckl_instance(const CklGenParams& params);

}  // namespace ckm
