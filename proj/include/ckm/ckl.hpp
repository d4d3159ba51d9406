#pragma once

#include <string>
#include <vector>

#include "ckm/model.hpp"

namespace ckm {

// Facility/client model: candidate centers live at facilities F, demand at
// clients D. The cost matrix carries facility-facility distances (needed by
// the reduction) followed by facility-client distances.
struct CklInstance {
  int f = 0;  // |F|
  int m = 0;  // |D|
  Matrix cost;                 // f x (f + m): [F x F | F x D]
  std::vector<double> demand;  // per client, length m
  double capacity = 0.0;
  int k = 0;

  double ff(int i, int j) const { return cost(i, j); }
  double fd(int i, int j) const { return cost(i, f + j); }
  double total_demand() const;
};

// Metric axioms over the observable part of F ∪ D plus the demand/budget
// feasibility check. Empty report means valid.
std::vector<std::string> validate_ckl_instance(const CklInstance& inst);

struct CklSolution {
  std::vector<int> open;  // per facility
  Matrix assign;          // f x m over clients
  double cost = 0.0;
  double max_load_ratio = 0.0;
};

// Output of the CKL -> CKM reduction: the induced location instance over F
// with demands d1_i = sum_j d_j x0(i,j), plus the fractional CKL solution it
// was derived from.
struct CklReduction {
  Instance ckm;     // N := F, demand d1
  Matrix x0;        // f x m, LP-optimal CKL assignment (zero-demand clients
                    // pinned to their nearest facility)
  std::vector<double> y0;
  double cost0 = 0.0;  // sum_j d_j c(i,j) x0(i,j)
};

// Solves the CKL LP relaxation and builds the induced CKM instance. Throws
// InfeasibleError when total demand exceeds k*M.
CklReduction reduce_to_ckm(const CklInstance& inst);

// Composes a CKM solution for the induced demands back to clients:
// x*(i,j) = sum_{i'} x1(i,i') x0(i',j), y* = y1.
CklSolution compose_back(const CklInstance& inst, const IntegralSolution& ckm_sol,
                         const Matrix& x0);

}  // namespace ckm
