#pragma once

#include <vector>

#include "ckm/concentrate.hpp"
#include "ckm/model.hpp"

namespace ckm {

// Step-3 output: the reshaped opening values and the bookkeeping needed by
// the star stage.
struct RedistributedSolution {
  std::vector<double> yhat;  // length n; equals y' outside N2
  std::vector<int> s_map;    // length n; s(i) for i in N2, -1 elsewhere
  std::vector<int> order;    // N2 sorted by nondecreasing d'_i * c(s(i), i)
  double residual = 0.0;     // Y' at termination
};

// Nearest other candidate center for each i in N2: argmin over
// (N1 ∪ N2) \ {i} of c(s,i), ties by lowest index. Requires |N1 ∪ N2| >= 2.
std::vector<int> compute_s_map(const Instance& inst, const ConcentratedSolution& conc);

// The raw redistribution sweep on opening values already sorted into the
// order i_1..i_v: initialize every entry to (alpha-1)/alpha, then promote
// entries to 1 from the back while the conserved surplus lasts, drawing the
// final fraction from the first entry. Mass is conserved exactly. Throws
// NumericalMarginError if the sweep would need to touch i_1, which cannot
// happen when sum(y) <= v - 1.
std::vector<double> redistribute_values(const std::vector<double>& y_in_order, double alpha);

// Full Step 3. Preconditions: the easy case did not fire, so
// Y <= |N2| - 1 (throws std::logic_error otherwise), and |N1 ∪ N2| >= 2.
// Aborts with NumericalMarginError when yhat_{i_1} ends within kTol of the
// (alpha-2)/alpha boundary.
RedistributedSolution run_redistribute(const Instance& inst,
                                       const ConcentratedSolution& conc, double alpha);

// Properties 3a-3e.
std::vector<PropertyCheck> check_redistribute_properties(const Instance& inst,
                                                         const ConcentratedSolution& conc,
                                                         const RedistributedSolution& red,
                                                         double alpha);

}  // namespace ckm
