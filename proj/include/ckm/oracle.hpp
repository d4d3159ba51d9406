#pragma once

#include <optional>

#include "ckm/ckl.hpp"
#include "ckm/model.hpp"

namespace ckm {

// Exact optimum by exhausting center subsets of size at most k (sizes whose
// total capacity cannot cover demand are pruned) with a transportation solve
// per subset. Guarded to n <= 16; throws std::invalid_argument beyond.
// nullopt when no subset is feasible at this cap_scale.
std::optional<IntegralSolution> exact_opt(const Instance& inst, double cap_scale);

// Recomputes the LP optimum through an independently permuted formulation,
// forcing a different pivot path through the solver. Guarded to n <= 6.
double exact_lp_check(const Instance& inst);

// Exact CKL optimum over facility subsets. Guarded to |F| <= 16.
std::optional<double> exact_ckl_opt(const CklInstance& inst);

}  // namespace ckm
