#pragma once

#include <utility>
#include <vector>

#include "ckm/model.hpp"

namespace ckm::testing {

// Euclidean instance over 2-d points (always a valid metric).
Instance from_points(const std::vector<std::pair<double, double>>& pts,
                     std::vector<double> demand, double capacity, int k);

// Instance from an explicit cost matrix given as nested initializer-friendly
// rows; the caller is responsible for metric validity.
Instance from_costs(const std::vector<std::vector<double>>& cost,
                    std::vector<double> demand, double capacity, int k);

// Points on a line at the given coordinates.
Instance collinear(const std::vector<double>& positions, std::vector<double> demand,
                   double capacity, int k);

// Deterministic 3x3-grid instance whose LP optimum forces nine non-terminal
// cluster cores, driving the pipeline down the redistribution/star path at
// alpha = 4 (demand 0.88 per point, M = 1, k = 8).
Instance grid_full_path();

// A hand-built instance plus a feasible (not LP-optimal) fractional solution.
// Every property the pipeline checks only needs feasibility of the input, so
// these fixtures drive the redistribution/star path deterministically, which
// uniform random instances at small n almost never reach at alpha = 4.
struct SyntheticRun {
  Instance inst;
  FractionalSolution frac;
};

// Six far-apart islands of paired points; each point keeps 0.88 of its own
// demand and ships 0.12 to its island partner. All twelve locations become
// non-terminal singleton cores, so the sweep runs and produces 2-cycle stars
// (odd stars with fractional roots, rounding case 4).
SyntheticRun paired_islands();

// Islands plus a central site {t; c1, c2} with t fully open (y_t = 1) and two
// fractional satellites pointing at it: an even star with an integral root
// (rounding case 1).
SyntheticRun star_site_integral_root();

// Central site with fractional t in a 2-cycle with c1 and a second child c2:
// an even star with a fractional root (rounding case 2).
SyntheticRun star_site_fractional_root();

// Central site {u, w} merging into a terminal y' = 1.55 root with one
// fractional child: an odd star with a tall root (rounding case 3).
SyntheticRun star_site_tall_root();

}  // namespace ckm::testing
