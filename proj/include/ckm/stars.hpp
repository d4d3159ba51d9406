#pragma once

#include <vector>

#include "ckm/concentrate.hpp"
#include "ckm/model.hpp"
#include "ckm/redistribute.hpp"

namespace ckm {

// Nearest-neighbor forest over the fractionally opened locations. Every
// i in N2hat points at s(i); 2-cycles (the only kind a deterministic nearest
// map produces) are broken at their lowest-index node.
struct NnForest {
  std::vector<int> n1hat;                  // { i : yhat_i in [1, 2) }, ascending
  std::vector<int> n2hat;                  // { i : yhat_i fractional }, ascending
  std::vector<int> parent;                 // length n, -1 when no parent
  std::vector<std::vector<int>> children;  // length n
  std::vector<int> roots;                  // tree roots, ascending
};

NnForest build_forest(const RedistributedSolution& red, double alpha);

struct Star {
  int root = -1;
  std::vector<int> children;  // sorted by (c(root, .), index)
  double mass = 0.0;          // R_t = yhat_root + sum of children yhat
};

struct StarDecomposition {
  std::vector<Star> stars;
  std::vector<int> isolated;  // N1hat nodes in no star, ascending
};

// Procedure-5 strip-mining of every tree: repeatedly remove the star rooted
// at the parent of a deepest leaf (ties by lowest index); a leftover single
// fractional node joins the star rooted at its nearest neighbor, a leftover
// N1hat node is opened in isolation.
StarDecomposition decompose_to_stars(const Instance& inst, const NnForest& forest,
                                     const RedistributedSolution& red);

struct StarRounding {
  std::vector<int> opened;
  std::vector<std::pair<int, int>> reassigned;  // (closed location, its server)
  int case_label = 0;                           // 1..4
};

// The four rounding cases, keyed on child parity and the root's opening
// value; roots within kTol of 1 + 2/alpha take the more generous odd case.
// Throws std::logic_error for a fractional root without children.
StarRounding round_star(const Star& star, const RedistributedSolution& red, double alpha);

// Opens every rounded center plus the isolated locations, self-serves d',
// reroutes closed locations through their star server, and composes the
// final assignment for the original demands via x'.
IntegralSolution assemble_integral(const Instance& inst, const ConcentratedSolution& conc,
                                   const StarDecomposition& decomp,
                                   const std::vector<StarRounding>& roundings);

// Per-star mass bounds, opened-count vs floor(R_t), per-center d' loads
// against (2 + 2/alpha) M, the global center count, and the per-reassignment
// distance bound c(r(i), i) <= 2 c(s(i), i).
std::vector<PropertyCheck> check_star_properties(const Instance& inst,
                                                 const ConcentratedSolution& conc,
                                                 const RedistributedSolution& red,
                                                 const StarDecomposition& decomp,
                                                 const std::vector<StarRounding>& roundings,
                                                 double alpha, int k);

}  // namespace ckm
