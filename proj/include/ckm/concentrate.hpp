#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ckm/cluster.hpp"
#include "ckm/model.hpp"

namespace ckm {

// The evolving (x', y') pair mutated by the mass-transfer procedures.
struct WorkingSolution {
  Matrix x;
  std::vector<double> y;
};

// Observer invoked after each mass transfer; `row_fraction` is the share of
// the source row that moved to `to` (delta / y'_from for a move, 1.0 for the
// final merge of a terminal cluster). Used by tests to check the transfer
// invariants after every step and to track demand provenance.
using TransferHook =
    std::function<void(const WorkingSolution&, int to, int from, double row_fraction)>;

// Moves delta = min(1 - y'_a, y'_b) of opening mass from j_b to j_a and
// rescales the x' rows accordingly. Throws std::logic_error when delta <= 0
// (caller ordering bug).
void move(WorkingSolution& s, int j_a, int j_b, const TransferHook& hook = nullptr);

// Concentrates one cluster given its members in nondecreasing distance-from-
// core order (core first). Non-terminal clusters end with all mass on the
// core; terminal clusters end with every member at 0 or >= 1, at most one in
// [1, 2) created by the final merge.
void concentrate_cluster(WorkingSolution& s, std::span<const int> members_in_order,
                         const TransferHook& hook = nullptr);

// Result of Step 2 over all clusters.
struct ConcentratedSolution {
  Matrix xprime;
  std::vector<double> yprime;
  std::vector<double> dprime;  // d'_i = sum_j d_j x'(i,j)
  std::vector<int> n1;         // { i : y'_i >= 1 }, ascending
  std::vector<int> n2;         // { i : y'_i in [(alpha-1)/alpha, 1) }, ascending
  double fractional_mass = 0.0;  // Y = sum over n2 of y'
  double alpha = 4.0;
};

ConcentratedSolution concentrate_all(const Instance& inst, const FractionalSolution& frac,
                                     const ClusterStructure& clusters,
                                     const TransferHook& hook = nullptr);

// Lemma-5 shortcut: when |N2| - 1 < Y, opening all of N1 ∪ N2 is feasible
// within budget at capacity violation 2. Returns the assembled solution, or
// nullopt when the main rounding path must run.
std::optional<IntegralSolution> try_easy_case(const Instance& inst,
                                              const ConcentratedSolution& conc);

// Properties 2a-2c plus exact demand conservation of d'.
std::vector<PropertyCheck> check_concentrate_properties(const Instance& inst,
                                                        const FractionalSolution& frac,
                                                        const ConcentratedSolution& conc);

}  // namespace ckm
