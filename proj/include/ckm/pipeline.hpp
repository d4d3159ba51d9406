#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ckm/model.hpp"
#include "ckm/trace.hpp"
#include "ckm/verify.hpp"

namespace ckm {

struct PipelineOptions {
  // Evaluate the per-step invariant suites and record them (always on when a
  // trace is collected).
  bool collect_checks = false;
  // Throw NumericalMarginError if any per-step invariant fails.
  bool strict_checks = false;
  // Re-solve the transportation problem over the opened centers at capacity
  // (2 + 2/alpha) M and report the (usually lower) cost alongside the
  // guaranteed solution.
  bool refine_cost = false;
  // Capture the full per-step trace.
  bool collect_trace = false;
  // Invoked after every mass transfer in Step 2 (test instrumentation).
  TransferHook transfer_hook;
};

struct PipelineResult {
  IntegralSolution solution;
  FractionalSolution fractional;
  std::string path;  // "easy" | "full" | "trivial-single"
  GuaranteeReport report;
  std::optional<double> refined_cost;
  std::vector<PropertyCheck> checks;  // all per-step checks when collected
  std::optional<Trace> trace;
};

// The full rounding pipeline for a validated instance: LP relaxation,
// clustering, in-cluster concentration, the easy-case shortcut or the
// redistribution + star rounding path, and the guarantee verification.
// Throws std::invalid_argument for alpha < 4 and InfeasibleError when the LP
// has no solution.
PipelineResult solve_ckm(const Instance& inst, double alpha,
                         const PipelineOptions& options = {});

// Variant for callers that already hold the LP optimum (the benchmark runs
// several alphas against one LP solve).
PipelineResult solve_ckm_with_fractional(const Instance& inst,
                                         const FractionalSolution& frac, double alpha,
                                         const PipelineOptions& options = {});

}  // namespace ckm
