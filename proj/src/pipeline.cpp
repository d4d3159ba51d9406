#include "ckm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ckm/cluster.hpp"
#include "ckm/concentrate.hpp"
#include "ckm/lp.hpp"
#include "ckm/redistribute.hpp"
#include "ckm/stars.hpp"
#include "ckm/transport.hpp"

namespace ckm {

namespace {

void append(std::vector<PropertyCheck>& into, const std::vector<PropertyCheck>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

std::vector<PropertyCheck> report_checks(const GuaranteeReport& rep, const std::string& tag) {
  std::vector<PropertyCheck> checks;
  checks.push_back({tag + ": centers <= k", static_cast<double>(rep.centers_open), 0.0,
                    "<=", rep.centers_ok});
  checks.push_back({tag + ": max load ratio <= bound", rep.max_load_ratio, rep.load_bound,
                    "<=", rep.load_ok});
  checks.push_back({tag + ": cost <= factor * C_LP", rep.cost,
                    rep.cost_bound_factor * rep.c_lp, "<=", rep.cost_ok});
  checks.push_back({tag + ": full coverage", rep.coverage_ok ? 1.0 : 0.0, 1.0, "=",
                    rep.coverage_ok});
  return checks;
}

IntegralSolution single_center_solution(const Instance& inst,
                                        const ConcentratedSolution& conc, int center) {
  IntegralSolution sol;
  sol.open.assign(inst.n, 0);
  sol.open[center] = 1;
  sol.assign = Matrix(inst.n, inst.n);
  for (int j = 0; j < inst.n; ++j) sol.assign(center, j) = conc.xprime(center, j);
  sol.cost = solution_cost(inst, sol.assign);
  const auto loads = center_loads(inst, sol.assign);
  sol.max_load_ratio = loads[center] / inst.capacity;
  return sol;
}

}  // namespace

PipelineResult solve_ckm_with_fractional(const Instance& inst,
                                         const FractionalSolution& frac, double alpha,
                                         const PipelineOptions& options) {
  if (alpha < 4.0) throw std::invalid_argument("alpha must be >= 4");
  const bool collect = options.collect_checks || options.collect_trace || options.strict_checks;

  PipelineResult result;
  result.fractional = frac;
  Trace trace;
  trace.alpha = alpha;
  trace.n = inst.n;
  trace.k = inst.k;
  trace.c_lp = frac.objective;

  const ClusterStructure clusters = run_clustering(inst, frac, alpha);
  if (collect) {
    trace.step1_checks = check_cluster_properties(inst, frac, clusters);
    append(result.checks, trace.step1_checks);
  }
  if (options.collect_trace) trace.clusters = clusters;

  const ConcentratedSolution conc =
      concentrate_all(inst, frac, clusters, options.transfer_hook);
  if (collect) {
    trace.step2_checks = check_concentrate_properties(inst, frac, conc);
    append(result.checks, trace.step2_checks);
  }
  trace.yprime = conc.yprime;
  trace.dprime = conc.dprime;
  trace.easy_lhs = static_cast<double>(conc.n2.size()) - 1.0;
  trace.easy_rhs = conc.fractional_mass;

  const std::size_t candidates = conc.n1.size() + conc.n2.size();
  if (candidates == 0) {
    throw std::logic_error("pipeline: no location carries opening mass");
  }

  if (candidates == 1) {
    result.path = "trivial-single";
    const int center = conc.n1.empty() ? conc.n2.front() : conc.n1.front();
    result.solution = single_center_solution(inst, conc, center);
  } else if (auto easy = try_easy_case(inst, conc)) {
    result.path = "easy";
    result.solution = std::move(*easy);
    trace.easy_applicable = true;
    if (collect) {
      const GuaranteeReport easy_rep =
          verify_easy_case_guarantees(inst, frac, result.solution, alpha);
      trace.easy_checks = report_checks(easy_rep, "easy case");
      append(result.checks, trace.easy_checks);
    }
  } else {
    result.path = "full";
    const RedistributedSolution red = run_redistribute(inst, conc, alpha);
    if (collect) {
      trace.step3_checks = check_redistribute_properties(inst, conc, red, alpha);
      append(result.checks, trace.step3_checks);
    }
    trace.yhat = red.yhat;
    trace.order = red.order;
    trace.s_map = red.s_map;

    const NnForest forest = build_forest(red, alpha);
    const StarDecomposition decomp = decompose_to_stars(inst, forest, red);
    std::vector<StarRounding> roundings;
    roundings.reserve(decomp.stars.size());
    for (const auto& star : decomp.stars) roundings.push_back(round_star(star, red, alpha));
    result.solution = assemble_integral(inst, conc, decomp, roundings);

    if (collect) {
      trace.step4_checks =
          check_star_properties(inst, conc, red, decomp, roundings, alpha, inst.k);
      append(result.checks, trace.step4_checks);
    }
    trace.isolated_open = decomp.isolated;
    for (std::size_t s = 0; s < decomp.stars.size(); ++s) {
      StarTrace st;
      st.root = decomp.stars[s].root;
      st.children = decomp.stars[s].children;
      st.mass = decomp.stars[s].mass;
      st.case_label = roundings[s].case_label;
      st.opened = roundings[s].opened;
      st.reassigned = roundings[s].reassigned;
      trace.stars.push_back(std::move(st));
    }
  }

  result.report = verify_guarantees(inst, frac, result.solution, alpha);
  trace.path = result.path;
  trace.report = result.report;

  if (options.strict_checks && !all_pass(result.checks)) {
    for (const auto& c : result.checks) {
      if (!c.pass) {
        throw NumericalMarginError("pipeline invariant failed: " + c.label);
      }
    }
  }

  if (options.refine_cost) {
    std::vector<int> opened;
    for (int i = 0; i < inst.n; ++i) {
      if (result.solution.open[i]) opened.push_back(i);
    }
    const auto refined = solve_transportation(inst, opened, 2.0 + 2.0 / alpha);
    if (refined) result.refined_cost = refined->cost;
  }

  if (options.collect_trace) result.trace = std::move(trace);
  return result;
}

PipelineResult solve_ckm(const Instance& inst, double alpha, const PipelineOptions& options) {
  if (alpha < 4.0) throw std::invalid_argument("alpha must be >= 4");
  const FractionalSolution frac = solve_ckm_fractional(inst);
  return solve_ckm_with_fractional(inst, frac, alpha, options);
}

}  // namespace ckm
