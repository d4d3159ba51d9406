#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ckm/cluster.hpp"
#include "ckm/concentrate.hpp"
#include "ckm/model.hpp"
#include "ckm/redistribute.hpp"
#include "ckm/stars.hpp"
#include "ckm/verify.hpp"

namespace ckm {

struct StarTrace {
  int root = -1;
  std::vector<int> children;
  double mass = 0.0;  // R_t
  int case_label = 0;
  std::vector<int> opened;
  std::vector<std::pair<int, int>> reassigned;
};

// Every intermediate the solver produced for one run, captured verbatim so
// the rendered document shows exactly the values the pipeline computed.
struct Trace {
  std::string path;  // "easy" | "full" | "trivial-single"
  double alpha = 4.0;
  int n = 0;
  int k = 0;
  double c_lp = 0.0;

  std::optional<ClusterStructure> clusters;
  std::vector<PropertyCheck> step1_checks;

  std::vector<double> yprime;
  std::vector<double> dprime;
  std::vector<PropertyCheck> step2_checks;

  // Easy-case decision: compares |N2| - 1 against Y.
  double easy_lhs = 0.0;
  double easy_rhs = 0.0;
  bool easy_applicable = false;
  std::vector<PropertyCheck> easy_checks;

  std::vector<double> yhat;
  std::vector<int> order;
  std::vector<int> s_map;
  std::vector<PropertyCheck> step3_checks;

  std::vector<StarTrace> stars;
  std::vector<int> isolated_open;
  std::vector<PropertyCheck> step4_checks;

  GuaranteeReport report;
};

// Plain-text rendering of a trace: one section per pipeline step, each
// invariant row showing the computed value against its bound. Pure
// formatting; nothing is recomputed.
std::string render_trace(const Trace& trace);

}  // namespace ckm
