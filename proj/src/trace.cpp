#include "ckm/trace.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace ckm {

namespace {

void heading(std::ostringstream& os, const std::string& text) {
  os << text << "\n" << std::string(text.size(), '-') << "\n";
}

void check_table(std::ostringstream& os, const std::vector<PropertyCheck>& checks) {
  if (checks.empty()) {
    os << "  (no checks on this path)\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.label.size());
  for (const auto& c : checks) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << c.label << "  "
       << std::right << std::setw(14) << c.value << " " << c.relation << " "
       << std::setw(14) << c.bound << "  " << (c.pass ? "ok" : "FAIL") << "\n";
  }
}

template <typename T>
void value_row(std::ostringstream& os, const std::string& name, const std::vector<T>& values) {
  os << "  " << name << ":";
  for (const auto& v : values) os << " " << v;
  os << "\n";
}

}  // namespace

std::string render_trace(const Trace& trace) {
  std::ostringstream os;
  os << std::setprecision(12);

  heading(os, "Run summary");
  os << "  n = " << trace.n << ", k = " << trace.k << ", alpha = " << trace.alpha
     << ", C_LP = " << trace.c_lp << "\n";
  os << "  path: " << trace.path << "\n\n";

  if (trace.path == "trivial-single") {
    os << "Single candidate center; everything is assigned to it.\n\n";
  }

  if (trace.clusters) {
    heading(os, "Step 1: clustering");
    const auto& cs = *trace.clusters;
    os << "  cores (selection order):";
    for (const int c : cs.cores) os << " " << c;
    os << "\n";
    for (std::size_t s = 0; s < cs.cores.size(); ++s) {
      os << "  cluster " << cs.cores[s] << ": members";
      for (const int j : cs.members[s]) os << " " << j;
      os << "  (mass " << cs.mass[s] << ")\n";
    }
    check_table(os, trace.step1_checks);
    os << "\n";
  }

  heading(os, "Step 2: concentration");
  value_row(os, "y'", trace.yprime);
  value_row(os, "d'", trace.dprime);
  check_table(os, trace.step2_checks);
  os << "\n";

  heading(os, "Easy-case decision");
  os << "  |N2| - 1 = " << trace.easy_lhs << " vs Y = " << trace.easy_rhs << "  -> "
     << (trace.easy_applicable ? "easy case fires" : "main rounding path") << "\n";
  if (trace.easy_applicable) {
    check_table(os, trace.easy_checks);
  }
  os << "\n";

  if (trace.path == "full") {
    heading(os, "Step 3: redistribution");
    value_row(os, "yhat", trace.yhat);
    value_row(os, "order i_1..i_v", trace.order);
    os << "  s(i):";
    for (std::size_t i = 0; i < trace.s_map.size(); ++i) {
      if (trace.s_map[i] >= 0) os << " " << i << "->" << trace.s_map[i];
    }
    os << "\n";
    check_table(os, trace.step3_checks);
    os << "\n";

    heading(os, "Step 4: stars");
    for (const auto& star : trace.stars) {
      os << "  star rooted at " << star.root << " (case " << star.case_label
         << ", R_t = " << star.mass << ")\n";
      value_row(os, "  children", star.children);
      value_row(os, "  opened", star.opened);
      os << "    reassigned:";
      for (const auto& [closed, server] : star.reassigned) {
        os << " " << closed << "->" << server;
      }
      os << "\n";
    }
    if (!trace.isolated_open.empty()) value_row(os, "isolated open", trace.isolated_open);
    check_table(os, trace.step4_checks);
    os << "\n";
  }

  heading(os, "Guarantees");
  os << "  centers opened: " << trace.report.centers_open << " (budget " << trace.k << ") "
     << (trace.report.centers_ok ? "ok" : "FAIL") << "\n";
  os << "  max load ratio: " << trace.report.max_load_ratio << " (bound "
     << trace.report.load_bound << ") " << (trace.report.load_ok ? "ok" : "FAIL") << "\n";
  os << "  cost: " << trace.report.cost << " = " << trace.report.cost_ratio
     << " x C_LP (bound factor " << trace.report.cost_bound_factor << ") "
     << (trace.report.cost_ok ? "ok" : "FAIL") << "\n";
  os << "  coverage: " << (trace.report.coverage_ok ? "ok" : "FAIL") << "\n";
  return os.str();
}

}  // namespace ckm
