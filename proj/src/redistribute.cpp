#include "ckm/redistribute.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ckm {

std::vector<int> compute_s_map(const Instance& inst, const ConcentratedSolution& conc) {
  std::vector<int> candidates;
  candidates.reserve(conc.n1.size() + conc.n2.size());
  candidates.insert(candidates.end(), conc.n1.begin(), conc.n1.end());
  candidates.insert(candidates.end(), conc.n2.begin(), conc.n2.end());
  std::sort(candidates.begin(), candidates.end());
  if (candidates.size() < 2 && !conc.n2.empty()) {
    throw std::logic_error("compute_s_map: single candidate center, trivial case upstream");
  }

  std::vector<int> s_map(inst.n, -1);
  for (const int i : conc.n2) {
    int best = -1;
    for (const int c : candidates) {
      if (c == i) continue;
      if (best < 0 || inst.cost(c, i) < inst.cost(best, i) ||
          (inst.cost(c, i) == inst.cost(best, i) && c < best)) {
        best = c;
      }
    }
    s_map[i] = best;
  }
  return s_map;
}

std::vector<double> redistribute_values(const std::vector<double>& y_in_order, double alpha) {
  const int v = static_cast<int>(y_in_order.size());
  if (v == 0) return {};
  const double init = (alpha - 1.0) / alpha;
  const double total = std::accumulate(y_in_order.begin(), y_in_order.end(), 0.0);

  std::vector<double> yhat(v, init);
  const auto residual = [&] {
    double s = 0.0;
    for (const double h : yhat) s += h;
    return total - s;
  };

  for (int r = v - 1; r >= 0; --r) {
    const double surplus = residual();
    if (surplus <= kTol) return yhat;
    if (surplus + yhat[r] >= 1.0 - kTol) {
      yhat[r] = 1.0;
      continue;
    }
    // The last promotion draws the missing fraction from the first entry.
    if (r == 0) break;
    yhat[0] -= 1.0 - surplus - yhat[r];
    yhat[r] = 1.0;
    if (yhat[0] <= (alpha - 2.0) / alpha + kTol) {
      throw NumericalMarginError(
          "redistribution drained the first opening value to its lower boundary");
    }
    return yhat;
  }
  throw NumericalMarginError("redistribution sweep reached the first entry with surplus left");
}

RedistributedSolution run_redistribute(const Instance& inst,
                                       const ConcentratedSolution& conc, double alpha) {
  const int v = static_cast<int>(conc.n2.size());
  if (conc.fractional_mass > static_cast<double>(v) - 1.0 + kTol) {
    throw std::logic_error("run_redistribute: easy case applies, caller must not reach here");
  }

  RedistributedSolution red;
  red.s_map = compute_s_map(inst, conc);

  red.order = conc.n2;
  std::stable_sort(red.order.begin(), red.order.end(), [&](int a, int b) {
    const double ka = conc.dprime[a] * inst.cost(red.s_map[a], a);
    const double kb = conc.dprime[b] * inst.cost(red.s_map[b], b);
    return ka < kb;
  });

  std::vector<double> y_in_order(v);
  for (int t = 0; t < v; ++t) y_in_order[t] = conc.yprime[red.order[t]];
  const std::vector<double> yhat_in_order = redistribute_values(y_in_order, alpha);

  red.yhat = conc.yprime;
  for (int t = 0; t < v; ++t) red.yhat[red.order[t]] = yhat_in_order[t];

  double hat_total = 0.0;
  for (int t = 0; t < v; ++t) hat_total += yhat_in_order[t];
  red.residual = conc.fractional_mass - hat_total;
  return red;
}

std::vector<PropertyCheck> check_redistribute_properties(const Instance& inst,
                                                         const ConcentratedSolution& conc,
                                                         const RedistributedSolution& red,
                                                         double alpha) {
  std::vector<PropertyCheck> checks;
  const int n = inst.n;
  const double lo = (alpha - 2.0) / alpha;
  const double hi = (alpha - 1.0) / alpha;

  int strictly_inside = 0;
  bool shape_ok = true;
  for (int i = 0; i < n; ++i) {
    const double h = red.yhat[i];
    const bool in_band = h > lo + kTol && h <= hi + kTol;
    const bool in_upper = h >= 1.0 - kTol && h < 2.0;
    if (!(h == 0.0 || in_band || in_upper)) shape_ok = false;
    if (h > lo + kTol && h < hi - kTol) ++strictly_inside;
  }
  checks.push_back({"yhat values in {0} U ((a-2)/a,(a-1)/a] U [1,2)",
                    shape_ok ? 1.0 : 0.0, 1.0, "=", shape_ok});
  bool inside_is_first = strictly_inside <= 1;
  if (strictly_inside == 1 && !red.order.empty()) {
    const int i1 = red.order.front();
    inside_is_first = red.yhat[i1] > lo + kTol && red.yhat[i1] < hi - kTol;
  }
  checks.push_back({"at most one yhat strictly inside the band, and it is i_1",
                    static_cast<double>(strictly_inside), 1.0, "<=", inside_is_first});

  for (int i = 0; i < n; ++i) {
    const double h = red.yhat[i];
    if (h > lo + kTol && h <= hi + kTol) {
      std::ostringstream label;
      label << "d'_" << i << " <= M (band opening)";
      checks.push_back({label.str(), conc.dprime[i], inst.capacity, "<=",
                        conc.dprime[i] <= inst.capacity * (1.0 + kTol) + kTol});
    } else if (h >= 1.0 - kTol && h < 2.0 && h != 0.0) {
      std::ostringstream label;
      label << "d'_" << i << " <= M*yhat_" << i;
      const double bound = inst.capacity * h;
      checks.push_back({label.str(), conc.dprime[i], bound, "<=",
                        conc.dprime[i] <= bound + kTol * (1.0 + bound)});
    }
  }
  {
    double y2 = 0.0;
    double h2 = 0.0;
    for (const int i : conc.n2) {
      y2 += conc.yprime[i];
      h2 += red.yhat[i];
    }
    checks.push_back({"sum yhat = sum y' on N2", h2, y2, "=",
                      std::abs(h2 - y2) <= kTol * (1.0 + std::abs(y2))});
    double yall = 0.0;
    double hall = 0.0;
    for (int i = 0; i < n; ++i) {
      yall += conc.yprime[i];
      hall += red.yhat[i];
    }
    checks.push_back({"sum yhat = sum y' <= k", hall, yall, "=",
                      std::abs(hall - yall) <= kTol * (1.0 + std::abs(yall)) &&
                          hall <= inst.k + kTol});
  }
  {
    double before = 0.0;
    double after = 0.0;
    for (const int i : conc.n2) {
      const double w = conc.dprime[i] * inst.cost(red.s_map[i], i);
      before += (1.0 - conc.yprime[i]) * w;
      after += (1.0 - red.yhat[i]) * w;
    }
    checks.push_back({"weighted closeness objective does not increase", after, before,
                      "<=", after <= before + kTol * (1.0 + std::abs(before))});
  }
  return checks;
}

}  // namespace ckm
