#include "ckm/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace ckm {

double Instance::total_demand() const {
  return std::accumulate(demand.begin(), demand.end(), 0.0);
}

namespace {

std::string fmt_violation(const std::string& what, int i, int j, double value) {
  std::ostringstream os;
  os << what << " at (" << i << "," << j << "), value " << value;
  return os.str();
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> report;
  const int n = inst.n;
  if (n < 1) {
    report.push_back("n must be >= 1");
    return report;
  }
  if (inst.cost.rows() != static_cast<std::size_t>(n) ||
      inst.cost.cols() != static_cast<std::size_t>(n)) {
    report.push_back("cost matrix dimensions do not match n");
    return report;
  }
  if (inst.demand.size() != static_cast<std::size_t>(n)) {
    report.push_back("demand length does not match n");
    return report;
  }
  if (!(inst.capacity > 0.0)) report.push_back("capacity must be positive");
  if (inst.k < 1) report.push_back("k must be a positive integer");

  for (int i = 0; i < n; ++i) {
    if (std::abs(inst.cost(i, i)) > kTol) {
      report.push_back(fmt_violation("nonzero self-distance", i, i, inst.cost(i, i)));
    }
    for (int j = 0; j < n; ++j) {
      if (inst.cost(i, j) < -kTol) {
        report.push_back(fmt_violation("negative cost", i, j, inst.cost(i, j)));
      }
      if (j > i && std::abs(inst.cost(i, j) - inst.cost(j, i)) > kTol) {
        report.push_back(fmt_violation("asymmetric cost", i, j,
                                       inst.cost(i, j) - inst.cost(j, i)));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < n; ++t) {
      if (t == i) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || j == t) continue;
        if (inst.cost(i, t) + inst.cost(t, j) < inst.cost(i, j) - kTol) {
          std::ostringstream os;
          os << "triangle inequality violated: c(" << i << "," << t << ") + c("
             << t << "," << j << ") < c(" << i << "," << j << ")";
          report.push_back(os.str());
        }
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (inst.demand[j] < -kTol) {
      report.push_back(fmt_violation("negative demand", j, j, inst.demand[j]));
    }
  }
  const double total = inst.total_demand();
  const double cap = static_cast<double>(inst.k) * inst.capacity;
  if (total > cap + kTol) {
    std::ostringstream os;
    os << "total demand " << total << " exceeds k*M = " << cap;
    report.push_back(os.str());
  }
  return report;
}

double solution_cost(const Instance& inst, const Matrix& assign) {
  const std::size_t n = static_cast<std::size_t>(inst.n);
  if (assign.rows() != n || assign.cols() != n) {
    throw std::invalid_argument("solution_cost: assignment dimensions do not match instance");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (assign(i, j) != 0.0) total += inst.demand[j] * inst.cost(i, j) * assign(i, j);
    }
  }
  return total;
}

std::vector<double> center_loads(const Instance& inst, const Matrix& assign) {
  const std::size_t n = static_cast<std::size_t>(inst.n);
  std::vector<double> loads(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (assign(i, j) != 0.0) loads[i] += inst.demand[j] * assign(i, j);
    }
  }
  return loads;
}

}  // namespace ckm
