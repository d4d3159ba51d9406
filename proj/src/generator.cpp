#include "ckm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ckm {

namespace {

// mt19937_64 output mapped to doubles by hand so generated files are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> draw_demands(Rng& rng, int n, double demand_max) {
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) {
    const bool zero = rng.bits() % 8 == 0;
    d[j] = zero ? 0.0 : rng.uniform(0.05 * demand_max, demand_max);
  }
  return d;
}

Matrix plane_costs(Rng& rng, int n) {
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) {
    p.first = rng.uniform();
    p.second = rng.uniform();
  }
  Matrix c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      c(i, j) = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
    }
  }
  return c;
}

Matrix uniform_matrix_costs(Rng& rng, int n) {
  Matrix c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.uniform(1.0, 2.0);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return c;
}

}  // namespace

Instance generate_instance(const GenParams& params) {
  if (params.n < 1) throw std::invalid_argument("generator: n must be >= 1");
  if (params.demand_max <= 0.0) throw std::invalid_argument("generator: demand-max must be positive");
  Rng rng(params.seed);

  Instance inst;
  inst.n = params.n;
  inst.cost = params.geometry == GenGeometry::Plane ? plane_costs(rng, params.n)
                                                    : uniform_matrix_costs(rng, params.n);
  inst.k = params.k.value_or(std::max(1, params.n / 3));

  constexpr int kRetryCap = 64;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    inst.demand = draw_demands(rng, params.n, params.demand_max);
    double total = 0.0;
    for (const double d : inst.demand) total += d;
    if (params.capacity.has_value()) {
      inst.capacity = *params.capacity;
    } else {
      // Size the capacity off the drawn demands; an all-zero draw still needs
      // a positive capacity.
      const double base = total > 0.0 ? total : params.demand_max;
      inst.capacity = base / (static_cast<double>(inst.k) * params.utilization);
    }
    if (total <= static_cast<double>(inst.k) * inst.capacity + kTol) return inst;
  }
  throw InfeasibleError("generator: demands exceed k*M after retry cap");
}

CklInstance generate_ckl_instance(const CklGenParams& params) {
  if (params.facilities < 1 || params.clients < 1) {
    throw std::invalid_argument("generator: facilities and clients must be >= 1");
  }
  Rng rng(params.seed ^ 0x5cb1f00dULL);

  const int f = params.facilities;
  const int m = params.clients;
  std::vector<std::pair<double, double>> pts(f + m);
  for (auto& p : pts) {
    p.first = rng.uniform();
    p.second = rng.uniform();
  }

  CklInstance inst;
  inst.f = f;
  inst.m = m;
  inst.cost = Matrix(f, f + m);
  for (int i = 0; i < f; ++i) {
    for (int j = 0; j < f + m; ++j) {
      inst.cost(i, j) = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
    }
  }
  inst.k = params.k.value_or(std::max(1, f / 2));

  constexpr int kRetryCap = 64;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    inst.demand = draw_demands(rng, m, params.demand_max);
    double total = 0.0;
    for (const double d : inst.demand) total += d;
    if (params.capacity.has_value()) {
      inst.capacity = *params.capacity;
    } else {
      const double base = total > 0.0 ? total : params.demand_max;
      inst.capacity = base / (static_cast<double>(inst.k) * params.utilization);
    }
    if (total <= static_cast<double>(inst.k) * inst.capacity + kTol) return inst;
  }
  throw InfeasibleError("generator: demands exceed k*M after retry cap");
}

}  // namespace ckm
