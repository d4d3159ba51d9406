#include <doctest.h>

#include "ckm/cluster.hpp"
#include "ckm/generator.hpp"
#include "ckm/lp.hpp"
#include "test_helpers.hpp"

using namespace ckm;

namespace {

// Minimal fractional state for clustering tests: only conn_cost and y are
// read by the procedure.
FractionalSolution synthetic_frac(std::vector<double> conn, std::vector<double> y) {
  FractionalSolution f;
  const int n = static_cast<int>(conn.size());
  f.x = Matrix(n, n);
  f.conn_cost = std::move(conn);
  f.y = std::move(y);
  return f;
}

}  // namespace

TEST_CASE("single location is always a core") {
  const auto inst = testing::from_costs({{0.0}}, {1.0}, 1.0, 1);
  const auto f = synthetic_frac({0.0}, {1.0});
  const auto cs = run_clustering(inst, f, 4.0);
  REQUIRE(cs.cores == std::vector<int>{0});
  CHECK(cs.members[0] == std::vector<int>{0});
  CHECK(cs.mass[0] == doctest::Approx(1.0));
}

TEST_CASE("greedy core selection follows the radius rule") {
  // Hand-trace: C = [1,1,1], order 0,1,2; radius 2*4*1 = 8. Location 1 is
  // 100 away from core 0 (new core); location 2 is 1 away (covered).
  const auto inst =
      testing::from_costs({{0, 100, 1}, {100, 0, 100}, {1, 100, 0}}, {1, 1, 1}, 3.0, 3);
  const auto f = synthetic_frac({1.0, 1.0, 1.0}, {0.5, 0.5, 0.5});
  const auto cs = run_clustering(inst, f, 4.0);
  REQUIRE(cs.cores == std::vector<int>{0, 1});
  CHECK(cs.members[0] == std::vector<int>{0, 2});
  CHECK(cs.members[1] == std::vector<int>{1});
  CHECK(cs.core_of[2] == 0);
}

TEST_CASE("co-located locations form a single cluster") {
  const auto inst = testing::from_costs({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, {1, 1, 1}, 3.0, 3);
  const auto f = synthetic_frac({0.0, 0.0, 0.0}, {0.4, 0.3, 0.3});
  const auto cs = run_clustering(inst, f, 4.0);
  REQUIRE(cs.cores == std::vector<int>{0});
  CHECK(cs.members[0].size() == 3);
  CHECK(cs.mass[0] == doctest::Approx(1.0));
}

TEST_CASE("clustering rejects alpha below 4") {
  const auto inst = testing::from_costs({{0.0}}, {1.0}, 1.0, 1);
  const auto f = synthetic_frac({0.0}, {1.0});
  CHECK_THROWS_AS(run_clustering(inst, f, 3.9), std::invalid_argument);
}

TEST_CASE("equal connection costs break ties by index") {
  // Two co-located pairs; all C equal, so location 0 is processed first and
  // absorbs location 1; location 2 starts the second cluster.
  const auto inst = testing::from_points({{0, 0}, {0, 0}, {5, 0}, {5, 0}}, {1, 1, 1, 1},
                                         4.0, 4);
  const auto f = synthetic_frac({0.1, 0.1, 0.1, 0.1}, {0.5, 0.5, 0.5, 0.5});
  const auto cs = run_clustering(inst, f, 4.0);
  CHECK(cs.cores == std::vector<int>{0, 2});
  CHECK(cs.core_of == std::vector<int>{0, 0, 2, 2});
}

TEST_CASE("cluster properties hold on LP-optimal random instances") {
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    GenParams params;
    params.n = 6 + static_cast<int>(seed % 7);
    params.seed = seed * 101;
    params.utilization = 0.7 + 0.02 * static_cast<double>(seed % 10);
    const Instance inst = generate_instance(params);
    const auto frac = solve_ckm_fractional(inst);
    for (const double alpha : {4.0, 10.0}) {
      const auto cs = run_clustering(inst, frac, alpha);
      const auto checks = check_cluster_properties(inst, frac, cs);
      for (const auto& c : checks) {
        INFO("seed ", seed, " alpha ", alpha, ": ", c.label, " value ", c.value, " bound ",
             c.bound);
        CHECK(c.pass);
      }
    }
  }
}

TEST_CASE("scaling all costs leaves the cluster structure unchanged") {
  GenParams params;
  params.n = 9;
  params.seed = 4242;
  const Instance inst = generate_instance(params);
  Instance scaled = inst;
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) scaled.cost(i, j) *= 4.0;
  }
  const auto f1 = solve_ckm_fractional(inst);
  const auto f2 = solve_ckm_fractional(scaled);
  const auto c1 = run_clustering(inst, f1, 4.0);
  const auto c2 = run_clustering(scaled, f2, 4.0);
  CHECK(c1.cores == c2.cores);
  CHECK(c1.core_of == c2.core_of);
}

TEST_CASE("clustering is deterministic") {
  GenParams params;
  params.n = 10;
  params.seed = 777;
  const Instance inst = generate_instance(params);
  const auto frac = solve_ckm_fractional(inst);
  const auto a = run_clustering(inst, frac, 4.0);
  const auto b = run_clustering(inst, frac, 4.0);
  CHECK(a.cores == b.cores);
  CHECK(a.core_of == b.core_of);
  CHECK(a.members == b.members);
}
