#include <doctest.h>

#include "ckm/generator.hpp"
#include "ckm/lp.hpp"
#include "ckm/pipeline.hpp"
#include "ckm/verify.hpp"
#include "test_helpers.hpp"

using namespace ckm;

TEST_CASE("identity solution on a k = n instance passes with ratio zero") {
  const auto inst = testing::collinear({0, 1, 3}, {1, 1, 1}, 2.0, 3);
  const auto frac = solve_ckm_fractional(inst);
  IntegralSolution sol;
  sol.open = {1, 1, 1};
  sol.assign = Matrix::identity(3);
  sol.cost = solution_cost(inst, sol.assign);
  const auto rep = verify_guarantees(inst, frac, sol, 4.0);
  CHECK(rep.all_ok());
  CHECK(rep.cost_ratio == doctest::Approx(0.0));
}

TEST_CASE("an overloaded center fails the load check") {
  // One center carries 3M at alpha = 4 (bound 2.5M).
  const auto inst = testing::collinear({0, 1, 2}, {1, 1, 1}, 1.0, 3);
  const auto frac = solve_ckm_fractional(inst);
  IntegralSolution sol;
  sol.open = {1, 0, 0};
  sol.assign = Matrix(3, 3);
  for (int j = 0; j < 3; ++j) sol.assign(0, j) = 1.0;
  sol.cost = solution_cost(inst, sol.assign);
  const auto rep = verify_guarantees(inst, frac, sol, 4.0);
  CHECK_FALSE(rep.load_ok);
  CHECK(rep.max_load_ratio == doctest::Approx(3.0));
}

TEST_CASE("too many centers fail the budget check") {
  const auto inst = testing::collinear({0, 1}, {0.5, 0.5}, 2.0, 1);
  const auto frac = solve_ckm_fractional(inst);
  IntegralSolution sol;
  sol.open = {1, 1};
  sol.assign = Matrix::identity(2);
  sol.cost = 0.0;
  const auto rep = verify_guarantees(inst, frac, sol, 4.0);
  CHECK_FALSE(rep.centers_ok);
}

TEST_CASE("uncovered demand fails the coverage check") {
  const auto inst = testing::collinear({0, 1}, {1, 1}, 2.0, 2);
  const auto frac = solve_ckm_fractional(inst);
  IntegralSolution sol;
  sol.open = {1, 0};
  sol.assign = Matrix(2, 2);
  sol.assign(0, 0) = 1.0;
  sol.assign(0, 1) = 0.5;  // half of location 1 is unserved
  sol.cost = solution_cost(inst, sol.assign);
  const auto rep = verify_guarantees(inst, frac, sol, 4.0);
  CHECK_FALSE(rep.coverage_ok);
}

TEST_CASE("pipeline output verifies across random instances") {
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    GenParams params;
    params.n = 6 + static_cast<int>(seed % 9);
    params.seed = seed;
    params.utilization = 0.72 + 0.025 * static_cast<double>(seed % 10);
    const Instance inst = generate_instance(params);
    const auto res = solve_ckm(inst, 4.0, {});
    INFO("seed ", seed);
    CHECK(res.report.all_ok());
  }
}

TEST_CASE("violation-to-ratio table") {
  SUBCASE("pinned values") {
    CHECK(best_ratio_for_violation(2.1).second == doctest::Approx(206.0));
    CHECK(best_ratio_for_violation(2.3).second == doctest::Approx(72.67).epsilon(0.0002));
    CHECK(best_ratio_for_violation(2.5).second == doctest::Approx(46.0));
    CHECK(best_ratio_for_violation(2.75).second == doctest::Approx(46.0));
    CHECK(best_ratio_for_violation(3.0).second == doctest::Approx(46.0));
  }
  SUBCASE("alpha floors at 4 and the achieved violation stays below v") {
    for (double v = 2.05; v < 4.0; v += 0.07) {
      const auto [alpha, ratio] = best_ratio_for_violation(v);
      CHECK(alpha >= 4.0);
      CHECK(2.0 + 2.0 / alpha <= v + 1e-12);
      CHECK(ratio == doctest::Approx(6.0 + 10.0 * alpha));
    }
  }
  SUBCASE("nonincreasing in v, constant at 46 beyond 2.5") {
    double prev = best_ratio_for_violation(2.01).second;
    for (double v = 2.02; v < 3.5; v += 0.01) {
      const double cur = best_ratio_for_violation(v).second;
      CHECK(cur <= prev + 1e-9);
      if (v >= 2.5) CHECK(cur == doctest::Approx(46.0));
      prev = cur;
    }
  }
  SUBCASE("violations at or below 2 are rejected") {
    CHECK_THROWS_AS(best_ratio_for_violation(2.0), std::invalid_argument);
    CHECK_THROWS_AS(best_ratio_for_violation(1.5), std::invalid_argument);
  }
}

TEST_CASE("easy-case bounds are stricter") {
  const auto inst = testing::collinear({0, 5}, {0.5, 0.9}, 1.0, 2);
  FractionalSolution f;
  f.x = Matrix(2, 2);
  f.x(0, 0) = 0.9;
  f.x(1, 0) = 0.1;
  f.x(1, 1) = 1.0;
  f.y = {0.9, 1.0};
  f.conn_cost = {0.5, 0.0};
  f.objective = 0.25;
  const auto res = solve_ckm_with_fractional(inst, f, 4.0, {});
  REQUIRE(res.path == "easy");
  const auto rep = verify_easy_case_guarantees(inst, f, res.solution, 4.0);
  CHECK(rep.all_ok());
  CHECK(rep.load_bound == doctest::Approx(2.0));
  CHECK(rep.cost_bound_factor == doctest::Approx(19.0));
}
