#include <doctest.h>

#include <cmath>
#include <random>

#include "pass/power_allocation.hpp"

using namespace pass;

namespace {

AllocationProblem random_problem(std::mt19937_64& rng, int users) {
  std::uniform_real_distribution<double> la(-1.0, 4.0);
  std::uniform_real_distribution<double> lb(-3.0, 0.0);
  AllocationProblem pr;
  pr.a.resize(users);
  for (int k = 0; k < users; ++k) pr.a(k) = std::pow(10.0, la(rng));
  pr.budget = std::pow(10.0, lb(rng)) * users;
  pr.circuit_power_total = 1e-3 * users;
  return pr;
}

double sum_log(const AllocationProblem& pr, const Vector& p, double lambda) {
  double s = 0.0;
  for (Index k = 0; k < p.size(); ++k) s += std::log2(1.0 + pr.a(k) * p(k));
  return s - lambda * p.sum();
}

// Best ratio over the simplex {p >= 0, sum p <= budget}, points/axis per user.
double simplex_oracle(const AllocationProblem& pr, int points) {
  const double h = pr.budget / (points - 1);
  double best = 0.0;
  for (int i = 0; i < points; ++i)
    for (int j = 0; i + j < points; ++j)
      for (int l = 0; i + j + l < points; ++l) {
        Vector p(3);
        p << i * h, j * h, l * h;
        best = std::max(best, allocation_ratio(pr, p));
      }
  return best;
}

}  // namespace

TEST_CASE("water filling against a grid search on three users") {
  AllocationProblem pr;
  pr.a = Vector{{100.0, 10.0, 1.0}};
  pr.budget = 1.0;
  pr.circuit_power_total = 0.1;
  for (double lambda : {0.0, 0.5, 2.0}) {
    const Vector p = water_fill(pr, lambda);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.sum() <= pr.budget + 1e-12);
    double best = -1e300;
    const int q = 401;
    for (int i = 0; i < q; ++i)
      for (int j = 0; i + j < q; ++j)
        for (int l = 0; i + j + l < q; ++l) {
          Vector g(3);
          g << i, j, l;
          best = std::max(best, sum_log(pr, g * (pr.budget / (q - 1)), lambda));
        }
    CHECK(sum_log(pr, p, lambda) >= best - 1e-4);
  }
}

TEST_CASE("water filling with a slack budget stops at the level") {
  AllocationProblem pr;
  pr.a = Vector{{4.0}};
  pr.budget = 100.0;
  pr.circuit_power_total = 1.0;
  const double lambda = 1.0;
  // d/dp log2(1 + 4p) = lambda  ->  p = 1/(lambda ln 2) - 1/4
  const Vector p = water_fill(pr, lambda);
  CHECK(p(0) == doctest::Approx(1.0 / std::log(2.0) - 0.25));
}

TEST_CASE("single-user Dinkelbach agrees with a fine 1-D search") {
  AllocationProblem pr;
  pr.a = Vector{{10.0}};
  pr.budget = 2.0;
  pr.circuit_power_total = 0.5;
  const AllocationResult r = dinkelbach_allocate(pr);
  double best_p = 0.0, best = 0.0;
  const int q = 1000000;
  for (int i = 0; i <= q; ++i) {
    const double p = pr.budget * i / q;
    const double v = std::log2(1.0 + 10.0 * p) / (p + 0.5);
    if (v > best) {
      best = v;
      best_p = p;
    }
  }
  CHECK(std::abs(r.p(0) - best_p) <= 1e-3);
  CHECK(r.lambda_star == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("Dinkelbach matches the simplex oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const AllocationProblem pr = random_problem(rng, 3);
    const double oracle = simplex_oracle(pr, 120);
    const AllocationResult r = dinkelbach_allocate(pr);
    CHECK(allocation_ratio(pr, r.p) >= oracle * (1.0 - 1e-3));
  }
}

TEST_CASE("Dinkelbach trace is nondecreasing and ends at a root") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const AllocationProblem pr = random_problem(rng, 1 + trial % 8);
    const AllocationResult r = dinkelbach_allocate(pr);
    REQUIRE(r.trace.front() == 0.0);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1]);
    const Vector p = water_fill(pr, r.lambda_star);
    const double phi = sum_log(pr, p, r.lambda_star) - r.lambda_star * pr.circuit_power_total;
    CHECK(std::abs(phi) <= pr.tolerance);
    CHECK(r.p.sum() <= pr.budget + 1e-12);
  }
}

TEST_CASE("natural-log rates give the same allocation") {
  std::mt19937_64 rng(29);
  AllocationProblem pr = random_problem(rng, 4);
  const Vector p2 = dinkelbach_allocate(pr).p;
  pr.log_base = LogBase::natural;
  const Vector pe = dinkelbach_allocate(pr).p;
  CHECK((p2 - pe).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, p2.maxCoeff()));
}

TEST_CASE("sum-rate allocation spends the budget") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const AllocationProblem pr = random_problem(rng, 5);
    const AllocationResult se = se_allocate(pr);
    CHECK(se.p.sum() == doctest::Approx(pr.budget).epsilon(1e-12));
    const AllocationResult ee = dinkelbach_allocate(pr);
    CHECK(allocation_ratio(pr, ee.p) >= allocation_ratio(pr, se.p) - 1e-12);
    CHECK(sum_log(pr, se.p, 0.0) >= sum_log(pr, ee.p, 0.0) - 1e-12);
  }
}

TEST_CASE("invalid problems are rejected") {
  AllocationProblem pr;
  pr.a = Vector{{1.0}};
  pr.budget = -1.0;
  pr.circuit_power_total = 0.0;
  CHECK_THROWS(pr.validate());
}
