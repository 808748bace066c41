#include "doctest.h"

#include <random>

#include <conelp/errors.hpp>
#include <conelp/instance_gen.hpp>
#include <conelp/lp_solver.hpp>
#include <conelp/simplex.hpp>

#include "support/oracles.hpp"

using namespace conelp;
using conelp::testing::random_matrix;
using conelp::testing::random_vector;

namespace {

// [0,1]^2, min -x1 - x2.
LpProblem box_lp() {
  LpProblem prob;
  prob.A.resize(4, 2);
  prob.A << 1, 0, 0, 1, -1, 0, 0, -1;
  prob.b.resize(4);
  prob.b << 1, 1, 0, 0;
  prob.c.resize(2);
  prob.c << -1, -1;
  return prob;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Objective of the n = m = 30, seed 42 box instance, recorded from the
// simplex oracle.
constexpr double kSeed42Objective = -28.362270059534232;

}  // namespace

TEST_CASE("prepare_conic on the box LP") {
  const LpProblem prob = box_lp();
  const ConicData conic = prepare_conic(prob, 2.0, Vector::Zero(2));
  CHECK((conic.shift - vec2(2, 2)).norm() == 0.0);
  Vector rhs(4);
  rhs << -1, -1, 2, 2;
  CHECK((conic.shifted_rhs - rhs).norm() == 0.0);
  Matrix gens(4, 3);
  gens << 1, 0, 1, 0, 1, 1, -1, 0, -2, 0, -1, -2;
  CHECK(conic.generators.rows() == gens);
  CHECK(conic.point == Vector::Unit(3, 2));
  CHECK(conic.scale == 1.0);
}

TEST_CASE("prepare_conic without shift homogenizes the original data") {
  const LpProblem prob = box_lp();
  const ConicData conic = prepare_conic(prob, 0.0, Vector::Zero(2));
  CHECK(conic.shifted_rhs == prob.b);
  CHECK(conic.generators.rows().col(2) == -prob.b);

  const ConicData interior = prepare_conic(prob, 0.0, vec2(0.3, 0.6));
  CHECK((interior.shifted_rhs.array() > 0.0).all());

  const ConicData shifted = prepare_conic(prob, 2.0, Vector::Zero(2));
  const ConicData scaled = prepare_conic(prob, 2.0, Vector::Zero(2), 4.0);
  CHECK(scaled.generators.rows().col(2) == shifted.generators.rows().col(2) / 4.0);
  CHECK(scaled.generators.rows().leftCols(2) == prob.A);
  CHECK_THROWS_AS(prepare_conic(prob, -1.0, Vector::Zero(2)), InvalidInput);
  CHECK_THROWS_AS(prepare_conic(prob, 1.0, Vector::Zero(3)), InvalidInput);
}

TEST_CASE("recover_solution on the box LP at theta = 2") {
  const LpProblem prob = box_lp();
  const ConicData conic = prepare_conic(prob, 2.0, Vector::Zero(2));
  const auto proj = project_onto_cone(conic.generators, conic.point);
  const Vector x = recover_solution(proj, 2.0, Vector::Zero(2), prob.c);
  CHECK((x - vec2(1, 1)).norm() < 1e-12);
  CHECK(prob.c.dot(x) == doctest::Approx(-2.0));
}

TEST_CASE("recover_solution at the apex returns the shift") {
  ConeProjectionResult proj;
  proj.residual = Vector::Unit(3, 2);
  const Vector x0 = vec2(0.25, 0.5);
  const Vector c = vec2(1, -2);
  CHECK((recover_solution(proj, 0.1, x0, c) - (x0 - 0.1 * c)).norm() == 0.0);
}

TEST_CASE("recover_solution is invariant under residual scaling") {
  ConeProjectionResult proj;
  proj.residual.resize(3);
  proj.residual << 0.3, -0.7, 0.4;
  const Vector x0 = vec2(1, 2);
  const Vector c = vec2(0.5, 0.5);
  const Vector x = recover_solution(proj, 3.0, x0, c, 2.0);
  for (double alpha : {1e-3, 0.5, 7.0, 1e4}) {
    ConeProjectionResult scaled = proj;
    scaled.residual *= alpha;
    CHECK((recover_solution(scaled, 3.0, x0, c, 2.0) - x).norm() <= 1e-12 * x.norm());
  }
  proj.residual(2) = 0.0;
  CHECK_THROWS_AS(recover_solution(proj, 3.0, x0, c), DegenerateRecovery);
}

TEST_CASE("solve on the box LP") {
  const LpProblem prob = box_lp();
  const LpSolution sol = solve(prob);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK((sol.x_star - vec2(1, 1)).norm() < 1e-9);
  CHECK(sol.objective == doctest::Approx(-2.0));
  CHECK(sol.certificate.passed());
  Vector u(4);
  u << -1, -1, 0, 0;
  CHECK((sol.dual_u - u).norm() < 1e-9);
  CHECK(sol.rounds >= 2);
  CHECK(sol.theta_used > 0.0);
  CHECK(sol.basis_trace.size() == sol.update_times.size());

  for (double theta : {1.0, 2.0, 8.0, 100.0}) {
    const LpSolution fixed = solve_at_theta(prob, theta, Vector::Zero(2));
    CHECK(fixed.status == LpStatus::Optimal);
    CHECK((fixed.x_star - vec2(1, 1)).norm() < 1e-9);
  }
}

TEST_CASE("zero objective returns a feasible point with objective 0") {
  LpProblem prob = box_lp();
  prob.c.setZero();
  const LpSolution sol = solve(prob);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == 0.0);
  CHECK(((prob.A * sol.x_star - prob.b).array() <= 1e-9).all());
}

TEST_CASE("theta policy") {
  const LpProblem prob = box_lp();
  const ThetaPolicy autop = ThetaPolicy::automatic(prob);
  CHECK(autop.theta0 == 1.0);
  CHECK(autop.growth == 4.0);
  LpProblem big = prob;
  big.b *= 100.0;
  CHECK(ThetaPolicy::automatic(big).theta0 ==
        doctest::Approx(big.b.norm() / (1.0 + big.c.norm())));
  CHECK(ThetaPolicy::fixed(3.0).max_rounds == 1);

  ThetaPolicy bad;
  bad.growth = 1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = {};
  bad.theta0 = 0.0;
  CHECK_THROWS_AS(solve(prob, bad, Vector::Zero(2)), InvalidInput);
  bad = {};
  bad.max_rounds = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("infeasible problem") {
  LpProblem prob = box_lp();
  prob.b << -1, 1, 0, 0;  // x1 <= -1 and x1 >= 0
  const LpSolution sol = solve(prob);
  CHECK(sol.status == LpStatus::Infeasible);
  CHECK_FALSE(sol.message.empty());
}

TEST_CASE("unbounded problem is not reported optimal") {
  // x >= 0, min -x1.
  LpProblem prob;
  prob.A = -Matrix::Identity(2, 2);
  prob.b = Vector::Zero(2);
  prob.c = vec2(-1, 0);
  const LpSolution sol = solve(prob);
  CHECK(sol.status != LpStatus::Optimal);
}

TEST_CASE("seed 42, n = m = 30 box instance matches the oracle") {
  const LpProblem prob = gen_box({Family::Box, 30, 30, 42});
  const OracleSolution ref = solve_simplex(prob);
  REQUIRE(ref.status == OracleStatus::Optimal);
  CHECK(ref.objective == doctest::Approx(kSeed42Objective).epsilon(1e-9));
  const LpSolution sol = solve(prob);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(std::abs(sol.objective - kSeed42Objective) / (1.0 + std::abs(kSeed42Objective)) <= 1e-6);
  CHECK(sol.certificate.passed());
}

TEST_CASE("doubling theta after stabilization leaves x* in place") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const LpProblem prob = gen_box({Family::Box, 20, 20, seed});
    const LpSolution sol = solve(prob);
    REQUIRE(sol.status == LpStatus::Optimal);
    const LpSolution twice = solve_at_theta(prob, 2.0 * sol.theta_used, Vector::Zero(20));
    CHECK((twice.x_star - sol.x_star).norm() / std::max(1.0, sol.x_star.norm()) <= 1e-6);
  }
}

TEST_CASE("unpolished dual still certifies the box LP") {
  SolveOptions opts;
  opts.polish = false;
  const LpProblem prob = box_lp();
  const LpSolution sol = solve(prob, ThetaPolicy::automatic(prob), Vector::Zero(2), opts);
  CHECK((sol.x_star - vec2(1, 1)).norm() < 1e-8);
  CHECK(sol.dual_u.maxCoeff() <= 0.0);
}

TEST_CASE("support estimate") {
  const LpProblem prob = box_lp();
  CHECK(support_estimate(prob, 10.0, Vector::Zero(2)) == doctest::Approx(-2.0).epsilon(1e-12));
  const Vector x0 = vec2(0.25, 0.5);
  CHECK(support_estimate(prob, 0.0, x0) == doctest::Approx(prob.c.dot(x0)));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const LpProblem inst = gen_box({Family::Box, 8, 8, seed});
    const double opt = solve_simplex(inst).objective;
    double last = std::numeric_limits<double>::infinity();
    for (double tau : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
      const double est = support_estimate(inst, tau, Vector::Zero(8));
      CHECK(est <= last + 1e-9);
      CHECK(est >= opt - 1e-7 * (1.0 + std::abs(opt)));
      last = est;
    }
  }
}

TEST_CASE("project_onto_polyhedron agrees with a brute-force projection") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const Index n = 3;
    const Matrix a = random_matrix(rng, 6, n);
    const Vector b = random_vector(rng, 6, 0.1, 1.0);
    const Vector q = random_vector(rng, n, -4, 4);
    const Vector x = project_onto_polyhedron(a, b, q);
    // Shifting by q turns the projection into a least-norm problem.
    const Vector ref = q + conelp::testing::brute_force_least_norm(a, b - a * q);
    CHECK((x - ref).norm() <= 1e-8 * (1.0 + q.norm()));
  }
}
