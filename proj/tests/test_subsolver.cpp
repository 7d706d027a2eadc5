#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "iprox/problems.hpp"
#include "iprox/subsolver.hpp"
#include "iprox/weakly_convex.hpp"

using namespace iprox;

namespace {

Matrix mat1(double v) {
  Matrix m(1, 1);
  m << v;
  return m;
}

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

SubproblemSpec spec_1d(const Matrix& B, double omega) {
  SubproblemSpec spec;
  spec.Bmat = &B;
  spec.gamma = 1.0;
  spec.lambda = 1.0;
  spec.anchor = vec1(2.0);
  spec.omega = omega;
  return spec;
}

}  // namespace

TEST_CASE("dual objective") {
  const Matrix B = mat1(1.0);
  const SubproblemSpec spec = spec_1d(B, 0.0);
  CHECK(dual_objective(spec, vec1(0)) == doctest::Approx(0.0));
  CHECK(dual_objective(spec, vec1(1)) == doctest::Approx(1.5));
  CHECK(dual_objective(spec, vec1(1.5)) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("primal recovery") {
  const Matrix B = mat1(1.0);
  SubproblemSpec spec = spec_1d(B, 0.0);
  CHECK(primal_recovery(spec, vec1(0))(0) == doctest::Approx(2.0));
  CHECK(primal_recovery(spec, vec1(1))(0) == doctest::Approx(1.0));
  spec.lambda = 2.0;
  CHECK((spec.anchor - primal_recovery(spec, vec1(1)))(0) ==
        doctest::Approx(2.0));
}

TEST_CASE("duality gap") {
  const Matrix B = mat1(1.0);
  const SubproblemSpec spec = spec_1d(B, 0.0);
  CHECK(duality_gap(spec, vec1(1), vec1(1)) == doctest::Approx(0.0));
  CHECK(duality_gap(spec, vec1(2), vec1(0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(duality_gap(spec, vec1(1), vec1(3)), std::invalid_argument);
}

TEST_CASE("solver matches the closed-form prox in 1-D") {
  DualProxSolver solver(mat1(1.0));
  const Matrix& B = solver.B();
  const SubproblemSpec spec = spec_1d(B, 1e-10);
  const SubsolveResult res = solver.solve(spec);
  CHECK(res.converged);
  CHECK(res.gap <= 1e-10);
  CHECK(std::abs(res.p(0) - soft_threshold(2.0, 1.0)) <= 1.5e-5);
}

TEST_CASE("vacuous tolerance returns the anchor") {
  DualProxSolver solver(mat1(1.0));
  const SubproblemSpec spec =
      spec_1d(solver.B(), std::numeric_limits<double>::infinity());
  const SubsolveResult res = solver.solve(spec);
  CHECK(res.converged);
  CHECK(res.p(0) == doctest::Approx(2.0));
}

TEST_CASE("identity B recovers the soft threshold") {
  const int n = 5;
  DualProxSolver solver(Matrix::Identity(n, n));
  SubproblemSpec spec;
  spec.Bmat = &solver.B();
  spec.gamma = 0.7;
  spec.lambda = 0.9;
  spec.anchor.resize(n);
  spec.anchor << 3.0, -0.2, 0.0, 1.4, -2.5;
  spec.omega = 1e-12;
  const SubsolveResult res = solver.solve(spec);
  REQUIRE(res.converged);
  const Vector exact = soft_threshold(spec.anchor, spec.lambda * spec.gamma);
  // gap-to-distance: ||p - prox|| <= sqrt(2 gap lambda)
  CHECK((res.p - exact).norm() <=
        std::sqrt(2.0 * spec.lambda * std::max(res.gap, 1e-16)) + 1e-7);
}

TEST_CASE("weak duality and determinism") {
  GaussianStream gs(2024);
  Matrix B(4, 6);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 6; ++j) B(i, j) = gs.next();
  DualProxSolver solver(B);
  SubproblemSpec spec;
  spec.Bmat = &solver.B();
  spec.gamma = 0.5;
  spec.lambda = 0.3;
  spec.anchor.resize(6);
  for (int j = 0; j < 6; ++j) spec.anchor(j) = gs.next();
  spec.omega = 1e-9;

  const SubsolveResult a = solver.solve(spec);
  const SubsolveResult b = solver.solve(spec);
  REQUIRE(a.converged);
  CHECK(a.gap >= -1e-12);
  CHECK(a.iters == b.iters);
  CHECK((a.p - b.p).norm() == 0.0);
  CHECK((a.y - b.y).norm() == 0.0);
  CHECK(a.gap == b.gap);
}

TEST_CASE("budget exhaustion is reported") {
  // wide box keeps the dual optimum interior, so a three-step run cannot
  // close the gap to machine precision
  GaussianStream gs(71);
  Matrix B(4, 6);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 6; ++j) B(i, j) = gs.next();
  DualProxSolver solver(B);
  SubproblemSpec spec;
  spec.Bmat = &solver.B();
  spec.gamma = 5.0;
  spec.lambda = 0.3;
  spec.anchor.resize(6);
  for (int j = 0; j < 6; ++j) spec.anchor(j) = gs.next();
  spec.omega = 1e-18;
  spec.inner_budget = 3;
  const SubsolveResult res = solver.solve(spec);
  CHECK_FALSE(res.converged);
  CHECK(res.gap > 1e-18);
  CHECK(res.iters == 3);
}

TEST_CASE("operator norm estimate") {
  const Matrix B = 3.0 * Matrix::Identity(4, 4);
  DualProxSolver solver(B);
  CHECK(solver.op_norm_sq() == doctest::Approx(9.0).epsilon(1e-5));
}
