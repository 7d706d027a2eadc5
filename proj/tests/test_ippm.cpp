#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "iprox/ippm.hpp"
#include "iprox/problems.hpp"

using namespace iprox;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

WeaklyConvexPart constant_part(double c) {
  WeaklyConvexPart g;
  g.value = [c](const Vector&) { return c; };
  g.exact_prox = [](double, const Vector& x) { return x; };
  return g;
}

WeaklyConvexPart quadratic_part() {
  WeaklyConvexPart g;
  g.value = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  g.exact_prox = [](double lambda, const Vector& x) {
    return (x / (1.0 + lambda)).eval();
  };
  return g;
}

}  // namespace

TEST_CASE("constant g: every iteration is null") {
  const WeaklyConvexPart g = constant_part(3.0);
  IppmConfig cfg;
  cfg.lambda = 1.0;
  cfg.x1 = vec1(7.0);
  cfg.eps1 = 1.0;
  cfg.r1 = 1.0;
  cfg.oracle = exact_prox_oracle(g);
  cfg.stop.max_iter = 20;
  cfg.keep_vectors = true;

  const Trace trace = run_ippm(g, cfg);
  CHECK(trace.stop_reason == "max_iter");
  CHECK(trace.null_count() == static_cast<long>(trace.records.size()));
  for (const auto& rec : trace.records) CHECK(rec.x(0) == 7.0);
  const long n = trace.null_count();
  CHECK(trace.back().eps ==
        doctest::Approx(std::pow(0.5, static_cast<double>(n - 1))));
}

TEST_CASE("absolute value: iterates move toward zero") {
  const WeaklyConvexPart g = make_l1_part(1.0);
  IppmConfig cfg;
  cfg.lambda = 1.0;
  cfg.x1 = vec1(10.0);
  cfg.eps1 = 1e-6;
  cfg.r1 = 1e-6;
  cfg.tau1 = 1.0;
  cfg.tau2 = 1.0;
  cfg.oracle = exact_prox_oracle(g);
  cfg.stop.max_iter = 30;
  cfg.keep_vectors = true;

  const Trace trace = run_ippm(g, cfg);
  // grad e_1|.|(x) = clamp(x, -1, 1); iterates decrease by about t each step
  CHECK(trace.records.front().gnorm == doctest::Approx(1.0));
  double prev = 10.0;
  for (const auto& rec : trace.records) {
    if (!rec.is_null) {
      CHECK(rec.x(0) <= prev + 1e-12);
      prev = rec.x(0);
    }
  }
  CHECK(std::abs(prev) < 1.5);
}

TEST_CASE("strongly convex quadratic contracts linearly") {
  const WeaklyConvexPart g = quadratic_part();
  IppmConfig cfg;
  cfg.lambda = 1.0;
  cfg.x1 = vec1(8.0);
  cfg.eps1 = 1e-9;
  cfg.r1 = 1e-9;
  cfg.oracle = exact_prox_oracle(g);
  cfg.stop.max_iter = 40;
  cfg.keep_vectors = true;

  const Trace trace = run_ippm(g, cfg);
  // x+ = x + t d with d ~ -g = -(x - x/2) = -x/2 and t = lambda
  bool have_prev = false;
  double prev = 0.0;
  for (const auto& rec : trace.records) {
    if (rec.is_null) continue;
    if (have_prev) CHECK(std::abs(rec.x(0)) <= 0.51 * std::abs(prev) + 1e-6);
    prev = rec.x(0);
    have_prev = true;
  }
  CHECK(std::abs(trace.back().x(0)) < 1e-3);
}

TEST_CASE("framework view of the oracle error") {
  const WeaklyConvexPart g = make_l1_part(1.0);

  SUBCASE("exact oracle has zero deviation") {
    IppmConfig cfg;
    cfg.lambda = 1.0;
    cfg.x1 = vec1(5.0);
    cfg.oracle = exact_prox_oracle(g);
    cfg.stop.max_iter = 10;
    cfg.keep_vectors = true;
    const Trace trace = run_ippm(g, cfg);
    for (double dev : equivalent_framework_view(trace, g, 1.0)) {
      CHECK(dev == doctest::Approx(0.0));
    }
  }

  SUBCASE("perturbed oracle stays within eps") {
    IppmConfig cfg;
    cfg.lambda = 1.0;
    cfg.x1 = vec1(5.0);
    cfg.eps1 = 0.4;
    cfg.r1 = 0.4;
    cfg.oracle = [&g](double lambda, const Vector& x, double eps) {
      Vector p = g.exact_prox(lambda, x);
      p(0) += lambda * eps / 2.0;
      return p;
    };
    cfg.stop.max_iter = 15;
    cfg.keep_vectors = true;
    const Trace trace = run_ippm(g, cfg);
    const auto devs = equivalent_framework_view(trace, g, 1.0);
    for (std::size_t i = 0; i < devs.size(); ++i) {
      CHECK(devs[i] <= trace.records[i].eps / 2.0 + 1e-12);
    }
  }

  SUBCASE("requires vectors") {
    IppmConfig cfg;
    cfg.lambda = 1.0;
    cfg.x1 = vec1(5.0);
    cfg.oracle = exact_prox_oracle(g);
    cfg.stop.max_iter = 3;
    const Trace trace = run_ippm(g, cfg);
    CHECK_THROWS_AS(equivalent_framework_view(trace, g, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("reference prox flags oracle contract violations") {
  const WeaklyConvexPart g = make_l1_part(1.0);
  IppmConfig cfg;
  cfg.lambda = 1.0;
  cfg.x1 = vec1(5.0);
  cfg.eps1 = 0.1;
  cfg.r1 = 0.1;
  cfg.oracle = [&g](double lambda, const Vector& x, double eps) {
    Vector p = g.exact_prox(lambda, x);
    p(0) += 10.0 * lambda * eps;  // violates the advertised bound
    return p;
  };
  cfg.reference_prox = exact_prox_oracle(g);
  cfg.stop.max_iter = 5;
  const Trace trace = run_ippm(g, cfg);
  CHECK(trace.oracle_warnings > 0);

  cfg.oracle = exact_prox_oracle(g);
  const Trace clean = run_ippm(g, cfg);
  CHECK(clean.oracle_warnings == 0);
}

TEST_CASE("gap-based oracle honors the distance bound") {
  auto solver = std::make_shared<DualProxSolver>(Matrix::Identity(1, 1));
  const double gamma = 1.0;
  const WeaklyConvexPart g = make_l1_part(gamma);
  const ProxOracle oracle = gap_prox_oracle(solver, gamma, 0.0, 1000000);
  const double lambda = 1.0;
  for (double eps : {0.5, 0.05, 0.005}) {
    const Vector p = oracle(lambda, vec1(2.0), eps);
    const Vector exact = g.exact_prox(lambda, vec1(2.0));
    CHECK((p - exact).norm() <= lambda * eps + 1e-12);
  }
  CHECK_THROWS_AS(oracle(lambda, vec1(2.0), 0.0), std::invalid_argument);
}

TEST_CASE("configuration validation") {
  const WeaklyConvexPart g = make_l1_part(1.0);
  IppmConfig cfg;
  cfg.lambda = 1.0;
  cfg.x1 = vec1(1.0);
  cfg.oracle = exact_prox_oracle(g);

  SUBCASE("tau ordering enforced") {
    cfg.tau1 = 1.5;
    cfg.tau2 = 1.0;
    CHECK_THROWS_AS(run_ippm(g, cfg), std::invalid_argument);
  }
  SUBCASE("tau2 below 2 lambda") {
    cfg.tau1 = 0.5;
    cfg.tau2 = 2.0;
    CHECK_THROWS_AS(run_ippm(g, cfg), std::invalid_argument);
  }
  SUBCASE("lambda rho constraint") {
    WeaklyConvexPart wc = g;
    wc.modulus_rho = 2.0;
    CHECK_THROWS_AS(run_ippm(wc, cfg), std::invalid_argument);
  }
}

TEST_CASE("default stepsize clamps lambda into the tau interval") {
  const WeaklyConvexPart g = make_l1_part(1.0);
  IppmConfig cfg;
  cfg.lambda = 1.0;
  cfg.x1 = vec1(9.0);
  cfg.eps1 = 1e-8;
  cfg.r1 = 1e-8;
  cfg.tau1 = 0.25;
  cfg.tau2 = 0.5;  // lambda above the interval: expect t = tau2
  cfg.oracle = exact_prox_oracle(g);
  cfg.stop.max_iter = 4;
  const Trace trace = run_ippm(g, cfg);
  for (const auto& rec : trace.records) {
    if (!rec.is_null) CHECK(rec.t == doctest::Approx(0.5));
  }
}
