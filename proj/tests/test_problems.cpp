#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "doctest.h"
#include "iprox/problems.hpp"
#include "iprox/weakly_convex.hpp"

using namespace iprox;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

ImageRestorationInstance tiny_instance() {
  ImageRestorationInstance inst;
  inst.A = Matrix::Identity(1, 1);
  inst.b = Vector::Zero(1);
  inst.Bmat = Matrix::Identity(1, 1);
  inst.gamma = 1.0;
  return inst;
}

}  // namespace

TEST_CASE("smooth value and gradient in one dimension") {
  const ImageRestorationInstance inst = tiny_instance();
  CHECK(f_value(inst, vec1(0)) == doctest::Approx(0.0));
  CHECK(f_value(inst, vec1(1)) == doctest::Approx(std::log(2.0)));
  CHECK(f_gradient(inst, vec1(1))(0) == doctest::Approx(1.0));
  CHECK(f_gradient(inst, vec1(0))(0) == doctest::Approx(0.0));
  CHECK(f_hessian_apply(inst, vec1(1), vec1(1))(0) == doctest::Approx(0.0));
  CHECK(f_hessian_apply(inst, vec1(0), vec1(1))(0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(f_value(inst, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("lipschitz constant") {
  ImageRestorationInstance inst = tiny_instance();
  inst.A = Matrix::Identity(3, 3);
  inst.b = Vector::Zero(3);
  CHECK(lipschitz_L(inst) == doctest::Approx(2.0));
  inst.A = 2.0 * Matrix::Identity(3, 3);
  CHECK(lipschitz_L(inst) == doctest::Approx(8.0));
  // scaling A by c scales L by c^2
  GaussianStream gs(3);
  Matrix A(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = gs.next();
  inst.A = A;
  const double L1 = lipschitz_L(inst);
  inst.A = 3.0 * A;
  CHECK(lipschitz_L(inst) == doctest::Approx(9.0 * L1));
}

TEST_CASE("instance generation is deterministic") {
  const auto a = generate_instance(6, 5, 1e-3, 987);
  const auto b = generate_instance(6, 5, 1e-3, 987);
  CHECK((a.A - b.A).norm() == 0.0);
  CHECK((a.b - b.b).norm() == 0.0);
  CHECK((a.Bmat - b.Bmat).norm() == 0.0);
  const auto c = generate_instance(6, 5, 1e-3, 988);
  CHECK((a.A - c.A).norm() > 0.0);
}

TEST_CASE("gaussian entries have near-zero sample mean") {
  const auto inst = generate_instance(200, 200, 1e-3, 4242);
  const double count = 200.0 * 200.0;
  CHECK(std::abs(inst.A.mean()) <= 4.0 / std::sqrt(count));
  CHECK(std::abs(inst.Bmat.mean()) <= 4.0 / std::sqrt(count));
}

TEST_CASE("table-scale configurations are constructible") {
  const auto tn5 = generate_instance(200, 800, 1e-3, 1);
  CHECK(tn5.m() == 200);
  CHECK(tn5.n() == 800);
  CHECK(tn5.gamma == 1e-3);
}

TEST_CASE("gradient matches finite differences") {
  const auto inst = generate_instance(8, 8, 1e-3, 55);
  SplitMix64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    Vector x(8);
    for (int j = 0; j < 8; ++j) x(j) = rng.next_unit() - 0.5;
    const Vector grad = f_gradient(inst, x);
    const Vector fd = central_difference_gradient(
        [&](const Vector& y) { return f_value(inst, y); }, x);
    CHECK((grad - fd).norm() <= 1e-5 * std::max(1.0, grad.norm()));
  }
}

TEST_CASE("hessian apply is symmetric and consistent") {
  const auto inst = generate_instance(6, 6, 1e-3, 21);
  GaussianStream gs(9);
  Vector x(6), u(6), v(6);
  for (int j = 0; j < 6; ++j) {
    x(j) = gs.next();
    u(j) = gs.next();
    v(j) = gs.next();
  }
  const double uv = u.dot(f_hessian_apply(inst, x, v));
  const double vu = v.dot(f_hessian_apply(inst, x, u));
  CHECK(uv == doctest::Approx(vu).epsilon(1e-10));
}

TEST_CASE("descent condition holds with the computed constant") {
  const auto inst = generate_instance(10, 10, 1e-3, 3131);
  const CompositeProblem problem = make_problem(inst);
  std::vector<std::pair<Vector, Vector>> pairs;
  GaussianStream gs(14);
  for (int i = 0; i < 8; ++i) {
    Vector x(10), y(10);
    for (int j = 0; j < 10; ++j) {
      x(j) = 0.3 * gs.next();
      y(j) = 0.3 * gs.next();
    }
    pairs.emplace_back(x, y);
  }
  CHECK(descent_condition_probe(problem.f, lipschitz_L(inst), pairs));
}

TEST_CASE("objective is nonnegative") {
  const auto inst = generate_instance(7, 7, 1e-3, 808);
  const CompositeProblem problem = make_problem(inst);
  GaussianStream gs(2);
  for (int i = 0; i < 10; ++i) {
    Vector x(7);
    for (int j = 0; j < 7; ++j) x(j) = gs.next();
    CHECK(problem.objective(x) >= 0.0);
  }
}

TEST_CASE("instance serialization round trips exactly") {
  const auto inst = generate_instance(5, 4, 1e-6, 123456789);
  const std::string path = "instance_roundtrip.bin";
  save_instance(inst, path);
  const auto back = load_instance(path);
  std::remove(path.c_str());
  CHECK(back.m() == inst.m());
  CHECK(back.n() == inst.n());
  CHECK(back.seed == inst.seed);
  CHECK(back.gamma == inst.gamma);
  CHECK((back.A - inst.A).norm() == 0.0);
  CHECK((back.b - inst.b).norm() == 0.0);
  CHECK((back.Bmat - inst.Bmat).norm() == 0.0);
}

TEST_CASE("quadratic l1 problem has a working exact prox") {
  Matrix Q = Matrix::Identity(2, 2);
  Q(0, 0) = 2.0;
  const CompositeProblem problem = make_quadratic_l1(Q, Vector::Zero(2), 0.5);
  Vector x(2);
  x << 3.0, -1.0;
  const Vector p = problem.g.exact_prox(1.0, x);
  CHECK(p(0) == doctest::Approx(2.5));
  CHECK(p(1) == doctest::Approx(-0.5));
  CHECK(problem.f.descent_L == doctest::Approx(2.0));
}
