#pragma once

#include <cstdint>
#include <string>

#include "iprox/subsolver.hpp"
#include "iprox/types.hpp"
#include "iprox/weakly_convex.hpp"

namespace iprox {

/// SplitMix64: the pinned 64-bit generator behind all random instances.
/// Substreams are derived deterministically so results are bit-stable
/// across platforms.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();

  /// Uniform in (0, 1]; never returns 0 so log() is safe.
  double next_unit();
};

/// Standard normal draws via Box-Muller on SplitMix64 output. Purely
/// transform-based: no rejection, no data-dependent loop counts.
struct GaussianStream {
  SplitMix64 rng;
  bool has_cached = false;
  double cached = 0.0;

  explicit GaussianStream(std::uint64_t seed) : rng(seed) {}
  double next();
};

/// The nonconvex image-restoration test problem
///   f(x) = sum_i log(1 + (Ax - b)_i^2),  g(x) = gamma ||Bx||_1.
struct ImageRestorationInstance {
  Matrix A;      // n x n
  Vector b;      // n
  Matrix Bmat;   // m x n
  double gamma = 0.0;
  std::uint64_t seed = 0;

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m() const { return Bmat.rows(); }
};

double f_value(const ImageRestorationInstance& inst, const Vector& x);
Vector f_gradient(const ImageRestorationInstance& inst, const Vector& x);
Vector f_hessian_apply(const ImageRestorationInstance& inst, const Vector& x,
                       const Vector& v);

/// L = 2 ||A||_1 ||A||_inf (max column abs-sum times max row abs-sum).
double lipschitz_L(const ImageRestorationInstance& inst);

/// Fills A, b, B with standard normal entries from disjoint substreams of
/// the given seed; identical seed gives a byte-identical instance.
ImageRestorationInstance generate_instance(int m, int n, double gamma,
                                           std::uint64_t seed);

/// Self-describing binary container: magic, dims, little-endian doubles.
/// Round trips exactly.
void save_instance(const ImageRestorationInstance& inst, const std::string& path);
ImageRestorationInstance load_instance(const std::string& path);

/// Wires the instance into the composite model. When a dual solver is given
/// it backs g.prox_to_tol; the solver must outlive the returned problem.
CompositeProblem make_problem(const ImageRestorationInstance& inst,
                              const DualProxSolver* solver = nullptr);

/// f(x) = 1/2 x^T Q x - c^T x with g = gamma ||.||_1 (exact prox available).
/// Q must be symmetric positive definite.
CompositeProblem make_quadratic_l1(const Matrix& Q, const Vector& c, double gamma);

/// g = gamma |.|_1 alone, with its closed-form prox.
WeaklyConvexPart make_l1_part(double gamma);

}  // namespace iprox
