#pragma once

#include "iprox/types.hpp"

namespace iprox {

/// Dual iterate for the prox subproblem of g = gamma ||B.||_1: a box-feasible
/// dual variable with the standard accelerated momentum state.
struct DualState {
  Vector y;
  Vector y_prev;
  double momentum_t = 1.0;
  long inner_iter = 0;
};

struct SubproblemSpec {
  const Matrix* Bmat = nullptr;
  double gamma = 0.0;
  double lambda = 0.0;
  Vector anchor;         // F_lambda(x^k)
  double omega = 0.0;    // duality-gap tolerance
  long inner_budget = 1000000;
};

struct SubsolveResult {
  Vector p;
  Vector y;
  double gap = 0.0;
  long iters = 0;
  bool converged = false;
};

/// Psi(y) = -(lambda/2)||B^T y||^2 + <B anchor, y> on the box ||y||_inf <= gamma,
/// -inf outside.
double dual_objective(const SubproblemSpec& spec, const Vector& y);

/// p = anchor - lambda B^T y.
Vector primal_recovery(const SubproblemSpec& spec, const Vector& y);

/// Phi_{lambda,anchor}(p) - Psi(y). Nonnegative for feasible y; throws on an
/// infeasible y.
double duality_gap(const SubproblemSpec& spec, const Vector& p, const Vector& y);

/// ||B||_2^2 estimated by power iteration on B B^T: 100 steps or relative
/// tolerance 1e-6, deterministic all-ones start.
double operator_norm_sq(const Matrix& BBt);

/// Accelerated projected-gradient ascent on the dual of the prox subproblem,
/// with duality-gap stopping and primal recovery. The Gram matrix B B^T and
/// the operator-norm estimate are computed once at construction and shared
/// across subsolves.
class DualProxSolver {
 public:
  explicit DualProxSolver(Matrix B);

  /// Solves the subproblem; returns the best primal seen (smallest Phi) and
  /// the certified gap. warm_y, when given and of matching size, seeds the
  /// dual iterate.
  SubsolveResult solve(const SubproblemSpec& spec,
                       const Vector* warm_y = nullptr) const;

  const Matrix& B() const { return B_; }
  double op_norm_sq() const { return bnorm2_; }

 private:
  Matrix B_;
  Matrix BBt_;
  double bnorm2_ = 0.0;
};

}  // namespace iprox
