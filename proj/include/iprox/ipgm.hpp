#pragma once

#include <functional>
#include <memory>

#include "iprox/subsolver.hpp"
#include "iprox/types.hpp"
#include "iprox/weakly_convex.hpp"
#include "iprox/zero_finder.hpp"

namespace iprox {

/// Run-wide constants, computed once and frozen:
///   C1 = lambda (1 - lambda (L + rho))
///   C2 = 2 (sqrt(2/(1/lambda - rho)) + sqrt(2 lambda))
///   C  = min{C1^2/(4 C2^2), C1/4}
///   Cscript = min{lambda (1 - lambda rho)/2, C1^2/(4 C2^2), C1/4}
struct ConstantsBundle {
  double lambda = 0.0;
  double L = 0.0;
  double rho = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C = 0.0;
  double Cscript = 0.0;
};

ConstantsBundle compute_constants(double lambda, double L, double rho);

/// Manually controlled subproblem errors rho_k: either a summable sequence
/// or the proportional choice rho_k = C eps_k^2.
struct ErrorSchedule {
  enum class Kind { Summable, Proportional };
  Kind kind = Kind::Proportional;
  std::function<double(long)> rho_k;  // Summable only

  static ErrorSchedule proportional();
  static ErrorSchedule summable(std::function<double(long)> rho_k);
  /// rho_k = rho0 / k^2, the default summable sequence.
  static ErrorSchedule inverse_square(double rho0);
};

/// Inexact prox oracle for the subproblem at the given anchor: must return a
/// point whose suboptimality is certified <= omega (duality gap or exact).
using ProxSubsolver = std::function<SubsolveResult(
    double lambda, const Vector& anchor, double omega, long inner_budget)>;

/// Wraps a closed-form prox as a zero-gap subsolver.
ProxSubsolver exact_prox_subsolver(const WeaklyConvexPart& g);

/// Wraps a DualProxSolver, warm-starting each call from the previous dual
/// solution of the same run.
ProxSubsolver warm_dual_subsolver(std::shared_ptr<const DualProxSolver> solver,
                                  double gamma);

struct IpgmConfig {
  double lambda = 0.0;
  Vector x1;
  double eps1 = 1.0;
  double r1 = 1.0;
  double mu = 0.5;
  double theta = 0.5;
  ErrorSchedule schedule = ErrorSchedule::proportional();
  ProxSubsolver subsolver;
  long inner_budget = 1000000;
  StopRules stop;
  bool keep_vectors = false;
};

/// x - lambda grad f(x).
Vector forward_point(const SmoothPart& f, double lambda, const Vector& x);

/// The (d^k, t_k) of the framework view of an IPGM step: (0, 2 lambda) at
/// null iterations, otherwise d = direction(g, eps), t = lambda ||g||/||d||.
std::pair<Vector, double> implied_step_params(const Vector& g_k, double eps_k,
                                              double r_k, double lambda);

Trace run_ipgm(const CompositeProblem& problem, const IpgmConfig& cfg);

struct IfbConfig {
  double lambda = 0.0;
  Vector x1;
  /// omega_k = k^{-omega_exponent}; requires omega_exponent > 2 so that
  /// sum sqrt(omega_k) converges.
  double omega_exponent = 4.0;
  /// Overrides the power schedule; the caller asserts sqrt-summability.
  std::function<double(long)> omega_fn;
  ProxSubsolver subsolver;
  long inner_budget = 1000000;
  /// Per-iteration cap on accumulated subsolver iterations while chasing
  /// the strict-decrease condition; exceeding it stalls the run.
  long strict_decrease_cap = 1000000;
  StopRules stop;
  bool keep_vectors = false;
};

/// Inexact forward-backward baseline: every step must satisfy both the gap
/// condition and the strict model-decrease test; an unattainable decrease
/// test terminates the run with stop_reason "stalled".
Trace run_ifb(const CompositeProblem& problem, const IfbConfig& cfg);

}  // namespace iprox
