#pragma once

#include <functional>
#include <memory>

#include "iprox/subsolver.hpp"
#include "iprox/types.hpp"
#include "iprox/weakly_convex.hpp"
#include "iprox/zero_finder.hpp"

namespace iprox {

/// Inexact prox oracle for the proximal point driver: returns p with
/// ||p - Prox_{lambda g}(x)|| <= lambda * eps.
using ProxOracle =
    std::function<Vector(double lambda, const Vector& x, double eps)>;

/// Exact prox wrapped as a zero-error oracle.
ProxOracle exact_prox_oracle(const WeaklyConvexPart& g);

/// Oracle backed by a duality-gap subsolver: a gap of
/// omega = lambda^2 eps^2 (1/lambda - rho) / 2 certifies the distance bound
/// under rho-weak convexity. Warm-starts across calls.
ProxOracle gap_prox_oracle(std::shared_ptr<const DualProxSolver> solver,
                           double gamma, double rho, long inner_budget);

struct IppmConfig {
  double lambda = 0.0;
  Vector x1;
  double eps1 = 1.0;
  double r1 = 1.0;
  double mu = 0.5;
  double theta = 0.5;
  /// Stepsize bounds: 0 < tau1 <= tau2 < 2 lambda. Both zero means
  /// "derive from lambda": tau1 = lambda/2, tau2 = lambda.
  double tau1 = 0.0;
  double tau2 = 0.0;
  ProxOracle oracle;
  /// Optional high-accuracy prox used to audit the oracle's error bound;
  /// violations increment Trace::oracle_warnings but do not abort.
  ProxOracle reference_prox;
  StepsizeRule stepsize;  // default: clamp(lambda, [tau1, tau2])
  StopRules stop;
  bool keep_vectors = false;
};

/// Inexact proximal point iteration on the Moreau envelope gradient
/// g^k = (x^k - p^k)/lambda, driven through the generic framework step.
Trace run_ippm(const WeaklyConvexPart& g, const IppmConfig& cfg);

/// ||g^k - grad e_{lambda g}(x^k)|| per iteration, against a reference
/// prox (exact or high-accuracy). Each entry must be <= eps_k when the
/// oracle honored its contract. Requires a trace recorded with
/// keep_vectors.
std::vector<double> equivalent_framework_view(const Trace& trace,
                                              const WeaklyConvexPart& g,
                                              double lambda);

}  // namespace iprox
