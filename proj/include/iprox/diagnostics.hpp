#pragma once

#include <vector>

#include "iprox/types.hpp"
#include "iprox/weakly_convex.hpp"

namespace iprox {

/// Desingularization profile psi(t) = M t^{1-q}. q <= 1/2 puts the method
/// in the linear-rate class, q > 1/2 in the power class k^{-(1-q)/(2q-1)}.
struct KLProfile {
  double M = 1.0;
  double q = 0.5;

  bool linear_class() const { return q <= 0.5; }
  double power_exponent() const { return (1.0 - q) / (2.0 * q - 1.0); }
};

struct RateFit {
  enum class Kind { Linear, Power, Inconclusive };
  Kind kind = Kind::Inconclusive;
  double factor = 0.0;    // Linear: per-step contraction, in (0,1)
  double exponent = 0.0;  // Power: decay exponent, > 0
  double residual = 0.0;  // RMS residual of the chosen fit in log space
};

/// High-accuracy T_lambda(x) = Prox_{lambda g}(x - lambda grad f(x)), using
/// the exact prox when available and otherwise a duality-gap tolerance of
/// 1e-12 max(1, Phi(anchor)).
Vector tlambda_point(const CompositeProblem& problem, double lambda,
                     const Vector& x);

/// Forward-backward envelope f(x) - (lambda/2)||grad f(x)||^2
/// + e_{lambda g}(x - lambda grad f(x)).
double fbe_value(const CompositeProblem& problem, double lambda,
                 const Vector& x);

/// (x - T_lambda(x))/lambda - hessian_apply(x, x - T_lambda(x)).
Vector fbe_gradient(const CompositeProblem& problem, double lambda,
                    const Vector& x);

/// F_lambda(x, eps) = fbe_value(x) + Cscript eps^2.
double surrogate_value(const CompositeProblem& problem, double lambda,
                       double Cscript, const Vector& x, double eps);

/// Fits the distance sequence against both rate classes and reports the
/// better one, or Inconclusive when neither fits (RMS residual above
/// rms_threshold, invalid parameter, or fewer than 10 positive entries).
RateFit estimate_rate(const std::vector<double>& distances,
                      double rms_threshold = 0.2);

}  // namespace iprox
