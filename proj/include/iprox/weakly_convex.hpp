#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "iprox/types.hpp"

namespace iprox {

/// Smooth term: value/gradient callables, optional Hessian-vector product,
/// and a descent constant L.
struct SmoothPart {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Vector(const Vector&, const Vector&)> hessian_apply;  // optional
  double descent_L = 0.0;
};

/// Nonsmooth term: extended-real value (+inf outside the domain), weak
/// convexity modulus, and an optional exact prox. When no closed form
/// exists, prox_to_tol computes the prox to a given duality-gap tolerance.
struct WeaklyConvexPart {
  std::function<double(const Vector&)> value;
  double modulus_rho = 0.0;
  std::function<Vector(double lambda, const Vector& x)> exact_prox;  // optional
  std::function<Vector(double lambda, const Vector& anchor, double gap_tol)>
      prox_to_tol;  // optional
};

struct CompositeProblem {
  SmoothPart f;
  WeaklyConvexPart g;

  double objective(const Vector& x) const { return f.value(x) + g.value(x); }
};

struct ProxQuery {
  double lambda = 1.0;
  Vector anchor;
  double tolerance_omega = 0.0;
};

/// Phi_{lambda,anchor}(y) = g(y) + ||y - anchor||^2 / (2 lambda).
double phi_value(const WeaklyConvexPart& g, const ProxQuery& q, const Vector& y);

/// Componentwise sign(x_i) max(|x_i| - tau, 0); the prox of tau*||.||_1.
Vector soft_threshold(const Vector& x, double tau);
double soft_threshold(double x, double tau);

/// Prox_{lambda g}(x), via exact_prox when present, otherwise prox_to_tol
/// at the given gap tolerance. Throws when neither is available.
Vector prox_point(const WeaklyConvexPart& g, double lambda, const Vector& x,
                  double gap_tol = 1e-12);

double moreau_envelope(const WeaklyConvexPart& g, double lambda, const Vector& x);

/// lambda^{-1} (x - Prox_{lambda g}(x)).
Vector moreau_gradient(const WeaklyConvexPart& g, double lambda, const Vector& x);

/// Probe-based membership test for the weak eps-subdifferential at xbar.
/// A false return certifies non-membership; a true return is evidence only
/// (the definition quantifies over all of R^n).
bool weak_eps_subdiff_member(const WeaklyConvexPart& g, double rho, double eps,
                             const Vector& xbar, const Vector& v,
                             const std::vector<Vector>& probes);

/// Checks f(x) <= f(y) + <grad f(y), x-y> + (L/2)||x-y||^2 on all pairs,
/// up to 1e-10 relative slack.
bool descent_condition_probe(const SmoothPart& f, double L,
                             const std::vector<std::pair<Vector, Vector>>& pairs);

/// Central finite differences of a scalar function, step
/// h = max(1e-6, 1e-8 ||x||) per coordinate.
Vector central_difference_gradient(const std::function<double(const Vector&)>& fn,
                                   const Vector& x);

}  // namespace iprox
