#include "iprox/weakly_convex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace iprox {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double phi_value(const WeaklyConvexPart& g, const ProxQuery& q, const Vector& y) {
  if (!(q.lambda > 0.0)) {
    throw std::invalid_argument("phi_value: lambda must be positive");
  }
  const double gval = g.value(y);
  if (gval == kInf) return kInf;
  return gval + (y - q.anchor).squaredNorm() / (2.0 * q.lambda);
}

double soft_threshold(double x, double tau) {
  const double mag = std::abs(x) - tau;
  return mag > 0.0 ? (x > 0.0 ? mag : -mag) : 0.0;
}

Vector soft_threshold(const Vector& x, double tau) {
  if (tau < 0.0) throw std::invalid_argument("soft_threshold: tau must be >= 0");
  return x.unaryExpr([tau](double v) { return soft_threshold(v, tau); });
}

Vector prox_point(const WeaklyConvexPart& g, double lambda, const Vector& x,
                  double gap_tol) {
  if (!(lambda > 0.0) || lambda * g.modulus_rho >= 1.0) {
    throw std::invalid_argument("prox_point: requires lambda in (0, 1/rho)");
  }
  if (g.exact_prox) return g.exact_prox(lambda, x);
  if (g.prox_to_tol) return g.prox_to_tol(lambda, x, gap_tol);
  throw std::runtime_error("prox_point: no prox oracle available for this g");
}

double moreau_envelope(const WeaklyConvexPart& g, double lambda, const Vector& x) {
  const Vector p = prox_point(g, lambda, x);
  return phi_value(g, ProxQuery{lambda, x}, p);
}

Vector moreau_gradient(const WeaklyConvexPart& g, double lambda, const Vector& x) {
  const Vector p = prox_point(g, lambda, x);
  return (x - p) / lambda;
}

bool weak_eps_subdiff_member(const WeaklyConvexPart& g, double rho, double eps,
                             const Vector& xbar, const Vector& v,
                             const std::vector<Vector>& probes) {
  if (probes.empty()) {
    throw std::invalid_argument("weak_eps_subdiff_member: probes must be nonempty");
  }
  const double g_bar = g.value(xbar);
  if (g_bar == kInf) {
    throw std::domain_error("weak_eps_subdiff_member: xbar outside dom g");
  }
  for (const Vector& x : probes) {
    const double gx = g.value(x);
    if (gx == kInf) continue;  // inequality holds trivially at +inf
    const double lhs = v.dot(x - xbar);
    const double rhs = gx - g_bar + 0.5 * rho * (x - xbar).squaredNorm() + eps;
    const double slack = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (lhs > rhs + slack) return false;
  }
  return true;
}

bool descent_condition_probe(const SmoothPart& f, double L,
                             const std::vector<std::pair<Vector, Vector>>& pairs) {
  if (pairs.empty()) {
    throw std::invalid_argument("descent_condition_probe: pairs must be nonempty");
  }
  for (const auto& [x, y] : pairs) {
    const double lhs = f.value(x);
    const double rhs = f.value(y) + f.gradient(y).dot(x - y) +
                       0.5 * L * (x - y).squaredNorm();
    const double slack = 1e-10 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (lhs > rhs + slack) return false;
  }
  return true;
}

Vector central_difference_gradient(const std::function<double(const Vector&)>& fn,
                                   const Vector& x) {
  const double h = std::max(1e-6, 1e-8 * x.norm());
  Vector grad(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double fp = fn(probe);
    probe(i) = x(i) - h;
    const double fm = fn(probe);
    probe(i) = x(i);
    grad(i) = (fp - fm) / (2.0 * h);
  }
  return grad;
}

}  // namespace iprox
