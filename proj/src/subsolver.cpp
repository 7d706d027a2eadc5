#include "iprox/subsolver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace iprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool box_feasible(const Vector& y, double gamma) {
  return (y.array().abs() <= gamma).all();
}

Vector project_box(Vector y, double gamma) {
  return y.array().min(gamma).max(-gamma).matrix();
}

}  // namespace

double dual_objective(const SubproblemSpec& spec, const Vector& y) {
  if (!box_feasible(y, spec.gamma)) return -kInf;
  const Matrix& B = *spec.Bmat;
  const Vector Bty = B.transpose() * y;
  return -0.5 * spec.lambda * Bty.squaredNorm() + (B * spec.anchor).dot(y);
}

Vector primal_recovery(const SubproblemSpec& spec, const Vector& y) {
  return spec.anchor - spec.lambda * (spec.Bmat->transpose() * y);
}

double duality_gap(const SubproblemSpec& spec, const Vector& p, const Vector& y) {
  if (!box_feasible(y, spec.gamma)) {
    throw std::invalid_argument("duality_gap: dual point outside the box");
  }
  const Matrix& B = *spec.Bmat;
  const double phi = spec.gamma * (B * p).lpNorm<1>() +
                     (p - spec.anchor).squaredNorm() / (2.0 * spec.lambda);
  return phi - dual_objective(spec, y);
}

double operator_norm_sq(const Matrix& BBt) {
  const Eigen::Index m = BBt.rows();
  Vector v = Vector::Ones(m) / std::sqrt(static_cast<double>(m));
  double value = 0.0;
  for (int i = 0; i < 100; ++i) {
    Vector w = BBt * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double next = v.dot(BBt * v);
    if (std::abs(next - value) <= 1e-6 * std::abs(next)) return next;
    value = next;
  }
  return value;
}

DualProxSolver::DualProxSolver(Matrix B) : B_(std::move(B)) {
  BBt_ = B_ * B_.transpose();
  bnorm2_ = operator_norm_sq(BBt_);
}

SubsolveResult DualProxSolver::solve(const SubproblemSpec& spec,
                                     const Vector* warm_y) const {
  if (!(spec.lambda > 0.0) || spec.gamma < 0.0) {
    throw std::invalid_argument("DualProxSolver: requires lambda > 0, gamma >= 0");
  }
  const Eigen::Index m = B_.rows();
  const Vector c = B_ * spec.anchor;  // fixed linear term of the dual

  // Evaluates the primal/dual pair reachable from y through one Gram product:
  // B p = c - lambda (B B^T) y and ||B^T y||^2 = <y, (B B^T) y>.
  const auto evaluate = [&](const Vector& y, double& phi, double& psi) {
    const Vector s = BBt_ * y;
    const double quad = y.dot(s);
    phi = spec.gamma * (c - spec.lambda * s).lpNorm<1>() +
          0.5 * spec.lambda * quad;
    psi = -0.5 * spec.lambda * quad + c.dot(y);
  };

  DualState state;
  state.y = (warm_y != nullptr && warm_y->size() == m)
                ? project_box(*warm_y, spec.gamma)
                : Vector::Zero(m);
  state.y_prev = state.y;

  double phi = 0.0, psi = 0.0;
  evaluate(state.y, phi, psi);
  double best_phi = phi;
  double best_psi = psi;
  Vector y_best_phi = state.y;
  Vector y_best_psi = state.y;

  const double step =
      bnorm2_ > 0.0 ? 0.99 / (spec.lambda * bnorm2_) : 1.0;
  Vector w = state.y;
  while (best_phi - best_psi > spec.omega && state.inner_iter < spec.inner_budget) {
    const Vector grad = spec.lambda * (BBt_ * w) - c;
    Vector y_next = project_box(w - step * grad, spec.gamma);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * state.momentum_t *
                                                           state.momentum_t));
    w = y_next + ((state.momentum_t - 1.0) / t_next) * (y_next - state.y);
    state.y_prev = state.y;
    state.y = std::move(y_next);
    state.momentum_t = t_next;
    ++state.inner_iter;

    evaluate(state.y, phi, psi);
    if (phi < best_phi) {
      best_phi = phi;
      y_best_phi = state.y;
    }
    if (psi > best_psi) {
      best_psi = psi;
      y_best_psi = state.y;
    }
  }

  SubsolveResult result;
  result.p = spec.anchor - spec.lambda * (B_.transpose() * y_best_phi);
  result.y = y_best_psi;
  result.gap = best_phi - best_psi;
  result.iters = state.inner_iter;
  result.converged = result.gap <= spec.omega;
  return result;
}

}  // namespace iprox
