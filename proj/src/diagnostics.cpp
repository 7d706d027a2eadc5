#include "iprox/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iprox {

Vector tlambda_point(const CompositeProblem& problem, double lambda,
                     const Vector& x) {
  if (!(lambda > 0.0) || lambda * problem.g.modulus_rho >= 1.0) {
    throw std::invalid_argument("tlambda_point: requires lambda in (0, 1/rho)");
  }
  const Vector anchor = x - lambda * problem.f.gradient(x);
  if (problem.g.exact_prox) return problem.g.exact_prox(lambda, anchor);
  if (problem.g.prox_to_tol) {
    const double gap_tol = 1e-12 * std::max(1.0, problem.g.value(anchor));
    return problem.g.prox_to_tol(lambda, anchor, gap_tol);
  }
  throw std::runtime_error("tlambda_point: no prox oracle available for this g");
}

double fbe_value(const CompositeProblem& problem, double lambda,
                 const Vector& x) {
  const Vector grad = problem.f.gradient(x);
  const Vector anchor = x - lambda * grad;
  Vector p;
  if (problem.g.exact_prox) {
    p = problem.g.exact_prox(lambda, anchor);
  } else if (problem.g.prox_to_tol) {
    const double gap_tol = 1e-12 * std::max(1.0, problem.g.value(anchor));
    p = problem.g.prox_to_tol(lambda, anchor, gap_tol);
  } else {
    throw std::runtime_error("fbe_value: no prox oracle available for this g");
  }
  const double envelope =
      problem.g.value(p) + (p - anchor).squaredNorm() / (2.0 * lambda);
  return problem.f.value(x) - 0.5 * lambda * grad.squaredNorm() + envelope;
}

Vector fbe_gradient(const CompositeProblem& problem, double lambda,
                    const Vector& x) {
  if (!problem.f.hessian_apply) {
    throw std::runtime_error("fbe_gradient: f has no hessian_apply");
  }
  const Vector residual = x - tlambda_point(problem, lambda, x);
  return residual / lambda - problem.f.hessian_apply(x, residual);
}

double surrogate_value(const CompositeProblem& problem, double lambda,
                       double Cscript, const Vector& x, double eps) {
  return fbe_value(problem, lambda, x) + Cscript * eps * eps;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LineFit fit;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    fit.intercept = sy / n;
  } else {
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

RateFit estimate_rate(const std::vector<double>& distances,
                      double rms_threshold) {
  std::vector<double> ks, log_ks, log_ds;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = distances[i];
    if (!(d > 0.0) || !std::isfinite(d)) continue;
    const double k = static_cast<double>(i + 1);
    ks.push_back(k);
    log_ks.push_back(std::log(k));
    log_ds.push_back(std::log(d));
  }
  RateFit out;
  if (ks.size() < 10) return out;

  const LineFit lin = least_squares(ks, log_ds);
  const LineFit pow = least_squares(log_ks, log_ds);
  const double factor = std::exp(lin.slope);
  const double exponent = -pow.slope;
  const bool lin_ok = factor < 1.0 - 1e-9 && lin.rms <= rms_threshold;
  const bool pow_ok = exponent > 1e-6 && pow.rms <= rms_threshold;

  if (lin_ok && (!pow_ok || lin.rms <= pow.rms)) {
    out.kind = RateFit::Kind::Linear;
    out.factor = factor;
    out.residual = lin.rms;
  } else if (pow_ok) {
    out.kind = RateFit::Kind::Power;
    out.exponent = exponent;
    out.residual = pow.rms;
  } else {
    out.residual = std::min(lin.rms, pow.rms);
  }
  return out;
}

}  // namespace iprox
