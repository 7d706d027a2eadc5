#include "iprox/ipgm.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace iprox {

namespace {

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

ConstantsBundle compute_constants(double lambda, double L, double rho) {
  if (!(lambda > 0.0) || !(lambda * (L + rho) < 1.0) || !(lambda * rho < 1.0)) {
    throw std::invalid_argument(
        "compute_constants: requires lambda in (0, 1/(L + rho))");
  }
  ConstantsBundle k;
  k.lambda = lambda;
  k.L = L;
  k.rho = rho;
  k.C1 = lambda * (1.0 - lambda * (L + rho));
  k.C2 = 2.0 * (std::sqrt(2.0 / (1.0 / lambda - rho)) + std::sqrt(2.0 * lambda));
  k.C = std::min(k.C1 * k.C1 / (4.0 * k.C2 * k.C2), k.C1 / 4.0);
  k.Cscript = std::min(lambda * (1.0 - lambda * rho) / 2.0, k.C);
  return k;
}

ErrorSchedule ErrorSchedule::proportional() {
  ErrorSchedule s;
  s.kind = Kind::Proportional;
  return s;
}

ErrorSchedule ErrorSchedule::summable(std::function<double(long)> rho_k) {
  ErrorSchedule s;
  s.kind = Kind::Summable;
  s.rho_k = std::move(rho_k);
  return s;
}

ErrorSchedule ErrorSchedule::inverse_square(double rho0) {
  if (rho0 < 0.0) throw std::invalid_argument("inverse_square: rho0 >= 0");
  return summable([rho0](long k) {
    return rho0 / (static_cast<double>(k) * static_cast<double>(k));
  });
}

ProxSubsolver exact_prox_subsolver(const WeaklyConvexPart& g) {
  if (!g.exact_prox) {
    throw std::invalid_argument("exact_prox_subsolver: g has no exact prox");
  }
  auto prox = g.exact_prox;
  return [prox](double lambda, const Vector& anchor, double /*omega*/,
                long /*budget*/) {
    SubsolveResult res;
    res.p = prox(lambda, anchor);
    res.gap = 0.0;
    res.iters = 0;
    res.converged = true;
    return res;
  };
}

ProxSubsolver warm_dual_subsolver(std::shared_ptr<const DualProxSolver> solver,
                                  double gamma) {
  auto warm = std::make_shared<Vector>();
  return [solver, gamma, warm](double lambda, const Vector& anchor, double omega,
                               long budget) {
    SubproblemSpec spec;
    spec.Bmat = &solver->B();
    spec.gamma = gamma;
    spec.lambda = lambda;
    spec.anchor = anchor;
    spec.omega = omega;
    spec.inner_budget = budget;
    SubsolveResult res =
        solver->solve(spec, warm->size() > 0 ? warm.get() : nullptr);
    *warm = res.y;
    return res;
  };
}

Vector forward_point(const SmoothPart& f, double lambda, const Vector& x) {
  if (lambda == 0.0) return x;
  return x - lambda * f.gradient(x);
}

std::pair<Vector, double> implied_step_params(const Vector& g_k, double eps_k,
                                              double r_k, double lambda) {
  if (is_null_step(g_k, r_k, eps_k)) {
    return {Vector::Zero(g_k.size()), 2.0 * lambda};
  }
  Vector d = direction(g_k, eps_k);
  const double t = lambda * g_k.norm() / d.norm();
  return {std::move(d), t};
}

Trace run_ipgm(const CompositeProblem& problem, const IpgmConfig& cfg) {
  const double rho = problem.g.modulus_rho;
  if (!(cfg.lambda > 0.0) ||
      !(cfg.lambda * (problem.f.descent_L + rho) < 1.0)) {
    throw std::invalid_argument("run_ipgm: requires lambda in (0, 1/(L + rho))");
  }
  if (!(cfg.eps1 <= cfg.r1) || !(cfg.theta <= cfg.mu)) {
    throw std::invalid_argument("run_ipgm: requires eps1 <= r1 and theta <= mu");
  }
  if (!cfg.subsolver) throw std::invalid_argument("run_ipgm: missing subsolver");

  const ConstantsBundle constants =
      compute_constants(cfg.lambda, problem.f.descent_L, rho);
  RadiusSchedule radii{cfg.eps1, cfg.r1, cfg.mu, cfg.theta};
  radii.validate();
  SolverState state{cfg.x1, radii};

  Trace trace;
  trace.keep_vectors = cfg.keep_vectors;
  const auto t0 = std::chrono::steady_clock::now();
  double fval = problem.objective(state.x);

  for (long k = 1;; ++k) {
    if (k > cfg.stop.max_iter) {
      trace.stop_reason = "max_iter";
      break;
    }
    if (elapsed_s(t0) > cfg.stop.time_limit_s) {
      trace.stop_reason = "time";
      break;
    }
    if (state.radii.eps < cfg.stop.tol_radius &&
        state.radii.r < cfg.stop.tol_radius) {
      trace.stop_reason = "radius_tol";
      break;
    }

    const double eps_k = state.radii.eps;
    const double rho_k = cfg.schedule.kind == ErrorSchedule::Kind::Proportional
                             ? constants.C * eps_k * eps_k
                             : cfg.schedule.rho_k(k);
    const double omega =
        std::min(cfg.lambda * (1.0 - cfg.lambda * rho) * eps_k * eps_k / 2.0,
                 rho_k);

    const Vector anchor = forward_point(problem.f, cfg.lambda, state.x);
    const SubsolveResult sub =
        cfg.subsolver(cfg.lambda, anchor, omega, cfg.inner_budget);
    const Vector g = (state.x - sub.p) / cfg.lambda;
    if (!g.allFinite()) {
      throw std::runtime_error("run_ipgm: non-finite subsolver output at iteration " +
                               std::to_string(k));
    }

    IterationRecord rec;
    rec.k = k;
    rec.eps = state.radii.eps;
    rec.r = state.radii.r;
    rec.gnorm = g.norm();
    rec.gap = sub.gap;
    rec.omega = omega;
    rec.subsolver_iters = static_cast<double>(sub.iters);
    if (cfg.keep_vectors) {
      rec.x = state.x;
      rec.g = g;
    }

    if (!sub.converged) {
      rec.time_s = elapsed_s(t0);
      trace.records.push_back(std::move(rec));
      trace.stop_reason = "subsolver_budget";
      break;
    }

    auto [d, t] = implied_step_params(g, state.radii.eps, state.radii.r,
                                      cfg.lambda);
    rec.is_null = d.isZero(0.0);
    rec.dnorm = d.norm();
    rec.t = t;
    if (cfg.keep_vectors) rec.d = d;
    if (rec.is_null) {
      state.radii.shrink();
      ++state.null_count;
    } else {
      state.x = sub.p;
      fval = problem.objective(state.x);
    }
    rec.fval = fval;
    rec.time_s = elapsed_s(t0);
    state.k = k + 1;
    const double gnorm = rec.gnorm;
    trace.records.push_back(std::move(rec));

    if (cfg.stop.tol_gnorm > 0.0 && gnorm <= cfg.stop.tol_gnorm) {
      trace.stop_reason = "gnorm_tol";
      break;
    }
    if (fval < cfg.stop.target_fval) {
      trace.stop_reason = "target_fval";
      break;
    }
  }
  return trace;
}

Trace run_ifb(const CompositeProblem& problem, const IfbConfig& cfg) {
  if (problem.g.modulus_rho != 0.0) {
    throw std::invalid_argument("run_ifb: requires a convex g (rho = 0)");
  }
  if (!(cfg.lambda > 0.0) || !(cfg.lambda * problem.f.descent_L < 1.0)) {
    throw std::invalid_argument("run_ifb: requires lambda in (0, 1/L)");
  }
  std::function<double(long)> omega_fn = cfg.omega_fn;
  if (!omega_fn) {
    if (!(cfg.omega_exponent > 2.0)) {
      throw std::invalid_argument(
          "run_ifb: omega_exponent must exceed 2 (sum sqrt(omega_k) diverges)");
    }
    const double p = cfg.omega_exponent;
    omega_fn = [p](long k) { return std::pow(static_cast<double>(k), -p); };
  }
  if (!cfg.subsolver) throw std::invalid_argument("run_ifb: missing subsolver");

  Trace trace;
  trace.keep_vectors = cfg.keep_vectors;
  const auto t0 = std::chrono::steady_clock::now();
  Vector x = cfg.x1;
  double gval = problem.g.value(x);
  double fval = problem.f.value(x) + gval;

  for (long k = 1;; ++k) {
    if (k > cfg.stop.max_iter) {
      trace.stop_reason = "max_iter";
      break;
    }
    if (elapsed_s(t0) > cfg.stop.time_limit_s) {
      trace.stop_reason = "time";
      break;
    }

    const Vector grad = problem.f.gradient(x);
    const Vector anchor = x - cfg.lambda * grad;
    const double omega_k = omega_fn(k);

    // Chase both subproblem conditions: the gap tolerance and the strict
    // model decrease. Tightening omega is the only recourse when the
    // decrease test fails; running out of inner budget stalls the run.
    long used = 0;
    double omega = omega_k;
    SubsolveResult sub;
    bool decreased = false;
    bool stalled = false;
    Vector prev_p;
    while (true) {
      sub = cfg.subsolver(cfg.lambda, anchor, omega,
                          std::min(cfg.inner_budget,
                                   cfg.strict_decrease_cap - used));
      used += sub.iters;
      const double model = grad.dot(sub.p - x) +
                           (sub.p - x).squaredNorm() / (2.0 * cfg.lambda) +
                           problem.g.value(sub.p);
      decreased = model < gval;
      if (sub.converged && decreased) break;
      const bool no_progress = prev_p.size() > 0 && prev_p == sub.p;
      if (used >= cfg.strict_decrease_cap || omega < 1e-300 || no_progress) {
        stalled = true;
        break;
      }
      prev_p = sub.p;
      omega *= 1e-2;
    }

    const Vector g = (x - sub.p) / cfg.lambda;
    IterationRecord rec;
    rec.k = k;
    rec.gnorm = g.norm();
    rec.gap = sub.gap;
    rec.omega = omega_k;
    rec.subsolver_iters = static_cast<double>(used);
    if (cfg.keep_vectors) {
      rec.x = x;
      rec.g = g;
    }

    if (stalled) {
      rec.fval = fval;
      rec.time_s = elapsed_s(t0);
      trace.records.push_back(std::move(rec));
      trace.stop_reason = "stalled";
      break;
    }

    x = sub.p;
    gval = problem.g.value(x);
    fval = problem.f.value(x) + gval;
    rec.fval = fval;
    rec.t = cfg.lambda;
    rec.dnorm = rec.gnorm * cfg.lambda;
    rec.time_s = elapsed_s(t0);
    const double gnorm = rec.gnorm;
    trace.records.push_back(std::move(rec));

    if (cfg.stop.tol_gnorm > 0.0 && gnorm <= cfg.stop.tol_gnorm) {
      trace.stop_reason = "gnorm_tol";
      break;
    }
    if (fval < cfg.stop.target_fval) {
      trace.stop_reason = "target_fval";
      break;
    }
  }
  return trace;
}

}  // namespace iprox
