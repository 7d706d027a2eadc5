#include "iprox/ippm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace iprox {

ProxOracle exact_prox_oracle(const WeaklyConvexPart& g) {
  if (!g.exact_prox) {
    throw std::invalid_argument("exact_prox_oracle: g has no exact prox");
  }
  auto prox = g.exact_prox;
  return [prox](double lambda, const Vector& x, double /*eps*/) {
    return prox(lambda, x);
  };
}

ProxOracle gap_prox_oracle(std::shared_ptr<const DualProxSolver> solver,
                           double gamma, double rho, long inner_budget) {
  auto warm = std::make_shared<Vector>();
  return [solver, gamma, rho, warm, inner_budget](double lambda, const Vector& x,
                                                  double eps) {
    // Strong convexity of Phi with modulus 1/lambda - rho turns a duality
    // gap of omega into a distance bound sqrt(2 omega / (1/lambda - rho)),
    // so this gap certifies ||p - Prox(x)|| <= lambda eps.
    const double omega =
        lambda * lambda * eps * eps * (1.0 / lambda - rho) / 2.0;
    if (!(omega > 0.0)) {
      throw std::invalid_argument("gap_prox_oracle: requires eps > 0");
    }
    SubproblemSpec spec;
    spec.Bmat = &solver->B();
    spec.gamma = gamma;
    spec.lambda = lambda;
    spec.anchor = x;
    spec.omega = omega;
    spec.inner_budget = inner_budget;
    SubsolveResult res =
        solver->solve(spec, warm->size() > 0 ? warm.get() : nullptr);
    *warm = res.y;
    if (!res.converged) {
      throw std::runtime_error("gap_prox_oracle: inner budget exhausted");
    }
    return res.p;
  };
}

std::vector<double> equivalent_framework_view(const Trace& trace,
                                              const WeaklyConvexPart& g,
                                              double lambda) {
  std::vector<double> out;
  out.reserve(trace.records.size());
  for (const IterationRecord& rec : trace.records) {
    if (rec.x.size() == 0 || rec.g.size() == 0) {
      throw std::invalid_argument(
          "equivalent_framework_view: trace was not recorded with keep_vectors");
    }
    out.push_back((rec.g - moreau_gradient(g, lambda, rec.x)).norm());
  }
  return out;
}

Trace run_ippm(const WeaklyConvexPart& g, const IppmConfig& cfg) {
  if (!(cfg.lambda > 0.0) || !(cfg.lambda * g.modulus_rho < 1.0)) {
    throw std::invalid_argument("run_ippm: requires lambda in (0, 1/rho)");
  }
  double tau1 = cfg.tau1;
  double tau2 = cfg.tau2;
  if (tau1 == 0.0 && tau2 == 0.0) {
    tau1 = cfg.lambda / 2.0;
    tau2 = cfg.lambda;
  }
  if (!(tau1 > 0.0) || !(tau1 <= tau2) || !(tau2 < 2.0 * cfg.lambda)) {
    throw std::invalid_argument(
        "run_ippm: requires 0 < tau1 <= tau2 < 2 lambda");
  }
  if (!cfg.oracle) throw std::invalid_argument("run_ippm: missing oracle");

  StepsizeRule stepsize = cfg.stepsize;
  if (!stepsize) {
    const double t_fixed = std::min(tau2, std::max(tau1, cfg.lambda));
    stepsize = [t_fixed](const SolverState&, const Vector&) { return t_fixed; };
  }

  RadiusSchedule radii{cfg.eps1, cfg.r1, cfg.mu, cfg.theta};
  radii.validate();
  SolverState state{cfg.x1, radii};

  Trace trace;
  trace.keep_vectors = cfg.keep_vectors;
  const auto t0 = std::chrono::steady_clock::now();
  double fval = g.value(state.x);

  while (true) {
    if (state.k > cfg.stop.max_iter) {
      trace.stop_reason = "max_iter";
      break;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (elapsed > cfg.stop.time_limit_s) {
      trace.stop_reason = "time";
      break;
    }
    if (state.radii.eps < cfg.stop.tol_radius &&
        state.radii.r < cfg.stop.tol_radius) {
      trace.stop_reason = "radius_tol";
      break;
    }

    const double eps_k = state.radii.eps;
    const Vector p = cfg.oracle(cfg.lambda, state.x, eps_k);
    if (cfg.reference_prox) {
      const Vector p_ref = cfg.reference_prox(cfg.lambda, state.x, eps_k);
      const double bound = cfg.lambda * eps_k;
      if ((p - p_ref).norm() > bound * (1.0 + 1e-8) + 1e-14) {
        ++trace.oracle_warnings;
      }
    }
    const Vector gk = (state.x - p) / cfg.lambda;

    IterationRecord rec = framework_step(state, gk, stepsize, cfg.keep_vectors);
    if (!rec.is_null) fval = g.value(state.x);
    rec.fval = fval;
    rec.time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
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
