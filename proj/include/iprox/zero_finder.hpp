#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "iprox/types.hpp"

namespace iprox {

/// Shrinking radii (eps_k, r_k) with their reduction factors.
/// Constructed with eps <= r and theta <= mu, eps <= r is preserved by
/// every shrink.
struct RadiusSchedule {
  double eps = 1.0;
  double r = 1.0;
  double mu = 0.5;
  double theta = 0.5;

  void validate() const;
  void shrink() {
    r *= mu;
    eps *= theta;
  }
};

struct SolverState {
  Vector x;
  RadiusSchedule radii;
  long k = 1;
  long null_count = 0;
  bool last_null = false;
};

/// Per-iteration log entry. Vector fields are kept only when the run was
/// configured with keep_vectors; scalar summaries are always present.
struct IterationRecord {
  long k = 0;
  double t = 0.0;
  double eps = 0.0;
  double r = 0.0;
  bool is_null = false;
  double gnorm = 0.0;
  double dnorm = 0.0;
  double fval = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  double omega = std::numeric_limits<double>::quiet_NaN();
  double subsolver_iters = 0.0;
  double time_s = 0.0;
  Vector x;
  Vector g;
  Vector d;
};

struct Trace {
  std::vector<IterationRecord> records;
  std::string stop_reason;
  long oracle_warnings = 0;
  bool keep_vectors = false;

  const IterationRecord& back() const { return records.back(); }
  bool empty() const { return records.empty(); }
  long null_count() const;
};

/// Outer stopping gates shared by the proximal drivers: radii below
/// tolerance, small inexact residual, or an iteration/time budget,
/// whichever fires first.
struct StopRules {
  long max_iter = 100000;
  double time_limit_s = std::numeric_limits<double>::infinity();
  double tol_gnorm = 0.0;
  double tol_radius = 0.0;
  double target_fval = -std::numeric_limits<double>::infinity();
};

/// Null test of the radius-update step: ||g|| <= r + eps.
bool is_null_step(const Vector& g, double r, double eps);

/// -Proj(0, B(g, eps)) = -((||g|| - eps)/||g||) g. Requires ||g|| > eps.
Vector direction(const Vector& g, double eps);

using StepsizeRule = std::function<double(const SolverState&, const Vector& d)>;

/// One step of the generic zero-finding loop: radius update, direction,
/// stepsize, iterate update. Throws on non-finite oracle output.
IterationRecord framework_step(SolverState& state, const Vector& g,
                               const StepsizeRule& stepsize,
                               bool keep_vectors = false);

/// Iterates of the non-null subsequence z^k = x^{j_k}, j_k the non-null
/// indices in order. Requires a trace recorded with keep_vectors.
std::vector<Vector> non_null_subsequence(const Trace& trace);

}  // namespace iprox
