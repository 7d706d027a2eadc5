#include "iprox/zero_finder.hpp"

#include <algorithm>
#include <stdexcept>

namespace iprox {

void RadiusSchedule::validate() const {
  if (!(eps > 0.0) || !(r > 0.0)) {
    throw std::invalid_argument("RadiusSchedule: eps and r must be positive");
  }
  if (!(mu > 0.0 && mu < 1.0) || !(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("RadiusSchedule: mu, theta must lie in (0,1)");
  }
}

long Trace::null_count() const {
  return std::count_if(records.begin(), records.end(),
                       [](const IterationRecord& rec) { return rec.is_null; });
}

bool is_null_step(const Vector& g, double r, double eps) {
  return g.norm() <= r + eps;
}

Vector direction(const Vector& g, double eps) {
  const double gnorm = g.norm();
  if (gnorm <= eps) {
    throw std::invalid_argument("direction: requires ||g|| > eps");
  }
  return (-(gnorm - eps) / gnorm) * g;
}

IterationRecord framework_step(SolverState& state, const Vector& g,
                               const StepsizeRule& stepsize,
                               bool keep_vectors) {
  if (!g.allFinite()) {
    throw std::runtime_error("framework_step: non-finite oracle output at iteration " +
                             std::to_string(state.k));
  }
  IterationRecord rec;
  rec.k = state.k;
  rec.eps = state.radii.eps;
  rec.r = state.radii.r;
  rec.gnorm = g.norm();
  if (keep_vectors) {
    rec.x = state.x;
    rec.g = g;
  }

  if (is_null_step(g, state.radii.r, state.radii.eps)) {
    rec.is_null = true;
    rec.dnorm = 0.0;
    rec.t = 0.0;
    if (keep_vectors) rec.d = Vector::Zero(g.size());
    state.radii.shrink();
    ++state.null_count;
    state.last_null = true;
  } else {
    const Vector d = direction(g, state.radii.eps);
    rec.is_null = false;
    rec.dnorm = d.norm();
    rec.t = stepsize(state, d);
    if (!(rec.t > 0.0)) {
      throw std::invalid_argument("framework_step: stepsize must be positive");
    }
    state.x += rec.t * d;
    if (keep_vectors) rec.d = d;
    state.last_null = false;
  }
  ++state.k;
  return rec;
}

std::vector<Vector> non_null_subsequence(const Trace& trace) {
  std::vector<Vector> out;
  for (const auto& rec : trace.records) {
    if (!rec.is_null) {
      if (rec.x.size() == 0) {
        throw std::invalid_argument(
            "non_null_subsequence: trace was not recorded with keep_vectors");
      }
      out.push_back(rec.x);
    }
  }
  return out;
}

}  // namespace iprox
