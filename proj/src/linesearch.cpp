#include "paretosd/linesearch.hpp"

#include <cmath>

namespace paretosd {

void ArmijoConfig::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw UsageError("Armijo beta must lie in (0, 1)");
  if (max_halvings < 1) throw UsageError("max_halvings must be positive");
}

bool armijo_accepts(const MulticriteriaProblem& prob, const Point& p, const Tangent& v,
                    const ObjectiveVector& jac_v, const ObjectiveVector& f_p, double beta,
                    double t, Point* trial, ObjectiveVector* f_trial) {
  Point q;
  try {
    q = exp_map(prob.manifold(), p, v, t);
  } catch (const NumericError&) {
    return false;
  }
  const ObjectiveVector f = prob.evaluate_unchecked(q);
  if (!f.allFinite()) return false;
  const bool ok = (f.array() <= (f_p + beta * t * jac_v).array()).all();
  if (trial) *trial = std::move(q);
  if (f_trial) *f_trial = f;
  return ok;
}

StepResult armijo_step(const MulticriteriaProblem& prob, const Point& p, const Tangent& v,
                       const ObjectiveVector& jac_v, const ObjectiveVector& f_p,
                       const ArmijoConfig& cfg) {
  cfg.validate();
  if (jac_v.size() != prob.num_objectives() || f_p.size() != prob.num_objectives()) {
    throw UsageError("armijo_step: objective vector length mismatch");
  }
  if (!(jac_v.array() < 0.0).all()) {
    throw LineSearchFailure("armijo_step: direction is not a descent direction for every objective");
  }
  StepResult step;
  for (int j = 0; j <= cfg.max_halvings; ++j) {
    const double t = std::ldexp(1.0, -j);
    ++step.trial_count;
    if (armijo_accepts(prob, p, v, jac_v, f_p, cfg.beta, t, &step.p_new, &step.f_new)) {
      step.t = t;
      step.j = j;
      return step;
    }
  }
  throw LineSearchFailure("armijo_step: no step 2^-j with j <= " +
                          std::to_string(cfg.max_halvings) + " satisfies the Armijo condition");
}

}  // namespace paretosd
