#pragma once

#include "paretosd/problem.hpp"

namespace paretosd {

struct ArmijoConfig {
  double beta = 0.5;
  int max_halvings = 64;

  void validate() const;
};

struct StepResult {
  double t = 1.0;  // 2^-j
  int j = 0;
  int trial_count = 0;
  ObjectiveVector f_new;
  Point p_new;
};

/// The Armijo vector test F(exp_p(t v)) ⪯ f_p + beta t jac_v, evaluated
/// with exact <=. Trial points outside the domain or with non-finite values fail.
bool armijo_accepts(const MulticriteriaProblem& prob, const Point& p, const Tangent& v,
                    const ObjectiveVector& jac_v, const ObjectiveVector& f_p, double beta,
                    double t, Point* trial = nullptr, ObjectiveVector* f_trial = nullptr);

/// Largest t = 2^-j, j = 0, 1, ..., max_halvings passing the Armijo test along
/// the geodesic exp_p(t v). Requires jac_v ≺ 0; throws LineSearchFailure when
/// that precondition fails or no admissible j exists.
StepResult armijo_step(const MulticriteriaProblem& prob, const Point& p, const Tangent& v,
                       const ObjectiveVector& jac_v, const ObjectiveVector& f_p,
                       const ArmijoConfig& cfg = {});

}  // namespace paretosd
