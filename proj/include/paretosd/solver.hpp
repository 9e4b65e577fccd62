#pragma once

// Multicriteria steepest descent with the Armijo rule on a Riemannian manifold:
//
//   v^k     = v(p^k)                       (direction subproblem)
//   t_k     = max 2^-j with F(exp(t v)) ⪯ F(p^k) + beta t gradF(p^k) v^k
//   p^{k+1} = exp_{p^k}(t_k v^k)
//
// stopping once |v(p^k)| <= eps_crit.

#include <string>
#include <variant>
#include <vector>

#include "paretosd/direction.hpp"
#include "paretosd/linesearch.hpp"

namespace paretosd {

struct SolverConfig {
  double beta = 0.5;
  double eps_crit = 1e-6;
  int max_iters = 1000;
  int max_halvings = 64;

  void validate() const;
  ArmijoConfig armijo() const { return {beta, max_halvings}; }
};

struct IterationRecord {
  long k = 0;
  Point p;
  ObjectiveVector f;
  double norm_v = 0.0;
  double theta = 0.0;
  Eigen::VectorXd alpha;
  ObjectiveVector jac_v;  // gradF(p^k) v^k, kept so the Armijo test can be re-checked
  double t = 1.0;
  int j = 0;
};

enum class SolveStatus { Critical, MaxIters, LineSearchFailure };

std::string_view to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIters;
  std::vector<IterationRecord> records;
  Point final_point;
  ObjectiveVector final_f;
  double final_criticality = 0.0;
  SolverConfig config;
  std::string message;  // set for LineSearchFailure
};

struct CriticalSignal {
  DirectionResult direction;
};

struct IterationStep {
  IterationRecord record;
  Point p_next;
  ObjectiveVector f_next;
};

/// One loop body of the method at p. Returns CriticalSignal when |v(p)| <= eps_crit.
std::variant<IterationStep, CriticalSignal> iterate_once(const MulticriteriaProblem& prob,
                                                         const Point& p,
                                                         const SolverConfig& cfg = {},
                                                         long k = 0);

/// Runs the method from p0. Line-search breakdown ends the run with status
/// LineSearchFailure; non-finite values raise NumericError tagged with k.
SolveReport solve(const MulticriteriaProblem& prob, const Point& p0, const SolverConfig& cfg = {});

}  // namespace paretosd
