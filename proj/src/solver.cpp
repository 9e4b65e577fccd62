#include "paretosd/solver.hpp"

#include <cmath>

namespace paretosd {

void SolverConfig::validate() const {
  armijo().validate();
  if (!(eps_crit >= 0.0)) throw UsageError("eps_crit must be nonnegative");
  if (max_iters < 1) throw UsageError("max_iters must be positive");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Critical: return "Critical";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::LineSearchFailure: return "LineSearchFailure";
  }
  return "?";
}

std::variant<IterationStep, CriticalSignal> iterate_once(const MulticriteriaProblem& prob,
                                                         const Point& p, const SolverConfig& cfg,
                                                         long k) {
  const Manifold& m = prob.manifold();
  const ObjectiveVector f = prob.evaluate(p);
  const Jacobian grads = prob.riemannian_jacobian(p);
  DirectionResult dir = solve_direction(grads, p, m);
  if (is_pareto_critical(dir, cfg.eps_crit)) return CriticalSignal{std::move(dir)};

  const ObjectiveVector jac_v = jacobian_apply(m, p, grads, dir.v);
  StepResult step = armijo_step(prob, p, dir.v, jac_v, f, cfg.armijo());

  IterationStep out;
  out.record.k = k;
  out.record.p = p;
  out.record.f = f;
  out.record.norm_v = dir.criticality;
  out.record.theta = dir.theta;
  out.record.alpha = std::move(dir.alpha);
  out.record.jac_v = jac_v;
  out.record.t = step.t;
  out.record.j = step.j;
  out.p_next = std::move(step.p_new);
  out.f_next = std::move(step.f_new);
  return out;
}

SolveReport solve(const MulticriteriaProblem& prob, const Point& p0, const SolverConfig& cfg) {
  cfg.validate();
  require_point(prob.manifold(), p0);

  SolveReport report;
  report.config = cfg;
  Point p = p0;
  for (long k = 0;; ++k) {
    try {
      if (k == cfg.max_iters) {
        const auto dir = solve_direction(prob.riemannian_jacobian(p), p, prob.manifold());
        report.final_criticality = dir.criticality;
        report.status = is_pareto_critical(dir, cfg.eps_crit) ? SolveStatus::Critical
                                                              : SolveStatus::MaxIters;
        break;
      }
      auto outcome = iterate_once(prob, p, cfg, k);
      if (auto* signal = std::get_if<CriticalSignal>(&outcome)) {
        report.status = SolveStatus::Critical;
        report.final_criticality = signal->direction.criticality;
        break;
      }
      auto& step = std::get<IterationStep>(outcome);
      report.records.push_back(std::move(step.record));
      p = std::move(step.p_next);
    } catch (const LineSearchFailure& e) {
      report.status = SolveStatus::LineSearchFailure;
      report.message = "iteration " + std::to_string(k) + ": " + e.what();
      report.final_criticality =
          solve_direction(prob.riemannian_jacobian(p), p, prob.manifold()).criticality;
      break;
    } catch (const NumericError& e) {
      if (e.iteration()) throw;
      throw NumericError(e.what(), k);
    }
  }
  report.final_point = p;
  report.final_f = prob.evaluate(p);
  return report;
}

}  // namespace paretosd
