#include "paretosd/problem.hpp"

#include <algorithm>
#include <cmath>

#include "paretosd/sampling.hpp"

namespace paretosd {

MulticriteriaProblem::MulticriteriaProblem(std::string name, Manifold manifold,
                                           std::vector<Objective> objectives)
    : name_(std::move(name)), manifold_(manifold), objectives_(std::move(objectives)) {
  if (objectives_.empty()) throw UsageError("a multicriteria problem needs at least one objective");
  for (const auto& obj : objectives_) {
    if (!obj.value || !obj.gradient) throw UsageError("objective is missing a value or gradient");
  }
}

ObjectiveVector MulticriteriaProblem::evaluate_unchecked(const Point& p) const {
  ObjectiveVector f(num_objectives());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = objectives_[i].value(p);
  return f;
}

ObjectiveVector MulticriteriaProblem::evaluate(const Point& p) const {
  require_point(manifold_, p);
  ObjectiveVector f = evaluate_unchecked(p);
  if (!f.allFinite()) throw NumericError(name_ + ": objective value is not finite");
  return f;
}

Jacobian MulticriteriaProblem::riemannian_jacobian(const Point& p) const {
  require_point(manifold_, p);
  Jacobian grads(manifold_.ambient_size(), num_objectives());
  for (Eigen::Index i = 0; i < grads.cols(); ++i) {
    const Eigen::VectorXd g = objectives_[i].gradient(p);
    if (g.size() != manifold_.ambient_size()) {
      throw UsageError(name_ + ": gradient " + std::to_string(i) + " has the wrong size");
    }
    if (!g.allFinite()) throw NumericError(name_ + ": gradient is not finite");
    grads.col(i) = egrad_to_rgrad(manifold_, p, g);
  }
  return grads;
}

ObjectiveVector jacobian_apply(const Manifold& manifold, const Point& p, const Jacobian& grads,
                               const Tangent& v) {
  ObjectiveVector out(grads.cols());
  for (Eigen::Index i = 0; i < grads.cols(); ++i) out(i) = inner(manifold, p, grads.col(i), v);
  return out;
}

namespace {
void require_same_length(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) throw UsageError("objective vectors have different lengths");
}
}  // namespace

bool dominates_leq(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_length(a, b);
  return (a.array() <= b.array()).all();
}

bool dominates_lt(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_length(a, b);
  return (a.array() < b.array()).all();
}

bool GradientCheckReport::passed() const {
  return std::all_of(objectives.begin(), objectives.end(), [](const Entry& e) { return e.passed; });
}

double GradientCheckReport::max_rel_error() const {
  double worst = 0.0;
  for (const auto& e : objectives) worst = std::max(worst, e.max_rel_error);
  return worst;
}

GradientCheckReport fd_gradient_check(const MulticriteriaProblem& prob, const Point& p,
                                      double step, double tol, int directions,
                                      std::uint64_t seed) {
  if (!(step > 0.0)) throw UsageError("fd_gradient_check: step must be positive");
  const Manifold& m = prob.manifold();
  const Jacobian grads = prob.riemannian_jacobian(p);
  const ObjectiveVector f0 = prob.evaluate(p);

  Rng rng(seed);
  GradientCheckReport report;
  report.tolerance = tol;
  report.objectives.resize(prob.num_objectives());
  for (int d = 0; d < directions; ++d) {
    const Tangent v = random_unit_tangent(m, p, rng);
    const ObjectiveVector analytic = jacobian_apply(m, p, grads, v);
    const ObjectiveVector fwd = prob.evaluate(exp_map(m, p, v, step));
    const ObjectiveVector bwd = prob.evaluate(exp_map(m, p, v, -step));
    for (Eigen::Index i = 0; i < analytic.size(); ++i) {
      const double fd = (fwd(i) - bwd(i)) / (2.0 * step);
      const double scale =
          std::max({std::abs(analytic(i)), std::abs(fd), 1e-3 * (1.0 + std::abs(f0(i)))});
      auto& entry = report.objectives[i];
      entry.max_rel_error = std::max(entry.max_rel_error, std::abs(analytic(i) - fd) / scale);
    }
  }
  for (auto& entry : report.objectives) entry.passed = entry.max_rel_error <= tol;
  return report;
}

}  // namespace paretosd
