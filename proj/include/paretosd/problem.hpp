#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "paretosd/geometry.hpp"

namespace paretosd {

/// F(p) = (f_1(p), ..., f_m(p)).
using ObjectiveVector = Eigen::VectorXd;

/// Riemannian jacobian stored column-wise: column i is grad f_i(p).
using Jacobian = Eigen::MatrixXd;

/// One scalar criterion with its analytic ambient partial derivatives.
struct Objective {
  std::function<double(const Point&)> value;
  std::function<Eigen::VectorXd(const Point&)> gradient;
};

class MulticriteriaProblem {
 public:
  MulticriteriaProblem(std::string name, Manifold manifold, std::vector<Objective> objectives);

  const std::string& name() const { return name_; }
  const Manifold& manifold() const { return manifold_; }
  Eigen::Index num_objectives() const { return static_cast<Eigen::Index>(objectives_.size()); }
  const Objective& objective(Eigen::Index i) const { return objectives_.at(i); }

  /// Throws DomainError for an invalid point and NumericError for a non-finite value.
  ObjectiveVector evaluate(const Point& p) const;

  /// No validation; values may be non-finite. Used for line-search trials.
  ObjectiveVector evaluate_unchecked(const Point& p) const;

  Jacobian riemannian_jacobian(const Point& p) const;

 private:
  std::string name_;
  Manifold manifold_;
  std::vector<Objective> objectives_;
};

/// (<grad f_1, v>_p, ..., <grad f_m, v>_p).
ObjectiveVector jacobian_apply(const Manifold& manifold, const Point& p, const Jacobian& grads,
                               const Tangent& v);

/// a ⪯ b: a_i <= b_i for every i.
bool dominates_leq(const ObjectiveVector& a, const ObjectiveVector& b);
/// a ≺ b: a_i < b_i for every i.
bool dominates_lt(const ObjectiveVector& a, const ObjectiveVector& b);

struct GradientCheckReport {
  struct Entry {
    double max_rel_error = 0.0;
    bool passed = true;
  };
  std::vector<Entry> objectives;
  double tolerance = 0.0;

  bool passed() const;
  double max_rel_error() const;
};

/// Compares <grad f_i(p), v>_p with central differences of f_i along the
/// geodesic through p in random unit directions v. The error of each pair is
/// taken relative to max(|analytic|, |fd|, 1e-3 (1 + |f_i(p)|)).
GradientCheckReport fd_gradient_check(const MulticriteriaProblem& prob, const Point& p,
                                      double step = 1e-6, double tol = 1e-5,
                                      int directions = 8, std::uint64_t seed = 0);

}  // namespace paretosd
