#include <gtest/gtest.h>

#include <cmath>

#include "paretosd/benchmarks.hpp"
#include "paretosd/direction.hpp"
#include "paretosd/linesearch.hpp"
#include "paretosd/sampling.hpp"

using namespace paretosd;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// c/2 (x - shift)^2 on the real line.
Objective parabola(double c, double shift = 0.0) {
  return {[=](const Point& x) { return 0.5 * c * (x(0) - shift) * (x(0) - shift); },
          [=](const Point& x) -> Eigen::VectorXd { return vec({c * (x(0) - shift)}); }};
}

// Brute-force reference: smallest j whose trial satisfies every component.
int first_admissible_j(const MulticriteriaProblem& prob, const Point& p, const Tangent& v,
                       const ObjectiveVector& jac_v, const ObjectiveVector& f_p, double beta) {
  for (int j = 0; j <= 64; ++j) {
    const double t = std::pow(0.5, j);
    const ObjectiveVector f = prob.evaluate(exp_map(prob.manifold(), p, v, t));
    bool ok = true;
    for (Eigen::Index i = 0; i < f.size(); ++i) ok = ok && f(i) <= f_p(i) + beta * t * jac_v(i);
    if (ok) return j;
  }
  return -1;
}

}  // namespace

TEST(ArmijoStep, FullStepOnUnitParabola) {
  const MulticriteriaProblem prob("half-square", Manifold::euclidean(1), {parabola(1.0)});
  const auto s = armijo_step(prob, vec({1}), vec({-1}), vec({-1}), vec({0.5}));
  EXPECT_EQ(s.t, 1.0);
  EXPECT_EQ(s.j, 0);
  EXPECT_EQ(s.trial_count, 1);
  EXPECT_EQ(s.p_new, vec({0}));
  EXPECT_EQ(s.f_new, vec({0}));
}

TEST(ArmijoStep, TwoHalvingsOnSteepParabola) {
  const MulticriteriaProblem prob("two-square", Manifold::euclidean(1), {parabola(4.0)});
  const auto s = armijo_step(prob, vec({1}), vec({-4}), vec({-16}), vec({2}));
  EXPECT_EQ(s.t, 0.25);
  EXPECT_EQ(s.j, 2);
  EXPECT_EQ(s.trial_count, 3);
}

TEST(ArmijoStep, BlockingObjectiveIsRespected) {
  const MulticriteriaProblem prob("bi", Manifold::euclidean(1),
                                  {parabola(1.0), parabola(1.0, 0.5)});
  const Point p = vec({1});
  const ObjectiveVector f_p = prob.evaluate(p);
  const Jacobian g = prob.riemannian_jacobian(p);
  const auto dir = solve_direction(g, p, prob.manifold());
  const ObjectiveVector jac_v = jacobian_apply(prob.manifold(), p, g, dir.v);
  const auto s = armijo_step(prob, p, dir.v, jac_v, f_p);

  EXPECT_EQ(s.j, first_admissible_j(prob, p, dir.v, jac_v, f_p, 0.5));
  EXPECT_TRUE(dominates_leq(s.f_new, f_p + 0.5 * s.t * jac_v));
  if (s.j > 0) {
    EXPECT_FALSE(armijo_accepts(prob, p, dir.v, jac_v, f_p, 0.5, 2 * s.t));
  }
  EXPECT_TRUE(dominates_lt(s.f_new, f_p));
}

TEST(ArmijoStep, RejectsNonDescentAndBadConfig) {
  const MulticriteriaProblem prob("half-square", Manifold::euclidean(1), {parabola(1.0)});
  EXPECT_THROW(armijo_step(prob, vec({1}), vec({1}), vec({1}), vec({0.5})), LineSearchFailure);
  EXPECT_THROW(armijo_step(prob, vec({1}), vec({0}), vec({0}), vec({0.5})), LineSearchFailure);
  EXPECT_THROW(armijo_step(prob, vec({1}), vec({-1}), vec({-1}), vec({0.5}), {.beta = 1.0}),
               UsageError);
  EXPECT_THROW(armijo_step(prob, vec({1}), vec({-1}), vec({-1}), vec({0.5}), {.max_halvings = 0}),
               UsageError);
}

TEST(ArmijoStep, ExhaustedHalvingsFail) {
  // A lying slope: the claimed decrease is far steeper than the function allows.
  const MulticriteriaProblem prob("half-square", Manifold::euclidean(1), {parabola(1.0)});
  EXPECT_THROW(armijo_step(prob, vec({1}), vec({-1}), vec({-1e30}), vec({0.5}), {.max_halvings = 10}),
               LineSearchFailure);
}

TEST(ArmijoStep, OutOfDomainTrialsAreRejected) {
  // exp overflows at t = 1 and 1/2, then becomes representable.
  const MulticriteriaProblem prob(
      "steep-octant", Manifold::positive_octant(1),
      {Objective{[](const Point& p) { return -std::log(p(0)); },
                 [](const Point& p) -> Eigen::VectorXd { return vec({-1.0 / p(0)}); }}});
  const Point p = vec({1});
  const Tangent v = vec({1000});
  const ObjectiveVector jac_v = vec({-1000});
  EXPECT_FALSE(armijo_accepts(prob, p, v, jac_v, prob.evaluate(p), 0.5, 1.0));
  const auto s = armijo_step(prob, p, v, jac_v, prob.evaluate(p));
  EXPECT_GE(s.j, 1);
  EXPECT_TRUE(std::isfinite(s.f_new(0)));
}

TEST(ArmijoStep, MaximalityOnRandomBenchmarkStates) {
  Rng rng(31);
  int checked = 0;
  for (const auto& spec : benchmark_registry()) {
    const auto prob = make_problem(spec);
    const Manifold& m = spec.manifold;
    for (int trial = 0; trial < 25; ++trial) {
      const Point p = random_point(m, rng, 1.5);
      const Jacobian g = prob.riemannian_jacobian(p);
      const auto dir = solve_direction(g, p, m);
      if (dir.criticality <= 1e-6) continue;
      const ObjectiveVector f_p = prob.evaluate(p);
      const ObjectiveVector jac_v = jacobian_apply(m, p, g, dir.v);
      for (double beta : {0.1, 0.5, 0.9}) {
        const auto s = armijo_step(prob, p, dir.v, jac_v, f_p, {.beta = beta});
        EXPECT_EQ(s.t, std::ldexp(1.0, -s.j));
        EXPECT_GT(s.t, 0.0);
        EXPECT_LE(s.t, 1.0);
        EXPECT_TRUE(dominates_leq(s.f_new, f_p + beta * s.t * jac_v));
        EXPECT_TRUE(dominates_lt(s.f_new, f_p));
        if (s.j > 0) EXPECT_FALSE(armijo_accepts(prob, p, dir.v, jac_v, f_p, beta, 2 * s.t));
        EXPECT_EQ(s.j, first_admissible_j(prob, p, dir.v, jac_v, f_p, beta)) << spec.key;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 100);
}
