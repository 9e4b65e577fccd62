#include <gtest/gtest.h>

#include <cmath>

#include "paretosd/benchmarks.hpp"
#include "paretosd/sampling.hpp"

using namespace paretosd;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

MulticriteriaProblem linear_problem(const Manifold& m, Eigen::VectorXd c) {
  return MulticriteriaProblem("linear", m,
                              {Objective{[c](const Point& p) { return c.dot(p); },
                                         [c](const Point&) -> Eigen::VectorXd { return c; }}});
}

}  // namespace

TEST(Problem, ConstructorRejectsEmptyOrIncomplete) {
  EXPECT_THROW(MulticriteriaProblem("empty", Manifold::euclidean(2), {}), UsageError);
  EXPECT_THROW(MulticriteriaProblem("half", Manifold::euclidean(2),
                                    {Objective{[](const Point&) { return 0.0; }, nullptr}}),
               UsageError);
}

TEST(Evaluate, OctQuadHandValue) {
  const auto prob = make_problem(find_benchmark("OCT-QUAD"));
  const ObjectiveVector f = prob.evaluate(vec({1, 1}));
  ASSERT_EQ(f.size(), 2);
  EXPECT_NEAR(f(0), 0.0, 1e-15);
  EXPECT_NEAR(f(1), 2.5, 1e-15);
}

TEST(Evaluate, PureAndSized) {
  const auto prob = make_problem(find_benchmark("CUBE-BI"));
  const Point p = vec({0.25, 0.6});
  EXPECT_EQ(prob.evaluate(p), prob.evaluate(p));
  const auto scalar = make_problem(find_benchmark("SCALAR-QUAD"));
  EXPECT_EQ(scalar.evaluate(vec({3, 4})).size(), 1);
  EXPECT_DOUBLE_EQ(scalar.evaluate(vec({3, 4}))(0), 12.5);
}

TEST(Evaluate, Errors) {
  const auto prob = make_problem(find_benchmark("OCT-QUAD"));
  EXPECT_THROW(prob.evaluate(vec({1, -1})), DomainError);
  const MulticriteriaProblem nan_prob(
      "nan", Manifold::euclidean(1),
      {Objective{[](const Point&) { return std::nan(""); },
                 [](const Point& p) -> Eigen::VectorXd { return p; }}});
  EXPECT_THROW(nan_prob.evaluate(vec({0})), NumericError);
  EXPECT_TRUE(std::isnan(nan_prob.evaluate_unchecked(vec({0}))(0)));
}

TEST(RiemannianJacobian, Examples) {
  const auto eu = linear_problem(Manifold::euclidean(2), vec({1, 2}));
  EXPECT_EQ(eu.riemannian_jacobian(vec({7, 7})).col(0), vec({1, 2}));

  const auto oct = linear_problem(Manifold::positive_octant(2), vec({1, 0}));
  EXPECT_EQ(oct.riemannian_jacobian(vec({2, 3})).col(0), vec({4, 0}));

  const auto bi = make_problem(find_benchmark("OCT-QUAD"));
  const Jacobian g = bi.riemannian_jacobian(vec({2, 0.5}));
  EXPECT_EQ(g.cols(), 2);
  EXPECT_TRUE(fd_gradient_check(bi, vec({2, 0.5})).passed());
}

TEST(RiemannianJacobian, Errors) {
  const MulticriteriaProblem wrong_size(
      "bad", Manifold::euclidean(2),
      {Objective{[](const Point&) { return 0.0; },
                 [](const Point&) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(3); }}});
  EXPECT_THROW(wrong_size.riemannian_jacobian(vec({0, 0})), UsageError);
  const MulticriteriaProblem inf_grad(
      "inf", Manifold::euclidean(1),
      {Objective{[](const Point&) { return 0.0; },
                 [](const Point&) -> Eigen::VectorXd { return vec({INFINITY}); }}});
  EXPECT_THROW(inf_grad.riemannian_jacobian(vec({0})), NumericError);
}

TEST(JacobianApply, Examples) {
  const auto m = Manifold::positive_octant(2);
  const Point p = vec({2, 3});
  Jacobian g(2, 1);
  g.col(0) = vec({1, -2});
  EXPECT_EQ(jacobian_apply(m, p, g, Tangent::Zero(2)), ObjectiveVector::Zero(1));
  const double sq = inner(m, p, g.col(0), g.col(0));
  EXPECT_DOUBLE_EQ(jacobian_apply(m, p, g, -g.col(0))(0), -sq);
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(dominates_leq(vec({1, 2}), vec({1, 3})));
  EXPECT_FALSE(dominates_lt(vec({1, 2}), vec({1, 3})));
  EXPECT_TRUE(dominates_leq(vec({1, 2}), vec({1, 2})));
  EXPECT_FALSE(dominates_lt(vec({1, 2}), vec({1, 2})));
  EXPECT_FALSE(dominates_leq(vec({1, 4}), vec({2, 3})));
  EXPECT_FALSE(dominates_leq(vec({2, 3}), vec({1, 4})));
  EXPECT_THROW(dominates_leq(vec({1}), vec({1, 2})), UsageError);
  EXPECT_THROW(dominates_lt(vec({1}), vec({1, 2})), UsageError);
}

TEST(Dominance, PartialOrderProperties) {
  Rng rng(21);
  std::uniform_int_distribution<int> small(-2, 2);
  auto draw = [&] { return vec({double(small(rng)), double(small(rng)), double(small(rng))}); };
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = draw(), b = draw(), c = draw();
    EXPECT_TRUE(dominates_leq(a, a));
    EXPECT_FALSE(dominates_lt(a, a));
    if (dominates_leq(a, b) && dominates_leq(b, a)) EXPECT_EQ(a, b);
    if (dominates_leq(a, b) && dominates_leq(b, c)) EXPECT_TRUE(dominates_leq(a, c));
    if (dominates_lt(a, b)) EXPECT_TRUE(dominates_leq(a, b));
    if (dominates_lt(a, b) && dominates_leq(b, c)) EXPECT_TRUE(dominates_lt(a, c));
  }
}

TEST(GradientCheck, LinearEuclideanIsExact) {
  // For a linear objective the central difference is exact up to rounding,
  // which a moderate step keeps far below 1e-12.
  const auto prob = linear_problem(Manifold::euclidean(3), vec({1.5, -2, 0.25}));
  const auto report = fd_gradient_check(prob, vec({0.3, -0.7, 2.0}), 0.5, 1e-12);
  EXPECT_TRUE(report.passed());
  EXPECT_LE(report.max_rel_error(), 1e-12);
}

TEST(GradientCheck, BenchmarksPassAtRandomPoints) {
  Rng rng(4);
  for (const auto& spec : benchmark_registry()) {
    const auto prob = make_problem(spec);
    for (int i = 0; i < 20; ++i) {
      const Point p = random_point(spec.manifold, rng, 0.8);
      const auto report = fd_gradient_check(prob, p, 1e-6, 1e-5, 8, i);
      EXPECT_TRUE(report.passed()) << spec.key << " err " << report.max_rel_error();
    }
  }
}

TEST(GradientCheck, DetectsScaledGradient) {
  const auto good = make_problem(find_benchmark("OCT-QUAD"));
  std::vector<Objective> objs;
  for (Eigen::Index i = 0; i < good.num_objectives(); ++i) {
    Objective o = good.objective(i);
    auto grad = o.gradient;
    o.gradient = [grad](const Point& p) -> Eigen::VectorXd { return 2.0 * grad(p); };
    objs.push_back(o);
  }
  const MulticriteriaProblem corrupted("corrupted", good.manifold(), objs);
  const auto report = fd_gradient_check(corrupted, vec({2, 0.5}));
  EXPECT_FALSE(report.passed());
  for (const auto& e : report.objectives) EXPECT_FALSE(e.passed);
}

TEST(GradientCheck, RejectsBadStep) {
  const auto prob = linear_problem(Manifold::euclidean(1), vec({1}));
  EXPECT_THROW(fd_gradient_check(prob, vec({0}), 0.0), UsageError);
}

TEST(Benchmarks, RegistryContents) {
  const auto& reg = benchmark_registry();
  ASSERT_EQ(reg.size(), 4u);
  EXPECT_EQ(reg[0].key, "OCT-QUAD");
  EXPECT_EQ(reg[3].key, "SCALAR-QUAD");
  for (const auto& spec : reg) {
    EXPECT_FALSE(validate_point(spec.manifold, spec.default_p0).has_value()) << spec.key;
    EXPECT_EQ(make_problem(spec).num_objectives(), spec.m);
  }
  EXPECT_THROW(find_benchmark("NOPE"), UsageError);
}

TEST(Benchmarks, SpdTraceMinimizers) {
  const auto prob = make_problem(find_benchmark("SPD-TRACE"));
  // grad f_1 vanishes at I and grad f_2 at C^{-1}.
  const Jacobian at_id = prob.riemannian_jacobian(vec({1, 0, 0, 1}));
  EXPECT_LT(at_id.col(0).norm(), 1e-15);
  const Jacobian at_cinv = prob.riemannian_jacobian(vec({0.5, 0, 0, 2}));
  EXPECT_LT(at_cinv.col(1).norm(), 1e-15);
  EXPECT_NEAR(prob.evaluate(vec({1, 0, 0, 1}))(0), 2.0, 1e-15);
}

TEST(Benchmarks, ParameterOverridesAreValidated) {
  BenchmarkSpec spec = find_benchmark("OCT-QUAD");
  spec.parameters["a1"] = vec({1, -1});
  EXPECT_THROW(make_problem(spec), DomainError);
  spec.parameters["a1"] = vec({1, 1, 1});
  EXPECT_THROW(make_problem(spec), UsageError);
}
