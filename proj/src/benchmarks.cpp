#include "paretosd/benchmarks.hpp"

#include <cmath>
#include <limits>

namespace paretosd {

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

const Eigen::VectorXd& param(const BenchmarkSpec& spec, const std::string& name) {
  auto it = spec.parameters.find(name);
  if (it == spec.parameters.end()) {
    throw UsageError(spec.key + ": missing parameter '" + name + "'");
  }
  if (it->second.size() != spec.manifold.ambient_size()) {
    throw UsageError(spec.key + ": parameter '" + name + "' has the wrong length");
  }
  return it->second;
}

Eigen::VectorXd logit(const Eigen::VectorXd& p) {
  Eigen::VectorXd out(p.size());
  for (Eigen::Index j = 0; j < p.size(); ++j) out(j) = detail::logit(p(j));
  return out;
}

double log_det(const Eigen::MatrixXd& x) {
  Eigen::LLT<Eigen::MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

// f(p) = 1/2 |chart(p) - chart(a)|^2 with chart' = 1 / chart_scale(p).
template <typename Chart, typename Scale>
Objective chart_quadratic(Eigen::VectorXd anchor, Chart chart, Scale chart_scale) {
  const Eigen::VectorXd target = chart(anchor);
  return Objective{
      [=](const Point& p) { return 0.5 * (chart(p) - target).squaredNorm(); },
      [=](const Point& p) -> Eigen::VectorXd {
        return ((chart(p) - target).array() / chart_scale(p).array()).matrix();
      }};
}

// f(X) = trace(C X) - ln det X, f'(X) = C - X^{-1}.
Objective trace_logdet(Eigen::MatrixXd c) {
  const Eigen::Index n = c.rows();
  return Objective{
      [=](const Point& p) {
        const Eigen::MatrixXd x = p.reshaped(n, n);
        return (c * x).trace() - log_det(x);
      },
      [=](const Point& p) -> Eigen::VectorXd {
        const Eigen::MatrixXd x = p.reshaped(n, n);
        const Eigen::MatrixXd g = c - x.llt().solve(Eigen::MatrixXd::Identity(n, n));
        return g.reshaped();
      }};
}

std::vector<BenchmarkSpec> build_registry() {
  std::vector<BenchmarkSpec> out;

  {
    BenchmarkSpec s{.key = "OCT-QUAD",
                    .description = "f_i(p) = 1/2 |ln p - ln a_i|^2 on the positive octant",
                    .manifold = Manifold::positive_octant(2),
                    .m = 2};
    s.parameters["a1"] = vec({1.0, 1.0});
    s.parameters["a2"] = vec({std::exp(1.0), std::exp(2.0)});
    s.default_p0 = vec({5.0, 0.2});
    out.push_back(std::move(s));
  }
  {
    BenchmarkSpec s{.key = "CUBE-BI",
                    .description = "f_i(p) = 1/2 |logit p - logit a_i|^2 on the unit hypercube",
                    .manifold = Manifold::hypercube(2),
                    .m = 2};
    s.parameters["a1"] = vec({0.3, 0.3});
    s.parameters["a2"] = vec({0.7, 0.5});
    s.default_p0 = vec({0.9, 0.1});
    out.push_back(std::move(s));
  }
  {
    BenchmarkSpec s{.key = "SPD-TRACE",
                    .description = "f_1 = tr X - ln det X, f_2 = tr(C X) - ln det X on SPD(2)",
                    .manifold = Manifold::spd_cone(2),
                    .m = 2};
    s.parameters["C"] = vec({2.0, 0.0, 0.0, 0.5});
    s.default_p0 = vec({4.0, 0.0, 0.0, 0.25});
    out.push_back(std::move(s));
  }
  {
    BenchmarkSpec s{.key = "SCALAR-QUAD",
                    .description = "f(x) = 1/2 |x|^2 on R^2 (single objective)",
                    .manifold = Manifold::euclidean(2),
                    .m = 1};
    s.default_p0 = vec({1.0, 0.0});
    s.known_reference = vec({0.0, 0.0});
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

const std::vector<BenchmarkSpec>& benchmark_registry() {
  static const std::vector<BenchmarkSpec> registry = build_registry();
  return registry;
}

const BenchmarkSpec& find_benchmark(std::string_view key) {
  for (const auto& spec : benchmark_registry()) {
    if (spec.key == key) return spec;
  }
  throw UsageError("unknown problem '" + std::string(key) + "'");
}

MulticriteriaProblem make_problem(const BenchmarkSpec& spec) {
  std::vector<Objective> objectives;
  if (spec.key == "SCALAR-QUAD") {
    objectives.push_back({[](const Point& x) { return 0.5 * x.squaredNorm(); },
                          [](const Point& x) -> Eigen::VectorXd { return x; }});
  } else if (spec.key == "OCT-QUAD") {
    auto chart = [](const Eigen::VectorXd& p) -> Eigen::VectorXd { return p.array().log(); };
    auto scale = [](const Eigen::VectorXd& p) -> Eigen::VectorXd { return p; };
    for (const char* name : {"a1", "a2"}) {
      const Eigen::VectorXd& a = param(spec, name);
      require_point(spec.manifold, a);
      objectives.push_back(chart_quadratic(a, chart, scale));
    }
  } else if (spec.key == "CUBE-BI") {
    auto scale = [](const Eigen::VectorXd& p) -> Eigen::VectorXd {
      return p.array() * (1.0 - p.array());
    };
    for (const char* name : {"a1", "a2"}) {
      const Eigen::VectorXd& a = param(spec, name);
      require_point(spec.manifold, a);
      objectives.push_back(chart_quadratic(a, logit, scale));
    }
  } else if (spec.key == "SPD-TRACE") {
    const Eigen::Index n = spec.manifold.dim();
    const Eigen::VectorXd& c = param(spec, "C");
    if (!detail::is_symmetric(c.reshaped(n, n))) throw UsageError("SPD-TRACE: C must be symmetric");
    objectives.push_back(trace_logdet(Eigen::MatrixXd::Identity(n, n)));
    objectives.push_back(trace_logdet(c.reshaped(n, n)));
  } else {
    throw UsageError("unknown problem '" + spec.key + "'");
  }
  return MulticriteriaProblem(spec.key, spec.manifold, std::move(objectives));
}

}  // namespace paretosd
