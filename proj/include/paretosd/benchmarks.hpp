#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paretosd/problem.hpp"

namespace paretosd {

/// A built-in test problem. `parameters` holds named real arrays (anchor
/// points, matrices flattened column-major) consumed by make_problem.
struct BenchmarkSpec {
  std::string key;
  std::string description;
  Manifold manifold;
  Eigen::Index m = 1;
  std::map<std::string, Eigen::VectorXd> parameters;
  Point default_p0;
  /// A point known to satisfy F(ref) ⪯ F(p^k) along runs from default_p0.
  std::optional<Point> known_reference;
  bool geodesically_convex = true;
};

/// OCT-QUAD, CUBE-BI, SPD-TRACE, SCALAR-QUAD.
const std::vector<BenchmarkSpec>& benchmark_registry();

/// Throws UsageError for an unknown key.
const BenchmarkSpec& find_benchmark(std::string_view key);

/// Builds the objectives of a benchmark from its (possibly overridden) parameters.
MulticriteriaProblem make_problem(const BenchmarkSpec& spec);

}  // namespace paretosd
