#pragma once

// Numerical checks of the convergence theory on recorded runs, plus geometry
// property checks used by the `check` subcommand and the acceptance suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paretosd/benchmarks.hpp"
#include "paretosd/solver.hpp"

namespace paretosd {

/// phi(y) = max_i y_i.
double scalarize_max(const ObjectiveVector& f);

/// True iff each objective vector is strictly below its predecessor in every component.
bool check_monotone(const std::vector<ObjectiveVector>& trace);
/// Same check over the recorded f^k followed by final_f.
bool check_monotone(const SolveReport& report);

/// Per-step slack d^2(p^{k+1}, ref) - d^2(p^k, ref) - t_k^2 |v^k|^2.
struct FejerReport {
  std::vector<double> slacks;
  /// Records k where F(ref) ⪯ F(p^k) fails, so the inequality is not implied.
  std::vector<long> outside_reference_set;
  double max_slack = 0.0;
  double tolerance = 0.0;  // 1e-8 (1 + d^2(p^0, ref))
  /// Nonpositivity is only implied on flat manifolds.
  bool asserted = false;
  bool ok = true;
};

FejerReport check_fejer(const SolveReport& report, const Point& ref,
                        const MulticriteriaProblem& prob);

struct SummabilityReport {
  double lhs = 0.0;  // sum_k t_k^2 |v^k|^2
  double rhs = 0.0;  // 2 (phi(F(p^0)) - phi(ref_f)) / beta
  bool precondition_ok = true;  // ref_f ⪯ every recorded F(p^k)
  bool ok = true;
};

SummabilityReport check_summability(const SolveReport& report, double beta,
                                    const ObjectiveVector& ref_f);

struct DiagnosticsReport {
  bool monotone_ok = true;
  std::optional<FejerReport> fejer;
  SummabilityReport summability;
  std::vector<double> scalarization;  // phi(F(p^k)), then phi(final_f)
  std::optional<Point> reference;

  bool ok() const;
};

/// With no reference, a Critical run uses its own final point as the
/// reference for the Fejér check.
DiagnosticsReport run_diagnostics(const MulticriteriaProblem& prob, const SolveReport& report,
                                  const std::optional<Point>& reference = std::nullopt);

struct WeakParetoProbe {
  int samples = 0;
  int dominating = 0;  // probes q with F(q) ≺ F(p)
  bool ok = true;
};

/// Samples points exp_p(r u) with u a random unit tangent and r log-uniform
/// in [1e-4, max_radius]; none should strictly dominate a weak Pareto point.
WeakParetoProbe weak_pareto_probe(const MulticriteriaProblem& prob, const Point& p,
                                  int samples = 1000, double max_radius = 0.1,
                                  std::uint64_t seed = 0);

/// gamma'(s) for the geodesic gamma(s) = exp_p(s v), in closed form.
Tangent geodesic_velocity(const Manifold& m, const Point& p, const Tangent& v, double s);

/// l3^2 - (l1^2 + l2^2 - 2 <v1, v2>) for the hinge at p spanned by v1, v2,
/// divided by l1^2 + l2^2. Zero on flat manifolds.
double law_of_cosines_residual(const Manifold& m, const Point& p, const Tangent& v1,
                               const Tangent& v2);

struct PropertyCheck {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

/// Geodesic, metric and matrix-function properties of m on random samples.
std::vector<PropertyCheck> geometry_checks(const Manifold& m, int trials, std::uint64_t seed);

/// Finite-difference gradient checks of a benchmark at `points` random
/// feasible points (step 1e-6, tolerance 1e-5).
PropertyCheck gradient_checks(const BenchmarkSpec& spec, int points, std::uint64_t seed);

struct OracleSweepOptions {
  int trials = 200;
  int m = 0;  // 0: uniform in 1..5 per trial
  int n = 0;  // 0: uniform in 2..8 per trial
  std::optional<ManifoldKind> manifold;  // unset: cycle through all four
  std::uint64_t seed = 0;
};

/// Randomized comparison of solve_direction against oracle_direction.
struct OracleSweep {
  int trials = 0;
  double max_v_deviation = 0.0;      // |v_solver - v_oracle|_p
  double max_theta_deviation = 0.0;  // |theta_solver - theta_oracle|
  double max_stationarity = 0.0;     // |theta + |v|^2 / 2| / max(1, |v|^2)
  bool ok = true;                    // 1e-7, 1e-9, 1e-9 respectively
};

OracleSweep oracle_sweep(const OracleSweepOptions& opts);

}  // namespace paretosd
