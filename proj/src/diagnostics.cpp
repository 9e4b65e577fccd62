#include "paretosd/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "paretosd/sampling.hpp"

namespace paretosd {

double scalarize_max(const ObjectiveVector& f) {
  if (f.size() == 0) throw UsageError("scalarize_max: empty objective vector");
  return f.maxCoeff();
}

bool check_monotone(const std::vector<ObjectiveVector>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (!dominates_lt(trace[k], trace[k - 1])) return false;
  }
  return true;
}

bool check_monotone(const SolveReport& report) {
  std::vector<ObjectiveVector> trace;
  trace.reserve(report.records.size() + 1);
  for (const auto& r : report.records) trace.push_back(r.f);
  if (report.final_f.size() > 0) trace.push_back(report.final_f);
  return check_monotone(trace);
}

FejerReport check_fejer(const SolveReport& report, const Point& ref,
                        const MulticriteriaProblem& prob) {
  const Manifold& m = prob.manifold();
  require_point(m, ref);
  const ObjectiveVector f_ref = prob.evaluate(ref);

  FejerReport out;
  out.asserted = m.is_flat();
  const auto& recs = report.records;
  const Point& p0 = recs.empty() ? report.final_point : recs.front().p;
  const double d0 = distance(m, p0, ref);
  out.tolerance = 1e-8 * (1.0 + d0 * d0);
  out.max_slack = -std::numeric_limits<double>::infinity();

  double d_k = d0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const Point& next = k + 1 < recs.size() ? recs[k + 1].p : report.final_point;
    const double d_next = distance(m, next, ref);
    const double step = recs[k].t * recs[k].norm_v;
    const double slack = d_next * d_next - d_k * d_k - step * step;
    out.slacks.push_back(slack);
    if (!dominates_leq(f_ref, recs[k].f)) {
      out.outside_reference_set.push_back(recs[k].k);
    } else {
      out.max_slack = std::max(out.max_slack, slack);
    }
    d_k = d_next;
  }
  if (out.slacks.empty() || out.outside_reference_set.size() == out.slacks.size()) {
    out.max_slack = 0.0;
  }
  out.ok = !out.asserted || out.max_slack <= out.tolerance;
  return out;
}

SummabilityReport check_summability(const SolveReport& report, double beta,
                                    const ObjectiveVector& ref_f) {
  if (!(beta > 0.0 && beta < 1.0)) throw UsageError("check_summability: beta must lie in (0, 1)");
  SummabilityReport out;
  for (const auto& r : report.records) {
    const double step = r.t * r.norm_v;
    out.lhs += step * step;
    if (!dominates_leq(ref_f, r.f)) out.precondition_ok = false;
  }
  if (report.final_f.size() > 0 && !dominates_leq(ref_f, report.final_f)) {
    out.precondition_ok = false;
  }
  const ObjectiveVector& f0 = report.records.empty() ? report.final_f : report.records.front().f;
  out.rhs = 2.0 * (scalarize_max(f0) - scalarize_max(ref_f)) / beta;
  out.ok = out.lhs <= out.rhs + 1e-10;
  return out;
}

bool DiagnosticsReport::ok() const {
  if (!monotone_ok || !summability.ok) return false;
  if (fejer && fejer->asserted && (!fejer->ok || !fejer->outside_reference_set.empty())) {
    return false;
  }
  return true;
}

DiagnosticsReport run_diagnostics(const MulticriteriaProblem& prob, const SolveReport& report,
                                  const std::optional<Point>& reference) {
  DiagnosticsReport out;
  out.monotone_ok = check_monotone(report);
  for (const auto& r : report.records) out.scalarization.push_back(scalarize_max(r.f));
  out.scalarization.push_back(scalarize_max(report.final_f));

  out.reference = reference;
  if (!out.reference && report.status == SolveStatus::Critical) out.reference = report.final_point;
  if (out.reference) out.fejer = check_fejer(report, *out.reference, prob);

  ObjectiveVector ref_f = report.final_f;
  if (reference) {
    const ObjectiveVector f = prob.evaluate(*reference);
    if (dominates_leq(f, report.final_f)) ref_f = f;
  }
  out.summability = check_summability(report, report.config.beta, ref_f);
  return out;
}

WeakParetoProbe weak_pareto_probe(const MulticriteriaProblem& prob, const Point& p, int samples,
                                  double max_radius, std::uint64_t seed) {
  const Manifold& m = prob.manifold();
  const ObjectiveVector f_p = prob.evaluate(p);
  Rng rng(seed);
  constexpr double kMinRadius = 1e-4;
  std::uniform_real_distribution<double> log_radius(std::log(kMinRadius),
                                                    std::log(std::max(max_radius, kMinRadius)));
  WeakParetoProbe out;
  for (int s = 0; s < samples; ++s) {
    const Tangent u = random_unit_tangent(m, p, rng);
    const double r = std::exp(log_radius(rng));
    Point q;
    try {
      q = exp_map(m, p, u, r);
    } catch (const NumericError&) {
      continue;
    }
    ++out.samples;
    const ObjectiveVector f_q = prob.evaluate_unchecked(q);
    if (f_q.allFinite() && dominates_lt(f_q, f_p)) ++out.dominating;
  }
  out.ok = out.dominating == 0;
  return out;
}

Tangent geodesic_velocity(const Manifold& m, const Point& p, const Tangent& v, double s) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return v;
    case ManifoldKind::PositiveOctant:
      return (v.array() * (s * v.array() / p.array()).exp()).matrix();
    case ManifoldKind::Hypercube: {
      const Point q = exp_map(m, p, v, s);
      return (q.array() * (1.0 - q.array()) * v.array() / (p.array() * (1.0 - p.array())))
          .matrix();
    }
    case ManifoldKind::SPDCone: {
      const Eigen::Index n = m.dim();
      const Eigen::MatrixXd x = p.reshaped(n, n);
      const Eigen::MatrixXd root = sym_matrix_function(x, MatrixFunction::Sqrt);
      const Eigen::MatrixXd inv_root = sym_matrix_function(x, MatrixFunction::InvSqrt);
      const Eigen::MatrixXd w = detail::symmetrized(Eigen::MatrixXd(inv_root * v.reshaped(n, n) * inv_root));
      const Eigen::MatrixXd e = sym_matrix_function(Eigen::MatrixXd(s * w), MatrixFunction::Exp);
      return detail::as_flat(detail::symmetrized(Eigen::MatrixXd(root * w * e * root)));
    }
  }
  return v;
}

double law_of_cosines_residual(const Manifold& m, const Point& p, const Tangent& v1,
                               const Tangent& v2) {
  const double l1_sq = inner(m, p, v1, v1);
  const double l2_sq = inner(m, p, v2, v2);
  const double l3 = distance(m, exp_map(m, p, v1), exp_map(m, p, v2));
  const double rhs = l1_sq + l2_sq - 2.0 * inner(m, p, v1, v2);
  return (l3 * l3 - rhs) / (l1_sq + l2_sq);
}

namespace {

struct Worst {
  PropertyCheck check;
  Worst(std::string name, double tol) : check{std::move(name), 0.0, tol, true} {}
  void add(double err) {
    if (!(err <= check.worst)) check.worst = std::isnan(err) ? INFINITY : err;
  }
  PropertyCheck done() {
    check.passed = check.worst <= check.tolerance;
    return check;
  }
};

Eigen::VectorXd chart(const Manifold& m, const Point& p) {
  switch (m.kind()) {
    case ManifoldKind::PositiveOctant: return p.array().log();
    case ManifoldKind::Hypercube: return (p.array() / (1.0 - p.array())).log();
    default: return p;
  }
}

}  // namespace

std::vector<PropertyCheck> geometry_checks(const Manifold& m, int trials, std::uint64_t seed) {
  Rng rng(seed);
  Worst exp_zero("exp(p, v, 0) == p", 0.0);
  Worst dist_consistency("d(p, exp_p(tv)) = t|v|", 1e-8);
  Worst speed("constant geodesic speed", 1e-5);
  Worst group("exp group property", 1e-9);
  Worst pairing("<rgrad g, w> = g . w", 1e-10);
  Worst isometry("chart isometry", 1e-12);
  Worst cosines("law of cosines (equality)", 1e-8);
  Worst roundtrip("SPD matrix-function round trips", 1e-10);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    const Point p = random_point(m, rng);
    const Tangent v = random_tangent(m, p, rng);
    const double len = norm(m, p, v);

    exp_zero.add((exp_map(m, p, v, 0.0) - p).lpNorm<Eigen::Infinity>());

    for (double t : {0.1, 0.5, 1.0}) {
      const Point q = exp_map(m, p, v, t);
      dist_consistency.add(std::abs(distance(m, p, q) - t * len) / (t * len));

      constexpr double h = 1e-6;
      const Tangent dq = (exp_map(m, p, v, t + h) - exp_map(m, p, v, t - h)) / (2.0 * h);
      speed.add(std::abs(norm(m, q, dq) - len) / len);
    }

    const double s = unit(rng), t = unit(rng);
    const Point mid = exp_map(m, p, v, s);
    const Point lhs = exp_map(m, mid, geodesic_velocity(m, p, v, s), t);
    const Point rhs = exp_map(m, p, v, s + t);
    group.add((lhs - rhs).lpNorm<Eigen::Infinity>() /
              std::max(1.0, rhs.lpNorm<Eigen::Infinity>()));

    Eigen::VectorXd g = standard_normal(m.ambient_size(), rng);
    const Tangent w = random_tangent(m, p, rng);
    if (m.kind() == ManifoldKind::SPDCone) g = random_symmetric(m.dim(), rng);
    const double ambient = g.dot(w);
    const double scale = g.cwiseProduct(w).cwiseAbs().sum();
    pairing.add(std::abs(inner(m, p, egrad_to_rgrad(m, p, g), w) - ambient) / scale);

    if (m.is_flat()) {
      const Point q = random_point(m, rng);
      const double d = distance(m, p, q);
      isometry.add(std::abs(d - (chart(m, p) - chart(m, q)).norm()) / std::max(1.0, d));
      const Tangent v2 = random_tangent(m, p, rng);
      cosines.add(std::abs(law_of_cosines_residual(m, p, v, v2)));
    } else {
      const Eigen::Index n = m.dim();
      const Eigen::MatrixXd a = p.reshaped(n, n);
      const double an = a.norm();
      const Eigen::MatrixXd log_a = sym_matrix_function(a, MatrixFunction::Log);
      roundtrip.add((sym_matrix_function(log_a, MatrixFunction::Exp) - a).norm() / an);
      const Eigen::MatrixXd root = sym_matrix_function(a, MatrixFunction::Sqrt);
      roundtrip.add((root * root - a).norm() / an);
      const Eigen::MatrixXd inv_root = sym_matrix_function(a, MatrixFunction::InvSqrt);
      roundtrip.add((inv_root * a * inv_root - Eigen::MatrixXd::Identity(n, n)).norm() /
                    std::sqrt(double(n)));
    }
  }

  std::vector<PropertyCheck> out{exp_zero.done(), dist_consistency.done(), speed.done(),
                                 group.done(), pairing.done()};
  if (m.is_flat()) {
    out.push_back(isometry.done());
    out.push_back(cosines.done());
  } else {
    out.push_back(roundtrip.done());
  }
  return out;
}

PropertyCheck gradient_checks(const BenchmarkSpec& spec, int points, std::uint64_t seed) {
  const MulticriteriaProblem prob = make_problem(spec);
  Rng rng(seed);
  Worst worst("FD gradient check " + spec.key, 1e-5);
  for (int i = 0; i < points; ++i) {
    const Point p = random_point(spec.manifold, rng);
    const auto report = fd_gradient_check(prob, p, 1e-6, 1e-5, 8, rng());
    worst.add(report.max_rel_error());
  }
  return worst.done();
}

OracleSweep oracle_sweep(const OracleSweepOptions& opts) {
  constexpr ManifoldKind kKinds[] = {ManifoldKind::Euclidean, ManifoldKind::PositiveOctant,
                                     ManifoldKind::Hypercube, ManifoldKind::SPDCone};
  Rng rng(opts.seed);
  std::uniform_int_distribution<int> pick_m(1, 5), pick_n(2, 8);
  OracleSweep out;
  for (int trial = 0; trial < opts.trials; ++trial) {
    const ManifoldKind kind = opts.manifold ? *opts.manifold : kKinds[trial % 4];
    const int count = opts.m > 0 ? opts.m : pick_m(rng);
    const int n = opts.n > 0 ? opts.n : pick_n(rng);
    const Manifold manifold(kind, n);
    const Point p = random_point(manifold, rng);
    Jacobian grads(manifold.ambient_size(), count);
    for (int i = 0; i < count; ++i) {
      grads.col(i) = egrad_to_rgrad(manifold, p, uniform(manifold.ambient_size(), -1.0, 1.0, rng));
    }
    const DirectionResult fast = solve_direction(grads, p, manifold);
    const DirectionResult exact = oracle_direction(grads, p, manifold);
    const double vv = inner(manifold, p, fast.v, fast.v);
    out.max_v_deviation = std::max(out.max_v_deviation, norm(manifold, p, Tangent(fast.v - exact.v)));
    out.max_theta_deviation = std::max(out.max_theta_deviation, std::abs(fast.theta - exact.theta));
    out.max_stationarity =
        std::max(out.max_stationarity, std::abs(fast.theta + 0.5 * vv) / std::max(1.0, vv));
    ++out.trials;
  }
  out.ok = out.max_v_deviation <= 1e-7 && out.max_theta_deviation <= 1e-9 &&
           out.max_stationarity <= 1e-9;
  return out;
}

}  // namespace paretosd
