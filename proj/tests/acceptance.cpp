// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "paretosd/sampling.hpp"
#include "paretosd/serialization.hpp"

using namespace paretosd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

struct BenchRun {
  const BenchmarkSpec* spec;
  MulticriteriaProblem prob;
  SolveReport report;
  double seconds;
};

const std::vector<BenchRun>& benchmark_runs() {
  static const std::vector<BenchRun> runs = [] {
    std::vector<BenchRun> out;
    for (const auto& spec : benchmark_registry()) {
      MulticriteriaProblem prob = make_problem(spec);
      const auto start = Clock::now();
      SolveReport report = solve(prob, spec.default_p0, {.beta = 0.5, .eps_crit = 1e-6, .max_iters = 2000});
      out.push_back({&spec, std::move(prob), std::move(report), seconds_since(start)});
    }
    return out;
  }();
  return runs;
}

// Extra evidence beyond the default starts: 20 seeded random starts per problem.
const std::vector<BenchRun>& random_start_runs() {
  static const std::vector<BenchRun> runs = [] {
    std::vector<BenchRun> out;
    Rng rng(2024);
    for (const auto& spec : benchmark_registry()) {
      MulticriteriaProblem prob = make_problem(spec);
      for (int i = 0; i < 20; ++i) {
        const Point p0 = random_point(spec.manifold, rng, 1.5);
        const auto start = Clock::now();
        SolveReport report = solve(prob, p0, {.max_iters = 2000});
        out.push_back({&spec, prob, std::move(report), seconds_since(start)});
      }
    }
    return out;
  }();
  return runs;
}

const BenchRun& find_run(const std::string& key) {
  for (const auto& r : benchmark_runs()) {
    if (r.spec->key == key) return r;
  }
  throw UsageError("no run for " + key);
}

OracleSweep& sweep_result(double* elapsed = nullptr) {
  static double secs = 0.0;
  static OracleSweep sweep = [] {
    const auto start = Clock::now();
    OracleSweep s = oracle_sweep({.trials = 200, .seed = 7});
    secs = seconds_since(start);
    return s;
  }();
  if (elapsed) *elapsed = secs;
  return sweep;
}

Outcome oracle_equivalence() {
  double secs = 0.0;
  const OracleSweep& s = sweep_result(&secs);
  Outcome o;
  o.pass = s.trials == 200 && s.max_v_deviation <= 1e-7 && s.max_theta_deviation <= 1e-9 &&
           secs <= 10.0;
  o.detail = fmt("max |dv| %.2e, max |dtheta| %.2e, %.2f s", s.max_v_deviation,
                 s.max_theta_deviation, secs);
  return o;
}

Outcome stationarity() {
  const OracleSweep& s = sweep_result();
  double worst_run = 0.0;
  for (const auto& r : benchmark_runs()) {
    for (const auto& rec : r.report.records) {
      const double vv = rec.norm_v * rec.norm_v;
      worst_run = std::max(worst_run, std::abs(rec.theta + 0.5 * vv) / std::max(1.0, vv));
    }
  }
  return {s.max_stationarity <= 1e-9 && worst_run <= 1e-9,
          fmt("sweep %.2e, benchmark runs %.2e", s.max_stationarity, worst_run)};
}

Outcome gradient_consistency() {
  Outcome o{true, ""};
  for (const auto& spec : benchmark_registry()) {
    const PropertyCheck c = gradient_checks(spec, 50, 0);
    o.pass = o.pass && c.passed;
    o.detail += spec.key + fmt(" %.1e  ", c.worst);
  }
  return o;
}

Outcome geometry_suite() {
  Outcome o{true, ""};
  int checks = 0;
  for (auto kind : {ManifoldKind::Euclidean, ManifoldKind::PositiveOctant, ManifoldKind::Hypercube,
                    ManifoldKind::SPDCone}) {
    for (const auto& c : geometry_checks(Manifold(kind, 3), 100, 0)) {
      ++checks;
      if (!c.passed) {
        o.pass = false;
        o.detail += std::string(to_string(kind)) + "/" + c.name + fmt(" %.2e; ", c.worst);
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " property checks, 100 samples each";
  return o;
}

Outcome monotone_decrease() {
  Outcome o{true, ""};
  for (const auto& r : benchmark_runs()) {
    const bool ok = check_monotone(r.report);
    o.pass = o.pass && ok;
    o.detail += r.spec->key + (ok ? " ok  " : " FAILED  ");
  }
  int extra_failed = 0;
  for (const auto& r : random_start_runs()) extra_failed += check_monotone(r.report) ? 0 : 1;
  o.pass = o.pass && extra_failed == 0;
  o.detail += fmt("random starts %.0f/%.0f ok", double(random_start_runs().size() - extra_failed),
                  double(random_start_runs().size()));
  return o;
}

Outcome fejer() {
  Outcome o{true, ""};
  for (const char* key : {"OCT-QUAD", "CUBE-BI"}) {
    const BenchRun& r = find_run(key);
    if (r.report.status != SolveStatus::Critical) {
      o.pass = false;
      o.detail += std::string(key) + " did not converge; ";
      continue;
    }
    const FejerReport f = check_fejer(r.report, r.report.final_point, r.prob);
    o.pass = o.pass && f.outside_reference_set.empty() && f.max_slack <= f.tolerance;
    o.detail += std::string(key) + fmt(" max slack %.2e (tol %.1e)  ", f.max_slack, f.tolerance);
  }
  int checked = 0, bad = 0;
  for (const auto& r : random_start_runs()) {
    if (!r.spec->manifold.is_flat() || r.report.status != SolveStatus::Critical) continue;
    const FejerReport f = check_fejer(r.report, r.report.final_point, r.prob);
    ++checked;
    if (!f.outside_reference_set.empty() || f.max_slack > f.tolerance) ++bad;
  }
  o.pass = o.pass && bad == 0;
  o.detail += fmt("random starts %.0f/%.0f ok", checked - bad, checked);
  return o;
}

Outcome summability() {
  Outcome o{true, ""};
  for (const auto& r : benchmark_runs()) {
    if (r.report.status != SolveStatus::Critical) continue;
    const SummabilityReport s =
        check_summability(r.report, r.report.config.beta, r.report.final_f);
    o.pass = o.pass && s.ok && s.precondition_ok;
    o.detail += r.spec->key + fmt(" %.3g<=%.3g  ", s.lhs, s.rhs);
  }
  int checked = 0, bad = 0;
  for (const auto& r : random_start_runs()) {
    if (r.report.status != SolveStatus::Critical) continue;
    const SummabilityReport s =
        check_summability(r.report, r.report.config.beta, r.report.final_f);
    ++checked;
    if (!s.ok || !s.precondition_ok) ++bad;
  }
  o.pass = o.pass && bad == 0;
  o.detail += fmt("random starts %.0f/%.0f ok", checked - bad, checked);
  return o;
}

Outcome convergence() {
  Outcome o{true, ""};
  for (const auto& r : benchmark_runs()) {
    if (r.spec->key == "SCALAR-QUAD") continue;
    const bool critical = r.report.status == SolveStatus::Critical;
    const std::size_t limit = r.spec->key == "OCT-QUAD" ? 500 : 2000;
    bool ok = critical && r.report.records.size() <= limit && r.seconds <= 5.0 &&
              r.report.final_criticality <= 1e-6;
    if (r.spec->key == "OCT-QUAD") {
      const Eigen::Vector2d y = r.report.final_point.array().log();
      const Eigen::Vector2d a = r.spec->parameters.at("a1").array().log();
      const Eigen::Vector2d b = r.spec->parameters.at("a2").array().log();
      const double s = std::clamp((y - a).dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
      const double gap = (y - (a + s * (b - a))).norm();
      ok = ok && gap <= 1e-4;
      o.detail += fmt("OCT-QUAD %.0f it, segment gap %.1e  ", double(r.report.records.size()), gap);
    } else {
      o.detail += r.spec->key + fmt(" %.0f it  ", double(r.report.records.size()));
    }
    o.pass = o.pass && ok;
  }
  return o;
}

// Gradient descent with the dyadic Armijo rule on a Euclidean scalar problem.
std::vector<Eigen::VectorXd> scalar_descent(const Objective& f, Eigen::VectorXd x, double beta,
                                            double eps, int iters) {
  std::vector<Eigen::VectorXd> xs{x};
  for (int k = 0; k < iters; ++k) {
    const Eigen::VectorXd g = f.gradient(x);
    if (g.norm() <= eps) break;
    double t = 1.0;
    while (f.value(x - t * g) > f.value(x) - beta * t * g.squaredNorm()) t *= 0.5;
    x -= t * g;
    xs.push_back(x);
  }
  return xs;
}

double scalar_gap(const MulticriteriaProblem& prob, const Point& p0, const SolverConfig& cfg) {
  const SolveReport report = solve(prob, p0, cfg);
  const auto ref = scalar_descent(prob.objective(0), p0, cfg.beta, cfg.eps_crit, cfg.max_iters);
  if (ref.size() != report.records.size() + 1) return INFINITY;
  double worst = (report.final_point - ref.back()).norm();
  for (std::size_t k = 0; k < report.records.size(); ++k) {
    worst = std::max(worst, (report.records[k].p - ref[k]).norm());
  }
  return worst;
}

Outcome scalar_reduction() {
  const double on_registry =
      scalar_gap(make_problem(find_benchmark("SCALAR-QUAD")), find_benchmark("SCALAR-QUAD").default_p0, {});
  Eigen::Matrix2d a;
  a << 4, 1, 1, 0.5;
  const MulticriteriaProblem skewed(
      "skewed", Manifold::euclidean(2),
      {Objective{[a](const Point& x) { return 0.5 * x.dot(a * x); },
                 [a](const Point& x) -> Eigen::VectorXd { return a * x; }}});
  Eigen::VectorXd p0(2);
  p0 << 1.0, -3.0;
  const double on_skewed = scalar_gap(skewed, p0, {.beta = 0.3, .eps_crit = 1e-10, .max_iters = 500});
  return {on_registry <= 1e-12 && on_skewed <= 1e-12,
          fmt("SCALAR-QUAD %.1e, non-isotropic quadratic %.1e", on_registry, on_skewed)};
}

Outcome linesearch_maximality() {
  Rng rng(10);
  int states = 0, failures = 0;
  const auto& reg = benchmark_registry();
  while (states < 100) {
    const BenchmarkSpec& spec = reg[static_cast<std::size_t>(states) % reg.size()];
    const MulticriteriaProblem prob = make_problem(spec);
    const Point p = random_point(spec.manifold, rng, 1.5);
    const Jacobian g = prob.riemannian_jacobian(p);
    const DirectionResult dir = solve_direction(g, p, spec.manifold);
    if (dir.criticality <= 1e-6) continue;
    const ObjectiveVector f_p = prob.evaluate(p);
    const ObjectiveVector jac_v = jacobian_apply(spec.manifold, p, g, dir.v);
    const StepResult s = armijo_step(prob, p, dir.v, jac_v, f_p);
    const bool holds = (prob.evaluate(s.p_new).array() <= (f_p + 0.5 * s.t * jac_v).array()).all();
    const bool maximal = 2 * s.t > 1.0 || !armijo_accepts(prob, p, dir.v, jac_v, f_p, 0.5, 2 * s.t);
    if (!holds || !maximal) ++failures;
    ++states;
  }
  return {failures == 0, fmt("%.0f states, %.0f violations", states, failures)};
}

Outcome weak_pareto() {
  Outcome o{true, ""};
  for (const auto& r : benchmark_runs()) {
    if (!r.spec->geodesically_convex) continue;
    const WeakParetoProbe probe = weak_pareto_probe(r.prob, r.report.final_point, 1000, 0.1, 0);
    o.pass = o.pass && probe.ok && probe.samples == 1000;
    o.detail += r.spec->key + fmt(" %.0f/%.0f  ", probe.dominating, probe.samples);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "direction-oracle equivalence", oracle_equivalence},
      {2, "stationarity identity", stationarity},
      {3, "gradient consistency", gradient_consistency},
      {4, "geometry suite", geometry_suite},
      {5, "strict monotone decrease", monotone_decrease},
      {6, "Fejer inequality", fejer},
      {7, "summability bound", summability},
      {8, "convergence", convergence},
      {9, "scalar reduction", scalar_reduction},
      {10, "line-search maximality", linesearch_maximality},
      {11, "weak-Pareto sampling", weak_pareto},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %-30s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
