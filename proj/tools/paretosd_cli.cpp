// paretosd: command-line harness for the multicriteria Riemannian steepest
// descent solver. Exit codes: 0 success, 1 usage error, 2 solve or check failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "paretosd/serialization.hpp"

namespace {

using namespace paretosd;

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

BenchmarkSpec resolve_problem(const std::string& key_or_file) {
  if (std::filesystem::is_regular_file(key_or_file)) return load_problem_file(key_or_file);
  return find_benchmark(key_or_file);
}

std::string format_point(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << std::setprecision(10) << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ')';
  return os.str();
}

int run_list() {
  std::cout << std::left << std::setw(13) << "key" << std::setw(16) << "manifold" << std::setw(4)
            << "n" << std::setw(4) << "m" << "description\n";
  for (const auto& spec : benchmark_registry()) {
    std::cout << std::left << std::setw(13) << spec.key << std::setw(16)
              << to_string(spec.manifold.kind()) << std::setw(4) << spec.manifold.dim()
              << std::setw(4) << spec.m << spec.description << '\n';
  }
  return 0;
}

struct SolveArgs {
  std::string problem;
  std::string p0;
  SolverConfig cfg;
  std::string trace_path;
  int trace_every = 1;
  std::string report_path;
  std::string ref_point;
};

int run_solve(const SolveArgs& args) {
  BenchmarkSpec spec = resolve_problem(args.problem);
  if (!args.p0.empty()) spec.default_p0 = parse_real_list(args.p0);
  require_point(spec.manifold, spec.default_p0);
  std::optional<Point> reference;
  if (!args.ref_point.empty()) {
    reference = parse_real_list(args.ref_point);
    require_point(spec.manifold, *reference);
  }
  const MulticriteriaProblem prob = make_problem(spec);

  const auto start = std::chrono::steady_clock::now();
  const SolveReport report = solve(prob, spec.default_p0, args.cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const DiagnosticsReport diag = run_diagnostics(prob, report, reference);

  std::cout << "problem            " << spec.key << '\n'
            << "status             " << to_string(report.status) << '\n'
            << "iterations         " << report.records.size() << '\n'
            << "final point        " << format_point(report.final_point) << '\n'
            << "final F            " << format_point(report.final_f) << '\n'
            << "final criticality  " << report.final_criticality << '\n'
            << "monotone           " << (diag.monotone_ok ? "ok" : "FAILED") << '\n';
  if (diag.fejer) {
    std::cout << "fejer max slack    " << diag.fejer->max_slack << " (tol "
              << diag.fejer->tolerance << (diag.fejer->asserted ? "" : ", not asserted") << ")\n";
    if (!diag.fejer->outside_reference_set.empty()) {
      std::cout << "fejer reference    outside U at " << diag.fejer->outside_reference_set.size()
                << " records\n";
    }
  }
  std::cout << "summability        " << diag.summability.lhs << " <= " << diag.summability.rhs
            << (diag.summability.ok ? " ok" : " FAILED") << '\n'
            << "time               " << seconds << " s\n";
  if (!report.message.empty()) std::cout << "message            " << report.message << '\n';

  if (!args.trace_path.empty()) {
    std::ofstream out(args.trace_path);
    if (!out) throw UsageError("cannot write trace file " + args.trace_path);
    write_trace_csv(out, report, spec.manifold, diag.reference, args.trace_every);
  }
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    if (!out) throw UsageError("cannot write report file " + args.report_path);
    out << report_to_json(report, &diag, spec.key).dump(2) << '\n';
  }
  return report.status == SolveStatus::Critical && diag.ok() ? 0 : kExitFailure;
}

void print_check(const PropertyCheck& c) {
  std::cout << "  " << std::left << std::setw(36) << c.name << std::setw(14) << std::setprecision(3)
            << c.worst << std::setw(10) << c.tolerance << (c.passed ? "pass" : "FAIL") << '\n';
}

int run_check(const std::string& key, int points, int trials, std::uint64_t seed) {
  std::vector<const BenchmarkSpec*> specs;
  if (key == "all") {
    for (const auto& s : benchmark_registry()) specs.push_back(&s);
  } else {
    specs.push_back(&find_benchmark(key));
  }
  bool all_ok = true;
  for (const BenchmarkSpec* spec : specs) {
    std::cout << spec->key << " on " << to_string(spec->manifold.kind()) << '\n';
    std::cout << "  " << std::left << std::setw(36) << "check" << std::setw(14) << "worst"
              << std::setw(10) << "tol" << "result\n";
    std::vector<PropertyCheck> checks{gradient_checks(*spec, points, seed)};
    for (auto& c : geometry_checks(spec->manifold, trials, seed)) checks.push_back(std::move(c));
    for (const auto& c : checks) {
      print_check(c);
      all_ok = all_ok && c.passed;
    }
  }
  return all_ok ? 0 : kExitFailure;
}

int run_oracle(const OracleSweepOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const OracleSweep sweep = oracle_sweep(opts);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "trials               " << sweep.trials << '\n'
            << "max |v - v_oracle|   " << sweep.max_v_deviation << " (tol 1e-07)\n"
            << "max |theta - oracle| " << sweep.max_theta_deviation << " (tol 1e-09)\n"
            << "max stationarity     " << sweep.max_stationarity << " (tol 1e-09)\n"
            << "time                 " << seconds << " s\n"
            << (sweep.ok ? "PASS" : "FAIL") << '\n';
  return sweep.ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicriteria steepest descent on Riemannian manifolds"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the benchmark registry");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Run the solver on a benchmark or problem file");
  solve_cmd->add_option("--problem", solve_args.problem, "Registry key or JSON problem file")
      ->required();
  solve_cmd->add_option("--p0", solve_args.p0, "Start point, comma separated");
  solve_cmd->add_option("--beta", solve_args.cfg.beta, "Armijo parameter in (0,1)")
      ->capture_default_str();
  solve_cmd->add_option("--eps", solve_args.cfg.eps_crit, "Criticality tolerance on |v|")
      ->capture_default_str();
  solve_cmd->add_option("--max-iters", solve_args.cfg.max_iters)->capture_default_str();
  solve_cmd->add_option("--max-halvings", solve_args.cfg.max_halvings)->capture_default_str();
  solve_cmd->add_option("--trace", solve_args.trace_path, "Write the iteration trace CSV");
  solve_cmd->add_option("--trace-every", solve_args.trace_every, "Keep every N-th trace row")
      ->capture_default_str();
  solve_cmd->add_option("--report", solve_args.report_path, "Write the JSON report");
  solve_cmd->add_option("--ref-point", solve_args.ref_point,
                        "Reference point for the Fejer check (default: the final point)");

  std::string check_key;
  int check_points = 50, check_trials = 100;
  std::uint64_t check_seed = 0;
  auto* check_cmd = app.add_subcommand("check", "Gradient and geometry property checks");
  check_cmd->add_option("--problem", check_key, "Registry key or 'all'")->required();
  check_cmd->add_option("--points", check_points, "Random points for FD checks")
      ->capture_default_str();
  check_cmd->add_option("--trials", check_trials, "Random samples for geometry checks")
      ->capture_default_str();
  check_cmd->add_option("--seed", check_seed)->capture_default_str();

  OracleSweepOptions oracle_opts;
  std::string oracle_manifold = "all";
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the direction solver to enumeration");
  oracle_cmd->add_option("--trials", oracle_opts.trials)->capture_default_str();
  oracle_cmd->add_option("--m", oracle_opts.m, "Objectives (0: random 1..5)")
      ->capture_default_str();
  oracle_cmd->add_option("--n", oracle_opts.n, "Dimension parameter (0: random 2..8)")
      ->capture_default_str();
  oracle_cmd->add_option("--manifold", oracle_manifold,
                         "euclidean, octant, hypercube, spd or all")
      ->capture_default_str();
  oracle_cmd->add_option("--seed", oracle_opts.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*list) return run_list();
    if (*solve_cmd) return run_solve(solve_args);
    if (*check_cmd) return run_check(check_key, check_points, check_trials, check_seed);
    if (*oracle_cmd) {
      if (oracle_manifold != "all") {
        oracle_opts.manifold = parse_manifold_kind(oracle_manifold);
        if (!oracle_opts.manifold) throw UsageError("unknown manifold '" + oracle_manifold + "'");
      }
      if (oracle_opts.m < 0 || oracle_opts.m > kOracleMaxObjectives || oracle_opts.n < 0 ||
          oracle_opts.trials < 1) {
        throw UsageError("oracle: --trials >= 1, 0 <= --m <= 12, --n >= 0 required");
      }
      return run_oracle(oracle_opts);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
