#pragma once

// Trace CSV:   k,t,j,norm_v,theta,f_1..f_m[,dist_ref], header mandatory,
//              floats with 17 significant digits.
// JSON report: {status, iterations, final_point, final_f, final_criticality,
//               config, diagnostics{monotone_ok, fejer_max_slack,
//               summability{lhs, rhs}}, records[...]}.
// Problem file: JSON {"problem": KEY, "parameters": {name: [..]}, "p0": [..]}.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "paretosd/diagnostics.hpp"

namespace paretosd {

struct TraceRow {
  long k = 0;
  double t = 0.0;
  int j = 0;
  double norm_v = 0.0;
  double theta = 0.0;
  ObjectiveVector f;
  std::optional<double> dist_ref;
};

/// Writes every `every`-th record. dist_ref is appended when `reference` is set.
void write_trace_csv(std::ostream& out, const SolveReport& report, const Manifold& manifold,
                     const std::optional<Point>& reference = std::nullopt, int every = 1);

std::vector<TraceRow> read_trace_csv(std::istream& in);

nlohmann::json report_to_json(const SolveReport& report,
                              const DiagnosticsReport* diagnostics = nullptr,
                              std::string_view problem = {});

SolveReport report_from_json(const nlohmann::json& j);

/// Registry entry with parameter and start-point overrides applied.
BenchmarkSpec problem_from_json(const nlohmann::json& j);
BenchmarkSpec load_problem_file(const std::filesystem::path& path);

/// "1,2.5,3" -> (1, 2.5, 3). Throws UsageError on malformed input.
Eigen::VectorXd parse_real_list(std::string_view text);

}  // namespace paretosd
