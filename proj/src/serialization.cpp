#include "paretosd/serialization.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace paretosd {

using nlohmann::json;

namespace {

json to_json_array(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd from_json_array(const json& a) {
  if (!a.is_array()) throw UsageError("expected a JSON array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw UsageError("expected a JSON array of numbers");
    v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

SolveStatus parse_status(const std::string& s) {
  for (auto st : {SolveStatus::Critical, SolveStatus::MaxIters, SolveStatus::LineSearchFailure}) {
    if (s == to_string(st)) return st;
  }
  throw UsageError("unknown solve status '" + s + "'");
}

}  // namespace

void write_trace_csv(std::ostream& out, const SolveReport& report, const Manifold& manifold,
                     const std::optional<Point>& reference, int every) {
  if (every < 1) throw UsageError("trace thinning interval must be >= 1");
  const Eigen::Index m = report.final_f.size();
  out << "k,t,j,norm_v,theta";
  for (Eigen::Index i = 1; i <= m; ++i) out << ",f_" << i;
  if (reference) out << ",dist_ref";
  out << '\n';
  out << std::setprecision(17);
  for (const auto& r : report.records) {
    if (r.k % every != 0) continue;
    out << r.k << ',' << r.t << ',' << r.j << ',' << r.norm_v << ',' << r.theta;
    for (Eigen::Index i = 0; i < r.f.size(); ++i) out << ',' << r.f(i);
    if (reference) out << ',' << distance(manifold, r.p, *reference);
    out << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("trace CSV: missing header");
  const auto header = split(line, ',');
  if (header.size() < 6 || header[0] != "k" || header[1] != "t" || header[2] != "j" ||
      header[3] != "norm_v" || header[4] != "theta") {
    throw UsageError("trace CSV: unexpected header");
  }
  const bool has_ref = header.back() == "dist_ref";
  const std::size_t m = header.size() - 5 - (has_ref ? 1 : 0);

  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw UsageError("trace CSV: ragged row");
    TraceRow row;
    row.k = std::stol(cells[0]);
    row.t = std::stod(cells[1]);
    row.j = std::stoi(cells[2]);
    row.norm_v = std::stod(cells[3]);
    row.theta = std::stod(cells[4]);
    row.f.resize(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) row.f(static_cast<Eigen::Index>(i)) = std::stod(cells[5 + i]);
    if (has_ref) row.dist_ref = std::stod(cells.back());
    rows.push_back(std::move(row));
  }
  return rows;
}

json report_to_json(const SolveReport& report, const DiagnosticsReport* diagnostics,
                    std::string_view problem) {
  json j;
  if (!problem.empty()) j["problem"] = std::string(problem);
  j["status"] = std::string(to_string(report.status));
  j["iterations"] = report.records.size();
  j["final_point"] = to_json_array(report.final_point);
  j["final_f"] = to_json_array(report.final_f);
  j["final_criticality"] = report.final_criticality;
  j["config"] = {{"beta", report.config.beta},
                 {"eps_crit", report.config.eps_crit},
                 {"max_iters", report.config.max_iters},
                 {"max_halvings", report.config.max_halvings}};
  if (!report.message.empty()) j["message"] = report.message;
  if (diagnostics) {
    json d;
    d["monotone_ok"] = diagnostics->monotone_ok;
    d["fejer_max_slack"] =
        diagnostics->fejer ? json(diagnostics->fejer->max_slack) : json(nullptr);
    d["summability"] = {{"lhs", diagnostics->summability.lhs},
                        {"rhs", diagnostics->summability.rhs},
                        {"ok", diagnostics->summability.ok}};
    j["diagnostics"] = d;
  }
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"k", r.k},
                       {"p", to_json_array(r.p)},
                       {"f", to_json_array(r.f)},
                       {"norm_v", r.norm_v},
                       {"theta", r.theta},
                       {"alpha", to_json_array(r.alpha)},
                       {"jac_v", to_json_array(r.jac_v)},
                       {"t", r.t},
                       {"j", r.j}});
  }
  j["records"] = std::move(records);
  return j;
}

SolveReport report_from_json(const json& j) {
  SolveReport report;
  report.status = parse_status(j.at("status").get<std::string>());
  report.final_point = from_json_array(j.at("final_point"));
  report.final_f = from_json_array(j.at("final_f"));
  report.final_criticality = j.at("final_criticality").get<double>();
  const json& c = j.at("config");
  report.config.beta = c.at("beta").get<double>();
  report.config.eps_crit = c.at("eps_crit").get<double>();
  report.config.max_iters = c.at("max_iters").get<int>();
  report.config.max_halvings = c.at("max_halvings").get<int>();
  report.message = j.value("message", "");
  for (const json& r : j.value("records", json::array())) {
    IterationRecord rec;
    rec.k = r.at("k").get<long>();
    rec.p = from_json_array(r.at("p"));
    rec.f = from_json_array(r.at("f"));
    rec.norm_v = r.at("norm_v").get<double>();
    rec.theta = r.at("theta").get<double>();
    rec.alpha = from_json_array(r.at("alpha"));
    rec.jac_v = from_json_array(r.at("jac_v"));
    rec.t = r.at("t").get<double>();
    rec.j = r.at("j").get<int>();
    report.records.push_back(std::move(rec));
  }
  return report;
}

BenchmarkSpec problem_from_json(const json& j) {
  if (!j.is_object() || !j.contains("problem")) {
    throw UsageError("problem file must be a JSON object with a \"problem\" key");
  }
  BenchmarkSpec spec = find_benchmark(j.at("problem").get<std::string>());
  if (j.contains("parameters")) {
    for (const auto& [name, value] : j.at("parameters").items()) {
      auto it = spec.parameters.find(name);
      if (it == spec.parameters.end()) {
        throw UsageError(spec.key + ": unknown parameter '" + name + "'");
      }
      Eigen::VectorXd v = from_json_array(value);
      if (v.size() != it->second.size()) {
        throw UsageError(spec.key + ": parameter '" + name + "' has the wrong length");
      }
      it->second = std::move(v);
    }
  }
  if (j.contains("p0")) {
    spec.default_p0 = from_json_array(j.at("p0"));
    require_point(spec.manifold, spec.default_p0);
  }
  // Overridden parameters invalidate any registry reference point.
  if (j.contains("parameters")) spec.known_reference.reset();
  return spec;
}

BenchmarkSpec load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open problem file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("problem file " + path.string() + ": " + e.what());
  }
  return problem_from_json(j);
}

Eigen::VectorXd parse_real_list(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string cell(text.substr(pos, comma - pos));
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed number '" + cell + "' in list '" + std::string(text) + "'");
    }
    if (used != cell.size()) {
      throw UsageError("malformed number '" + cell + "' in list '" + std::string(text) + "'");
    }
    values.push_back(x);
    pos = comma + 1;
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace paretosd
