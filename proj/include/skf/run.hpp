#pragma once

// Run configuration, the check registry, and report/forms output.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skf/field.hpp"
#include "skf/potential.hpp"
#include "skf/report.hpp"
#include "skf/toric.hpp"

namespace skf {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct SamplingConfig {
  int points = 100;
  std::uint64_t seed = 42;
  double theta_margin = 0.2;
  double r_min = 0.5;
  double r_max = 2.0;
  int potential_points = 200;  // interior momenta for the potential checks
};

struct GeodesicConfig {
  int count = 5;
  double t_end = 10.0;
  double dt = 1e-3;
};

// Metric coefficients of T^{1,1}, overridable for negative controls.
struct MetricCoefficients {
  double round = 1.0 / 6.0;
  double fiber = 1.0 / 9.0;
};

struct RunConfig {
  ToricData toric;  // reeb is empty when search_reeb is set
  bool search_reeb = false;
  SamplingConfig sampling;
  Differentiation derivatives;
  std::map<std::string, double> tolerances;  // every known key, defaults filled in
  std::vector<std::string> checks;
  GeodesicConfig geodesic;
  MetricCoefficients metric;
};

const std::vector<std::string>& check_names();
const std::map<std::string, double>& default_tolerances();

// Conifold data in the normalized basis with B = (3, 3/2, 3/2), every check.
RunConfig default_config();

// Missing fields take their defaults. Throws ConfigError on malformed JSON,
// unknown keys or check names, fd_step <= 0, points < 1 and similar.
RunConfig parse_config(std::string_view json);
void validate_config(const RunConfig& config);
std::string config_to_json(const RunConfig& config);

struct CheckResult {
  ResidualReport report;
  double seconds = 0.0;
  bool informational = false;
  std::string error;  // set when the check threw; the report then fails
  std::map<std::string, std::vector<double>> vectors;
};

struct RunReport {
  RunConfig config;
  std::vector<CheckResult> results;
  bool overall_pass = false;
  std::optional<ReebSearchResult> reeb_search;
};

// Runs the configured checks in order. A check that throws is recorded as a
// failure and the run continues.
RunReport run(const RunConfig& config);

// {version, config, results, overall_pass}. Timing fields are the only
// nondeterministic content and can be left out.
std::string report_to_json(const RunReport& report, bool include_timing = true);
std::string report_summary(const RunReport& report);

// Nonzero components of the seven candidate forms at base chart points, with
// fixed coefficient strings. Components are labelled in the order
// dpsi, dtheta1, dtheta2, dphi1, dphi2.
std::string emit_forms(const std::vector<ChartPoint>& points);

const char* library_version();

}  // namespace skf
