#pragma once

// Batch front end: JSON run configurations, execution, and output files.

#include "oqw/analysis.hpp"
#include "oqw/scenarios.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oqw::cli {

enum class Format { csv, json };
enum class Mode { run, steady };

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,
  kNotConverged = 2,
  kIoError = 3,
};

struct RunConfig {
  ScenarioParams params;
  std::size_t steps = 0;
  std::size_t record_every = 1;
  std::string output;  // empty: standard output
  Format format = Format::csv;
  Mode mode = Mode::run;
  double tol = kDefaultTol;
  std::size_t max_iter = 1'000'000;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// OQW_TOL if set (must parse as a positive number), otherwise 1e-10.
double default_tolerance();

/// Parses a configuration document. `default_tol` applies when the document
/// has no "tol" field. Throws ConfigError.
RunConfig parse_config(std::string_view text, double default_tol = kDefaultTol);

/// Builds the same document from "key=value" shorthands; values that parse as
/// JSON are taken as JSON, anything else as a string.
RunConfig parse_quick(const std::string& scenario, const std::vector<std::string>& assignments,
                      double default_tol = kDefaultTol);

using OccupationTrajectory = std::vector<std::pair<std::size_t, OccupationDistribution>>;

OccupationTrajectory occupations(const Trajectory& trajectory);

/// Fixed notation with 12 decimals; values that round to zero print as zero.
std::string format_probability(double p);

/// "step,node,probability" header plus one row per node per snapshot.
std::string emit_csv(const OccupationTrajectory& trajectory);
/// [{"step": n, "occupations": {node: p}}, ...]
std::string emit_json(const OccupationTrajectory& trajectory);
std::string emit(const OccupationTrajectory& trajectory, Format format);

/// Steady-state report document.
std::string steady_report(const BuiltScenario& scenario, const SteadyStateResult& result,
                          double tol);

/// Human-readable residual table for `validate`.
std::string validation_summary(const BuiltScenario& scenario, const ValidationReport& report);

/// Runs `validate`; returns kOk or kInvalid.
int execute_validate(const RunConfig& config, std::ostream& out);

/// Runs the configured mode. Data goes to config.output, or to `data` when no
/// path is set; summary lines go to `log`. Returns an ExitCode.
int execute(const RunConfig& config, std::ostream& data, std::ostream& log);

/// Catalog listing for `scenarios`.
std::string scenario_listing();

}  // namespace oqw::cli
