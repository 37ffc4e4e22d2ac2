#pragma once

#include "admflux/analysis.hpp"
#include "admflux/catalog.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace admflux::run {

enum class Command { mass, center, compare, identities, decay, sweep };

enum class Check {
  adm_mass,
  intrinsic_mass,
  cs_center,
  intrinsic_center,
  identity_residuals,
  scalar_moments,
  decay_checks,
};

enum class OutputFormat { csv, json };

Command parse_command(std::string_view name);
Check parse_check(std::string_view name);
std::string_view check_name(Check check);

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kPass = 0,
  kCertificationFailed = 1,
  kUsageError = 2,
  kNumericalError = 3,
};

struct MetricSpec {
  catalog::CatalogSpec catalog;
  std::optional<double> rt_violator_amplitude;  // set for the rt_violator kind

  int dim() const { return catalog.dim; }
  MetricField build() const;
};

struct Tolerances {
  double limit = 1e-4;       // sweep convergence
  double difference = 1e-4;  // m - m_I and c_CS - c_I limits
  double identity = 1e-8;    // integration-by-parts residuals
  double agreement = 1e-8;   // adaptive quadrature
};

struct RunConfig {
  MetricSpec metric;
  std::vector<Check> functionals;  // empty: everything the command covers
  Schedule schedule;
  int order = 24;
  bool adaptive = true;
  int max_order = 384;
  Tolerances tolerances;
  std::optional<double> center_mass;
  int decay_sample_order = 12;
  bool require_regge_teitelboim = false;
  std::optional<double> moment_r0;
  std::optional<double> moment_r1;
  int moment_shells = 0;
  int moment_radial_nodes = 16;
  OutputFormat format = OutputFormat::csv;
  std::string output_dir = "admflux_out";
  int threads = 0;
};

/// Parses JSON config text. Errors are ErrorKind::config with a line/column
/// for syntax errors and a key path for schema errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Cross-field validation (schedule vs inner radius, orders, tolerances).
void validate(const RunConfig& config);

/// Comma-separated radii, e.g. "10,20,40".
std::vector<double> parse_radii(std::string_view text);

/// One machine-readable table.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct CheckResult {
  std::string functional;
  bool verdict = false;
  double tolerance = 0.0;
  std::optional<Vector> fitted_limit;
  std::optional<double> fitted_rate;
  std::vector<PowerLawFit> fits;  // per component, sweep style checks only
  std::optional<double> max_abs;  // residual / sup style checks
  bool required = true;           // informational checks do not affect the exit code
  std::string note;
};

struct RunResult {
  std::vector<Table> tables;
  std::vector<CheckResult> checks;
  int exit_code = kPass;
  std::string error;  // set when exit_code is a usage or numerical error
};

/// Executes the command. Numerical failures are reported in the result, not thrown.
RunResult execute(const RunConfig& config, Command command);

/// Writes tables (CSV files or tables.json) plus summary.json into output_dir.
void write_outputs(const RunConfig& config, Command command, const RunResult& result);

/// Human-readable summary.
void print_summary(std::ostream& out, Command command, const RunResult& result);

/// Fixed-format number rendering shared by CSV and console output.
std::string format_number(double v);

}  // namespace admflux::run
