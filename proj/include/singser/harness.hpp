#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace singser {

// Knobs shared by the verification suites.  Zero / empty fields mean "use
// the suite default"; only fields a suite consumes are echoed back in its
// report.  threads never changes results, only wall-clock, and is therefore
// excluded from the echo.
struct ExperimentConfig {
  std::string suite;
  std::vector<std::int64_t> h_grid;  // ascending when non-empty
  // Inclusive window applied to the suite's default grid (0 = unbounded);
  // mutually exclusive with an explicit h_grid.
  std::int64_t h_min = 0;
  std::int64_t h_max = 0;
  std::int64_t r = 0;
  std::int64_t q = 0;
  int k = 0;
  std::vector<std::int64_t> classes;
  std::uint64_t prime_limit = 1000000;
  int threads = 1;

  // Throws DomainError on an unknown suite, a non-positive or non-ascending
  // h grid, a grid combined with a window, prime_limit below 10^4, or
  // threads outside [1, 256].
  void validate() const;
};

// One measurement: residual is always computed - predicted in double
// arithmetic, never re-rounded.
struct ReportRow {
  std::string label;
  std::int64_t h = 0;
  double computed = 0.0;
  double predicted = 0.0;
  double residual = 0.0;
};

// Suite outcome.  slope / slope_stderr come from a least-squares fit of
// log|residual| against log h (rows with residual exactly 0 are skipped);
// has_slope is set only when at least four rows enter the fit.  pass applies
// the suite's own rule (slope bound, band, or trend); report-only suites
// always pass and use warn for soft findings.
struct VerificationReport {
  std::string suite;
  std::string config_echo;  // serialized JSON object
  std::vector<ReportRow> rows;
  double slope = 0.0;
  double slope_stderr = 0.0;
  bool has_slope = false;
  bool pass = false;
  bool warn = false;
  std::vector<std::string> notes;

  // Stable serializations: identical reports produce identical bytes.
  std::string to_json() const;
  std::string to_csv() const;
};

// Least-squares line through (x, y); stderr_ is the slope standard error
// (0 when fewer than three points).  Exposed for the sweep tabulator.
struct LineFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  int n = 0;
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

const std::vector<std::string>& suite_names();

// Runs one suite to completion.  Deterministic for a fixed config: the
// thread count changes scheduling only, never the report bytes.
VerificationReport run_suite(const ExperimentConfig& config);

}  // namespace singser
