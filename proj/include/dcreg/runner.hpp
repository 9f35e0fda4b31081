#pragma once

#include <string>
#include <vector>

#include "dcreg/config.hpp"
#include "dcreg/diagnostics.hpp"
#include "dcreg/regularize.hpp"

namespace dcreg {

struct RunOutcome {
  RegularizationRun run;
  DiagnosticsReport report;
  std::vector<std::string> artifacts;  // paths written, report last
};

DiagnosticsOptions diagnostics_options(const RunConfig& config, const GridFunction* f_reference);

/// diagnose_run plus the config's check toggles: a disabled check is SKIP.
DiagnosticsReport diagnose_with_config(const RegularizationRun& run, const RunConfig& config,
                                       const GridFunction* f_reference);

/// Runs the configured pipeline and writes, inside `config.output_dir`:
/// config.json (canonical echo), scale_<n>.csv per scale and report.json.
RunOutcome execute_run(const RunConfig& config);

/// Rebuilds the run from config.json and the scale CSVs in `dir` and
/// recomputes the report without re-running the pipeline. The report is
/// written to `report_path` unless it is empty.
RunOutcome diagnose_directory(const std::string& dir, const std::string& report_path = {});

std::string scale_csv_name(double n);

/// The JSON report: verdict, config echo, seed, report fields, checks,
/// notes, artifacts. Non-finite numbers are written as the string "+inf".
std::string report_to_json(const RunConfig& config, const DiagnosticsReport& report,
                           const std::vector<std::string>& artifacts);

}  // namespace dcreg
