#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcreg/diagnostics.hpp"
#include "dcreg/grid.hpp"
#include "dcreg/kernel.hpp"

namespace dcreg {

/// Which report checks a run asserts; disabled checks are reported as SKIP.
struct CheckConfig {
  bool sandwich = true;
  bool minimizers = true;
  bool convexity = true;
  bool dual_chain = true;
  bool convergence = true;
  bool omega = true;
  bool smoothness = true;
  bool stages = true;
  bool huber_oracle = false;
  double huber_tolerance = 5e-3;
  std::optional<double> separation_threshold;
  std::optional<double> convergence_target;
  std::size_t boundary_mask_width = 0;
  std::size_t omega_centers = 16;
  std::vector<Region> regions;
  std::uint64_t seed = 0;
};

/// A validated run description. Exactly one of `expression` / `csv_path` is
/// set.
struct RunConfig {
  std::string expression;
  std::string csv_path;
  Grid grid = Grid::line(0.0, 1.0, 2);
  KernelSpec kernel;
  std::vector<double> schedule;
  std::optional<double> clip_floor;
  bool fast_quadratic = false;
  CheckConfig checks;
  std::string output_dir;
};

/// JSON config; every rejection is a ConfigError whose message starts with
/// the offending field path (e.g. "grid.bounds: missing").
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string& path);

/// Canonical JSON form; parse_run_config(config_to_json(c)) reproduces c.
std::string config_to_json(const RunConfig& config);

/// Samples the configured function (expression or CSV) on the configured grid.
GridFunction load_function(const RunConfig& config);

}  // namespace dcreg
