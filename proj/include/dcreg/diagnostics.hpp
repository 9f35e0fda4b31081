#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcreg/envelope.hpp"
#include "dcreg/regularize.hpp"

namespace dcreg {

enum class CheckStatus { Pass, Fail, Skip };
const char* check_status_name(CheckStatus s) noexcept;

/// One verdict. `paper_ref` names the property being checked in words.
struct CheckResult {
  std::string name;
  std::string paper_ref;
  CheckStatus status = CheckStatus::Pass;
  double worst_value = 0.0;
  double tolerance = 0.0;
};

/// Largest violation of each ordered pair in
///   I(I f) <= delta <= I f <= f   and   I f <= S(I f) <= f
/// over all scales and nodes (clipped input used as f).
struct SandwichSummary {
  double ii_le_delta = 0.0;
  double delta_le_i = 0.0;
  double i_le_f = 0.0;
  double i_le_sup_i = 0.0;
  double sup_i_le_f = 0.0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};
SandwichSummary check_sandwich(const RegularizationRun& run);

struct MinimizerCheck {
  double inf_gap = 0.0;
  double hausdorff = 0.0;
};
/// |inf out - inf f| and the Hausdorff distance (in `norm`) between the
/// argmin sets at tolerance tol.
MinimizerCheck check_minimizers(const GridFunction& f, const GridFunction& out, double tol,
                                const NormSpec& norm);

/// Report regions: a single node, a node list, a sub-box or the whole grid,
/// optionally minus a band of `mask_width` nodes along the box boundary.
struct Region {
  enum class Kind { Node, NodeList, SubBox, FullGrid };
  Kind kind = Kind::FullGrid;
  std::vector<std::size_t> nodes;
  std::array<double, 4> box{0.0, 0.0, 0.0, 0.0};  // lo0, hi0, lo1, hi1
  std::size_t mask_width = 0;

  static Region full(std::size_t mask_width = 0);
  static Region node(std::size_t idx);
  static Region node_list(std::vector<std::size_t> idx);
  static Region sub_box(double lo0, double hi0, double lo1 = 0.0, double hi1 = 0.0);

  std::vector<std::size_t> resolve(const Grid& grid) const;
  std::string label() const;
};

struct ConvergenceRow {
  double scale = 0.0;
  double sup_gap = 0.0;           // max over region of f - delta
  double iterated_gap = 0.0;      // max over region of f - I(I f)
  double omega_max_diameter = 0.0;
};

struct ConvergenceTable {
  std::string region;
  std::vector<ConvergenceRow> rows;
  std::size_t monotonicity_violations = 0;  // rises in iterated_gap
  bool iterated_nonincreasing = true;
  std::optional<double> target;
  bool target_met = true;
};

/// Per-scale gaps over the region. Needs >= 3 scales (InvalidArgument).
/// `omega_diameters`, when given, fills the diameter column.
ConvergenceTable convergence_study(const RegularizationRun& run, const Region& region,
                                   std::optional<double> target = std::nullopt,
                                   const std::vector<double>& omega_diameters = {});

struct HolderRow {
  double scale = 0.0;
  double alpha = 1.0;
  HolderEstimate plus;          // second-difference constant of co(g_n)
  HolderEstimate value;         // ... of the delta value
  HolderEstimate value_masked;  // ... with the boundary band removed
  std::optional<double> bound;  // asserted bound on value.constant
  bool pass = true;
};

/// alpha defaults to min(p, 2) - 1 (1 for the Hilbert kernel). For quadratic
/// kernels the delta value is held to L <= n * L(c_K) * 1.05 = 4n * 1.05.
std::vector<HolderRow> smoothness_report(const RegularizationRun& run,
                                         std::optional<double> alpha = std::nullopt,
                                         std::size_t mask_width = 0);

struct OmegaRow {
  double scale = 0.0;
  double max_diameter = 0.0;
  bool members_in_box = true;
};
struct OmegaDiagnostics {
  std::vector<OmegaRow> rows;
  bool nonincreasing = true;
};
/// Max Omega_n diameter over `centers` (every node when empty) per scale.
OmegaDiagnostics omega_diagnostics(const GridFunction& f, const Kernel& k,
                                   const std::vector<double>& schedule,
                                   const std::vector<std::size_t>& centers = {});
/// Evenly spaced sample of about `count` nodes.
std::vector<std::size_t> sample_centers(const Grid& grid, std::size_t count);

/// A stored stage against its recomputation from the stored previous stage.
struct StageCheck {
  std::string stage;
  double scale = 0.0;
  double max_deviation = 0.0;
};
/// Checks I_f, II_f, g_n, co_g_n and delta of every scale. `f_reference` (the
/// function re-sampled from its source) adds a check on f itself.
std::vector<StageCheck> stage_consistency(const RegularizationRun& run,
                                          const GridFunction* f_reference = nullptr);

/// H_n(x) = n x^2 for |x| <= 1/(2n), |x| - 1/(4n) otherwise: the smoothing of
/// |x| by n |x - y|^2.
double huber(double x, double n);

/// Everything the report needs, computed from a run alone.
struct DiagnosticsOptions {
  std::size_t boundary_mask_width = 0;
  std::optional<double> convergence_target;
  std::vector<Region> regions;      // full grid is always included
  std::size_t omega_centers = 16;
  bool huber_oracle = false;
  double huber_tolerance = 5e-3;
  bool smoothness = true;
  std::optional<double> separation_threshold;  // enables the separation check
  std::uint64_t seed = 0;
  const GridFunction* f_reference = nullptr;
};

struct DiagnosticsReport {
  double sandwich_max_violation = 0.0;
  double inf_gap = 0.0;
  double argmin_hausdorff = 0.0;
  std::size_t monotonicity_violations = 0;
  std::vector<ConvergenceTable> convergence;      // full grid first, then masked, then extra regions
  std::vector<HolderRow> holder_estimates;
  OmegaDiagnostics omega;
  std::vector<StageCheck> stages;
  std::optional<double> separation_constant;
  std::size_t boundary_mask_width = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  bool pass() const;
};

DiagnosticsReport diagnose_run(const RegularizationRun& run, const DiagnosticsOptions& options);

}  // namespace dcreg
