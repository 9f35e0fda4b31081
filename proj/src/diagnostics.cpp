#include "dcreg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dcreg/error.hpp"
#include "dcreg/grid_kernel.hpp"
#include "dcreg/text.hpp"

namespace dcreg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double tolerance_for(const GridFunction& f) { return 1e-9 * f.scale(); }

CheckStatus verdict(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }
}  // namespace

const char* check_status_name(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
  }
  return "FAIL";
}

SandwichSummary check_sandwich(const RegularizationRun& run) {
  SandwichSummary s;
  const GridFunction& f = run.input;
  s.tolerance = tolerance_for(f);
  const GridKernel gk(run.kernel, f.grid());
  for (const ScaleStages& st : run.stages) {
    s.ii_le_delta = std::max(s.ii_le_delta, max_excess(st.II_f, st.delta));
    s.delta_le_i = std::max(s.delta_le_i, max_excess(st.delta, st.I_f));
    s.i_le_f = std::max(s.i_le_f, max_excess(st.I_f, f));
    if (st.I_f.all_finite()) {
      const GridFunction sup_i = sup_convolve(st.I_f, gk, SmoothingScale(st.n));
      s.i_le_sup_i = std::max(s.i_le_sup_i, max_excess(st.I_f, sup_i));
      s.sup_i_le_f = std::max(s.sup_i_le_f, max_excess(sup_i, f));
    }
  }
  s.worst = std::max({s.ii_le_delta, s.delta_le_i, s.i_le_f, s.i_le_sup_i, s.sup_i_le_f});
  s.pass = s.worst <= s.tolerance;
  return s;
}

MinimizerCheck check_minimizers(const GridFunction& f, const GridFunction& out, double tol,
                                const NormSpec& norm) {
  require_same_grid(f.grid(), out.grid());
  MinimizerCheck r;
  r.inf_gap = std::abs(out.infimum() - f.infimum());
  const auto a = f.argmin_set(tol);
  const auto b = out.argmin_set(tol);
  const Grid& grid = f.grid();
  auto directed = [&](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    double worst = 0.0;
    for (std::size_t i : from) {
      const Point x = grid.point(i);
      double best = kInf;
      for (std::size_t j : to) {
        if (i == j) {
          best = 0.0;
          break;
        }
        const Point y = grid.point(j);
        best = std::min(best, norm({x[0] - y[0], x[1] - y[1]}));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  r.hausdorff = std::max(directed(a, b), directed(b, a));
  return r;
}

Region Region::full(std::size_t mask_width) {
  Region r;
  r.mask_width = mask_width;
  return r;
}

Region Region::node(std::size_t idx) {
  Region r;
  r.kind = Kind::Node;
  r.nodes = {idx};
  return r;
}

Region Region::node_list(std::vector<std::size_t> idx) {
  Region r;
  r.kind = Kind::NodeList;
  r.nodes = std::move(idx);
  return r;
}

Region Region::sub_box(double lo0, double hi0, double lo1, double hi1) {
  Region r;
  r.kind = Kind::SubBox;
  r.box = {lo0, hi0, lo1, hi1};
  return r;
}

std::vector<std::size_t> Region::resolve(const Grid& grid) const {
  std::vector<std::size_t> out;
  auto keep = [&](std::size_t i) { return mask_width == 0 || !grid.near_boundary(i, mask_width); };
  switch (kind) {
    case Kind::Node:
    case Kind::NodeList:
      for (std::size_t i : nodes) {
        if (i >= grid.size()) fail(ErrorCode::InvalidArgument, "region node out of range");
        if (keep(i)) out.push_back(i);
      }
      break;
    case Kind::SubBox:
      // Bounds are widened by a hair of a step so a bound typed as a node
      // coordinate keeps that node despite rounding in lo + i * step.
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point p = grid.point(i);
        const double e0 = 1e-9 * grid.step(0), e1 = grid.dim() == 2 ? 1e-9 * grid.step(1) : 0.0;
        const bool in0 = p[0] >= box[0] - e0 && p[0] <= box[1] + e0;
        const bool in1 = grid.dim() == 1 || (p[1] >= box[2] - e1 && p[1] <= box[3] + e1);
        if (in0 && in1 && keep(i)) out.push_back(i);
      }
      break;
    case Kind::FullGrid:
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (keep(i)) out.push_back(i);
      break;
  }
  return out;
}

std::string Region::label() const {
  std::string s;
  switch (kind) {
    case Kind::Node: s = "node:" + std::to_string(nodes.front()); break;
    case Kind::NodeList: {
      s = "nodes:";
      for (std::size_t k = 0; k < nodes.size(); ++k) s += (k ? ";" : "") + std::to_string(nodes[k]);
      break;
    }
    case Kind::SubBox:
      s = "box:" + format_double(box[0]) + ":" + format_double(box[1]);
      if (box[2] != 0.0 || box[3] != 0.0) s += "," + format_double(box[2]) + ":" + format_double(box[3]);
      break;
    case Kind::FullGrid: s = "full"; break;
  }
  if (mask_width > 0) s += "/mask=" + std::to_string(mask_width);
  return s;
}

ConvergenceTable convergence_study(const RegularizationRun& run, const Region& region,
                                   std::optional<double> target, const std::vector<double>& omega_diameters) {
  if (run.stages.size() < 3) fail(ErrorCode::InvalidArgument, "convergence study needs at least 3 scales");
  const GridFunction& f = run.input;
  const std::vector<std::size_t> nodes = region.resolve(f.grid());
  ConvergenceTable t;
  t.region = region.label();
  t.target = target;
  for (std::size_t s = 0; s < run.stages.size(); ++s) {
    const ScaleStages& st = run.stages[s];
    ConvergenceRow row;
    row.scale = st.n;
    for (std::size_t i : nodes) {
      if (!f[i].is_finite()) continue;
      row.sup_gap = std::max(row.sup_gap, f[i].raw() - st.delta[i].raw());
      row.iterated_gap = std::max(row.iterated_gap, f[i].raw() - st.II_f[i].raw());
    }
    if (s < omega_diameters.size()) row.omega_max_diameter = omega_diameters[s];
    if (!t.rows.empty() && row.iterated_gap > t.rows.back().iterated_gap) ++t.monotonicity_violations;
    t.rows.push_back(row);
  }
  t.iterated_nonincreasing = t.monotonicity_violations == 0;
  if (target) t.target_met = t.rows.back().iterated_gap <= *target;
  return t;
}

std::vector<HolderRow> smoothness_report(const RegularizationRun& run, std::optional<double> alpha,
                                         std::size_t mask_width) {
  const Kernel& k = run.kernel;
  const double a = alpha.value_or(k.kind() == KernelKind::Hilbert ? 1.0 : std::min(k.exponent(), 2.0) - 1.0);
  static constexpr std::array<std::size_t, 4> kOffsets{1, 2, 4, 8};
  const Grid& grid = run.input.grid();
  const NormSpec& norm = k.norm();

  std::optional<double> c_constant;
  if (k.is_quadratic()) {
    const GridFunction c = scaled_c(grid, k, SmoothingScale(1.0));
    c_constant = second_difference_holder(c, 1.0, kOffsets, norm).constant;
  }

  std::vector<HolderRow> rows;
  for (const ScaleStages& st : run.stages) {
    HolderRow r;
    r.scale = st.n;
    r.alpha = a;
    r.plus = second_difference_holder(st.co_g_n, a, kOffsets, norm);
    r.value = second_difference_holder(st.delta, a, kOffsets, norm);
    r.value_masked = second_difference_holder(st.delta, a, kOffsets, norm, mask_width);
    if (c_constant && a == 1.0) {
      r.bound = st.n * *c_constant * 1.05;
      r.pass = r.value.constant <= *r.bound;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::size_t> sample_centers(const Grid& grid, std::size_t count) {
  if (count == 0 || count >= grid.size()) {
    std::vector<std::size_t> all(grid.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  std::vector<std::size_t> out;
  if (grid.dim() == 1) {
    for (std::size_t k = 0; k < count; ++k) out.push_back(k * (grid.size() - 1) / (count - 1 ? count - 1 : 1));
  } else {
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    for (std::size_t a = 0; a < side; ++a)
      for (std::size_t b = 0; b < side; ++b)
        out.push_back(grid.index(a * (grid.nodes(0) - 1) / std::max<std::size_t>(side - 1, 1),
                                 b * (grid.nodes(1) - 1) / std::max<std::size_t>(side - 1, 1)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OmegaDiagnostics omega_diagnostics(const GridFunction& f, const Kernel& k, const std::vector<double>& schedule,
                                   const std::vector<std::size_t>& centers) {
  const std::vector<std::size_t> probe = centers.empty() ? sample_centers(f.grid(), 0) : centers;
  OmegaDiagnostics d;
  for (double n : schedule) {
    OmegaRow row;
    row.scale = n;
    for (std::size_t c : probe) {
      const OmegaSet om = omega_set(f, k, SmoothingScale(n), c);
      row.max_diameter = std::max(row.max_diameter, om.diameter);
      if (om.members.empty()) row.members_in_box = false;
    }
    if (!d.rows.empty() && row.max_diameter > d.rows.back().max_diameter) d.nonincreasing = false;
    d.rows.push_back(row);
  }
  return d;
}

std::vector<StageCheck> stage_consistency(const RegularizationRun& run, const GridFunction* f_reference) {
  std::vector<StageCheck> out;
  const Grid& grid = run.input.grid();
  const GridKernel gk(run.kernel, grid);
  if (f_reference) out.push_back({"f", 0.0, max_abs_diff(*f_reference, run.input)});
  for (const ScaleStages& st : run.stages) {
    const SmoothingScale n(st.n);
    const GridFunction nc = scaled_c(grid, run.kernel, n);
    out.push_back({"I_f", st.n, max_abs_diff(inf_convolve(run.input, gk, n), st.I_f)});
    out.push_back({"II_f", st.n, max_abs_diff(inf_convolve(st.I_f, gk, n), st.II_f)});
    out.push_back({"g_n", st.n, max_abs_diff(st.I_f + nc, st.g_n)});
    out.push_back({"co_g_n", st.n, max_abs_diff(convex_envelope(st.g_n).base(), st.co_g_n)});
    out.push_back({"delta", st.n, max_abs_diff(delta_value(st.I_f, st.g_n, st.co_g_n, nc), st.delta)});
  }
  return out;
}

double huber(double x, double n) {
  const double ax = std::abs(x);
  return ax <= 1.0 / (2.0 * n) ? n * x * x : ax - 1.0 / (4.0 * n);
}

bool DiagnosticsReport::pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

DiagnosticsReport diagnose_run(const RegularizationRun& run, const DiagnosticsOptions& opt) {
  DiagnosticsReport rep;
  const GridFunction& f = run.input;
  const Grid& grid = f.grid();
  const Kernel& k = run.kernel;
  const double tol = tolerance_for(f);
  rep.boundary_mask_width = opt.boundary_mask_width;

  const SandwichSummary sw = check_sandwich(run);
  rep.sandwich_max_violation = sw.worst;
  rep.checks.push_back({"sandwich", "I(I f) <= delta <= I f <= f and I f <= S(I f) <= f at every node",
                        verdict(sw.pass), sw.worst, sw.tolerance});

  // Separation decides whether minimizer preservation is asserted.
  double radius = 0.0;
  for (double x0 : {grid.lo(0), grid.hi(0)})
    for (double x1 : {grid.lo(1), grid.hi(1)}) radius = std::max(radius, k.norm()({x0, grid.dim() == 2 ? x1 : 0.0}));
  const double min_step = grid.dim() == 2 ? std::min(grid.step(0), grid.step(1)) : grid.step(0);
  const double sep = estimate_separation_constant(k, std::max(radius, min_step), min_step, 4000, opt.seed);
  rep.separation_constant = sep;
  if (opt.separation_threshold)
    rep.checks.push_back({"separation", "kernel bounded below by C |x - y|^p away from the diagonal",
                          verdict(sep > *opt.separation_threshold), sep, *opt.separation_threshold});

  for (const ScaleStages& st : run.stages) {
    const MinimizerCheck m = check_minimizers(f, st.delta, 0.0, k.norm());
    rep.inf_gap = std::max(rep.inf_gap, m.inf_gap);
    rep.argmin_hausdorff = std::max(rep.argmin_hausdorff, m.hausdorff);
  }
  rep.checks.push_back({"infimum", "inf delta = inf f at every scale", verdict(rep.inf_gap <= tol), rep.inf_gap, tol});
  rep.checks.push_back({"argmin", "argmin delta = argmin f at tolerance 0 for a separating kernel",
                        sep > 1e-6 ? verdict(rep.argmin_hausdorff == 0.0) : CheckStatus::Skip,
                        rep.argmin_hausdorff, 0.0});

  double defect = 0.0;
  for (const ScaleStages& st : run.stages)
    defect = std::max({defect, convexity_defect(st.co_g_n) / st.co_g_n.scale(), convexity_defect(st.nc) / st.nc.scale()});
  rep.checks.push_back({"convex_parts", "co(g_n) and n c_K discretely convex (defect relative to scale)",
                        verdict(defect <= 1e-9), defect, 1e-9});

  // Chain d - c <= co(e + c) - c <= e with d = D_n(I(I f)), c = n c_K, e = I f.
  double fact_worst = 0.0;
  bool fact_ok = true;
  for (const ScaleStages& st : run.stages) {
    try {
      const ConvexGridFunction d = dual_part(st.II_f, k, SmoothingScale(st.n));
      const EnvelopeChainReport fr = envelope_chain_check(st.nc, d, st.I_f);
      fact_worst = std::max({fact_worst, fr.lower_violation, fr.upper_violation});
      fact_ok = fact_ok && fr.pass;
    } catch (const Error& e) {
      fact_ok = false;
      fact_worst = kInf;
    }
  }
  rep.checks.push_back({"dual_chain", "D_n(I(I f)) - n c_K <= co(I f + n c_K) - n c_K <= I f",
                        verdict(fact_ok), fact_worst, tol});

  if (run.stages.size() >= 3) {
    rep.omega = omega_diagnostics(f, k, run.schedule, sample_centers(grid, opt.omega_centers));
    std::vector<double> diam;
    for (const OmegaRow& r : rep.omega.rows) diam.push_back(r.max_diameter);
    rep.convergence.push_back(convergence_study(run, Region::full(), opt.convergence_target, diam));
    rep.convergence.push_back(convergence_study(run, Region::full(opt.boundary_mask_width), opt.convergence_target, diam));
    for (const Region& r : opt.regions) rep.convergence.push_back(convergence_study(run, r, opt.convergence_target, diam));

    const ConvergenceTable& full = rep.convergence[0];
    rep.monotonicity_violations = full.monotonicity_violations;
    double worst_rise = 0.0;
    for (std::size_t s = 1; s < full.rows.size(); ++s)
      worst_rise = std::max(worst_rise, full.rows[s].iterated_gap - full.rows[s - 1].iterated_gap);
    rep.checks.push_back({"convergence_monotone", "max(f - I(I f)) nonincreasing along the schedule",
                          verdict(full.iterated_nonincreasing), worst_rise, 0.0});
    if (opt.convergence_target)
      rep.checks.push_back({"convergence_target", "final max(f - I(I f)) within the calibrated target",
                            verdict(full.target_met), full.rows.back().iterated_gap, *opt.convergence_target});
    double mask_excess = 0.0;
    for (std::size_t s = 0; s < full.rows.size(); ++s)
      mask_excess = std::max(mask_excess, rep.convergence[1].rows[s].sup_gap - full.rows[s].sup_gap);
    rep.checks.push_back({"masked_gap", "boundary-masked gap <= full-grid gap", verdict(mask_excess <= 0.0),
                          mask_excess, 0.0});
    double omega_rise = 0.0;
    for (std::size_t s = 1; s < rep.omega.rows.size(); ++s)
      omega_rise = std::max(omega_rise, rep.omega.rows[s].max_diameter - rep.omega.rows[s - 1].max_diameter);
    rep.checks.push_back({"omega_diameter", "near-minimizer set diameters nonincreasing in n",
                          verdict(rep.omega.nonincreasing), omega_rise, 0.0});
  } else {
    rep.notes.push_back("convergence and near-minimizer diagnostics need at least 3 scales; skipped");
  }

  if (opt.smoothness) {
    rep.holder_estimates = smoothness_report(run, std::nullopt, opt.boundary_mask_width);
    double worst_ratio = 0.0;
    bool ok = true, bounded = false;
    for (const HolderRow& r : rep.holder_estimates) {
      if (!r.bound) continue;
      bounded = true;
      ok = ok && r.pass;
      worst_ratio = std::max(worst_ratio, r.value.constant / *r.bound);
    }
    rep.checks.push_back({"smoothness", "second-difference constant of delta <= 1.05 n L(c_K)",
                          bounded ? verdict(ok) : CheckStatus::Skip, worst_ratio, 1.0});
  }

  rep.stages = stage_consistency(run, opt.f_reference);
  std::map<std::string, double> worst_stage;
  std::vector<std::string> order;
  for (const StageCheck& s : rep.stages) {
    if (!worst_stage.count(s.stage)) order.push_back(s.stage);
    worst_stage[s.stage] = std::max(worst_stage[s.stage], s.max_deviation);
  }
  for (const std::string& name : order)
    rep.checks.push_back({"stage:" + name, "stored stage equals its recomputation from the previous stage",
                          verdict(worst_stage[name] <= tol), worst_stage[name], tol});

  if (opt.huber_oracle) {
    double worst = 0.0;
    for (const ScaleStages& st : run.stages)
      for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(st.delta[i].raw() - huber(grid.coord(0, i), st.n)));
    const bool applicable = grid.dim() == 1 && k.is_quadratic();
    rep.checks.push_back({"huber_oracle", "delta of |x| equals the closed-form Huber function",
                          applicable ? verdict(worst <= opt.huber_tolerance) : CheckStatus::Fail, worst,
                          opt.huber_tolerance});
  }

  rep.notes.push_back("on a bounded grid the sub-box and whole-grid regions give the same uniform statistic, "
                      "so bounded-set and uniform convergence are reported once");
  rep.notes.push_back("every function sampled on a finite grid is Lipschitz, so continuity classes of f are not "
                      "distinguished empirically");
  if (run.clip_floor) rep.notes.push_back("f clipped below at " + format_double(*run.clip_floor));
  return rep;
}

}  // namespace dcreg
