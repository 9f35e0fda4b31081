#include "dcreg/runner.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "dcreg/csv.hpp"
#include "dcreg/error.hpp"
#include "dcreg/text.hpp"

namespace dcreg {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

json num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "+inf" : "-inf";
}

bool enabled(const CheckConfig& c, const std::string& name) {
  if (name == "sandwich") return c.sandwich;
  if (name == "infimum" || name == "argmin") return c.minimizers;
  if (name == "convex_parts") return c.convexity;
  if (name == "dual_chain") return c.dual_chain;
  if (name == "convergence_monotone" || name == "convergence_target" || name == "masked_gap") return c.convergence;
  if (name == "omega_diameter") return c.omega;
  if (name == "smoothness") return c.smoothness;
  if (name.rfind("stage:", 0) == 0) return c.stages;
  return true;
}

json holder_json(const HolderEstimate& h) {
  json j;
  j["alpha"] = num(h.alpha);
  j["constant"] = num(h.constant);
  j["most_negative"] = num(h.most_negative);
  json per = json::array();
  for (double v : h.per_radius) per.push_back(num(v));
  j["per_radius"] = per;
  j["stability_ratio"] = num(h.stability_ratio);
  return j;
}

GridFunction clipped(GridFunction f, const std::optional<double>& floor) {
  if (!floor) return f;
  std::vector<ExtReal> v(f.values().begin(), f.values().end());
  for (ExtReal& x : v)
    if (x.is_finite() && x.raw() < *floor) x = *floor;
  return GridFunction::from_values(f.grid(), std::move(v));
}

}  // namespace

std::string scale_csv_name(double n) { return "scale_" + format_double(n) + ".csv"; }

DiagnosticsOptions diagnostics_options(const RunConfig& c, const GridFunction* f_reference) {
  DiagnosticsOptions o;
  o.boundary_mask_width = c.checks.boundary_mask_width;
  o.convergence_target = c.checks.convergence_target;
  o.regions = c.checks.regions;
  o.omega_centers = c.checks.omega_centers;
  o.huber_oracle = c.checks.huber_oracle;
  o.huber_tolerance = c.checks.huber_tolerance;
  o.smoothness = c.checks.smoothness;
  o.separation_threshold = c.checks.separation_threshold;
  o.seed = c.checks.seed;
  o.f_reference = f_reference;
  return o;
}

DiagnosticsReport diagnose_with_config(const RegularizationRun& run, const RunConfig& c,
                                       const GridFunction* f_reference) {
  DiagnosticsReport rep = diagnose_run(run, diagnostics_options(c, f_reference));
  for (CheckResult& r : rep.checks)
    if (!enabled(c.checks, r.name)) r.status = CheckStatus::Skip;
  return rep;
}

std::string report_to_json(const RunConfig& c, const DiagnosticsReport& rep,
                           const std::vector<std::string>& artifacts) {
  json j;
  j["verdict"] = rep.pass() ? "PASS" : "FAIL";
  j["config"] = json::parse(config_to_json(c));
  j["seed"] = c.checks.seed;
  j["sandwich_max_violation"] = num(rep.sandwich_max_violation);
  j["inf_gap"] = num(rep.inf_gap);
  j["argmin_hausdorff"] = num(rep.argmin_hausdorff);
  j["monotonicity_violations"] = rep.monotonicity_violations;
  j["separation_constant"] = rep.separation_constant ? num(*rep.separation_constant) : json(nullptr);
  j["boundary_mask_width"] = rep.boundary_mask_width;

  json conv = json::array();
  for (const ConvergenceTable& t : rep.convergence) {
    json jt;
    jt["region"] = t.region;
    json rows = json::array();
    for (const ConvergenceRow& r : t.rows)
      rows.push_back({{"scale", num(r.scale)},
                      {"sup_gap", num(r.sup_gap)},
                      {"iterated_gap", num(r.iterated_gap)},
                      {"omega_max_diameter", num(r.omega_max_diameter)}});
    jt["rows"] = rows;
    jt["monotonicity_violations"] = t.monotonicity_violations;
    jt["iterated_nonincreasing"] = t.iterated_nonincreasing;
    jt["target"] = t.target ? num(*t.target) : json(nullptr);
    jt["target_met"] = t.target_met;
    conv.push_back(jt);
  }
  j["convergence_table"] = conv;

  json hold = json::array();
  for (const HolderRow& r : rep.holder_estimates) {
    json jr;
    jr["scale"] = num(r.scale);
    jr["alpha"] = num(r.alpha);
    jr["plus"] = holder_json(r.plus);
    jr["value"] = holder_json(r.value);
    jr["value_masked"] = holder_json(r.value_masked);
    jr["bound"] = r.bound ? num(*r.bound) : json(nullptr);
    jr["pass"] = r.pass;
    hold.push_back(jr);
  }
  j["holder_estimates"] = hold;

  json om = json::array();
  for (const OmegaRow& r : rep.omega.rows)
    om.push_back({{"scale", num(r.scale)}, {"max_diameter", num(r.max_diameter)}, {"members_in_box", r.members_in_box}});
  j["omega"] = {{"rows", om}, {"nonincreasing", rep.omega.nonincreasing}};

  json st = json::array();
  for (const StageCheck& s : rep.stages)
    st.push_back({{"stage", s.stage}, {"scale", num(s.scale)}, {"max_deviation", num(s.max_deviation)}});
  j["stages"] = st;

  json checks = json::array();
  for (const CheckResult& r : rep.checks)
    checks.push_back({{"name", r.name},
                      {"paper_ref", r.paper_ref},
                      {"status", check_status_name(r.status)},
                      {"worst_value", num(r.worst_value)},
                      {"tolerance", num(r.tolerance)}});
  j["checks"] = checks;
  j["notes"] = rep.notes;
  j["artifacts"] = artifacts;
  return j.dump(2) + "\n";
}

RunOutcome execute_run(const RunConfig& c) {
  const GridFunction f = load_function(c);
  const Kernel k = Kernel::from_spec(c.kernel);
  RunOptions ro;
  ro.clip_floor = c.clip_floor;
  ro.fast_quadratic = c.fast_quadratic;
  RunOutcome out{run_regularization(f, k, c.schedule, ro), {}, {}};

  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create output directory '" + c.output_dir + "': " + ec.message());
  const fs::path dir(c.output_dir);

  const std::string cfg_path = (dir / "config.json").string();
  write_file_atomic(cfg_path, config_to_json(c) + "\n");
  out.artifacts.push_back(cfg_path);
  for (const ScaleStages& s : out.run.stages) {
    std::ostringstream os;
    write_table(os, f.grid(),
                {{"f", &out.run.input}, {"I_f", &s.I_f}, {"II_f", &s.II_f}, {"g_n", &s.g_n},
                 {"co_g_n", &s.co_g_n}, {"delta", &s.delta}});
    const std::string p = (dir / scale_csv_name(s.n)).string();
    write_file_atomic(p, os.str());
    out.artifacts.push_back(p);
  }

  const GridFunction reference = clipped(f, c.clip_floor);
  out.report = diagnose_with_config(out.run, c, &reference);
  const std::string rp = (dir / "report.json").string();
  out.artifacts.push_back(rp);
  write_file_atomic(rp, report_to_json(c, out.report, out.artifacts));
  return out;
}

RunOutcome diagnose_directory(const std::string& dir_name, const std::string& report_path) {
  const fs::path dir(dir_name);
  const RunConfig c = load_run_config((dir / "config.json").string());
  const Kernel k = Kernel::from_spec(c.kernel);

  RunOutcome out{RegularizationRun{GridFunction::constant(c.grid, 0.0), k, c.schedule, {}, c.clip_floor}, {}, {}};
  bool have_input = false;
  for (double n : c.schedule) {
    const std::string p = (dir / scale_csv_name(n)).string();
    const Table t = read_table_file(p);
    require_same_grid(t.grid, c.grid);
    if (!have_input) {
      out.run.input = t.column("f");
      have_input = true;
    }
    out.run.stages.push_back(ScaleStages{n, t.column("I_f"), t.column("II_f"), t.column("g_n"),
                                         t.column("co_g_n"), scaled_c(c.grid, k, SmoothingScale(n)), t.column("delta")});
    out.artifacts.push_back(p);
  }
  if (!have_input) fail(ErrorCode::IoError, "no scale CSVs found in '" + dir_name + "'");

  // The source is re-sampled so a tampered f column is caught; a CSV source
  // that has since gone missing falls back to the stored column.
  std::optional<GridFunction> reference;
  try {
    reference = clipped(load_function(c), c.clip_floor);
  } catch (const Error&) {
    if (c.expression.empty()) reference.reset();
    else throw;
  }
  out.report = diagnose_with_config(out.run, c, reference ? &*reference : nullptr);
  if (!reference) out.report.notes.push_back("function source unavailable; f column taken as stored");
  if (!report_path.empty()) {
    out.artifacts.push_back(report_path);
    write_file_atomic(report_path, report_to_json(c, out.report, out.artifacts));
  }
  return out;
}

}  // namespace dcreg
