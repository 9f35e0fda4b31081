#include "dcreg/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dcreg/csv.hpp"
#include "dcreg/error.hpp"
#include "dcreg/expression.hpp"
#include "dcreg/regularize.hpp"
#include "dcreg/text.hpp"

namespace dcreg {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  fail(ErrorCode::ConfigError, path + ": " + msg);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) bad(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(path, "expected a finite number");
  return d;
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) bad(path, "expected true or false");
  return v.get<bool>();
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(path, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) bad(path, "expected a string");
  return v.get<std::string>();
}

double parse_norm(const json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "euclidean" || s == "l2") return 2.0;
    if (s == "l1") return 1.0;
    if (s == "linf" || s == "inf") return HUGE_VAL;
    bad(path, "unknown norm '" + s + "' (euclidean, l1, linf or a number)");
  }
  const double p = number(v, path);
  if (p < 1.0) bad(path, "norm exponent must be >= 1");
  return p;
}

Grid parse_grid(const json& v) {
  try {
    if (v.is_string()) return Grid::parse(v.get<std::string>());
    if (!v.is_object()) bad("grid", "expected a domain string or an object");
    only_keys(v, "grid", {"domain", "bounds", "nodes"});
    if (v.contains("domain")) {
      if (v.contains("bounds") || v.contains("nodes")) bad("grid", "give either domain or bounds/nodes");
      return Grid::parse(string(v["domain"], "grid.domain"));
    }
    if (!v.contains("bounds")) bad("grid.bounds", "missing");
    if (!v.contains("nodes")) bad("grid.nodes", "missing");
    const json& b = v["bounds"];
    const json& n = v["nodes"];
    if (!b.is_array() || b.empty() || b.size() > 2) bad("grid.bounds", "expected [[lo, hi]] or [[lo, hi], [lo, hi]]");
    if (!n.is_array() || n.size() != b.size()) bad("grid.nodes", "expected one node count per axis");
    std::array<double, 4> lh{};
    std::array<std::size_t, 2> nn{};
    for (std::size_t a = 0; a < b.size(); ++a) {
      const std::string bp = "grid.bounds[" + std::to_string(a) + "]";
      if (!b[a].is_array() || b[a].size() != 2) bad(bp, "expected [lo, hi]");
      lh[2 * a] = number(b[a][0], bp + "[0]");
      lh[2 * a + 1] = number(b[a][1], bp + "[1]");
      nn[a] = count(n[a], "grid.nodes[" + std::to_string(a) + "]");
    }
    if (b.size() == 1) return Grid::line(lh[0], lh[1], nn[0]);
    return Grid::box(lh[0], lh[1], nn[0], lh[2], lh[3], nn[1]);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    bad("grid", e.what());
  }
}

Region parse_region(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() != "full") bad(path, "expected \"full\" or an object");
    return Region::full();
  }
  if (!v.is_object()) bad(path, "expected a region object");
  only_keys(v, path, {"node", "nodes", "box", "mask_width"});
  Region r;
  if (v.contains("node")) {
    r = Region::node(count(v["node"], path + ".node"));
  } else if (v.contains("nodes")) {
    if (!v["nodes"].is_array() || v["nodes"].empty()) bad(path + ".nodes", "expected a nonempty array");
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < v["nodes"].size(); ++k)
      idx.push_back(count(v["nodes"][k], path + ".nodes[" + std::to_string(k) + "]"));
    r = Region::node_list(std::move(idx));
  } else if (v.contains("box")) {
    const json& b = v["box"];
    if (!b.is_array() || (b.size() != 2 && b.size() != 4)) bad(path + ".box", "expected [lo0, hi0] or [lo0, hi0, lo1, hi1]");
    std::array<double, 4> x{};
    for (std::size_t k = 0; k < b.size(); ++k) x[k] = number(b[k], path + ".box[" + std::to_string(k) + "]");
    r = Region::sub_box(x[0], x[1], x[2], x[3]);
  }
  if (v.contains("mask_width")) r.mask_width = count(v["mask_width"], path + ".mask_width");
  return r;
}

json region_json(const Region& r) {
  json j = json::object();
  switch (r.kind) {
    case Region::Kind::Node: j["node"] = r.nodes.front(); break;
    case Region::Kind::NodeList: j["nodes"] = r.nodes; break;
    case Region::Kind::SubBox:
      j["box"] = json::array({r.box[0], r.box[1]});
      if (r.box[2] != 0.0 || r.box[3] != 0.0) {
        j["box"].push_back(r.box[2]);
        j["box"].push_back(r.box[3]);
      }
      break;
    case Region::Kind::FullGrid: break;
  }
  if (r.mask_width > 0) j["mask_width"] = r.mask_width;
  return j;
}

CheckConfig parse_checks(const json& v) {
  CheckConfig c;
  if (!v.is_object()) bad("checks", "expected an object");
  only_keys(v, "checks", {"sandwich", "minimizers", "convexity", "dual_chain", "convergence", "omega", "smoothness",
                          "stages", "huber_oracle", "separation", "convergence_target", "boundary_mask_width",
                          "omega_centers", "regions", "seed"});
  auto flag = [&](const char* key, bool& dst) {
    if (v.contains(key)) dst = boolean(v[key], std::string("checks.") + key);
  };
  flag("sandwich", c.sandwich);
  flag("minimizers", c.minimizers);
  flag("convexity", c.convexity);
  flag("dual_chain", c.dual_chain);
  flag("convergence", c.convergence);
  flag("omega", c.omega);
  flag("smoothness", c.smoothness);
  flag("stages", c.stages);
  if (v.contains("huber_oracle")) {
    const json& h = v["huber_oracle"];
    if (h.is_boolean()) {
      c.huber_oracle = h.get<bool>();
    } else {
      if (!h.is_object()) bad("checks.huber_oracle", "expected true/false or {enabled, tolerance}");
      only_keys(h, "checks.huber_oracle", {"enabled", "tolerance"});
      c.huber_oracle = h.contains("enabled") ? boolean(h["enabled"], "checks.huber_oracle.enabled") : true;
      if (h.contains("tolerance")) c.huber_tolerance = number(h["tolerance"], "checks.huber_oracle.tolerance");
    }
  }
  if (v.contains("separation")) {
    const json& s = v["separation"];
    if (s.is_boolean()) {
      if (s.get<bool>()) c.separation_threshold = 1e-6;
    } else {
      if (!s.is_object()) bad("checks.separation", "expected true/false or {enabled, threshold}");
      only_keys(s, "checks.separation", {"enabled", "threshold"});
      const bool on = s.contains("enabled") ? boolean(s["enabled"], "checks.separation.enabled") : true;
      const double t = s.contains("threshold") ? number(s["threshold"], "checks.separation.threshold") : 1e-6;
      if (on) c.separation_threshold = t;
    }
  }
  if (v.contains("convergence_target")) {
    c.convergence_target = number(v["convergence_target"], "checks.convergence_target");
    if (*c.convergence_target < 0.0) bad("checks.convergence_target", "must be >= 0");
  }
  if (v.contains("boundary_mask_width")) c.boundary_mask_width = count(v["boundary_mask_width"], "checks.boundary_mask_width");
  if (v.contains("omega_centers")) c.omega_centers = count(v["omega_centers"], "checks.omega_centers");
  if (v.contains("regions")) {
    if (!v["regions"].is_array()) bad("checks.regions", "expected an array");
    for (std::size_t k = 0; k < v["regions"].size(); ++k)
      c.regions.push_back(parse_region(v["regions"][k], "checks.regions[" + std::to_string(k) + "]"));
  }
  if (v.contains("seed")) c.seed = count(v["seed"], "checks.seed");
  return c;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    bad("config", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) bad("config", "expected a JSON object");
  only_keys(root, "", {"function", "grid", "kernel", "schedule", "clip_floor", "fast_quadratic", "checks", "outputs"});

  RunConfig c;
  if (!root.contains("function")) bad("function", "missing");
  const json& fn = root["function"];
  if (fn.is_string()) {
    c.expression = fn.get<std::string>();
  } else if (fn.is_object()) {
    only_keys(fn, "function", {"expression", "csv"});
    if (fn.contains("expression") == fn.contains("csv")) bad("function", "give exactly one of expression or csv");
    if (fn.contains("expression")) c.expression = string(fn["expression"], "function.expression");
    else c.csv_path = string(fn["csv"], "function.csv");
  } else {
    bad("function", "expected an expression string or an object");
  }
  if (fn.is_object() && fn.contains("csv") && c.csv_path.empty()) bad("function.csv", "empty path");
  if (fn.is_string() && c.expression.empty()) bad("function", "empty expression");

  if (root.contains("grid")) {
    c.grid = parse_grid(root["grid"]);
  } else if (!c.csv_path.empty()) {
    try {
      c.grid = read_csv_file(c.csv_path).grid();
    } catch (const Error& e) {
      bad("function.csv", e.what());
    }
  } else {
    bad("grid", "missing");
  }

  if (!c.expression.empty()) {
    try {
      (void)Expression::parse(c.expression, c.grid.dim());
    } catch (const Error& e) {
      bad("function.expression", e.what());
    }
  }

  if (!root.contains("kernel")) bad("kernel", "missing");
  const json& k = root["kernel"];
  if (!k.is_object()) bad("kernel", "expected an object");
  only_keys(k, "kernel", {"kind", "norm_p", "exponent_p", "dim"});
  c.kernel.dim = c.grid.dim();
  if (k.contains("dim")) {
    const std::size_t d = count(k["dim"], "kernel.dim");
    if (d != static_cast<std::size_t>(c.grid.dim())) bad("kernel.dim", "does not match the grid dimension");
  }
  if (k.contains("kind")) {
    try {
      c.kernel.kind = parse_kernel_kind(string(k["kind"], "kernel.kind"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      bad("kernel.kind", e.what());
    }
  }
  if (k.contains("norm_p")) c.kernel.norm_p = parse_norm(k["norm_p"], "kernel.norm_p");
  if (k.contains("exponent_p")) c.kernel.exponent_p = number(k["exponent_p"], "kernel.exponent_p");
  try {
    (void)Kernel::from_spec(c.kernel);
  } catch (const Error& e) {
    bad("kernel", e.what());
  }

  if (!root.contains("schedule")) {
    c.schedule = doubling_schedule(6);
  } else if (root["schedule"].is_object()) {
    only_keys(root["schedule"], "schedule", {"doubling"});
    if (!root["schedule"].contains("doubling")) bad("schedule.doubling", "missing");
    const std::size_t K = count(root["schedule"]["doubling"], "schedule.doubling");
    if (K > 30) bad("schedule.doubling", "at most 30 doublings");
    c.schedule = doubling_schedule(static_cast<int>(K));
  } else if (root["schedule"].is_array()) {
    const json& s = root["schedule"];
    if (s.empty()) bad("schedule", "empty");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string p = "schedule[" + std::to_string(i) + "]";
      const double n = number(s[i], p);
      if (!(n > 0.0)) bad(p, "scales must be > 0");
      if (!c.schedule.empty() && !(n > c.schedule.back())) bad(p, "scales must be strictly increasing");
      c.schedule.push_back(n);
    }
  } else {
    bad("schedule", "expected an array of scales or {\"doubling\": K}");
  }

  if (root.contains("clip_floor")) c.clip_floor = number(root["clip_floor"], "clip_floor");
  if (root.contains("fast_quadratic")) c.fast_quadratic = boolean(root["fast_quadratic"], "fast_quadratic");
  if (root.contains("checks")) c.checks = parse_checks(root["checks"]);
  if (c.checks.huber_oracle && c.grid.dim() != 1) bad("checks.huber_oracle", "only defined for 1D grids");

  if (!root.contains("outputs")) bad("outputs", "missing");
  const json& o = root["outputs"];
  if (!o.is_object()) bad("outputs", "expected an object");
  only_keys(o, "outputs", {"directory"});
  if (!o.contains("directory")) bad("outputs.directory", "missing");
  c.output_dir = string(o["directory"], "outputs.directory");
  if (c.output_dir.empty()) bad("outputs.directory", "empty path");
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json j;
  if (!c.expression.empty()) j["function"] = {{"expression", c.expression}};
  else j["function"] = {{"csv", c.csv_path}};
  j["grid"] = {{"domain", c.grid.to_domain_string()}};
  json k;
  k["kind"] = kernel_kind_name(c.kernel.kind);
  if (std::isinf(c.kernel.norm_p)) k["norm_p"] = "linf";
  else k["norm_p"] = c.kernel.norm_p;
  k["exponent_p"] = c.kernel.exponent_p;
  k["dim"] = c.kernel.dim;
  j["kernel"] = k;
  j["schedule"] = c.schedule;
  if (c.clip_floor) j["clip_floor"] = *c.clip_floor;
  j["fast_quadratic"] = c.fast_quadratic;
  json ch;
  ch["sandwich"] = c.checks.sandwich;
  ch["minimizers"] = c.checks.minimizers;
  ch["convexity"] = c.checks.convexity;
  ch["dual_chain"] = c.checks.dual_chain;
  ch["convergence"] = c.checks.convergence;
  ch["omega"] = c.checks.omega;
  ch["smoothness"] = c.checks.smoothness;
  ch["stages"] = c.checks.stages;
  ch["huber_oracle"] = {{"enabled", c.checks.huber_oracle}, {"tolerance", c.checks.huber_tolerance}};
  if (c.checks.separation_threshold)
    ch["separation"] = {{"enabled", true}, {"threshold", *c.checks.separation_threshold}};
  else
    ch["separation"] = false;
  if (c.checks.convergence_target) ch["convergence_target"] = *c.checks.convergence_target;
  ch["boundary_mask_width"] = c.checks.boundary_mask_width;
  ch["omega_centers"] = c.checks.omega_centers;
  json regions = json::array();
  for (const Region& r : c.checks.regions) regions.push_back(r.kind == Region::Kind::FullGrid && r.mask_width == 0 ? json("full") : region_json(r));
  ch["regions"] = regions;
  ch["seed"] = c.checks.seed;
  j["checks"] = ch;
  j["outputs"] = {{"directory", c.output_dir}};
  return j.dump(2);
}

GridFunction load_function(const RunConfig& c) {
  if (!c.expression.empty()) return Expression::parse(c.expression, c.grid.dim()).sample(c.grid);
  GridFunction f = read_csv_file(c.csv_path);
  require_same_grid(f.grid(), c.grid);
  return f;
}

}  // namespace dcreg
