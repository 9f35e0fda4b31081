// Command-line front end. Talks to the library only through dcreg.h.
#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcreg/dcreg.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

int report_failure(dcreg_status s) {
  std::string msg = dcreg_last_error();
  std::string esc;
  for (char c : msg) {
    if (c == '"' || c == '\\') esc += '\\';
    if (c == '\n') {
      esc += "\\n";
      continue;
    }
    esc += c;
  }
  std::fprintf(stderr, "{\"status\": \"%s\", \"code\": %d, \"message\": \"%s\"}\n", dcreg_status_name(s),
               static_cast<int>(s), esc.c_str());
  return kExitError;
}

struct Status {
  dcreg_status s = DCREG_OK;
  explicit operator bool() const { return s == DCREG_OK; }
};

// "--domain -4:4:801" would otherwise be read as a short option.
std::vector<std::string> join_negative_values(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < argc) {
      const std::string next = argv[i + 1];
      if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
        out.push_back(a + "=" + next);
        ++i;
        continue;
      }
    }
    out.push_back(a);
  }
  return out;
}

double parse_norm(const std::string& s) {
  if (s == "euclidean" || s == "l2") return 2.0;
  if (s == "l1") return 1.0;
  if (s == "linf" || s == "inf") return HUGE_VAL;
  std::size_t used = 0;
  const double p = std::stod(s, &used);
  if (used != s.size()) throw CLI::ValidationError("--norm", "expected euclidean, l1, linf or a number");
  return p;
}

struct FunctionArgs {
  std::string fn;
  std::string csv;
  std::string domain = "-2:2:401";

  void attach(CLI::App* app) {
    auto* a = app->add_option("--fn", fn, "function expression in x (and y)");
    auto* b = app->add_option("--csv", csv, "function CSV (\"-\" for stdin)");
    a->excludes(b);
    app->add_option("--domain", domain, "lo:hi:nodes[,lo:hi:nodes]")->capture_default_str();
  }

  dcreg_status load(dcreg_function** out) const {
    if (!csv.empty()) return dcreg_function_read_csv(csv.c_str(), out);
    if (fn.empty()) throw CLI::RequiredError("--fn or --csv");
    return dcreg_function_from_expression(fn.c_str(), domain.c_str(), out);
  }
};

struct KernelArgs {
  std::string kind = "kp";
  double p = 2.0;
  std::string norm = "euclidean";

  void attach(CLI::App* app) {
    app->add_option("--kernel", kind, "kp or hilbert")->capture_default_str();
    app->add_option("--p", p, "kernel exponent")->capture_default_str();
    app->add_option("--norm", norm, "euclidean, l1, linf or a norm exponent")->capture_default_str();
  }

  dcreg_status create(int dim, dcreg_kernel** out) const {
    return dcreg_kernel_create(kind.c_str(), parse_norm(norm), p, dim, out);
  }
};

// Owns the handles of one invocation; deque keeps returned slots stable.
struct Handles {
  std::deque<dcreg_function*> fs;
  std::deque<dcreg_kernel*> ks;
  ~Handles() {
    for (auto* f : fs) dcreg_function_free(f);
    for (auto* k : ks) dcreg_kernel_free(k);
  }
  dcreg_function** f() {
    fs.push_back(nullptr);
    return &fs.back();
  }
  dcreg_kernel** k() {
    ks.push_back(nullptr);
    return &ks.back();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-convex regularization on grids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dcreg_version()));

  std::string config_path, out_dir;
  auto* reg = app.add_subcommand("regularize", "run a JSON config and write CSVs plus report.json");
  reg->add_option("--config", config_path, "config file")->required();
  reg->add_option("--out", out_dir, "override outputs.directory");

  FunctionArgs fa;
  KernelArgs ka;
  double n = 1.0, m = 2.0;
  bool fast = false;
  std::string output = "-";

  auto* moreau = app.add_subcommand("moreau", "inf-convolution I f = min f(y) + n K(x, y)");
  fa.attach(moreau);
  ka.attach(moreau);
  moreau->add_option("--n", n, "smoothing scale")->capture_default_str();
  moreau->add_flag("--fast", fast, "parabola-envelope path (quadratic kernels)");
  moreau->add_option("--output", output, "CSV path, \"-\" for stdout")->capture_default_str();

  auto* env = app.add_subcommand("envelope", "lower convex envelope");
  fa.attach(env);
  env->add_option("--output", output, "CSV path, \"-\" for stdout")->capture_default_str();

  auto* ll = app.add_subcommand("lasry-lions", "S_m(I_n f)");
  fa.attach(ll);
  ka.attach(ll);
  ll->add_option("--n", n, "inner scale")->capture_default_str();
  ll->add_option("--m", m, "outer scale, > n")->capture_default_str();
  ll->add_option("--output", output, "CSV path, \"-\" for stdout")->capture_default_str();

  int dim = 1;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  auto* kc = app.add_subcommand("kernel-check", "separation, growth and quadratic-defect estimates");
  ka.attach(kc);
  kc->add_option("--dim", dim, "1 or 2")->capture_default_str();
  kc->add_option("--samples", samples)->capture_default_str();
  kc->add_option("--seed", seed)->capture_default_str();

  std::string run_dir, report_path;
  bool no_report = false;
  auto* diag = app.add_subcommand("diagnose", "recompute the report of a run directory from its CSVs");
  diag->add_option("dir", run_dir, "run output directory")->required();
  diag->add_option("--report", report_path, "report path (default <dir>/report.json)");
  diag->add_flag("--no-report", no_report, "print the verdict only");

  std::vector<std::string> args = join_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  Handles h;
  dcreg_status s = DCREG_OK;
  try {
    if (*reg) {
      int passed = 0;
      s = dcreg_run_config(config_path.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &passed);
      if (s != DCREG_OK) return report_failure(s);
      std::printf("%s\n", passed ? "PASS" : "FAIL");
      return passed ? kExitPass : kExitCheckFailed;
    }
    if (*diag) {
      int passed = 0;
      const char* rp = no_report ? "" : (report_path.empty() ? nullptr : report_path.c_str());
      s = dcreg_diagnose(run_dir.c_str(), rp, &passed);
      if (s != DCREG_OK) return report_failure(s);
      std::printf("%s\n", passed ? "PASS" : "FAIL");
      return passed ? kExitPass : kExitCheckFailed;
    }
    if (*kc) {
      dcreg_kernel** k = h.k();
      if ((s = ka.create(dim, k)) != DCREG_OK) return report_failure(s);
      dcreg_kernel_report r{};
      if ((s = dcreg_kernel_check(*k, samples, seed, &r)) != DCREG_OK) return report_failure(s);
      std::printf("separation_constant %.17g\n", r.separation_constant);
      std::printf("quadratic_defect %.17g\n", r.quadratic_defect);
      std::printf("growth_eta %.17g\n", r.growth_eta);
      std::printf("growth_gamma %.17g\n", r.growth_gamma);
      std::printf("growth_worst_ratio %.17g\n", r.growth_worst_ratio);
      std::printf("is_quadratic %d\n", r.is_quadratic);
      return kExitPass;
    }

    dcreg_function** f = h.f();
    if ((s = fa.load(f)) != DCREG_OK) return report_failure(s);
    dcreg_function** out = h.f();
    if (*env) {
      s = dcreg_convex_envelope(*f, out);
    } else {
      dcreg_kernel** k = h.k();
      if ((s = ka.create(dcreg_function_dim(*f), k)) != DCREG_OK) return report_failure(s);
      if (*moreau) s = fast ? dcreg_inf_convolve_fast(*f, *k, n, out) : dcreg_inf_convolve(*f, *k, n, out);
      else s = dcreg_lasry_lions(*f, *k, n, m, out);
    }
    if (s != DCREG_OK) return report_failure(s);
    if ((s = dcreg_function_write_csv(*out, output.c_str())) != DCREG_OK) return report_failure(s);
    return kExitPass;
  } catch (const CLI::Error& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"status\": \"Usage\", \"code\": -1, \"message\": \"%s\"}\n", e.what());
    return kExitError;
  }
}
