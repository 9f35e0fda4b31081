#include "dcreg/dcreg.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <memory>
#include <sstream>
#include <fstream>
#include <iostream>
#include <new>
#include <random>
#include <string>

#include "dcreg/config.hpp"
#include "dcreg/csv.hpp"
#include "dcreg/envelope.hpp"
#include "dcreg/error.hpp"
#include "dcreg/expression.hpp"
#include "dcreg/infconv.hpp"
#include "dcreg/regularize.hpp"
#include "dcreg/runner.hpp"

struct dcreg_function {
  dcreg::GridFunction f;
};

struct dcreg_kernel {
  dcreg::Kernel k;
};

namespace {

thread_local std::string g_last_error;

template <class F>
dcreg_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return DCREG_OK;
  } catch (const dcreg::Error& e) {
    g_last_error = e.what();
    return static_cast<dcreg_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DCREG_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DCREG_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) dcreg::fail(dcreg::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

dcreg_function* wrap(dcreg::GridFunction f) { return new dcreg_function{std::move(f)}; }

dcreg::ExtReal ext(double v) {
  if (std::isnan(v)) dcreg::fail(dcreg::ErrorCode::InvalidValue, "NaN value");
  if (v == -HUGE_VAL) dcreg::fail(dcreg::ErrorCode::InvalidValue, "-inf value");
  if (v == HUGE_VAL) return dcreg::ExtReal::infinity();
  return dcreg::ExtReal(v);
}

}  // namespace

extern "C" {

const char* dcreg_version(void) { return "0.3.0"; }

const char* dcreg_status_name(dcreg_status s) {
  if (s == DCREG_OK) return "Ok";
  if (s == DCREG_INTERNAL) return "Internal";
  if (s >= DCREG_INVALID_ARGUMENT && s <= DCREG_IO_ERROR)
    return dcreg::error_code_name(static_cast<dcreg::ErrorCode>(s));
  return "Unknown";
}

const char* dcreg_last_error(void) { return g_last_error.c_str(); }

dcreg_status dcreg_function_from_expression(const char* expression, const char* domain, dcreg_function** out) {
  return guarded([&] {
    need(expression, "expression");
    need(domain, "domain");
    need(out, "out");
    const dcreg::Grid g = dcreg::Grid::parse(domain);
    *out = wrap(dcreg::Expression::parse(expression, g.dim()).sample(g));
  });
}

dcreg_status dcreg_function_from_values(const char* domain, const double* values, size_t count,
                                        dcreg_function** out) {
  return guarded([&] {
    need(domain, "domain");
    need(out, "out");
    const dcreg::Grid g = dcreg::Grid::parse(domain);
    if (count != g.size())
      dcreg::fail(dcreg::ErrorCode::InvalidArgument,
                  "expected " + std::to_string(g.size()) + " values, got " + std::to_string(count));
    if (count) need(values, "values");
    std::vector<dcreg::ExtReal> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) v.push_back(ext(values[i]));
    *out = wrap(dcreg::GridFunction::from_values(g, std::move(v)));
  });
}

dcreg_status dcreg_function_read_csv(const char* path, dcreg_function** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    if (std::string(path) == "-") *out = wrap(dcreg::read_csv(std::cin));
    else *out = wrap(dcreg::read_csv_file(path));
  });
}

dcreg_status dcreg_function_write_csv(const dcreg_function* f, const char* path) {
  return guarded([&] {
    need(f, "f");
    need(path, "path");
    if (std::string(path) == "-") {
      dcreg::write_csv(std::cout, f->f);
      std::cout.flush();
      if (!std::cout) dcreg::fail(dcreg::ErrorCode::IoError, "write to stdout failed");
      return;
    }
    std::ostringstream os;
    dcreg::write_csv(os, f->f);
    dcreg::write_file_atomic(path, os.str());
  });
}

size_t dcreg_function_size(const dcreg_function* f) { return f ? f->f.size() : 0; }

int dcreg_function_dim(const dcreg_function* f) { return f ? f->f.grid().dim() : 0; }

dcreg_status dcreg_function_values(const dcreg_function* f, double* out, size_t count) {
  return guarded([&] {
    need(f, "f");
    if (count != f->f.size()) dcreg::fail(dcreg::ErrorCode::InvalidArgument, "count does not match size");
    if (count) need(out, "out");
    for (size_t i = 0; i < count; ++i) out[i] = f->f[i].raw();
  });
}

void dcreg_function_free(dcreg_function* f) { delete f; }

dcreg_status dcreg_kernel_create(const char* kind, double norm_p, double exponent_p, int dim, dcreg_kernel** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    dcreg::KernelSpec s;
    s.kind = dcreg::parse_kernel_kind(kind);
    s.norm_p = norm_p;
    s.exponent_p = exponent_p;
    s.dim = dim;
    *out = new dcreg_kernel{dcreg::Kernel::from_spec(s)};
  });
}

void dcreg_kernel_free(dcreg_kernel* k) { delete k; }

dcreg_status dcreg_inf_convolve(const dcreg_function* f, const dcreg_kernel* k, double n, dcreg_function** out) {
  return guarded([&] {
    need(f, "f");
    need(k, "kernel");
    need(out, "out");
    *out = wrap(dcreg::inf_convolve(f->f, k->k, dcreg::SmoothingScale(n)));
  });
}

dcreg_status dcreg_inf_convolve_fast(const dcreg_function* f, const dcreg_kernel* k, double n,
                                     dcreg_function** out) {
  return guarded([&] {
    need(f, "f");
    need(k, "kernel");
    need(out, "out");
    *out = wrap(dcreg::fast_quadratic_inf_convolve(f->f, k->k, dcreg::SmoothingScale(n)));
  });
}

dcreg_status dcreg_sup_convolve(const dcreg_function* f, const dcreg_kernel* k, double n, dcreg_function** out) {
  return guarded([&] {
    need(f, "f");
    need(k, "kernel");
    need(out, "out");
    *out = wrap(dcreg::sup_convolve(f->f, k->k, dcreg::SmoothingScale(n)));
  });
}

dcreg_status dcreg_lasry_lions(const dcreg_function* f, const dcreg_kernel* k, double n, double m,
                               dcreg_function** out) {
  return guarded([&] {
    need(f, "f");
    need(k, "kernel");
    need(out, "out");
    *out = wrap(dcreg::lasry_lions(f->f, k->k, dcreg::SmoothingScale(n), dcreg::SmoothingScale(m)));
  });
}

dcreg_status dcreg_convex_envelope(const dcreg_function* f, dcreg_function** out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = wrap(dcreg::convex_envelope(f->f).base());
  });
}

dcreg_status dcreg_delta_regularize(const dcreg_function* f, const dcreg_kernel* k, double n,
                                    dcreg_function** value, dcreg_function** plus, dcreg_function** minus) {
  return guarded([&] {
    need(f, "f");
    need(k, "kernel");
    need(value, "value");
    dcreg::DeltaConvexFunction d = dcreg::delta_regularize(f->f, k->k, dcreg::SmoothingScale(n));
    std::unique_ptr<dcreg_function> v(wrap(std::move(d.value)));
    std::unique_ptr<dcreg_function> p(plus ? wrap(d.plus.base()) : nullptr);
    std::unique_ptr<dcreg_function> m(minus ? wrap(d.minus.base()) : nullptr);
    *value = v.release();
    if (plus) *plus = p.release();
    if (minus) *minus = m.release();
  });
}

dcreg_status dcreg_kernel_check(const dcreg_kernel* k, size_t samples, uint64_t seed, dcreg_kernel_report* out) {
  return guarded([&] {
    need(k, "kernel");
    need(out, "out");
    if (samples == 0) dcreg::fail(dcreg::ErrorCode::InvalidArgument, "samples must be > 0");
    const dcreg::Kernel& kk = k->k;
    out->separation_constant = dcreg::estimate_separation_constant(kk, 1.0, 0.05, samples, seed);
    const dcreg::GrowthConstants gc = dcreg::estimate_growth_constants(kk, samples, seed);
    out->growth_eta = gc.eta;
    out->growth_gamma = gc.gamma;
    out->growth_worst_ratio = gc.worst_ratio;
    out->is_quadratic = kk.is_quadratic() ? 1 : 0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    for (size_t s = 0; s < samples; ++s) {
      dcreg::Point x{}, y{};
      double sq = 0.0, nx = 0.0, ny = 0.0;
      for (int a = 0; a < kk.dim(); ++a) {
        x[a] = u(rng);
        y[a] = u(rng);
        sq += (x[a] - y[a]) * (x[a] - y[a]);
        nx += x[a] * x[a];
        ny += y[a] * y[a];
      }
      worst = std::max(worst, std::abs(kk(x, y) - sq) / (1.0 + nx + ny));
    }
    out->quadratic_defect = worst;
  });
}

dcreg_status dcreg_run_config(const char* config_path, const char* output_dir, int* passed) {
  return guarded([&] {
    need(config_path, "config_path");
    need(passed, "passed");
    dcreg::RunConfig c = dcreg::load_run_config(config_path);
    if (output_dir) c.output_dir = output_dir;
    *passed = dcreg::execute_run(c).report.pass() ? 1 : 0;
  });
}

dcreg_status dcreg_diagnose(const char* run_dir, const char* report_path, int* passed) {
  return guarded([&] {
    need(run_dir, "run_dir");
    need(passed, "passed");
    const std::string rp =
        report_path ? std::string(report_path) : (std::filesystem::path(run_dir) / "report.json").string();
    *passed = dcreg::diagnose_directory(run_dir, rp).report.pass() ? 1 : 0;
  });
}

}  // extern "C"
