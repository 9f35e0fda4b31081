#include "dcreg/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcreg/error.hpp"
#include "dcreg/grid_kernel.hpp"

namespace dcreg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GridFunction scaled_c(const Grid& grid, const Kernel& k, SmoothingScale n) {
  std::vector<ExtReal> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = n.value() * k.c(grid.point(i));
  return GridFunction::from_values(grid, std::move(out));
}

GridFunction g_n(const GridFunction& f, const Kernel& k, SmoothingScale n) {
  return inf_convolve(f, k, n) + scaled_c(f.grid(), k, n);
}

GridFunction g_n_direct(const GridFunction& f, const Kernel& k, SmoothingScale n) {
  if (k.kind() != KernelKind::Kp) fail(ErrorCode::UnsupportedKernel, "the direct formula is for Kp kernels");
  const Grid& grid = f.grid();
  const double a = std::pow(2.0, k.exponent() - 1.0);
  const double w = n.value();
  std::vector<ExtReal> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    const double px = k.power_norm(x);
    double best = kInf;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (!f[j].is_finite()) continue;
      const Point y = grid.point(j);
      const double v = f[j].raw() + a * w * px + a * w * k.power_norm(y) - w * k.power_norm({x[0] + y[0], x[1] + y[1]});
      best = std::min(best, v);
    }
    out[i] = best + a * w * px;
  }
  return GridFunction::from_values(grid, std::move(out));
}

GridFunction delta_value(const GridFunction& inf_conv, const GridFunction& g,
                         const GridFunction& co_g, const GridFunction& nc) {
  std::vector<ExtReal> value(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!co_g[i].is_finite()) fail(ErrorCode::VerificationFailure, "envelope of g_n is not finite");
    value[i] = co_g[i] == g[i] ? inf_conv[i] : ExtReal(co_g[i].raw() - nc[i].raw());
  }
  return GridFunction::from_values(g.grid(), std::move(value));
}

DeltaConvexFunction assemble_delta(const GridFunction& inf_conv, const GridFunction& g,
                                   const ConvexGridFunction& co_g, const GridFunction& nc) {
  return {co_g, ConvexGridFunction::certify(nc), delta_value(inf_conv, g, co_g.base(), nc)};
}

DeltaConvexFunction delta_regularize(const GridFunction& f, const Kernel& k, SmoothingScale n) {
  const GridFunction I = inf_convolve(f, k, n);
  const GridFunction nc = scaled_c(f.grid(), k, n);
  const GridFunction g = I + nc;
  return assemble_delta(I, g, convex_envelope(g), nc);
}

RegularizationRun run_regularization(const GridFunction& f, const Kernel& k,
                                     const std::vector<double>& schedule, const RunOptions& options) {
  if (schedule.empty()) fail(ErrorCode::InvalidArgument, "empty schedule");
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    (void)SmoothingScale(schedule[s]);
    if (s > 0 && !(schedule[s] > schedule[s - 1]))
      fail(ErrorCode::ScaleOrder, "schedule must be strictly increasing");
  }
  GridFunction input = f;
  if (options.clip_floor) {
    if (!std::isfinite(*options.clip_floor)) fail(ErrorCode::InvalidArgument, "clip floor must be finite");
    std::vector<ExtReal> v(f.values().begin(), f.values().end());
    for (auto& x : v)
      if (x.is_finite() && x.raw() < *options.clip_floor) x = *options.clip_floor;
    input = GridFunction::from_values(f.grid(), std::move(v));
  }

  RegularizationRun run{input, k, schedule, {}, options.clip_floor};
  const GridKernel gk(k, f.grid());
  const bool fast = options.fast_quadratic && k.is_quadratic();
  for (double nv : schedule) {
    const SmoothingScale n(nv);
    GridFunction I = fast ? fast_quadratic_inf_convolve(input, k, n) : inf_convolve(input, gk, n);
    GridFunction II = fast ? fast_quadratic_inf_convolve(I, k, n) : inf_convolve(I, gk, n);
    const GridFunction nc = scaled_c(f.grid(), k, n);
    GridFunction g = I + nc;
    GridFunction co = convex_envelope(g).base();
    GridFunction delta = delta_value(I, g, co, nc);
    run.stages.push_back({nv, std::move(I), std::move(II), std::move(g), std::move(co), nc, std::move(delta)});
  }
  return run;
}

std::vector<double> doubling_schedule(int K) {
  if (K < 0) fail(ErrorCode::InvalidArgument, "doubling schedule needs K >= 0");
  std::vector<double> out;
  for (int i = 0; i <= K; ++i) out.push_back(std::ldexp(1.0, i));
  return out;
}

ConvexGridFunction dual_part(const GridFunction& g, const Kernel& k, SmoothingScale n) {
  if (!g.all_finite()) fail(ErrorCode::InfiniteValueInSup, "dual part needs a finite g");
  const GridKernel gk(k, g.grid());
  const double w = n.value();
  std::vector<ExtReal> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double best = -kInf;
    for (std::size_t j = 0; j < g.size(); ++j) best = std::max(best, g[j].raw() + w * gk.d(i, j));
    out[i] = best;
  }
  return ConvexGridFunction::certify(GridFunction::from_values(g.grid(), std::move(out)));
}

EnvelopeChainReport envelope_chain_check(const GridFunction& c, const ConvexGridFunction& d, const GridFunction& e) {
  require_same_grid(c.grid(), e.grid());
  require_same_grid(c.grid(), d.base().grid());
  EnvelopeChainReport r;
  r.tolerance = 1e-9 * std::max({c.scale(), d.base().scale(), e.scale()});
  const ConvexGridFunction co = convex_envelope(e + c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].is_finite() || !e[i].is_finite()) continue;
    const double lhs = d.base()[i].is_finite() ? d.base()[i].raw() - c[i].raw() : -kInf;
    const double mid = co.base()[i].raw() - c[i].raw();
    r.precondition_violation = std::max(r.precondition_violation, lhs - e[i].raw());
    r.lower_violation = std::max(r.lower_violation, lhs - mid);
    r.upper_violation = std::max(r.upper_violation, mid - e[i].raw());
  }
  if (r.precondition_violation > r.tolerance)
    fail(ErrorCode::PreconditionViolated, "d - c <= e fails by " + std::to_string(r.precondition_violation));
  r.pass = r.lower_violation <= r.tolerance && r.upper_violation <= r.tolerance;
  return r;
}

GridFunction distance_function(const Grid& grid, const std::vector<std::size_t>& target, const NormSpec& norm) {
  if (target.empty()) fail(ErrorCode::EmptySet, "target set is empty");
  for (std::size_t t : target)
    if (t >= grid.size()) fail(ErrorCode::InvalidArgument, "target node out of range");
  std::vector<ExtReal> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    double best = kInf;
    for (std::size_t t : target) {
      if (t == i) {
        best = 0.0;
        break;
      }
      const Point y = grid.point(t);
      best = std::min(best, norm({x[0] - y[0], x[1] - y[1]}));
    }
    out[i] = best;
  }
  return GridFunction::from_values(grid, std::move(out));
}

DeltaConvexFunction distance_regularize(const Grid& grid, const std::vector<std::size_t>& target,
                                        const Kernel& k, SmoothingScale n) {
  return delta_regularize(distance_function(grid, target, k.norm()), k, n);
}

DeltaConvexFunction extend_regularize(const GridFunction& f_S, const Kernel& k, SmoothingScale n) {
  return delta_regularize(f_S, k, n);
}

double support_gap(const GridFunction& f_S, const GridFunction& value) {
  require_same_grid(f_S.grid(), value.grid());
  double gap = -kInf;
  for (std::size_t i = 0; i < f_S.size(); ++i)
    if (f_S[i].is_finite() && value[i].is_finite()) gap = std::max(gap, f_S[i].raw() - value[i].raw());
  return gap;
}

}  // namespace dcreg
