#include "dcreg/infconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcreg/error.hpp"

namespace dcreg {

SmoothingScale::SmoothingScale(double n) : n_(n) {
  if (!(n > 0.0) || !std::isfinite(n))
    fail(ErrorCode::InvalidArgument, "smoothing scale must be a finite n > 0");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FiniteNodes {
  std::vector<std::size_t> index;
  std::vector<double> value;
};

FiniteNodes finite_nodes(const GridFunction& f) {
  FiniteNodes out;
  out.index.reserve(f.finite_count());
  out.value.reserve(f.finite_count());
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j].is_finite()) {
      out.index.push_back(j);
      out.value.push_back(f[j].raw());
    }
  return out;
}

void check_kernel_grid(const GridFunction& f, const GridKernel& k) {
  require_same_grid(f.grid(), k.grid());
}

}  // namespace

GridFunction inf_convolve(const GridFunction& f, const GridKernel& k, SmoothingScale n) {
  check_kernel_grid(f, k);
  const double w = n.value();
  const FiniteNodes src = finite_nodes(f);
  std::vector<ExtReal> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double best = kInf;
    for (std::size_t t = 0; t < src.index.size(); ++t) {
      const double v = src.value[t] + w * k(i, src.index[t]);
      if (v < best) best = v;
    }
    out[i] = best;
  }
  return GridFunction::from_values(f.grid(), std::move(out));
}

GridFunction inf_convolve(const GridFunction& f, const Kernel& k, SmoothingScale n) {
  return inf_convolve(f, GridKernel(k, f.grid()), n);
}

GridFunction sup_convolve(const GridFunction& f, const GridKernel& k, SmoothingScale n) {
  check_kernel_grid(f, k);
  if (!f.all_finite())
    fail(ErrorCode::InfiniteValueInSup, "sup-convolution of a function with +inf values");
  const double w = n.value();
  std::vector<ExtReal> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double best = -kInf;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double v = f[j].raw() - w * k(i, j);
      if (v > best) best = v;
    }
    out[i] = best;
  }
  return GridFunction::from_values(f.grid(), std::move(out));
}

GridFunction sup_convolve(const GridFunction& f, const Kernel& k, SmoothingScale n) {
  return sup_convolve(f, GridKernel(k, f.grid()), n);
}

GridFunction iterated_smooth(const GridFunction& f, const Kernel& k, SmoothingScale n) {
  GridKernel gk(k, f.grid());
  return inf_convolve(inf_convolve(f, gk, n), gk, n);
}

GridFunction lasry_lions(const GridFunction& f, const Kernel& k, SmoothingScale n,
                         SmoothingScale m, bool require_order) {
  if (require_order && !(m > n))
    fail(ErrorCode::ScaleOrder, "Lasry-Lions approximates need m > n");
  GridKernel gk(k, f.grid());
  return sup_convolve(inf_convolve(f, gk, n), gk, m);
}

OmegaSet omega_set(const GridFunction& f, const Kernel& k, SmoothingScale n, std::size_t center) {
  if (center >= f.size()) fail(ErrorCode::InvalidArgument, "center node out of range");
  GridKernel gk(k, f.grid());
  const double w = n.value();
  double level = kInf;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j].is_finite()) level = std::min(level, f[j].raw() + w * gk(center, j));
  level += 1.0;

  OmegaSet out;
  out.center = center;
  out.n = w;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j].is_finite() && f[j].raw() + w * gk(center, j) <= level) out.members.push_back(j);

  const Grid& grid = f.grid();
  if (grid.dim() == 1) {
    if (!out.members.empty())
      out.diameter = grid.coord(0, out.members.back()) - grid.coord(0, out.members.front());
    return out;
  }
  std::vector<Point> pts;
  pts.reserve(out.members.size());
  for (std::size_t j : out.members) pts.push_back(grid.point(j));
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      out.diameter = std::max(out.diameter, k.norm()({pts[a][0] - pts[b][0], pts[a][1] - pts[b][1]}));
  return out;
}

namespace {

/// Lower envelope of the parabolas v_j + w (i - j)^2 over index positions,
/// skipping +inf entries. All-+inf input yields all-+inf output.
void parabola_envelope(const std::vector<double>& v, double w, std::vector<double>& out) {
  const std::size_t len = v.size();
  std::vector<std::size_t> site;
  std::vector<double> start;  // left boundary of each site's cell
  site.reserve(len);
  start.reserve(len + 1);
  auto key = [&](std::size_t j) { return v[j] + w * static_cast<double>(j) * static_cast<double>(j); };
  for (std::size_t q = 0; q < len; ++q) {
    if (v[q] == kInf) continue;
    double s = -kInf;
    while (!site.empty()) {
      const std::size_t p = site.back();
      s = (key(q) - key(p)) / (2.0 * w * static_cast<double>(q - p));
      if (s > start.back()) break;
      site.pop_back();
      start.pop_back();
      s = -kInf;
    }
    site.push_back(q);
    start.push_back(site.size() == 1 ? -kInf : s);
  }
  out.assign(len, kInf);
  if (site.empty()) return;
  std::size_t cell = 0;
  for (std::size_t i = 0; i < len; ++i) {
    while (cell + 1 < site.size() && start[cell + 1] < static_cast<double>(i)) ++cell;
    const double d = static_cast<double>(i) - static_cast<double>(site[cell]);
    out[i] = v[site[cell]] + w * d * d;
  }
}

}  // namespace

GridFunction fast_quadratic_inf_convolve(const GridFunction& f, const Kernel& k, SmoothingScale n) {
  if (!k.is_quadratic())
    fail(ErrorCode::UnsupportedKernel, "fast path needs the quadratic kernel |x - y|_2^2");
  const Grid& grid = f.grid();
  if (grid.dim() != k.dim()) fail(ErrorCode::DimensionMismatch, "grid and kernel dimensions differ");

  std::vector<double> cur(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) cur[i] = f[i].raw();

  const std::size_t n0 = grid.nodes(0);
  const std::size_t n1 = grid.nodes(1);
  std::vector<double> line, env;
  if (grid.dim() == 2) {
    const double w1 = n.value() * grid.step(1) * grid.step(1);
    line.resize(n1);
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
      for (std::size_t i1 = 0; i1 < n1; ++i1) line[i1] = cur[grid.index(i0, i1)];
      parabola_envelope(line, w1, env);
      for (std::size_t i1 = 0; i1 < n1; ++i1) cur[grid.index(i0, i1)] = env[i1];
    }
  }
  const double w0 = n.value() * grid.step(0) * grid.step(0);
  line.resize(n0);
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    for (std::size_t i0 = 0; i0 < n0; ++i0) line[i0] = cur[grid.index(i0, i1)];
    parabola_envelope(line, w0, env);
    for (std::size_t i0 = 0; i0 < n0; ++i0) cur[grid.index(i0, i1)] = env[i0];
  }

  std::vector<ExtReal> out(cur.begin(), cur.end());
  return GridFunction::from_values(grid, std::move(out));
}

}  // namespace dcreg
