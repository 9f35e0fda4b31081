#include "dcreg/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "dcreg/error.hpp"

namespace dcreg {

ConvexGridFunction make_trusted_convex(GridFunction f) { return ConvexGridFunction(std::move(f)); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Points this far above a chord still count as on it, so near-collinear
// samples stay hull vertices and keep their exact values.
double collinear_tolerance(const GridFunction& f) { return 1e-13 * f.scale(); }

/// Lower convex hull of (x, v) samples with x strictly increasing.
class LowerChain {
 public:
  LowerChain(const std::vector<double>& x, const std::vector<double>& v, double tau) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      while (hx_.size() >= 2) {
        const std::size_t a = hx_.size() - 2, b = hx_.size() - 1;
        const double chord = hv_[a] + (v[k] - hv_[a]) * (hx_[b] - hx_[a]) / (x[k] - hx_[a]);
        if (hv_[b] - chord <= tau) break;
        hx_.pop_back();
        hv_.pop_back();
      }
      hx_.push_back(x[k]);
      hv_.push_back(v[k]);
    }
  }

  double eval(double x) const {
    if (hx_.empty() || x < hx_.front() || x > hx_.back()) return kInf;
    const auto it = std::lower_bound(hx_.begin(), hx_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - hx_.begin());
    if (hx_[k] == x) return hv_[k];
    const std::size_t a = k - 1;
    return hv_[a] + (hv_[k] - hv_[a]) * (x - hx_[a]) / (hx_[k] - hx_[a]);
  }

 private:
  std::vector<double> hx_, hv_;
};

GridFunction clip_to(const GridFunction& f, std::vector<double> env) {
  std::vector<ExtReal> out(env.size());
  for (std::size_t i = 0; i < env.size(); ++i) {
    double v = env[i];
    if (f[i].is_finite()) v = std::min(v, f[i].raw());
    out[i] = v;
  }
  return GridFunction::from_values(f.grid(), std::move(out));
}

// ---- 2D -------------------------------------------------------------------

struct LatticePoint {
  std::int64_t x = 0, y = 0;
  double v = 0.0;
};

std::int64_t orient(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by,
                    std::int64_t cx, std::int64_t cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

std::int64_t orient(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
  return orient(a.x, a.y, b.x, b.y, c.x, c.y);
}

/// Strict convex hull (counter-clockwise, no collinear vertices) of points
/// given in lexicographic order.
std::vector<std::size_t> hull_polygon(const std::vector<LatticePoint>& pts) {
  const std::size_t m = pts.size();
  std::vector<std::size_t> h(2 * m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    while (k >= 2 && orient(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t i = m - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

/// Minimises sum lambda_k v_k subject to sum lambda_k = 1, sum lambda_k P_k = t,
/// lambda >= 0, starting from a basis triangle that contains t. Geometry is
/// exact integer arithmetic; only the reduced costs are floating point.
class SimplexSolver {
 public:
  SimplexSolver(const std::vector<LatticePoint>& pts, double tol) : pts_(pts), tol_(tol) {}

  double solve(std::int64_t tx, std::int64_t ty, std::array<std::size_t, 3> basis) const {
    const std::size_t m = pts_.size();
    const std::size_t max_iter = 64 + 20 * m;
    for (std::size_t iter = 0;; ++iter) {
      const LatticePoint& a = pts_[basis[0]];
      const LatticePoint& b = pts_[basis[1]];
      const LatticePoint& c = pts_[basis[2]];
      const std::int64_t det = orient(a, b, c);
      const std::int64_t sgn = det > 0 ? 1 : -1;

      // Plane through the three basis samples.
      const double dd = static_cast<double>(det);
      const double bax = static_cast<double>(b.x - a.x), bay = static_cast<double>(b.y - a.y);
      const double cax = static_cast<double>(c.x - a.x), cay = static_cast<double>(c.y - a.y);
      const double dvb = b.v - a.v, dvc = c.v - a.v;
      const double gx = (dvb * cay - dvc * bay) / dd;
      const double gy = (bax * dvc - cax * dvb) / dd;

      const bool bland = iter >= 64;
      std::size_t enter = m;
      double best = -tol_;
      for (std::size_t k = 0; k < m; ++k) {
        const LatticePoint& p = pts_[k];
        const double r = p.v - (a.v + gx * static_cast<double>(p.x - a.x) + gy * static_cast<double>(p.y - a.y));
        if (r < best) {
          enter = k;
          if (bland) break;
          best = r;
        }
      }
      if (enter == m || iter >= max_iter) {
        const std::int64_t la = orient(tx, ty, b.x, b.y, c.x, c.y);
        const std::int64_t lb = orient(a.x, a.y, tx, ty, c.x, c.y);
        const std::int64_t lc = orient(a.x, a.y, b.x, b.y, tx, ty);
        if (la == det) return a.v;
        if (lb == det) return b.v;
        if (lc == det) return c.v;
        return (static_cast<double>(la) * a.v + static_cast<double>(lb) * b.v +
                static_cast<double>(lc) * c.v) / dd;
      }

      const LatticePoint& e = pts_[enter];
      const std::array<std::int64_t, 3> w{sgn * orient(e, b, c), sgn * orient(a, e, c), sgn * orient(a, b, e)};
      const std::array<std::int64_t, 3> lam{sgn * orient(tx, ty, b.x, b.y, c.x, c.y),
                                            sgn * orient(a.x, a.y, tx, ty, c.x, c.y),
                                            sgn * orient(a.x, a.y, b.x, b.y, tx, ty)};
      int leave = -1;
      for (int r = 0; r < 3; ++r) {
        if (w[r] <= 0) continue;
        if (leave < 0) {
          leave = r;
          continue;
        }
        const __int128 lhs = static_cast<__int128>(lam[r]) * w[leave];
        const __int128 rhs = static_cast<__int128>(lam[leave]) * w[r];
        if (lhs < rhs || (lhs == rhs && basis[r] < basis[leave])) leave = r;
      }
      basis[leave] = enter;
    }
  }

 private:
  const std::vector<LatticePoint>& pts_;
  double tol_;
};

std::vector<double> envelope_collinear(const Grid& grid, const std::vector<LatticePoint>& pts, double tau) {
  const LatticePoint& p0 = pts.front();
  std::int64_t dx = 1, dy = 0;
  for (const auto& p : pts)
    if (p.x != p0.x || p.y != p0.y) {
      dx = p.x - p0.x;
      dy = p.y - p0.y;
      break;
    }
  const std::int64_t g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
  dx /= g;
  dy /= g;
  const std::int64_t norm2 = dx * dx + dy * dy;
  std::vector<std::pair<std::int64_t, double>> line;
  for (const auto& p : pts) line.push_back({((p.x - p0.x) * dx + (p.y - p0.y) * dy) / norm2, p.v});
  std::sort(line.begin(), line.end());
  std::vector<double> xs, vs;
  for (auto [s, v] : line) {
    xs.push_back(static_cast<double>(s));
    vs.push_back(v);
  }
  LowerChain chain(xs, vs, tau);

  std::vector<double> env(grid.size(), kInf);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto mi = grid.multi_index(i);
    const auto tx = static_cast<std::int64_t>(mi[0]), ty = static_cast<std::int64_t>(mi[1]);
    if (orient(p0.x, p0.y, p0.x + dx, p0.y + dy, tx, ty) != 0) continue;
    env[i] = chain.eval(static_cast<double>(((tx - p0.x) * dx + (ty - p0.y) * dy) / norm2));
  }
  return env;
}

}  // namespace

ConvexGridFunction ConvexGridFunction::certify(const GridFunction& f) {
  const double defect = convexity_defect(f);
  if (defect > 1e-9 * f.scale())
    fail(ErrorCode::VerificationFailure,
         "function is not discretely convex (second-difference defect " + std::to_string(defect) + ")");
  return ConvexGridFunction(f);
}

double convexity_defect(const GridFunction& f) {
  const Grid& grid = f.grid();
  const std::size_t n0 = grid.nodes(0), n1 = grid.nodes(1);
  std::vector<std::array<int, 2>> dirs{{1, 0}};
  if (grid.dim() == 2) dirs = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  double worst = 0.0;
  for (std::size_t i0 = 0; i0 < n0; ++i0)
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const ExtReal mid = f[grid.index(i0, i1)];
      if (!mid.is_finite()) continue;
      for (auto [d0, d1] : dirs) {
        const auto a0 = static_cast<std::ptrdiff_t>(i0) - d0, b0 = static_cast<std::ptrdiff_t>(i0) + d0;
        const auto a1 = static_cast<std::ptrdiff_t>(i1) - d1, b1 = static_cast<std::ptrdiff_t>(i1) + d1;
        if (a0 < 0 || b0 >= static_cast<std::ptrdiff_t>(n0) || std::min(a1, b1) < 0 ||
            std::max(a1, b1) >= static_cast<std::ptrdiff_t>(n1))
          continue;
        const ExtReal lo = f[grid.index(static_cast<std::size_t>(a0), static_cast<std::size_t>(a1))];
        const ExtReal hi = f[grid.index(static_cast<std::size_t>(b0), static_cast<std::size_t>(b1))];
        if (!lo.is_finite() || !hi.is_finite()) continue;
        worst = std::max(worst, 2.0 * mid.raw() - lo.raw() - hi.raw());
      }
    }
  return worst;
}

ConvexGridFunction convex_envelope_1d(const GridFunction& f) {
  const Grid& grid = f.grid();
  if (grid.dim() != 1) fail(ErrorCode::DimensionMismatch, "convex_envelope_1d needs a 1D grid");
  std::vector<double> xs, vs;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].is_finite()) {
      xs.push_back(static_cast<double>(i));
      vs.push_back(f[i].raw());
    }
  LowerChain chain(xs, vs, collinear_tolerance(f));
  std::vector<double> env(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) env[i] = chain.eval(static_cast<double>(i));
  return make_trusted_convex(clip_to(f, std::move(env)));
}

ConvexGridFunction convex_envelope_2d(const GridFunction& f) {
  const Grid& grid = f.grid();
  if (grid.dim() != 2) fail(ErrorCode::DimensionMismatch, "convex_envelope_2d needs a 2D grid");

  std::vector<LatticePoint> pts;
  std::vector<std::size_t> slot(f.size(), SIZE_MAX);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].is_finite()) {
      const auto mi = grid.multi_index(i);
      slot[i] = pts.size();
      pts.push_back({static_cast<std::int64_t>(mi[0]), static_cast<std::int64_t>(mi[1]), f[i].raw()});
    }

  const double tau = collinear_tolerance(f);
  bool collinear = true;
  for (std::size_t k = 2; k < pts.size() && collinear; ++k)
    if (orient(pts[0], pts[1], pts[k]) != 0) collinear = false;
  if (collinear) return make_trusted_convex(clip_to(f, envelope_collinear(grid, pts, tau)));

  const std::vector<std::size_t> poly = hull_polygon(pts);
  const SimplexSolver solver(pts, tau);
  const std::int64_t n0 = static_cast<std::int64_t>(grid.nodes(0));
  const std::int64_t n1 = static_cast<std::int64_t>(grid.nodes(1));

  std::vector<double> env(f.size(), kInf);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto mi = grid.multi_index(i);
    const auto tx = static_cast<std::int64_t>(mi[0]), ty = static_cast<std::int64_t>(mi[1]);
    std::array<std::size_t, 3> basis{};
    bool found = false;

    if (slot[i] != SIZE_MAX) {
      // Degenerate start {t, a, b}: t carries all the weight, so a sample
      // that is already on the envelope comes back with its exact value.
      basis[0] = slot[i];
      const std::array<std::array<std::int64_t, 2>, 4> near{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
      for (std::size_t q = 0; q < 4 && !found; ++q) {
        const std::int64_t ax = tx + near[q][0], ay = ty + near[q][1];
        const std::int64_t bx = tx + near[(q + 1) % 4][0], by = ty + near[(q + 1) % 4][1];
        if (ax < 0 || ay < 0 || bx < 0 || by < 0 || ax >= n0 || bx >= n0 || ay >= n1 || by >= n1) continue;
        const std::size_t sa = slot[grid.index(static_cast<std::size_t>(ax), static_cast<std::size_t>(ay))];
        const std::size_t sb = slot[grid.index(static_cast<std::size_t>(bx), static_cast<std::size_t>(by))];
        if (sa == SIZE_MAX || sb == SIZE_MAX) continue;
        basis[1] = sa;
        basis[2] = sb;
        found = true;
      }
      for (std::size_t a = 0; a < pts.size() && !found; ++a) {
        if (a == slot[i]) continue;
        for (std::size_t b = a + 1; b < pts.size() && !found; ++b)
          if (orient(pts[slot[i]], pts[a], pts[b]) != 0) {
            basis[1] = a;
            basis[2] = b;
            found = true;
          }
      }
    } else {
      const LatticePoint t{tx, ty, 0.0};
      bool inside = true;
      for (std::size_t k = 0; k < poly.size() && inside; ++k)
        if (orient(pts[poly[k]], pts[poly[(k + 1) % poly.size()]], t) < 0) inside = false;
      if (!inside) continue;
      for (std::size_t k = 1; k + 1 < poly.size() && !found; ++k) {
        const LatticePoint& a = pts[poly[0]];
        const LatticePoint& b = pts[poly[k]];
        const LatticePoint& c = pts[poly[k + 1]];
        if (orient(a, b, t) >= 0 && orient(b, c, t) >= 0 && orient(c, a, t) >= 0) {
          basis = {poly[0], poly[k], poly[k + 1]};
          found = true;
        }
      }
    }
    if (!found) fail(ErrorCode::VerificationFailure, "no starting triangle for the envelope LP");
    env[i] = solver.solve(tx, ty, basis);
  }
  return make_trusted_convex(clip_to(f, std::move(env)));
}

ConvexGridFunction convex_envelope(const GridFunction& f) {
  return f.grid().dim() == 1 ? convex_envelope_1d(f) : convex_envelope_2d(f);
}

// ---- Legendre transforms ---------------------------------------------------

namespace {

/// [min, max] of difference quotients between consecutive finite nodes along
/// the given axis. Empty range (min > max) if no axis line has two finite
/// nodes.
std::pair<double, double> quotient_range(const GridFunction& f, int axis) {
  const Grid& grid = f.grid();
  const std::size_t n0 = grid.nodes(0), n1 = grid.nodes(1);
  const std::size_t lines = axis == 0 ? n1 : n0;
  const std::size_t len = axis == 0 ? n0 : n1;
  double lo = kInf, hi = -kInf;
  for (std::size_t l = 0; l < lines; ++l) {
    std::size_t prev = SIZE_MAX;
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t idx = axis == 0 ? grid.index(k, l) : grid.index(l, k);
      if (!f[idx].is_finite()) continue;
      if (prev != SIZE_MAX) {
        const std::size_t pidx = axis == 0 ? grid.index(prev, l) : grid.index(l, prev);
        const double q = (f[idx].raw() - f[pidx].raw()) /
                         (grid.coord(axis, k) - grid.coord(axis, prev));
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      prev = k;
    }
  }
  return {lo, hi};
}

void check_slope_grid(const GridFunction& f, const SlopeGrid& s) {
  if (s.slopes.dim() != f.grid().dim())
    fail(ErrorCode::DimensionMismatch, "slope grid and function dimensions differ");
  for (int a = 0; a < f.grid().dim(); ++a) {
    const auto [lo, hi] = quotient_range(f, a);
    if (lo > hi) continue;
    if (s.slopes.lo(a) > lo || s.slopes.hi(a) < hi)
      fail(ErrorCode::SlopeRangeTooNarrow,
           "slope range on axis " + std::to_string(a) + " misses difference quotients in [" +
               std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

struct Samples {
  std::vector<Point> x;
  std::vector<double> v;
};

Samples finite_samples(const GridFunction& f) {
  Samples s;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].is_finite()) {
      s.x.push_back(f.grid().point(i));
      s.v.push_back(f[i].raw());
    }
  return s;
}

template <class F>
double golden_max(F&& phi, double lo, double hi) {
  constexpr double r = 0.6180339887498949;
  double best = std::max(phi(lo), phi(hi));
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 120 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    best = std::max({best, fc, fd});
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = phi(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = phi(c);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace

SlopeGrid default_slope_grid(const GridFunction& f, std::size_t count_factor) {
  const Grid& grid = f.grid();
  std::array<double, 2> lo{-1.0, -1.0}, hi{1.0, 1.0};
  std::array<std::size_t, 2> count{2, 2};
  for (int a = 0; a < grid.dim(); ++a) {
    auto [qlo, qhi] = quotient_range(f, a);
    if (qlo <= qhi) {
      double pad = 0.1 * (qhi - qlo);
      if (pad == 0.0) pad = 1.0;
      lo[a] = qlo - pad;
      hi[a] = qhi + pad;
    }
    count[a] = std::max<std::size_t>(2, count_factor * grid.nodes(a));
  }
  if (grid.dim() == 1) return {Grid::line(lo[0], hi[0], count[0])};
  return {Grid::box(lo[0], hi[0], count[0], lo[1], hi[1], count[1])};
}

GridFunction legendre_transform(const GridFunction& f, const SlopeGrid& slopes) {
  if (slopes.slopes.dim() != f.grid().dim())
    fail(ErrorCode::DimensionMismatch, "slope grid and function dimensions differ");
  const Samples s = finite_samples(f);
  const Grid& sg = slopes.slopes;
  std::vector<ExtReal> out(sg.size());
  for (std::size_t k = 0; k < sg.size(); ++k) {
    const Point p = sg.point(k);
    double best = -kInf;
    for (std::size_t j = 0; j < s.v.size(); ++j)
      best = std::max(best, p[0] * s.x[j][0] + p[1] * s.x[j][1] - s.v[j]);
    out[k] = best;
  }
  return GridFunction::from_values(sg, std::move(out));
}

ConvexGridFunction legendre_biconjugate(const GridFunction& f, const SlopeGrid& slopes) {
  check_slope_grid(f, slopes);
  const GridFunction conj = legendre_transform(f, slopes);
  const Grid& sg = slopes.slopes;
  std::vector<Point> sp(sg.size());
  for (std::size_t k = 0; k < sg.size(); ++k) sp[k] = sg.point(k);
  std::vector<ExtReal> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = f.grid().point(i);
    double best = -kInf;
    for (std::size_t k = 0; k < sp.size(); ++k)
      best = std::max(best, sp[k][0] * x[0] + sp[k][1] * x[1] - conj[k].raw());
    out[i] = best;
  }
  return make_trusted_convex(GridFunction::from_values(f.grid(), std::move(out)));
}

ConvexGridFunction legendre_biconjugate_refined(const GridFunction& f, const SlopeGrid& slopes) {
  check_slope_grid(f, slopes);
  const Grid& grid = f.grid();
  std::vector<ExtReal> out(f.size());

  if (grid.dim() == 1) {
    const Samples s = finite_samples(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x0 = grid.coord(0, i);
      auto phi = [&](double slope) {
        double conj = -kInf;
        for (std::size_t j = 0; j < s.v.size(); ++j) conj = std::max(conj, slope * s.x[j][0] - s.v[j]);
        return slope * x0 - conj;
      };
      out[i] = golden_max(phi, slopes.slopes.lo(0), slopes.slopes.hi(0));
    }
    return make_trusted_convex(GridFunction::from_values(grid, std::move(out)));
  }

  // f**(x0, y0) = sup_s2 [ s2 y0 + co(u_s2)(x0) ] with
  // u_s2(x) = min_y f(x, y) - s2 y, the envelope taken along the first axis.
  const std::size_t n0 = grid.nodes(0), n1 = grid.nodes(1);
  std::vector<double> u(n0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto mi = grid.multi_index(i);
    const double y0 = grid.coord(1, mi[1]);
    auto psi = [&](double s2) {
      for (std::size_t c = 0; c < n0; ++c) {
        double m = kInf;
        for (std::size_t r = 0; r < n1; ++r) {
          const ExtReal v = f[grid.index(c, r)];
          if (v.is_finite()) m = std::min(m, v.raw() - s2 * grid.coord(1, r));
        }
        u[c] = m;
      }
      double co = u[mi[0]];
      for (std::size_t a = 0; a < mi[0]; ++a) {
        if (u[a] == kInf) continue;
        for (std::size_t b = mi[0] + 1; b < n0; ++b) {
          if (u[b] == kInf) continue;
          const double t = static_cast<double>(mi[0] - a) / static_cast<double>(b - a);
          co = std::min(co, (1.0 - t) * u[a] + t * u[b]);
        }
      }
      return s2 * y0 + co;
    };
    out[i] = golden_max(psi, slopes.slopes.lo(1), slopes.slopes.hi(1));
  }
  return make_trusted_convex(GridFunction::from_values(grid, std::move(out)));
}

// ---- Hoelder constant of the gradient --------------------------------------

HolderEstimate second_difference_holder(const GridFunction& nu, double alpha,
                                        std::span<const std::size_t> offsets,
                                        const NormSpec& norm, std::size_t boundary_mask) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorCode::InvalidArgument, "alpha must lie in (0, 1]");
  if (offsets.empty()) fail(ErrorCode::InvalidArgument, "need at least one probe offset");
  const Grid& grid = nu.grid();
  const std::size_t n0 = grid.nodes(0), n1 = grid.nodes(1);
  std::vector<std::array<int, 2>> dirs{{1, 0}};
  if (grid.dim() == 2) dirs = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};

  HolderEstimate est;
  est.alpha = alpha;
  est.per_radius.assign(offsets.size(), 0.0);
  for (std::size_t r = 0; r < offsets.size(); ++r) {
    const auto k = static_cast<std::ptrdiff_t>(offsets[r]);
    if (k <= 0) fail(ErrorCode::InvalidArgument, "probe offsets must be positive");
    for (auto [d0, d1] : dirs) {
      const Point y{static_cast<double>(k * d0) * grid.step(0),
                    grid.dim() == 2 ? static_cast<double>(k * d1) * grid.step(1) : 0.0};
      const double denom = std::pow(norm(y), 1.0 + alpha);
      for (std::size_t i = 0; i < nu.size(); ++i) {
        if (grid.near_boundary(i, boundary_mask) || !nu[i].is_finite()) continue;
        const auto mi = grid.multi_index(i);
        const auto a0 = static_cast<std::ptrdiff_t>(mi[0]) - k * d0, b0 = static_cast<std::ptrdiff_t>(mi[0]) + k * d0;
        const auto a1 = static_cast<std::ptrdiff_t>(mi[1]) - k * d1, b1 = static_cast<std::ptrdiff_t>(mi[1]) + k * d1;
        if (std::min(a0, b0) < 0 || std::max(a0, b0) >= static_cast<std::ptrdiff_t>(n0) ||
            std::min(a1, b1) < 0 || std::max(a1, b1) >= static_cast<std::ptrdiff_t>(n1))
          continue;
        const ExtReal lo = nu[grid.index(static_cast<std::size_t>(a0), static_cast<std::size_t>(a1))];
        const ExtReal hi = nu[grid.index(static_cast<std::size_t>(b0), static_cast<std::size_t>(b1))];
        if (!lo.is_finite() || !hi.is_finite()) continue;
        const double ratio = (hi.raw() + lo.raw() - 2.0 * nu[i].raw()) / denom;
        est.per_radius[r] = std::max(est.per_radius[r], ratio);
        est.most_negative = std::min(est.most_negative, ratio);
      }
    }
  }
  est.constant = *std::max_element(est.per_radius.begin(), est.per_radius.end());
  const double smallest = *std::min_element(est.per_radius.begin(), est.per_radius.end());
  // Constants at rounding level (an affine function) count as stable.
  const double floor = 1e-9 * nu.scale();
  if (est.constant <= floor)
    est.stability_ratio = 1.0;
  else
    est.stability_ratio = smallest > 0.0 ? est.constant / smallest : kInf;
  return est;
}

HolderEstimate second_difference_holder(const GridFunction& nu, double alpha) {
  static constexpr std::array<std::size_t, 4> kOffsets{1, 2, 4, 8};
  return second_difference_holder(nu, alpha, kOffsets, NormSpec::euclidean(nu.grid().dim()));
}

}  // namespace dcreg
