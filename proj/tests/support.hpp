#pragma once
// Independent oracles and the shared function corpus for tests. Nothing here
// goes through the library's kernel tables or hull code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dcreg/expression.hpp"
#include "dcreg/grid_function.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double lp_norm(double a, double b, double q) {
  if (std::isinf(q)) return std::max(std::abs(a), std::abs(b));
  return std::pow(std::pow(std::abs(a), q) + std::pow(std::abs(b), q), 1.0 / q);
}

/// 2^(p-1)|x|^p + 2^(p-1)|y|^p - |x+y|^p, written out longhand.
inline double kp_direct(const dcreg::Point& x, const dcreg::Point& y, double q, double p) {
  const double w = std::pow(2.0, p - 1.0);
  const double v = w * std::pow(lp_norm(x[0], x[1], q), p) + w * std::pow(lp_norm(y[0], y[1], q), p) -
                   std::pow(lp_norm(x[0] + y[0], x[1] + y[1], q), p);
  return std::max(v, 0.0);
}

inline std::vector<double> raw(const dcreg::GridFunction& f) {
  std::vector<double> v;
  for (auto e : f.values()) v.push_back(e.raw());
  return v;
}

/// min_j f_j + n K(x_i, x_j) by direct evaluation.
inline std::vector<double> inf_convolve(const dcreg::GridFunction& f, double q, double p, double n) {
  const auto& g = f.grid();
  std::vector<double> out(g.size(), kInf);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!f[j].is_finite()) continue;
      const double k = i == j ? 0.0 : kp_direct(g.point(i), g.point(j), q, p);
      out[i] = std::min(out[i], f[j].raw() + n * k);
    }
  return out;
}

/// 1D lower convex envelope at nodes: min over bracketing pairs.
inline std::vector<double> hull_1d(const dcreg::GridFunction& f) {
  const auto& g = f.grid();
  const std::size_t N = g.size();
  std::vector<double> out(N, kInf);
  for (std::size_t a = 0; a < N; ++a) {
    if (!f[a].is_finite()) continue;
    for (std::size_t b = a; b < N; ++b) {
      if (!f[b].is_finite()) continue;
      const double xa = g.coord(0, a), xb = g.coord(0, b);
      for (std::size_t t = a; t <= b; ++t) {
        const double lam = b == a ? 0.0 : (g.coord(0, t) - xa) / (xb - xa);
        out[t] = std::min(out[t], (1.0 - lam) * f[a].raw() + lam * f[b].raw());
      }
    }
  }
  return out;
}

/// 2D lower convex envelope at nodes: min over points, segments and
/// triangles of finite nodes containing the target. Coordinates are taken as
/// signed integers so the containment tests are exact. O(N^4); small grids.
inline std::vector<double> hull_2d(const dcreg::GridFunction& f) {
  const auto& g = f.grid();
  const std::size_t N = g.size();
  std::vector<long long> X(N), Y(N);
  std::vector<std::size_t> fin;
  for (std::size_t i = 0; i < N; ++i) {
    const auto m = g.multi_index(i);
    X[i] = static_cast<long long>(m[0]);
    Y[i] = static_cast<long long>(m[1]);
    if (f[i].is_finite()) fin.push_back(i);
  }
  std::vector<double> out(N, kInf);
  for (std::size_t t = 0; t < N; ++t) {
    double best = f[t].is_finite() ? f[t].raw() : kInf;
    for (std::size_t ia = 0; ia < fin.size(); ++ia)
      for (std::size_t ib = ia + 1; ib < fin.size(); ++ib) {
        const std::size_t a = fin[ia], b = fin[ib];
        const long long ux = X[b] - X[a], uy = Y[b] - Y[a];
        const long long vx = X[t] - X[a], vy = Y[t] - Y[a];
        if (ux * vy - uy * vx == 0) {
          const long long dot = ux * vx + uy * vy, len = ux * ux + uy * uy;
          if (dot >= 0 && dot <= len) {
            const double lam = static_cast<double>(dot) / static_cast<double>(len);
            best = std::min(best, (1.0 - lam) * f[a].raw() + lam * f[b].raw());
          }
        }
        for (std::size_t ic = ib + 1; ic < fin.size(); ++ic) {
          const std::size_t c = fin[ic];
          const long long wx = X[c] - X[a], wy = Y[c] - Y[a];
          const long long det = ux * wy - uy * wx;
          if (det == 0) continue;
          const long long l1 = vx * wy - vy * wx;  // weight of b, times det
          const long long l2 = ux * vy - uy * vx;  // weight of c, times det
          const long long l0 = det - l1 - l2;
          const bool inside = det > 0 ? (l0 >= 0 && l1 >= 0 && l2 >= 0) : (l0 <= 0 && l1 <= 0 && l2 <= 0);
          if (!inside) continue;
          const double d = static_cast<double>(det);
          best = std::min(best, (static_cast<double>(l0) * f[a].raw() + static_cast<double>(l1) * f[b].raw() +
                                 static_cast<double>(l2) * f[c].raw()) / d);
        }
      }
    out[t] = best;
  }
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isinf(a[i]) || std::isinf(b[i])) {
      if (a[i] != b[i]) return kInf;
      continue;
    }
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace oracle

namespace corpus {

struct Entry {
  std::string name;
  std::string expr;
};

inline const std::vector<Entry>& one_d() {
  static const std::vector<Entry> v = {
      {"abs", "abs(x)"},
      {"double_well", "(abs(x) - 1)^2"},
      {"sin3", "abs(sin(3*x))"},
      {"sqrt_abs", "sqrt(abs(x))"},
      {"step", "if(x < 0, 1, 0)"},
      {"stairs", "if(x < -1, 2, if(x < 0.5, 1, 0))"},
  };
  return v;
}

inline const std::vector<Entry>& two_d() {
  static const std::vector<Entry> v = {
      {"norm", "norm(x, y)"},
      {"two_wells", "min((x - 1)^2 + y^2, (x + 1)^2 + y^2)"},
      {"sin3", "abs(sin(3*x)) + abs(sin(3*y))"},
      {"sqrt_l1", "sqrt(abs(x) + abs(y))"},
      {"half_plane_step", "if(x + y < 0, 1, 0)"},
      {"valley", "abs(x) + (abs(y) - 1)^2"},
  };
  return v;
}

inline dcreg::GridFunction sample(const std::string& expr, const dcreg::Grid& g) {
  return dcreg::Expression::parse(expr, g.dim()).sample(g);
}

}  // namespace corpus
