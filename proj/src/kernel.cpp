#include "dcreg/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dcreg/error.hpp"

namespace dcreg {

NormSpec NormSpec::lp(int dim, double p) {
  if (dim != 1 && dim != 2) fail(ErrorCode::InvalidArgument, "norm dimension must be 1 or 2");
  if (std::isnan(p) || p < 1.0) fail(ErrorCode::InvalidArgument, "l_p norm needs p in [1, inf]");
  NormSpec n;
  n.dim = dim;
  n.p_norm = p;
  if (p > 1.0 && std::isfinite(p)) {
    n.smoothness_power = std::min(p, 2.0);
    n.convexity_power = std::max(p, 2.0);
  }
  return n;
}

double NormSpec::operator()(const Point& x) const noexcept {
  const double a = std::abs(x[0]);
  if (dim == 1) return a;
  const double b = std::abs(x[1]);
  if (p_norm == 2.0) return std::sqrt(a * a + b * b);
  if (p_norm == 1.0) return a + b;
  if (std::isinf(p_norm)) return std::max(a, b);
  const double m = std::max(a, b);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(a / m, p_norm) + std::pow(b / m, p_norm), 1.0 / p_norm);
}

double norm_eval(const NormSpec& norm, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(norm.dim))
    fail(ErrorCode::DimensionMismatch, "point dimension does not match the norm");
  Point p{x[0], norm.dim == 2 ? x[1] : 0.0};
  return norm(p);
}

std::string kernel_kind_name(KernelKind kind) {
  return kind == KernelKind::Kp ? "kp" : "hilbert";
}

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "kp") return KernelKind::Kp;
  if (name == "hilbert") return KernelKind::Hilbert;
  fail(ErrorCode::UnsupportedKernel, "unknown kernel kind '" + name + "' (expected kp | hilbert)");
}

Kernel::Kernel(NormSpec norm, double p, KernelKind kind)
    : norm_(std::move(norm)), p_(p), kind_(kind), half_weight_(std::pow(2.0, p - 1.0)) {}

Kernel Kernel::kp(const NormSpec& norm, double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    fail(ErrorCode::InvalidArgument, "kernel exponent must be a finite p > 1");
  return Kernel(norm, p, KernelKind::Kp);
}

Kernel Kernel::hilbert(int dim) { return Kernel(NormSpec::euclidean(dim), 2.0, KernelKind::Hilbert); }

Kernel Kernel::from_spec(const KernelSpec& spec) {
  NormSpec norm = NormSpec::lp(spec.dim, spec.norm_p);
  if (spec.kind == KernelKind::Hilbert) {
    if (spec.norm_p != 2.0 || spec.exponent_p != 2.0)
      fail(ErrorCode::UnsupportedKernel, "hilbert kernel requires norm_p = 2 and exponent_p = 2");
    return hilbert(spec.dim);
  }
  return kp(norm, spec.exponent_p);
}

KernelSpec Kernel::spec() const { return {norm_.p_norm, norm_.dim, p_, kind_}; }

bool Kernel::is_quadratic() const noexcept {
  return kind_ == KernelKind::Hilbert || (p_ == 2.0 && norm_.is_euclidean());
}

double Kernel::power_norm(const Point& x) const noexcept {
  const double r = norm_(x);
  if (p_ == 2.0) return r * r;
  if (p_ == 3.0) return r * r * r;
  return std::pow(r, p_);
}

double Kernel::c(const Point& x) const noexcept {
  if (kind_ == KernelKind::Hilbert) return power_norm(x);
  return half_weight_ * power_norm(x);
}

double Kernel::d(const Point& x, const Point& y) const noexcept {
  if (kind_ == KernelKind::Hilbert)
    return 2.0 * (x[0] * y[0] + x[1] * y[1]) - power_norm(y);
  return power_norm({x[0] + y[0], x[1] + y[1]}) - half_weight_ * power_norm(y);
}

double Kernel::raw(const Point& x, const Point& y) const noexcept {
  if (x == y) return 0.0;
  if (kind_ == KernelKind::Hilbert) {
    const double a = x[0] - y[0];
    const double b = x[1] - y[1];
    return a * a + b * b;
  }
  return (half_weight_ * power_norm(x) + half_weight_ * power_norm(y)) -
         power_norm({x[0] + y[0], x[1] + y[1]});
}

double Kernel::operator()(const Point& x, const Point& y) const noexcept {
  return std::max(raw(x, y), 0.0);
}

Point to_point(const Kernel& k, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(k.dim()))
    fail(ErrorCode::DimensionMismatch, "point dimension does not match the kernel");
  return {x[0], k.dim() == 2 ? x[1] : 0.0};
}

double kernel_eval(const Kernel& k, std::span<const double> x, std::span<const double> y) {
  return k(to_point(k, x), to_point(k, y));
}

KernelDecomposition kernel_decompose(const Kernel& k) {
  KernelDecomposition out;
  out.c = [k](std::span<const double> x) { return k.c(to_point(k, x)); };
  out.d = [k](std::span<const double> x, std::span<const double> y) {
    return k.d(to_point(k, x), to_point(k, y));
  };
  return out;
}

namespace {

Point random_direction(std::mt19937_64& rng, int dim, const NormSpec& norm) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point v{0.0, 0.0};
  do {
    v = {u(rng), dim == 2 ? u(rng) : 0.0};
  } while (norm(v) < 1e-3);
  const double r = norm(v);
  return {v[0] / r, v[1] / r};
}

}  // namespace

GrowthConstants estimate_growth_constants(const Kernel& k, std::size_t samples,
                                          std::uint64_t seed) {
  if (k.kind() != KernelKind::Kp)
    fail(ErrorCode::UnsupportedKernel, "growth constants are defined for the Kp family");
  const double p = k.exponent();
  const double base = std::pow(2.0, p - 1.0);
  GrowthConstants out;
  for (double eta : {2.0, 3.0, 4.0, 8.0, 16.0, 32.0}) {
    const double gamma = base - std::pow(1.0 + 1.0 / eta, p);
    if (gamma > 0.0) {
      out.eta = eta;
      out.gamma = gamma;
      break;
    }
  }
  if (out.eta == 0.0)
    fail(ErrorCode::VerificationFailure, "no eta on the ladder gives a positive gamma");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  out.worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    Point dy = random_direction(rng, k.dim(), k.norm());
    Point dx = random_direction(rng, k.dim(), k.norm());
    const double ry = 0.01 + 10.0 * unit(rng);
    const double rx = unit(rng) * ry / out.eta;
    Point y{ry * dy[0], ry * dy[1]};
    Point x{rx * dx[0], rx * dx[1]};
    const double bound = out.gamma * k.power_norm(y);
    const double value = k(x, y);
    out.worst_ratio = std::min(out.worst_ratio, value / bound);
    if (value < bound * (1.0 - 1e-9))
      fail(ErrorCode::VerificationFailure, "sampled pair violates K >= gamma |y|^p");
    ++out.samples;
  }
  return out;
}

double estimate_separation_constant(const Kernel& k, double r, double delta,
                                    std::size_t samples, std::uint64_t seed) {
  if (!(r > 0.0) || !(delta > 0.0))
    fail(ErrorCode::InvalidArgument, "separation needs r > 0 and delta > 0");
  const NormSpec& norm = k.norm();
  double worst = std::numeric_limits<double>::infinity();
  auto visit = [&](const Point& x, const Point& y) {
    if (norm(x) > r * (1.0 + 1e-12)) return;
    const double gap = norm({x[0] - y[0], x[1] - y[1]});
    if (gap < delta) return;
    worst = std::min(worst, k(x, y) / std::pow(gap, k.exponent()));
  };

  // Probes on the sphere of radius r: every pair of the 16 directions at
  // multiples of pi/8, rescaled to norm r.
  std::vector<Point> sphere;
  const int directions = k.dim() == 1 ? 2 : 16;
  for (int i = 0; i < directions; ++i) {
    double t = k.dim() == 1 ? (i == 0 ? 0.0 : std::numbers::pi) : i * std::numbers::pi / 8.0;
    Point v{std::cos(t), k.dim() == 2 ? std::sin(t) : 0.0};
    const double nv = norm(v);
    sphere.push_back({r * v[0] / nv, r * v[1] / nv});
  }
  for (const Point& a : sphere)
    for (const Point& b : sphere) visit(a, b);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Point dx = random_direction(rng, k.dim(), norm);
    Point dv = random_direction(rng, k.dim(), norm);
    const double rx = r * unit(rng);
    const double rv = delta + (3.0 * r) * unit(rng);
    Point x{rx * dx[0], rx * dx[1]};
    visit(x, {x[0] + rv * dv[0], x[1] + rv * dv[1]});
  }
  return worst;
}

double grid_separation_constant(const Kernel& k, const Grid& grid, double delta) {
  if (grid.dim() != k.dim()) fail(ErrorCode::DimensionMismatch, "grid and kernel dimensions differ");
  double worst = std::numeric_limits<double>::infinity();
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = grid.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point y = grid.point(j);
      const double gap = k.norm()({x[0] - y[0], x[1] - y[1]});
      if (gap < delta) continue;
      worst = std::min(worst, k(x, y) / std::pow(gap, k.exponent()));
    }
  }
  return worst;
}

}  // namespace dcreg
